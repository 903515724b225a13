"""Value types of the coordinate graph of groups: coordinates, edges, pointings, paths."""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product


@dataclass(frozen=True, order=True)
class ACoord:
    """Element (eps, r) of Z2 x Zm, standing for omega^eps after the r-th Frobenius power."""

    eps: int
    r: int
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "eps", self.eps % 2)
        object.__setattr__(self, "r", self.r % self.m)

    @classmethod
    def zero(cls, m: int) -> "ACoord":
        return cls(0, 0, m)

    def _same_group(self, other: "ACoord") -> None:
        if self.m != other.m:
            raise ValueError(f"coordinates over different extension degrees ({self.m} vs {other.m})")

    def __add__(self, other: "ACoord") -> "ACoord":
        self._same_group(other)
        return ACoord(self.eps + other.eps, self.r + other.r, self.m)

    def __neg__(self) -> "ACoord":
        return ACoord(-self.eps, -self.r, self.m)

    def __sub__(self, other: "ACoord") -> "ACoord":
        return self + (-other)

    def is_zero(self) -> bool:
        return self.eps == 0 and self.r == 0

    def __str__(self):
        return f"({self.eps},{self.r})"


def all_coords(m: int) -> list[ACoord]:
    """All 2m coordinates in lexicographic (eps, r) order."""
    return [ACoord(eps, r, m) for eps, r in product(range(2), range(m))]


@dataclass(frozen=True, order=True)
class DirectedEdge:
    source: str
    target: str

    @property
    def reverse(self) -> "DirectedEdge":
        return DirectedEdge(self.target, self.source)

    @property
    def key(self) -> tuple[str, str]:
        """Unordered identity of the underlying edge."""
        return tuple(sorted((self.source, self.target)))

    def __str__(self):
        return f"{self.source}->{self.target}"


# ---------------------------------------------------------------------------
# Pointings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Pointing:
    """delta: directed edge -> ACoord; the value at (i, j) lives in the vertex group of i.

    Only nonzero values are stored, so equal pointings compare equal.
    """

    m: int
    entries: tuple[tuple[DirectedEdge, ACoord], ...] = ()
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", dict(self.entries))

    @classmethod
    def from_mapping(cls, m: int, mapping: Mapping[DirectedEdge, ACoord] | Iterable[tuple[DirectedEdge, ACoord]]):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        clean = {}
        for e, a in items:
            if a.m != m:
                raise ValueError(f"coordinate {a} on {e} does not belong to Z2 x Z{m}")
            clean[e] = a
        return cls(m, tuple(sorted((e, a) for e, a in clean.items() if not a.is_zero())))

    @classmethod
    def trivial(cls, m: int) -> "Pointing":
        return cls(m)

    def __getitem__(self, e: DirectedEdge) -> ACoord:
        return self._lookup.get(e) or ACoord.zero(self.m)

    def as_dict(self) -> dict[DirectedEdge, ACoord]:
        return dict(self.entries)

    def support(self) -> list[DirectedEdge]:
        return [e for e, _ in self.entries]

    def is_trivial(self) -> bool:
        return not self.entries


# ---------------------------------------------------------------------------
# Paths in the graph of groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPath:
    """Alternating word (a0, e1, a1, ..., en, an); letter a_k lives at vertex i_k."""

    start: str
    edges: tuple[DirectedEdge, ...]
    letters: tuple[ACoord, ...]

    def __post_init__(self):
        if len(self.letters) != len(self.edges) + 1:
            raise ValueError("a path with n edges carries n + 1 group letters")
        here = self.start
        for e in self.edges:
            if e.source != here:
                raise ValueError(f"edge {e} does not continue the path at {here}")
            here = e.target

    @classmethod
    def from_edges(cls, start: str, edges: Iterable[DirectedEdge], m: int) -> "GroupPath":
        edges = tuple(edges)
        return cls(start, edges, tuple(ACoord.zero(m) for _ in range(len(edges) + 1)))

    @property
    def vertices(self) -> list[str]:
        return [self.start] + [e.target for e in self.edges]

    @property
    def end(self) -> str:
        return self.edges[-1].target if self.edges else self.start

    @property
    def is_closed(self) -> bool:
        return self.end == self.start

    def __mul__(self, other: "GroupPath") -> "GroupPath":
        """Concatenation; the two touching letters multiply at the junction."""
        if other.start != self.end:
            raise ValueError(f"cannot join a path ending at {self.end} to one starting at {other.start}")
        junction = self.letters[-1] + other.letters[0]
        return GroupPath(
            self.start,
            self.edges + other.edges,
            self.letters[:-1] + (junction,) + other.letters[1:],
        )


@dataclass(frozen=True)
class NormalForm:
    """e1 e2 ... en g with g in the group of the terminal vertex."""

    edges: tuple[DirectedEdge, ...]
    g: ACoord
