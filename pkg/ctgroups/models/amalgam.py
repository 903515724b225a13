"""Concrete Curtis-Tits amalgam: SL2 vertex groups, SL3 edge groups, inclusion maps."""

from dataclasses import dataclass, field
from typing import Literal

from ctgroups.core.field import FieldCtx
from ctgroups.core.matrix import Mat
from ctgroups.models.coords import DirectedEdge, Pointing
from ctgroups.models.diagram import Diagram
from ctgroups.models.maps import Inclusion

Convention = Literal["forward", "reversed"]


@dataclass(frozen=True)
class CentralProductElem:
    """(M, N) in G_i x G_j modulo (-I, -I); stored as the smaller representative."""

    left: Mat
    right: Mat

    @classmethod
    def of(cls, left: Mat, right: Mat) -> "CentralProductElem":
        if left.ring.p == 2:
            return cls(left, right)
        other = (-left, -right)
        mine = (left, right)
        return cls(*min(mine, other, key=lambda pair: (str(pair[0].rows), str(pair[1].rows))))

    def __mul__(self, other: "CentralProductElem") -> "CentralProductElem":
        return CentralProductElem.of(self.left * other.left, self.right * other.right)


@dataclass(frozen=True)
class CTAmalgam:
    diagram: Diagram
    field: FieldCtx
    pointing: Pointing
    convention: Convention
    inclusions: dict[DirectedEdge, Inclusion] = field(repr=False)

    def inclusion(self, e: DirectedEdge) -> Inclusion:
        return self.inclusions[e]

    def edge_pair(self, e: DirectedEdge) -> tuple[Inclusion, Inclusion]:
        """(phi_ij, phi_ji) for the stored orientation of the edge under e."""
        a, b = self.diagram.oriented(e.source, e.target)
        return self.inclusions[DirectedEdge(a, b)], self.inclusions[DirectedEdge(b, a)]

    def directed_edges(self) -> list[DirectedEdge]:
        return self.diagram.directed_edges()
