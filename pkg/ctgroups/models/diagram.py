"""Diagram document model and the spanning data derived from it."""

from dataclasses import dataclass

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ctgroups.models.coords import DirectedEdge


class Diagram(BaseModel):
    """Simply laced diagram. Edges keep the orientation they were written with:
    in `(a, b)` the vertex a takes the upper-left block of the edge group."""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[str, ...] = Field(..., description="Vertex labels in file order.")
    edges: tuple[tuple[str, str], ...] = Field(default=(), description="Edges as written.")

    @model_validator(mode="after")
    def _simple_graph(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        known = set(self.vertices)
        seen = set()
        for a, b in self.edges:
            if a not in known or b not in known:
                raise ValueError(f"edge {a} {b} uses an undeclared vertex")
            if a == b:
                raise ValueError(f"loop at {a}")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"duplicate edge {a} {b}")
            seen.add(key)
        return self

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def neighbors(self, v: str) -> list[str]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def oriented(self, a: str, b: str) -> tuple[str, str]:
        """The stored orientation of edge {a, b}."""
        if (a, b) in self.edges:
            return (a, b)
        if (b, a) in self.edges:
            return (b, a)
        raise KeyError(f"{a} and {b} are not adjacent")

    def directed_edges(self) -> list[DirectedEdge]:
        out = []
        for a, b in self.edges:
            out.append(DirectedEdge(a, b))
            out.append(DirectedEdge(b, a))
        return sorted(out)

    def non_edges(self) -> list[tuple[str, str]]:
        vs = sorted(self.vertices)
        return [(a, b) for k, a in enumerate(vs) for b in vs[k + 1:] if not self.has_edge(a, b)]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class SpanningData:
    """Spanning tree at a base vertex, the extra edges H and one cycle per H-edge."""

    base: str
    order: tuple[str, ...]
    tree: tuple[DirectedEdge, ...]
    extra: tuple[DirectedEdge, ...]
    cycles: tuple[tuple[DirectedEdge, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.extra)

    def cycle_of(self, e: DirectedEdge) -> tuple[DirectedEdge, ...]:
        return self.cycles[self.extra.index(e)]

    def parent(self, v: str) -> str | None:
        for e in self.tree:
            if e.target == v:
                return e.source
        return None

    def tree_path(self, v: str) -> tuple[DirectedEdge, ...]:
        """Tree edges from the base to v."""
        path = []
        while v != self.base:
            u = self.parent(v)
            path.append(DirectedEdge(u, v))
            v = u
        return tuple(reversed(path))
