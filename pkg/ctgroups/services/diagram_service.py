"""Diagram files, admissibility, and the canonical spanning structure."""

import hashlib
import logging

import networkx as nx
from pydantic import BaseModel, ValidationError

from ctgroups.core.errors import DiagramParseError, InadmissibleDiagramError
from ctgroups.models.coords import DirectedEdge
from ctgroups.models.diagram import Diagram, SpanningData

logger = logging.getLogger(__name__)


class AdmissibilityReport(BaseModel):
    ok: bool
    violations: list[str] = []
    triangle: tuple[str, str, str] | None = None
    components: list[list[str]] = []


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def parse_diagram(text: str) -> Diagram:
    """Parse "vertex <label>" and "edge <label> <label>" lines; '#' starts a comment."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen_edges: set[frozenset[str]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex" and len(parts) == 2:
            if parts[1] in vertices:
                raise DiagramParseError(f"duplicate vertex {parts[1]!r}", line_no)
            vertices.append(parts[1])
        elif kind == "edge" and len(parts) == 3:
            a, b = parts[1], parts[2]
            if a == b:
                raise DiagramParseError(f"loop at {a!r}", line_no)
            for v in (a, b):
                if v not in vertices:
                    raise DiagramParseError(f"edge uses undeclared vertex {v!r}", line_no)
            key = frozenset((a, b))
            if key in seen_edges:
                raise DiagramParseError(f"duplicate edge {a} {b}", line_no)
            seen_edges.add(key)
            edges.append((a, b))
        else:
            raise DiagramParseError(f"malformed line {raw.strip()!r}", line_no)
    if not vertices:
        raise DiagramParseError("diagram declares no vertices")
    try:
        return Diagram(vertices=tuple(vertices), edges=tuple(edges))
    except ValidationError as exc:
        raise DiagramParseError(str(exc)) from exc


def serialize_diagram(d: Diagram) -> str:
    lines = [f"vertex {v}" for v in d.vertices] + [f"edge {a} {b}" for a, b in d.edges]
    return "\n".join(lines) + "\n"


def diagram_hash(d: Diagram) -> str:
    return hashlib.sha256(serialize_diagram(d).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Standard diagrams
# ---------------------------------------------------------------------------

def path_diagram(k: int) -> Diagram:
    """A_k on vertices "1".."k"."""
    labels = tuple(str(i) for i in range(1, k + 1))
    return Diagram(vertices=labels, edges=tuple((labels[i], labels[i + 1]) for i in range(k - 1)))


def cycle_diagram(n: int) -> Diagram:
    """The n-cycle on "1".."n"; edges oriented (k, k+1) and (n, 1)."""
    labels = tuple(str(i) for i in range(1, n + 1))
    edges = tuple((labels[i], labels[(i + 1) % n]) for i in range(n))
    return Diagram(vertices=labels, edges=edges)


def theta_diagram() -> Diagram:
    """Two poles joined by internally disjoint paths of lengths 2, 2 and 3."""
    return Diagram(
        vertices=("u", "v", "a", "b", "c1", "c2"),
        edges=(("u", "a"), ("a", "v"), ("u", "b"), ("b", "v"), ("u", "c1"), ("c1", "c2"), ("c2", "v")),
    )


def is_path_diagram(d: Diagram) -> bool:
    g = d.graph()
    return nx.is_connected(g) and nx.is_tree(g) and max((deg for _, deg in g.degree()), default=0) <= 2


def is_cycle_diagram(d: Diagram) -> bool:
    g = d.graph()
    return len(d.vertices) >= 3 and nx.is_connected(g) and all(deg == 2 for _, deg in g.degree())


# ---------------------------------------------------------------------------
# Admissibility and spanning data
# ---------------------------------------------------------------------------

def check_admissible(d: Diagram) -> AdmissibilityReport:
    """Connected and without circuits of length <= 3."""
    g = d.graph()
    violations = []
    components: list[list[str]] = []
    if not nx.is_connected(g):
        components = sorted(sorted(c) for c in nx.connected_components(g))
        violations.append("disconnected: components " + " | ".join(",".join(c) for c in components))
    triangle = None
    for a, b in sorted(tuple(sorted(e)) for e in d.edges):
        common = sorted(set(d.neighbors(a)) & set(d.neighbors(b)))
        if common:
            triangle = tuple(sorted((a, b, common[0])))
            violations.append(f"circuit of length 3 on {{{', '.join(triangle)}}}")
            break
    return AdmissibilityReport(ok=not violations, violations=violations, triangle=triangle, components=components)


def require_admissible(d: Diagram) -> None:
    report = check_admissible(d)
    if not report.ok:
        raise InadmissibleDiagramError(report.violations)


def spanning_structure(d: Diagram, i0: str | None = None) -> SpanningData:
    """BFS tree from i0 with neighbours in label order; H-edges oriented from the
    earlier-discovered endpoint and listed lexicographically."""
    require_admissible(d)
    base = i0 if i0 is not None else d.vertices[0]
    if base not in d.vertices:
        raise KeyError(f"unknown base vertex {base!r}")
    g = d.graph()
    tree = tuple(DirectedEdge(u, v) for u, v in nx.bfs_edges(g, base, sort_neighbors=sorted))
    order = (base,) + tuple(e.target for e in tree)
    rank = {v: k for k, v in enumerate(order)}
    tree_keys = {e.key for e in tree}
    extra = []
    for a, b in d.edges:
        if tuple(sorted((a, b))) in tree_keys:
            continue
        extra.append(DirectedEdge(a, b) if rank[a] < rank[b] else DirectedEdge(b, a))
    extra.sort()
    partial = SpanningData(base=base, order=order, tree=tree, extra=tuple(extra), cycles=())
    cycles = []
    for e in extra:
        back = tuple(t.reverse for t in reversed(partial.tree_path(e.target)))
        cycles.append(partial.tree_path(e.source) + (e,) + back)
    sd = SpanningData(base=base, order=order, tree=tree, extra=tuple(extra), cycles=tuple(cycles))
    logger.debug(f"Spanning structure at {base}: {len(tree)} tree edges, H = {[str(e) for e in extra]}")
    return sd


def describe_spanning(sd: SpanningData) -> dict[str, object]:
    return {
        "base": sd.base,
        "tree": [str(e) for e in sd.tree],
        "extra": [str(e) for e in sd.extra],
        "cycles": [" ".join(str(e) for e in c) for c in sd.cycles],
    }


def cycle_space_dimension(d: Diagram) -> int:
    """dim ker(boundary: GF(2)^E -> GF(2)^V), by elimination on bitmasks."""
    index = {v: k for k, v in enumerate(d.vertices)}
    pivots: dict[int, int] = {}
    rank = 0
    for a, b in d.edges:
        row = (1 << index[a]) | (1 << index[b])
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return len(d.edges) - rank
