"""The coordinate graph of groups: edge maps, transport, path normal forms and the invariant Phi.

Vertex and edge complements are all Z2 x Zm and every edge map alpha is the
identity in coordinates. The matrix layer certifies this per field in
`alpha_matrix_check`; everything else in this module works in coordinates.
"""

import logging
import random
from collections.abc import Iterable, Sequence

import networkx as nx

from ctgroups.core.errors import DisconnectedError, PointingParseError
from ctgroups.core.field import FieldCtx
from ctgroups.models.coords import ACoord, DirectedEdge, GroupPath, NormalForm, Pointing, all_coords
from ctgroups.models.diagram import Diagram, SpanningData
from ctgroups.models.maps import SLAut
from ctgroups.services.matrix_group_service import sl2_generators
from ctgroups.services.standard_pair_service import lower_right, reversed_lower, upper_left

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Edge maps and transport
# ---------------------------------------------------------------------------

def alpha(e: DirectedEdge, a: ACoord) -> ACoord:
    """Restriction A_e -> A_source(e); the identity in coordinates."""
    return a


def alpha_inverse(e: DirectedEdge, a: ACoord) -> ACoord:
    return a


def alpha_matrix_check(field: FieldCtx, convention: str = "forward") -> bool:
    """Pull omega^eps . sigma^r on SL3 back along both block embeddings of an edge
    and compare with the SL2 automorphism of the same coordinates."""
    gens = sl2_generators(field)
    lower = lower_right(field) if convention == "forward" else reversed_lower(field)
    for psi in (upper_left(field), lower):
        for c in all_coords(field.m):
            big, small = SLAut.from_coord(c), SLAut.from_coord(c)
            for s in gens:
                if psi.extract(big(psi(s))) != small(s):
                    logger.warning(f"Edge map is not the identity at {c} over {field.name}")
                    return False
    return True


def _push(e: DirectedEdge, a: ACoord) -> ACoord:
    """Carry a letter from source(e) to target(e): alpha_(e-bar) . alpha_e^-1."""
    return alpha(e.reverse, alpha_inverse(e, a))


def transport(edges: Sequence[DirectedEdge], a: ACoord) -> ACoord:
    for e in edges:
        a = _push(e, a)
    return a


def shortest_edge_path(d: Diagram, l: str, mvert: str) -> list[DirectedEdge]:
    g = d.graph()
    try:
        nodes = nx.shortest_path(g, l, mvert)
    except nx.NetworkXNoPath as exc:
        raise DisconnectedError(f"{l} and {mvert} lie in different components") from exc
    return [DirectedEdge(u, v) for u, v in zip(nodes, nodes[1:])]


def beta(l: str, mvert: str, a: ACoord, d: Diagram, path: Sequence[DirectedEdge] | None = None) -> ACoord:
    """Transport a from vertex l to vertex mvert along `path` (default: a shortest path)."""
    if path is None:
        path = shortest_edge_path(d, l, mvert)
    else:
        here = l
        for e in path:
            if e.source != here or not d.has_edge(e.source, e.target):
                raise ValueError(f"{e} does not continue a path from {l}")
            here = e.target
        if here != mvert:
            raise ValueError(f"path from {l} ends at {here}, not {mvert}")
    return transport(path, a)


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def normal_form(p: GroupPath) -> NormalForm:
    """e1 ... en g, with g the sum of every letter transported to the terminal vertex."""
    g = ACoord.zero(p.letters[0].m)
    for k, letter in enumerate(p.letters):
        g = g + transport(p.edges[k:], letter)
    return NormalForm(edges=p.edges, g=g)


def normal_form_stepwise(p: GroupPath) -> NormalForm:
    """Same element, moving letters one edge at a time with a . e = e . alpha_(e-bar)(alpha_e^-1(a))."""
    letters = list(p.letters)
    for k, e in enumerate(p.edges):
        letters[k + 1] = _push(e, letters[k]) + letters[k + 1]
        letters[k] = ACoord.zero(letters[k].m)
    return NormalForm(edges=p.edges, g=letters[-1])


def reduce_returns(p: GroupPath) -> tuple[GroupPath, list[tuple[int, DirectedEdge, ACoord]]]:
    """Remove backtracks e, e-bar, merging the three surrounding letters.

    The trace lists (position, removed edge, merged letter) per step.
    """
    edges = list(p.edges)
    letters = list(p.letters)
    trace = []
    j = 0
    while j < len(edges) - 1:
        e, f = edges[j], edges[j + 1]
        if f != e.reverse:
            j += 1
            continue
        merged = letters[j] + alpha(e, alpha_inverse(f, letters[j + 1])) + letters[j + 2]
        del edges[j: j + 2]
        letters[j: j + 3] = [merged]
        trace.append((j, e, merged))
        j = max(j - 1, 0)
    return GroupPath(p.start, tuple(edges), tuple(letters)), trace


def homotopy_witness(p1: GroupPath, p2: GroupPath) -> list[ACoord] | None:
    """h_1..h_n with g0' = g0 - h1, g_k' = h_k + g_k - h_(k+1), g_n' = h_n + g_n; None if inconsistent."""
    if p1.edges != p2.edges or p1.start != p2.start:
        raise ValueError("homotopy witnesses compare paths with the same edge sequence")
    g, g2 = p1.letters, p2.letters
    n = len(p1.edges)
    if n == 0:
        return [] if g[0] == g2[0] else None
    hs = [g[0] - g2[0]]
    for k in range(1, n):
        hs.append(hs[-1] + g[k] - g2[k])
    if hs[-1] + g[n] != g2[n]:
        return None
    return hs


# ---------------------------------------------------------------------------
# Pointings and Phi
# ---------------------------------------------------------------------------

def trivial_pointing(m: int) -> Pointing:
    return Pointing.trivial(m)


def pointed_path(delta: Pointing, start: str, edges: Sequence[DirectedEdge]) -> GroupPath:
    """gamma_delta = delta_e1 e1 delta_(e1-bar)^-1 delta_e2 e2 ... ."""
    m = delta.m
    letters = []
    for k in range(len(edges) + 1):
        letter = ACoord.zero(m)
        if k > 0:
            letter = letter - delta[edges[k - 1].reverse]
        if k < len(edges):
            letter = letter + delta[edges[k]]
        letters.append(letter)
    return GroupPath(start, tuple(edges), tuple(letters))


def phi_of_word(delta: Pointing, start: str, edges: Sequence[DirectedEdge]) -> ACoord:
    return normal_form(pointed_path(delta, start, edges)).g


def phi_by_summation(delta: Pointing, edges: Iterable[DirectedEdge]) -> ACoord:
    total = ACoord.zero(delta.m)
    for e in edges:
        total = total + delta[e] - delta[e.reverse]
    return total


def phi_of_pointing(delta: Pointing, sd: SpanningData) -> dict[DirectedEdge, ACoord]:
    """Phi on the free generators: one value per H-edge cycle."""
    return {e: phi_of_word(delta, sd.base, cycle) for e, cycle in zip(sd.extra, sd.cycles)}


def transform_pointing(delta: Pointing, vertex: dict[str, ACoord], edge: dict[tuple[str, str], ACoord], d: Diagram) -> Pointing:
    """delta'_(i,j) = delta_(i,j) + a_(i,j) - a_i; isomorphic to delta by construction."""
    zero = ACoord.zero(delta.m)
    out = {}
    for e in d.directed_edges():
        out[e] = delta[e] + edge.get(e.key, zero) - vertex.get(e.source, zero)
    return Pointing.from_mapping(delta.m, out)


def random_pointing(d: Diagram, m: int, rng: random.Random) -> Pointing:
    coords = all_coords(m)
    return Pointing.from_mapping(m, {e: rng.choice(coords) for e in d.directed_edges()})


def random_path(d: Diagram, m: int, rng: random.Random, length: int, start: str | None = None) -> GroupPath:
    coords = all_coords(m)
    origin = start if start is not None else rng.choice(d.vertices)
    here = origin
    edges = []
    for _ in range(length):
        nbrs = d.neighbors(here)
        if not nbrs:
            break
        nxt = rng.choice(nbrs)
        edges.append(DirectedEdge(here, nxt))
        here = nxt
    letters = tuple(rng.choice(coords) for _ in range(len(edges) + 1))
    return GroupPath(origin, tuple(edges), letters)


def random_closed_path(d: Diagram, m: int, rng: random.Random, length: int, start: str | None = None) -> GroupPath:
    """A random walk of about `length` steps from start, closed by a shortest way back."""
    origin = start if start is not None else rng.choice(d.vertices)
    edges = random_walk_between(d, rng, origin, origin, length) if d.neighbors(origin) else []
    coords = all_coords(m)
    letters = tuple(rng.choice(coords) for _ in range(len(edges) + 1))
    return GroupPath(origin, tuple(edges), letters)


def random_walk_between(d: Diagram, rng: random.Random, l: str, mvert: str, detour: int) -> list[DirectedEdge]:
    """A random walk of `detour` steps from l, closed off by a shortest path to mvert."""
    here = l
    edges = []
    for _ in range(detour):
        nxt = rng.choice(d.neighbors(here))
        edges.append(DirectedEdge(here, nxt))
        here = nxt
    return edges + shortest_edge_path(d, here, mvert)


# ---------------------------------------------------------------------------
# Pointing files
# ---------------------------------------------------------------------------

def parse_pointing(text: str, d: Diagram, m: int) -> Pointing:
    """Lines "delta <from> <to> <eps> <r>"; unspecified edges default to (0,0)."""
    values: dict[DirectedEdge, ACoord] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5 or parts[0] != "delta":
            raise PointingParseError(f"malformed line {raw.strip()!r}", line_no)
        a, b = parts[1], parts[2]
        if not d.has_edge(a, b):
            raise PointingParseError(f"{a} {b} is not an edge of the diagram", line_no)
        try:
            eps, r = int(parts[3]), int(parts[4])
        except ValueError as exc:
            raise PointingParseError(f"non-integer coordinate in {raw.strip()!r}", line_no) from exc
        if eps not in (0, 1):
            raise PointingParseError(f"eps must be 0 or 1, got {eps}", line_no)
        e = DirectedEdge(a, b)
        if e in values:
            raise PointingParseError(f"duplicate value for {e}", line_no)
        values[e] = ACoord(eps, r, m)
    return Pointing.from_mapping(m, values)


def serialize_pointing(delta: Pointing) -> str:
    return "".join(f"delta {e.source} {e.target} {a.eps} {a.r}\n" for e, a in delta.entries)
