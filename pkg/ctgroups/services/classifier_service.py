"""Isomorphism classes of Curtis-Tits structures: Phi-based classification and brute-force oracles."""

import logging
import random
from itertools import product

from ctgroups.core.config import settings
from ctgroups.core.errors import FieldTooSmallError, SearchBudgetExceeded
from ctgroups.core.field import FieldCtx
from ctgroups.models.amalgam import CTAmalgam
from ctgroups.models.classes import IsoClass, IsoWitness, MatrixIsoWitness, class_key
from ctgroups.models.coords import ACoord, DirectedEdge, Pointing, all_coords
from ctgroups.models.diagram import Diagram, SpanningData
from ctgroups.models.maps import SLAut
from ctgroups.services.diagram_service import spanning_structure
from ctgroups.services.matrix_group_service import sl2_generators
from ctgroups.services.path_service import alpha, phi_of_pointing, random_pointing, transform_pointing

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Classification by Phi
# ---------------------------------------------------------------------------

def is_orientable_phi(c: IsoClass) -> bool:
    return all(a.eps == 0 for _, a in c.phi)


def enumerate_classes(d: Diagram, field: FieldCtx, i0: str | None = None) -> list[IsoClass]:
    """One class per map H -> Z2 x Zm, with its canonical pointing supported on H."""
    if field.order < 4:
        raise FieldTooSmallError(field.order, "classifying Curtis-Tits structures")
    sd = spanning_structure(d, i0)
    coords = all_coords(field.m)
    classes = []
    for values in product(coords, repeat=sd.rank):
        phi = tuple(zip(sd.extra, values))
        canonical = Pointing.from_mapping(field.m, phi)
        classes.append(IsoClass(phi=phi, orientable=all(a.eps == 0 for a in values), canonical=canonical))
    logger.info(
        f"{len(classes)} classes ({sum(c.orientable for c in classes)} orientable) "
        f"on {len(d.vertices)} vertices over {field.name}"
    )
    return classes


def phi_key(delta: Pointing, sd: SpanningData) -> str:
    return class_key(phi_of_pointing(delta, sd))


def pointings_isomorphic(delta1: Pointing, delta2: Pointing, sd: SpanningData) -> bool:
    return phi_of_pointing(delta1, sd) == phi_of_pointing(delta2, sd)


def partition_by_phi(pointings: list[Pointing], sd: SpanningData) -> dict[str, list[Pointing]]:
    buckets: dict[str, list[Pointing]] = {}
    for delta in pointings:
        buckets.setdefault(phi_key(delta, sd), []).append(delta)
    return buckets


def same_partition(a: dict[str, list[Pointing]], b: dict[str, list[Pointing]]) -> bool:
    """Compare two partitions as set systems, ignoring labels."""
    return {frozenset(v) for v in a.values()} == {frozenset(v) for v in b.values()}


def classify_with_base(d: Diagram, field: FieldCtx, i0: str, pointings: list[Pointing] | None = None) -> bool:
    """Partition pointings by Phi at the default base and at i0; True when they agree."""
    if pointings is None:
        pointings = pointing_universe(d, field.m)
    default = partition_by_phi(pointings, spanning_structure(d))
    moved = partition_by_phi(pointings, spanning_structure(d, i0))
    agree = same_partition(default, moved)
    if not agree:
        logger.warning(f"Classification depends on the base vertex {i0}")
    return agree


# ---------------------------------------------------------------------------
# Pointing oracle
# ---------------------------------------------------------------------------

def verify_iso_witness(delta1: Pointing, delta2: Pointing, w: IsoWitness, d: Diagram) -> bool:
    """delta1_ij + alpha(a_ij) = a_i + delta2_ij on every directed edge."""
    for e in d.directed_edges():
        if e.source not in w.vertex or e.key not in w.edge:
            return False
        if delta1[e] + alpha(e, w.edge[e.key]) != w.vertex[e.source] + delta2[e]:
            return False
    return True


def oracle_pointing_iso(delta1: Pointing, delta2: Pointing, d: Diagram) -> IsoWitness | None:
    """Exhaustive search over vertex coordinates; edge coordinates are forced per direction."""
    m = delta1.m
    n = len(d.vertices)
    size = (2 * m) ** n
    if n > settings.POINTING_ORACLE_MAX_VERTICES or size > settings.POINTING_ORACLE_BUDGET:
        raise SearchBudgetExceeded("pointing oracle", size, settings.POINTING_ORACLE_BUDGET)
    pairs = [(DirectedEdge(a, b), DirectedEdge(b, a)) for a, b in d.edges]
    for assignment in product(all_coords(m), repeat=n):
        vertex = dict(zip(d.vertices, assignment))
        edge = {}
        for e, back in pairs:
            forward = vertex[e.source] + delta2[e] - delta1[e]
            backward = vertex[back.source] + delta2[back] - delta1[back]
            if forward != backward:
                break
            edge[e.key] = forward
        else:
            w = IsoWitness(vertex=vertex, edge=edge)
            if not verify_iso_witness(delta1, delta2, w, d):
                raise AssertionError("pointing oracle produced a witness that does not verify")
            return w
    return None


# ---------------------------------------------------------------------------
# Matrix oracle
# ---------------------------------------------------------------------------

def _square_holds(A1: CTAmalgam, A2: CTAmalgam, e: DirectedEdge, a_i: SLAut, a_ij: SLAut) -> bool:
    """a_ij . phi1_ij = phi2_ij . a_i on the SL2 generators."""
    inc1, inc2 = A1.inclusion(e), A2.inclusion(e)
    return all(a_ij(inc1(s)) == inc2(a_i(s)) for s in sl2_generators(A1.field))


def verify_matrix_witness(A1: CTAmalgam, A2: CTAmalgam, w: MatrixIsoWitness) -> bool:
    for e in A1.directed_edges():
        if not _square_holds(A1, A2, e, w.vertex[e.source], w.edge[e.key]):
            return False
    return True


def oracle_matrix_iso(A1: CTAmalgam, A2: CTAmalgam) -> MatrixIsoWitness | None:
    """Search vertex and edge automorphisms in the coordinate complements, checking
    the defining squares on actual matrices."""
    if A1.diagram != A2.diagram or A1.field != A2.field:
        raise ValueError("matrix oracle compares amalgams over the same diagram and field")
    d, field = A1.diagram, A1.field
    n = len(d.vertices)
    if n > settings.MATRIX_ORACLE_MAX_VERTICES:
        raise SearchBudgetExceeded("matrix oracle", n, settings.MATRIX_ORACLE_MAX_VERTICES)
    coords = all_coords(field.m)
    auts = {c: SLAut.from_coord(c) for c in coords}
    gens = sl2_generators(field)

    # valid[e][c_i] = edge coordinates closing the square on e for vertex coordinate c_i
    valid: dict[DirectedEdge, dict[ACoord, set[ACoord]]] = {}
    for e in d.directed_edges():
        inc1, inc2 = A1.inclusion(e), A2.inclusion(e)
        lhs_base = [inc1(s) for s in gens]
        lhs = {c: [auts[c](x) for x in lhs_base] for c in coords}
        valid[e] = {}
        for ci in coords:
            rhs = [inc2(auts[ci](s)) for s in gens]
            valid[e][ci] = {cij for cij in coords if lhs[cij] == rhs}

    for assignment in product(coords, repeat=n):
        vertex = dict(zip(d.vertices, assignment))
        edge = {}
        for a, b in d.edges:
            options = valid[DirectedEdge(a, b)][vertex[a]] & valid[DirectedEdge(b, a)][vertex[b]]
            if not options:
                break
            edge[tuple(sorted((a, b)))] = min(options)
        else:
            w = MatrixIsoWitness(
                vertex={v: auts[c] for v, c in vertex.items()},
                edge={k: auts[c] for k, c in edge.items()},
            )
            if not verify_matrix_witness(A1, A2, w):
                raise AssertionError("matrix oracle produced a witness that does not verify")
            return w
    return None


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def pointing_universe(d: Diagram, m: int) -> list[Pointing]:
    edges = d.directed_edges()
    size = (2 * m) ** len(edges)
    if size > settings.ORACLE_MAX_UNIVERSE:
        raise SearchBudgetExceeded("pointing universe", size, settings.ORACLE_MAX_UNIVERSE)
    return [Pointing.from_mapping(m, zip(edges, values)) for values in product(all_coords(m), repeat=len(edges))]


def sample_oracle_pairs(
    d: Diagram, m: int, sd: SpanningData, rng: random.Random, same: int | None = None, cross: int | None = None
) -> list[tuple[Pointing, Pointing, bool]]:
    """(delta1, delta2, same class?) triples.

    Every pair when the universe has at most ORACLE_FULL_PAIRWISE_LIMIT pairs;
    otherwise `same` same-class and `cross` cross-class pairs from a seeded stream.
    """
    same = settings.ORACLE_SAME_PAIRS if same is None else same
    cross = settings.ORACLE_CROSS_PAIRS if cross is None else cross
    universe_size = (2 * m) ** len(d.directed_edges())
    if universe_size <= settings.ORACLE_MAX_UNIVERSE:
        universe = pointing_universe(d, m)
        keys = [phi_key(delta, sd) for delta in universe]
        if len(universe) ** 2 <= settings.ORACLE_FULL_PAIRWISE_LIMIT:
            return [(a, b, ka == kb) for a, ka in zip(universe, keys) for b, kb in zip(universe, keys)]
        buckets: dict[str, list[Pointing]] = {}
        for delta, k in zip(universe, keys):
            buckets.setdefault(k, []).append(delta)
        out = []
        for _ in range(same):
            i = rng.randrange(len(universe))
            out.append((universe[i], rng.choice(buckets[keys[i]]), True))
        if len(buckets) > 1:
            for _ in range(cross):
                i = rng.randrange(len(universe))
                while True:
                    j = rng.randrange(len(universe))
                    if keys[j] != keys[i]:
                        break
                out.append((universe[i], universe[j], False))
        return out

    coords = all_coords(m)
    out = []
    for _ in range(same):
        delta = random_pointing(d, m, rng)
        vertex = {v: rng.choice(coords) for v in d.vertices}
        edge = {tuple(sorted(e)): rng.choice(coords) for e in d.edges}
        out.append((delta, transform_pointing(delta, vertex, edge, d), True))
    if sd.rank:
        for _ in range(cross):
            delta = random_pointing(d, m, rng)
            while True:
                other = random_pointing(d, m, rng)
                if phi_key(other, sd) != phi_key(delta, sd):
                    break
            out.append((delta, other, False))
    return out
