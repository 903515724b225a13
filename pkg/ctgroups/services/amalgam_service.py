"""Realize pointings as concrete matrix amalgams and check them.

Each directed edge (i, j) gets phi_ij = psi_ij . delta_ij^-1. For an edge stored
as (a, b), psi_ab is the upper-left block of SL3 and psi_ba the lower-right
block (or, with the "reversed" convention, the block on (e3, e2)).
"""

import logging
import random
from dataclasses import dataclass
from itertools import product

from ctgroups.core.config import settings
from ctgroups.core.errors import AmalgamConstructionError, FieldTooSmallError, SearchBudgetExceeded
from ctgroups.core.field import FieldCtx, FieldElem
from ctgroups.core.matrix import Mat
from ctgroups.models.amalgam import CentralProductElem, Convention, CTAmalgam
from ctgroups.models.classes import MatrixIsoWitness
from ctgroups.models.coords import DirectedEdge, Pointing, all_coords
from ctgroups.models.diagram import Diagram
from ctgroups.models.maps import Inclusion, SLAut
from ctgroups.models.reports import CheckReport
from ctgroups.services.diagram_service import require_admissible
from ctgroups.services.matrix_group_service import (
    enumerate_sl2,
    sl2_generators,
    spans_borel_radical,
    unipotent_closure,
    x_minus,
    x_plus,
)
from ctgroups.services.standard_pair_service import (
    diagonal_torus,
    extend_diagonal,
    is_standard_pair,
    lower_right,
    reversed_lower,
    upper_left,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorusResult:
    vertex: str
    per_edge: dict[tuple[str, str], frozenset[Mat]]
    consistent: bool

    @property
    def torus(self) -> frozenset[Mat]:
        return next(iter(self.per_edge.values()))

    @property
    def diagonal(self) -> bool:
        return all(x.rows[0][1].is_zero() and x.rows[1][0].is_zero() for x in self.torus)

    @property
    def generators(self) -> list[Mat]:
        """An element generating the (cyclic) torus, if there is one."""
        for x in sorted(self.torus, key=lambda m: str(m.rows)):
            if len({x.power(k) for k in range(1, len(self.torus) + 1)}) == len(self.torus):
                return [x]
        return sorted(self.torus, key=lambda m: str(m.rows))


@dataclass(frozen=True)
class OrientationWitness:
    signs: dict[str, str]
    certificates: dict[tuple[str, str], frozenset[Mat]]


@dataclass(frozen=True)
class DiagonalExtensionReport:
    edge_maps: dict[tuple[str, str], Mat]
    checks: CheckReport

    @property
    def ok(self) -> bool:
        return self.checks.ok


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def build_amalgam(d: Diagram, delta: Pointing, field: FieldCtx, convention: Convention = "forward") -> CTAmalgam:
    require_admissible(d)
    if field.order < 4:
        raise FieldTooSmallError(field.order, "building a Curtis-Tits amalgam")
    if delta.m != field.m:
        raise ValueError(f"pointing coordinates are mod {delta.m}, field needs mod {field.m}")
    upper = upper_left(field)
    lower = lower_right(field) if convention == "forward" else reversed_lower(field)
    inclusions = {}
    for a, b in d.edges:
        e = DirectedEdge(a, b)
        inclusions[e] = Inclusion(upper, SLAut.from_coord(delta[e]))
        inclusions[e.reverse] = Inclusion(lower, SLAut.from_coord(delta[e.reverse]))
    amalgam = CTAmalgam(diagram=d, field=field, pointing=delta, convention=convention, inclusions=inclusions)
    for a, b in d.edges:
        e = DirectedEdge(a, b)
        if is_standard_pair(amalgam.inclusion(e), amalgam.inclusion(e.reverse), field) is None:
            raise AmalgamConstructionError(f"edge {a} {b} is not a standard pair")
        for direction in (e, e.reverse):
            if not concreteness_holds(amalgam, direction):
                raise AmalgamConstructionError(f"inclusion on {direction} does not carry A_ij onto A_i")
    logger.debug(f"Built amalgam on {len(d.vertices)} vertices over {field.name} ({convention})")
    return amalgam


def concreteness_holds(A: CTAmalgam, e: DirectedEdge) -> bool:
    """ad(phi_ij) carries each coordinate automorphism of the edge group to the
    vertex automorphism with the same coordinates."""
    inc = A.inclusion(e)
    gens = sl2_generators(A.field)
    for c in all_coords(A.field.m):
        aut = SLAut.from_coord(c)
        if any(inc.preimage(aut(inc(s))) != aut(s) for s in gens):
            return False
    return True


def extract_pointing(A: CTAmalgam) -> Pointing:
    """Recover delta from the inclusion maps by matching all coordinates on generators."""
    gens = sl2_generators(A.field)
    found = {}
    for e in A.directed_edges():
        inc = A.inclusion(e)
        for c in all_coords(A.field.m):
            untwist = SLAut.from_coord(c).inverse()
            if all(inc(s) == inc.embedding(untwist(s)) for s in gens):
                found[e] = c
                break
        else:
            raise AmalgamConstructionError(f"inclusion on {e} is not a coordinate twist of its block")
    return Pointing.from_mapping(A.field.m, found)


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------

def _sample_words(field: FieldCtx, rng: random.Random, count: int, length: int = 4) -> list[Mat]:
    gens = sl2_generators(field)
    out = []
    for _ in range(count):
        x = gens[rng.randrange(len(gens))]
        for _ in range(length - 1):
            x = x * gens[rng.randrange(len(gens))]
        out.append(x)
    return out


def verify_ct_axioms(A: CTAmalgam, seed: int = 0) -> CheckReport:
    """CT2 on every edge, injective homomorphic inclusions, commuting non-edge pairs."""
    report = CheckReport()
    field = A.field
    gens = sl2_generators(field)
    rng = random.Random(seed)
    sample = _sample_words(field, rng, settings.NONTRIVIALITY_SAMPLE)
    for a, b in A.diagram.edges:
        e = DirectedEdge(a, b)
        inc_ab, inc_ba = A.inclusion(e), A.inclusion(e.reverse)
        report.add("CT2", f"{a} {b}", is_standard_pair(inc_ab, inc_ba, field) is not None)
        for direction, inc in ((e, inc_ab), (e.reverse, inc_ba)):
            subject = str(direction)
            report.add("in-SL3", subject, all(inc(s).is_special() for s in gens))
            hom = all(inc(x * y) == inc(x) * inc(y) for x in gens + sample[:4] for y in gens)
            report.add("homomorphism", subject, hom)
            distinct = set(sample) | set(gens)
            injective = len({inc(x) for x in distinct}) == len(distinct) and not any(
                inc(x).is_identity() for x in distinct if not x.is_identity()
            )
            report.add("injective", subject, injective)
            report.add("concrete", subject, concreteness_holds(A, direction))
    identity = Mat.identity(field, 2)
    for a, b in A.diagram.non_edges():
        commute = all(
            CentralProductElem.of(g, identity) * CentralProductElem.of(identity, h)
            == CentralProductElem.of(identity, h) * CentralProductElem.of(g, identity)
            for g in gens
            for h in gens
        )
        report.add("non-edge", f"{a} {b}", commute)
    failed = report.failures()
    if failed:
        logger.warning(f"{len(failed)} CT checks failed: {[f'{c.name}@{c.subject}' for c in failed]}")
    return report


# ---------------------------------------------------------------------------
# Tori
# ---------------------------------------------------------------------------

def _scan_budget(field: FieldCtx) -> None:
    if field.order > settings.MAX_SCAN_FIELD_ORDER:
        raise SearchBudgetExceeded(f"normalizer scan over {field.name}", field.order, settings.MAX_SCAN_FIELD_ORDER)


def compute_Di(A: CTAmalgam, i: str) -> TorusResult:
    """N_(G_ij)(G_j) intersected with G_i for every edge at i, pulled back to SL2."""
    neighbors = A.diagram.neighbors(i)
    if not neighbors:
        raise ValueError(f"vertex {i} has no neighbours")
    _scan_budget(A.field)
    elements = enumerate_sl2(A.field)
    gens = sl2_generators(A.field)
    per_edge = {}
    for j in neighbors:
        inc_i, inc_j = A.inclusion(DirectedEdge(i, j)), A.inclusion(DirectedEdge(j, i))
        other_gens = [inc_j(s) for s in gens]
        found = set()
        for s in elements:
            x = inc_i(s)
            x_inv = x.inverse()
            if all(inc_j.contains(x * g * x_inv) for g in other_gens):
                found.add(s)
        per_edge[(i, j)] = frozenset(found)
    consistent = len(set(per_edge.values())) == 1
    if not consistent:
        logger.warning(f"D_{i} depends on the edge: sizes {[len(v) for v in per_edge.values()]}")
    return TorusResult(vertex=i, per_edge=per_edge, consistent=consistent)


def check_edge_torus(A: CTAmalgam, a: str, b: str) -> bool:
    """D_a and D_b normalize both blocks of the edge group and generate a diagonal group there."""
    field = A.field
    torus = diagonal_torus(field)
    inc_a, inc_b = A.inclusion(DirectedEdge(a, b)), A.inclusion(DirectedEdge(b, a))
    images = [inc_a(x) for x in torus] + [inc_b(x) for x in torus]
    gens_a = [inc_a(s) for s in sl2_generators(field)]
    gens_b = [inc_b(s) for s in sl2_generators(field)]
    for t in images:
        t_inv = t.inverse()
        if not all(inc_a.contains(t * g * t_inv) for g in gens_a):
            return False
        if not all(inc_b.contains(t * g * t_inv) for g in gens_b):
            return False
    zero = field.zero()
    diagonal = all(t.rows[r][c] == zero for t in images for r in range(3) for c in range(3) if r != c)
    commuting = all(s * t == t * s for s in images for t in images)
    return diagonal and commuting


def witness_preserves_tori(A1: CTAmalgam, A2: CTAmalgam, w: MatrixIsoWitness) -> bool:
    """Each vertex automorphism of a matrix witness maps D_i onto D_i."""
    torus = diagonal_torus(A1.field)
    return all(frozenset(a(x) for x in torus) == torus for a in w.vertex.values())


# ---------------------------------------------------------------------------
# Orientation
# ---------------------------------------------------------------------------

def _root_group(field: FieldCtx, sign: str) -> list[Mat]:
    make = x_plus if sign == "+" else x_minus
    return [make(b) for b in field.basis()]


def orientation_search(A: CTAmalgam) -> OrientationWitness | None:
    """Signs choosing X+ or X- per vertex so that on every edge the two image root
    groups span the unipotent radical of one Borel subgroup."""
    d, field = A.diagram, A.field
    if len(d.vertices) > settings.ORIENTATION_MAX_VERTICES:
        raise SearchBudgetExceeded("orientation search", len(d.vertices), settings.ORIENTATION_MAX_VERTICES)
    roots = {s: _root_group(field, s) for s in "+-"}
    verdicts: dict[tuple[str, str, str, str], bool] = {}

    def edge_ok(a: str, b: str, sa: str, sb: str) -> bool:
        key = (a, b, sa, sb)
        if key not in verdicts:
            inc_a, inc_b = A.inclusion(DirectedEdge(a, b)), A.inclusion(DirectedEdge(b, a))
            verdicts[key] = spans_borel_radical([inc_a(x) for x in roots[sa]], [inc_b(x) for x in roots[sb]])
        return verdicts[key]

    for signs in product("+-", repeat=len(d.vertices)):
        chosen = dict(zip(d.vertices, signs))
        if all(edge_ok(a, b, chosen[a], chosen[b]) for a, b in d.edges):
            certificates = {}
            for a, b in d.edges:
                inc_a, inc_b = A.inclusion(DirectedEdge(a, b)), A.inclusion(DirectedEdge(b, a))
                gens = [inc_a(x) for x in roots[chosen[a]]] + [inc_b(x) for x in roots[chosen[b]]]
                certificates[(a, b)] = unipotent_closure(gens)
            logger.info(f"Orientation found: {''.join(signs)}")
            return OrientationWitness(signs=chosen, certificates=certificates)
    logger.info(f"No orientation among {2 ** len(d.vertices)} sign assignments")
    return None


# ---------------------------------------------------------------------------
# Diagonal automorphisms
# ---------------------------------------------------------------------------

def _conj(g: Mat):
    g_inv = g.inverse()
    return lambda m: g * m * g_inv


def apply_diagonal_extension(A: CTAmalgam, taus: dict[str, tuple[FieldElem, FieldElem]]) -> DiagonalExtensionReport:
    """Extend per-vertex diagonal automorphisms conj(diag(a, b)) to every edge group
    and to the central products on non-edges, and check compatibility on generators."""
    field = A.field
    one = field.one()
    gens = sl2_generators(field)
    vertex_maps = {v: _conj(Mat.diag(field, list(taus.get(v, (one, one))))) for v in A.diagram.vertices}
    checks = CheckReport()
    edge_maps = {}
    for a, b in A.diagram.edges:
        e = DirectedEdge(a, b)
        inc_a, inc_b = A.inclusion(e), A.inclusion(e.reverse)
        # move each vertex diagonal into block coordinates through the twist
        da = inc_a.twist.inverse()(Mat.diag(field, list(taus.get(a, (one, one)))))
        db = inc_b.twist.inverse()(Mat.diag(field, list(taus.get(b, (one, one)))))
        x, y = da.rows[0][0], da.rows[1][1]
        u, w = db.rows[0][0], db.rows[1][1]
        tau = extend_diagonal(x, y, u, w) if A.convention == "forward" else extend_diagonal(x, y, w, u)
        edge_maps[(a, b)] = tau
        conj_tau = _conj(tau)
        for direction, inc in ((e, inc_a), (e.reverse, inc_b)):
            ok = all(conj_tau(inc(s)) == inc(vertex_maps[direction.source](s)) for s in gens)
            checks.add("extends", str(direction), ok)
    identity = Mat.identity(field, 2)
    for a, b in A.diagram.non_edges():
        ta, tb = vertex_maps[a], vertex_maps[b]

        def image(g: Mat, h: Mat) -> CentralProductElem:
            return CentralProductElem.of(ta(g), tb(h))

        # (M, N) and (-M, -N) name the same element
        well_defined = all(image(g, h) == image(-g, -h) for g in gens for h in gens)
        multiplicative = all(
            image(g * g2, h) == image(g, h) * image(g2, identity) for g in gens for g2 in gens for h in gens
        )
        checks.add("central-product", f"{a} {b}", well_defined and multiplicative)
    return DiagonalExtensionReport(edge_maps=edge_maps, checks=checks)
