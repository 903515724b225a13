"""Standard pairs of SL2-subgroups in SL3: detection, complements, tori and diagonal extension."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ctgroups.core.errors import FieldTooSmallError, MatrixError
from ctgroups.core.field import FieldCtx, FieldElem
from ctgroups.core.matrix import Mat, Vector, apply_to_vector, in_span, intersect_spans, nullspace, span_basis
from ctgroups.models.maps import BlockEmbedding
from ctgroups.services.matrix_group_service import (
    enumerate_sl2,
    normalizes,
    sl2_generators,
    torus_element,
)

logger = logging.getLogger(__name__)

Embedding = Callable[[Mat], Mat]


@dataclass(frozen=True)
class StandardPairWitness:
    e1: Vector
    e2: Vector
    e3: Vector
    U1: tuple[Vector, ...]
    V1: tuple[Vector, ...]
    U2: tuple[Vector, ...]
    V2: tuple[Vector, ...]


# ---------------------------------------------------------------------------
# Blocks of SL3
# ---------------------------------------------------------------------------

def sl3_block(field: FieldCtx, coords: tuple[int, int], frame: Mat | None = None) -> BlockEmbedding:
    return BlockEmbedding(3, coords, field, frame)


def upper_left(field: FieldCtx) -> BlockEmbedding:
    return sl3_block(field, (0, 1))


def lower_right(field: FieldCtx) -> BlockEmbedding:
    return sl3_block(field, (1, 2))


def reversed_lower(field: FieldCtx) -> BlockEmbedding:
    """(f1, f2) -> (e3, e2)."""
    return sl3_block(field, (2, 1))


# ---------------------------------------------------------------------------
# Subspaces attached to a subgroup
# ---------------------------------------------------------------------------

def fixed_space(gens: Sequence[Mat], field: FieldCtx) -> tuple[Vector, ...]:
    """Vectors fixed by every generator."""
    n = gens[0].n
    identity = Mat.identity(field, n)
    rows = [row for g in gens for row in (g - identity).rows]
    return nullspace(rows, field, n)


def moved_space(gens: Sequence[Mat], field: FieldCtx) -> tuple[Vector, ...]:
    """Span of the images of (g - I), the smallest subspace carrying the action."""
    n = gens[0].n
    identity = Mat.identity(field, n)
    cols = [(g - identity).column(j) for g in gens for j in range(n)]
    return span_basis(cols, field, n)


def _preserves(gens: Sequence[Mat], basis: Sequence[Vector], field: FieldCtx) -> bool:
    return all(in_span(basis, apply_to_vector(g, v), field) for g in gens for v in basis)


def standard_pair_from_generators(
    gens1: Sequence[Mat], gens2: Sequence[Mat], field: FieldCtx
) -> StandardPairWitness | None:
    U1, V1 = fixed_space(gens1, field), moved_space(gens1, field)
    U2, V2 = fixed_space(gens2, field), moved_space(gens2, field)
    if not (len(U1) == 1 and len(V1) == 2 and len(U2) == 1 and len(V2) == 2):
        return None
    if in_span(V1, U1[0], field) or in_span(V2, U2[0], field):
        return None
    if not (in_span(V2, U1[0], field) and in_span(V1, U2[0], field)):
        return None
    if not (_preserves(gens1, V1, field) and _preserves(gens2, V2, field)):
        return None
    middle = intersect_spans(V1, V2, field, gens1[0].n)
    if len(middle) != 1:
        return None
    return StandardPairWitness(e1=U2[0], e2=middle[0], e3=U1[0], U1=U1, V1=V1, U2=U2, V2=V2)


def is_standard_pair(S1: Embedding, S2: Embedding, field: FieldCtx) -> StandardPairWitness | None:
    """Decide from the images of the SL2 generators whether (S1, S2) is a standard pair."""
    gens = sl2_generators(field)
    return standard_pair_from_generators([S1(g) for g in gens], [S2(g) for g in gens], field)


# ---------------------------------------------------------------------------
# Tori and complements
# ---------------------------------------------------------------------------

def torus_generators(S: Embedding, field: FieldCtx) -> list[Mat]:
    """Image of diag(a, a^-1) for a primitive element a."""
    return [S(torus_element(field, field.primitive_element()))]


def diagonal_torus(field: FieldCtx) -> frozenset[Mat]:
    return frozenset(torus_element(field, a) for a in field.nonzero())


def _eigenspaces(t: Mat, field: FieldCtx) -> list[tuple[FieldElem, tuple[Vector, ...]]]:
    out = []
    identity = Mat.identity(field, t.n)
    for lam in field.nonzero():
        space = nullspace((t - identity.scale(lam)).rows, field, t.n)
        if space:
            out.append((lam, space))
    return out


def standard_complements_normalized(D1: Sequence[Mat], S1: Embedding, field: FieldCtx) -> list[BlockEmbedding]:
    """The standard complements to S1 normalized by D1, one per eigenspace E != E1 of D1."""
    if field.order < 4:
        raise FieldTooSmallError(field.order, "separating the eigenspaces of the torus")
    t = D1[0]
    spaces = _eigenspaces(t, field)
    if len(spaces) != 3 or any(len(s) != 1 for _, s in spaces):
        raise FieldTooSmallError(field.order, "separating the eigenspaces of the torus")
    gens1 = [S1(g) for g in sl2_generators(field)]
    fixed = [s[0] for _, s in spaces if all(apply_to_vector(g, s[0]) == s[0] for g in gens1)]
    if len(fixed) != 1:
        raise MatrixError("the torus does not belong to the given subgroup")
    e1 = fixed[0]
    others = [s[0] for _, s in spaces if s[0] != e1]
    out = []
    for k, v in enumerate(others):
        w = others[1 - k]
        # columns: the fixed line E, then the plane spanned by the other two lines
        frame = Mat(field, [[v[r], w[r], e1[r]] for r in range(3)])
        out.append(sl3_block(field, (1, 2), frame))
    logger.debug(f"Found {len(out)} standard complements over {field.name}")
    return out


def tori_normalized_by(D1: Sequence[Mat], S2: Embedding, field: FieldCtx) -> list[frozenset[Mat]]:
    """Split tori of S2 (conjugates of the diagonal torus) normalized by every element of D1."""
    base = diagonal_torus(field)
    conjugates: dict[frozenset[Mat], None] = {}
    for g in enumerate_sl2(field):
        g_inv = g.inverse()
        conjugates.setdefault(frozenset(g * x * g_inv for x in base), None)
    found = []
    for torus in conjugates:
        image = frozenset(S2(x) for x in torus)
        if all(normalizes(d, image) for d in D1):
            found.append(image)
    logger.debug(f"{len(found)} of {len(conjugates)} split tori are normalized")
    return found


def image_of(S: Embedding, elements) -> frozenset[Mat]:
    return frozenset(S(x) for x in elements)


# ---------------------------------------------------------------------------
# Diagonal automorphisms
# ---------------------------------------------------------------------------

def extend_diagonal(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Mat:
    """tau_ij = diag(ac, bc, bd) from tau_i = diag(a, b, 1) and tau_j = diag(1, c, d)."""
    return Mat.diag(a.field, [a * c, b * c, b * d])


def diagonal_extension_restricts(
    a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem, S1: Embedding, S2: Embedding, field: FieldCtx
) -> bool:
    """Conjugation by diag(ac, bc, bd) restricts to conj(diag(a, b)) on S1 and conj(diag(c, d)) on S2."""
    tau = extend_diagonal(a, b, c, d)
    tau_inv = tau.inverse()
    left = Mat.diag(field, [a, b])
    right = Mat.diag(field, [c, d])
    for g in sl2_generators(field):
        if tau * S1(g) * tau_inv != S1(left * g * left.inverse()):
            return False
        if tau * S2(g) * tau_inv != S2(right * g * right.inverse()):
            return False
    return True
