"""Matrix groups over finite fields: root elements, omega, semilinear automorphisms,
subgroup closures and the unipotence tests behind the orientation search."""

import logging
from collections import deque
from collections.abc import Iterable, Sequence

from ctgroups.core.cache import cache_get, cache_set
from ctgroups.core.config import settings
from ctgroups.core.errors import MatrixError, SearchBudgetExceeded
from ctgroups.core.field import FieldCtx, FieldElem
from ctgroups.core.matrix import Mat, nullspace
from ctgroups.models.coords import ACoord, all_coords
from ctgroups.models.maps import SLAut, transpose_inverse

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Distinguished elements
# ---------------------------------------------------------------------------

def root_elem(n: int, i: int, j: int, lam: FieldElem) -> Mat:
    """Identity plus lam at (i, j), indices 1-based: e_j -> e_j + lam e_i."""
    if i == j:
        raise MatrixError("root elements need i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise MatrixError(f"indices ({i}, {j}) out of range for n = {n}")
    field = lam.field
    one, zero = field.one(), field.zero()
    rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
    rows[i - 1][j - 1] = lam
    return Mat(field, rows)


def x_plus(lam: FieldElem) -> Mat:
    return root_elem(2, 1, 2, lam)


def x_minus(lam: FieldElem) -> Mat:
    return root_elem(2, 2, 1, lam)


def weyl_element(field: FieldCtx) -> Mat:
    """The matrix [[0, -1], [1, 0]]."""
    return Mat(field, [[field.zero(), -field.one()], [field.one(), field.zero()]])


def basis_reversal(field: FieldCtx, n: int) -> Mat:
    """Permutation matrix of e_k -> e_(n+1-k)."""
    return Mat(field, [[field.one() if i + j == n - 1 else field.zero() for j in range(n)] for i in range(n)])


def torus_element(field: FieldCtx, a: FieldElem) -> Mat:
    return Mat.diag(field, [a, a.inverse()])


def sl2_generators(field: FieldCtx) -> list[Mat]:
    """X+(z^k), X-(z^k) for the polynomial basis z^k, k < m."""
    key = ("sl2-gens", field)
    cached = cache_get(key)
    if cached is None:
        cached = [x_plus(b) for b in field.basis()] + [x_minus(b) for b in field.basis()]
        cache_set(key, cached)
    return cached


def sl3_generators(field: FieldCtx) -> list[Mat]:
    return [root_elem(3, i, j, b) for i in range(1, 4) for j in range(1, 4) if i != j for b in field.basis()]


def enumerate_sl2(field: FieldCtx) -> list[Mat]:
    """All of SL2(q), in a fixed order."""
    q = field.order
    size = q * (q * q - 1)
    if size > settings.SL2_SCAN_LIMIT:
        raise SearchBudgetExceeded(f"enumerating SL2({q})", size, settings.SL2_SCAN_LIMIT)
    key = ("sl2", field)
    cached = cache_get(key)
    if cached is not None:
        return cached
    out = []
    elems = field.elements()
    one = field.one()
    for a in elems:
        for b in elems:
            for c in elems:
                if not a.is_zero():
                    out.append(Mat(field, [[a, b], [c, (one + b * c) / a]]))
                elif not b.is_zero():
                    # ad - bc = 1 with a = 0 forces c = -1/b, d free
                    d = c
                    out.append(Mat(field, [[a, b], [-b.inverse(), d]]))
    logger.debug(f"Enumerated {len(out)} elements of SL2({q})")
    cache_set(key, out)
    return out


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def omega(M: Mat) -> Mat:
    """Transpose-inverse."""
    return transpose_inverse(M)


def apply_slaut(a: SLAut, M: Mat) -> Mat:
    if not M.ring.is_field:
        raise MatrixError("semilinear automorphisms act on matrices over a field")
    return a(M)


def conjugate(g: Mat, M: Mat) -> Mat:
    return g * M * g.inverse()


def coordinates_faithful(field: FieldCtx) -> bool:
    """Distinct (eps, r) act differently on the SL2 generators."""
    gens = sl2_generators(field)
    seen = set()
    for c in all_coords(field.m):
        images = tuple(apply_slaut(SLAut.from_coord(c), s) for s in gens)
        if images in seen:
            return False
        seen.add(images)
    return True


def coord_automorphisms(field: FieldCtx) -> list[tuple[ACoord, SLAut]]:
    return [(c, SLAut.from_coord(c)) for c in all_coords(field.m)]


def omega_swaps_root_groups(field: FieldCtx, n: int) -> bool:
    """omega(X_ij(lam)) = X_ji(-lam) for every root element with lam in the basis."""
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for lam in field.basis():
                if omega(root_elem(n, i, j, lam)) != root_elem(n, j, i, -lam):
                    return False
    return True


def eigenvalue_multiset(M: Mat) -> tuple[tuple[FieldElem, int], ...]:
    """Eigenvalues in the base field with algebraic multiplicity (nullity of (M - lam)^n)."""
    field = M.ring
    n = M.n
    out = []
    for lam in field.nonzero():
        shifted = M - Mat.identity(field, n).scale(lam)
        mult = len(nullspace(shifted.power(n).rows, field, n))
        if mult:
            out.append((lam, mult))
    return tuple(out)


# ---------------------------------------------------------------------------
# Closures and unipotence
# ---------------------------------------------------------------------------

def is_unipotent(M: Mat) -> bool:
    """(M - I)^n = 0."""
    nil = M - Mat.identity(M.ring, M.n)
    return all(x.is_zero() for row in nil.power(M.n).rows for x in row)


def closure(gens: Sequence[Mat], cap: int | None = None) -> frozenset[Mat]:
    """Breadth-first closure of a generating set inside a finite group."""
    cap = cap or settings.CLOSURE_CAP
    elements, _ = _closure_while(gens, cap, None)
    if elements is None:
        raise SearchBudgetExceeded("subgroup closure", cap + 1, cap)
    return elements


def _closure_while(gens: Sequence[Mat], cap: int, keep) -> tuple[frozenset[Mat] | None, bool]:
    """Closure that aborts when an element fails `keep`.

    Returns (elements, True) on completion, (None, False) on a failed element,
    (None, True) when the cap is hit.
    """
    gens = list(dict.fromkeys(gens))
    if not gens:
        raise MatrixError("closure of an empty generating set")
    identity = Mat.identity(gens[0].ring, gens[0].n)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y in seen:
                continue
            if keep is not None and not keep(y):
                return None, False
            seen.add(y)
            if len(seen) > cap:
                return None, True
            queue.append(y)
    return frozenset(seen), True


def unipotent_closure(gens: Iterable[Mat], cap: int | None = None) -> frozenset[Mat] | None:
    """The closure of `gens` if every element is unipotent, else None. Memoised."""
    gens = frozenset(gens)
    key = ("unipotent-closure", gens)
    hit = cache_get(key)
    if hit is not None:
        return hit or None
    cap = cap or settings.CLOSURE_CAP
    ordered = sorted(gens, key=lambda m: str(m.rows))
    elements, clean = _closure_while(ordered, cap, is_unipotent)
    if elements is None and clean:
        logger.warning(f"Closure of {len(gens)} generators passed {cap} elements; treating as non-unipotent")
    cache_set(key, elements or frozenset())
    return elements


def common_borel(U1_gens: Sequence[Mat], U2_gens: Sequence[Mat]) -> bool:
    """True iff <U1, U2> is unipotent, i.e. lies in a common Borel subgroup."""
    return unipotent_closure(list(U1_gens) + list(U2_gens)) is not None


def spans_borel_radical(U1_gens: Sequence[Mat], U2_gens: Sequence[Mat]) -> bool:
    """<U1, U2> is the full unipotent radical of a Borel subgroup: unipotent,
    non-abelian and of order q^(n(n-1)/2)."""
    gens = list(U1_gens) + list(U2_gens)
    group = unipotent_closure(gens)
    if group is None:
        return False
    n = gens[0].n
    q = gens[0].ring.order
    if len(group) != q ** (n * (n - 1) // 2):
        return False
    return any(a * b != b * a for a in gens for b in gens)


def centralizer_in(gens: Sequence[Mat], elements: Iterable[Mat]) -> list[Mat]:
    """Elements commuting with every generator."""
    return [x for x in elements if all(x * g == g * x for g in gens)]


def normalizes(g: Mat, subgroup: frozenset[Mat]) -> bool:
    g_inv = g.inverse()
    return all(g * x * g_inv in subgroup for x in subgroup)
