"""Maps between matrix groups: semilinear automorphisms, block embeddings, inclusions."""

from dataclasses import dataclass, field

from ctgroups.core.errors import MatrixError
from ctgroups.core.field import FieldCtx
from ctgroups.core.matrix import Mat, Ring
from ctgroups.models.coords import ACoord


def transpose_inverse(m: Mat) -> Mat:
    return m.transpose().inverse()


@dataclass(frozen=True)
class SLAut:
    """M -> g . omega^eps(sigma^r(M)) . g^-1 on SL_n over a field."""

    eps: int
    r: int
    m: int
    g: Mat | None = None
    _g_inv: Mat | None = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "eps", self.eps % 2)
        object.__setattr__(self, "r", self.r % self.m)
        if self.g is not None and self.g.is_identity():
            object.__setattr__(self, "g", None)
        object.__setattr__(self, "_g_inv", None if self.g is None else self.g.inverse())

    @classmethod
    def from_coord(cls, a: ACoord, g: Mat | None = None) -> "SLAut":
        return cls(a.eps, a.r, a.m, g)

    @classmethod
    def identity(cls, m: int) -> "SLAut":
        return cls(0, 0, m)

    @property
    def coord(self) -> ACoord:
        return ACoord(self.eps, self.r, self.m)

    def __call__(self, M: Mat) -> Mat:
        if self.g is not None and self.g.n != M.n:
            raise MatrixError(f"automorphism of degree {self.g.n} applied to a {M.n}x{M.n} matrix")
        x = M.frobenius(self.r) if self.r else M
        if self.eps:
            x = transpose_inverse(x)
        if self.g is not None:
            x = self.g * x * self._g_inv
        return x

    def compose(self, other: "SLAut") -> "SLAut":
        """self after other: (e1+e2, r1+r2, g1 . omega^e1(sigma^r1(g2)))."""
        if self.m != other.m:
            raise MatrixError("automorphisms over different fields")
        g = self.g
        if other.g is not None:
            moved = other.g.frobenius(self.r) if self.r else other.g
            if self.eps:
                moved = transpose_inverse(moved)
            g = moved if g is None else g * moved
        return SLAut(self.eps + other.eps, self.r + other.r, self.m, g)

    def inverse(self) -> "SLAut":
        g = None
        if self.g is not None:
            moved = self.g.frobenius(-self.r) if self.r else self.g
            if self.eps:
                moved = transpose_inverse(moved)
            g = moved.inverse()
        return SLAut(self.eps, -self.r, self.m, g)


@dataclass(frozen=True)
class BlockEmbedding:
    """SL_k -> SL_n placing the source basis on target coordinates `coords`
    (0-based), then conjugating by the frame: X -> P . X . P^-1."""

    dim: int
    coords: tuple[int, ...]
    ring: Ring
    frame: Mat | None = None
    _frame_inv: Mat | None = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords) or not all(0 <= c < self.dim for c in self.coords):
            raise MatrixError(f"bad block coordinates {self.coords} for dimension {self.dim}")
        object.__setattr__(self, "_frame_inv", None if self.frame is None else self.frame.inverse())

    @property
    def source_dim(self) -> int:
        return len(self.coords)

    def __call__(self, M: Mat) -> Mat:
        if M.n != self.source_dim:
            raise MatrixError(f"block of size {self.source_dim} given a {M.n}x{M.n} matrix")
        one, zero = self.ring.one(), self.ring.zero()
        rows = [[one if i == j else zero for j in range(self.dim)] for i in range(self.dim)]
        for a, ca in enumerate(self.coords):
            for b, cb in enumerate(self.coords):
                rows[ca][cb] = self.ring.lift(M.rows[a][b])
        x = Mat(self.ring, rows)
        if self.frame is not None:
            x = self.frame * x * self._frame_inv
        return x

    def _unframed(self, X: Mat) -> Mat:
        return X if self.frame is None else self._frame_inv * X * self.frame

    def contains(self, X: Mat) -> bool:
        """Is X in the image (identity away from the block)?"""
        if X.n != self.dim:
            return False
        y = self._unframed(X)
        one, zero = self.ring.one(), self.ring.zero()
        inside = set(self.coords)
        for i in range(self.dim):
            for j in range(self.dim):
                if i in inside and j in inside:
                    continue
                if y.rows[i][j] != (one if i == j else zero):
                    return False
        return True

    def extract(self, X: Mat) -> Mat:
        if not self.contains(X):
            raise MatrixError("matrix is not in the image of the block embedding")
        y = self._unframed(X)
        return Mat(self.ring, [[y.rows[a][b] for b in self.coords] for a in self.coords])

    def specialize(self, fn, field: FieldCtx) -> "BlockEmbedding":
        """Apply an entrywise ring map (for instance t -> c) to the frame."""
        frame = None if self.frame is None else self.frame.map_entries(fn, field)
        return BlockEmbedding(self.dim, self.coords, field, frame)


@dataclass(frozen=True)
class Inclusion:
    """phi = psi . delta^-1: twist by the inverse pointing value, then embed."""

    embedding: BlockEmbedding
    twist: SLAut
    _untwist: SLAut = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_untwist", self.twist.inverse())

    def __call__(self, M: Mat) -> Mat:
        return self.embedding(self._untwist(M))

    def preimage(self, X: Mat) -> Mat:
        return self.twist(self.embedding.extract(X))

    def contains(self, X: Mat) -> bool:
        return self.embedding.contains(X)
