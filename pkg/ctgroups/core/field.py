"""Exact arithmetic in GF(p^m) and its Frobenius automorphisms.

Elements are stored as integer codes: the polynomial c0 + c1*x + ... maps to
c0 + c1*p + c2*p^2 + .... All operations go through tables built once per
field, so elements are cheap value objects usable as dictionary keys.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from ctgroups.core.errors import FieldError

logger = logging.getLogger(__name__)

# Monic irreducible moduli, lowest coefficient first. Degree-1 entries are x,
# which makes the prime field its own polynomial quotient.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),    # x^4 + x + 1
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),          # x^2 + 1
    (3, 3): (1, 2, 0, 1),       # x^3 + 2x + 1
    (5, 1): (0, 1),
    (5, 2): (3, 0, 1),          # x^2 + 3
    (7, 1): (0, 1),
    (11, 1): (0, 1),
    (13, 1): (0, 1),
}

_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


# ---------------------------------------------------------------------------
# Field context
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(p^m) with precomputed operation tables.

    Two contexts are equal when they share (p, m, modulus); `make_field`
    additionally returns the same object for the same parameters.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    _add: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _mul: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _neg: tuple[int, ...] = field(init=False, repr=False)
    _inv: tuple[int, ...] = field(init=False, repr=False)
    _frob: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _primitive: int = field(init=False, repr=False)

    def __post_init__(self):
        q = self.p ** self.m
        coeffs = [self._decode(c) for c in range(q)]
        add = tuple(
            tuple(self._encode([(x + y) % self.p for x, y in zip(coeffs[a], coeffs[b])]) for b in range(q))
            for a in range(q)
        )
        mul = tuple(tuple(self._encode(self._polymulmod(coeffs[a], coeffs[b])) for b in range(q)) for a in range(q))
        neg = tuple(self._encode([(-x) % self.p for x in coeffs[a]]) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", mul)
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_inv", tuple(inv))

        # An element of multiplicative order q-1 exists only in a field, so
        # finding one certifies the modulus.
        primitive = None
        for g in range(1, q):
            x, order = g, 1
            while x != 1:
                x = mul[x][g]
                order += 1
                if order > q:
                    break
            if order == q - 1:
                primitive = g
                break
        if primitive is None and q > 2:
            raise FieldError(f"modulus {self.modulus} is not irreducible over GF({self.p})")
        object.__setattr__(self, "_primitive", 1 if primitive is None else primitive)

        frob = []
        for r in range(self.m):
            row = []
            for a in range(q):
                x = 1
                for _ in range(self.p ** r):
                    x = mul[x][a]
                row.append(x if a else 0)
            frob.append(tuple(row))
        object.__setattr__(self, "_frob", tuple(frob))

    # --- encoding helpers ---

    def _decode(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return out

    def _encode(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + c
        return code

    def _polymulmod(self, a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        for deg in range(len(prod) - 1, self.m - 1, -1):
            c = prod[deg]
            if c:
                for k in range(self.m + 1):
                    prod[deg - self.m + k] = (prod[deg - self.m + k] - c * self.modulus[k]) % self.p
        return prod[: self.m]

    # --- identity and hashing ---

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    # --- public API ---

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.m}"

    @property
    def name(self) -> str:
        return f"GF({self.order})"

    is_field = True

    def elem(self, code: int) -> "FieldElem":
        if not 0 <= code < self.order:
            raise FieldError(f"code {code} out of range for {self.name}")
        return FieldElem(self, code)

    def from_coeffs(self, coeffs) -> "FieldElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise FieldError(f"{len(coeffs)} coefficients given for degree {self.m}")
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElem(self, self._encode([c % self.p for c in coeffs]))

    def scalar(self, k: int) -> "FieldElem":
        """Image of the integer k in the prime field."""
        return FieldElem(self, k % self.p)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def lift(self, x: "FieldElem") -> "FieldElem":
        if not isinstance(x, FieldElem) or x.field != self:
            raise FieldError(f"{x!r} is not an element of {self.name}")
        return x

    def generator(self) -> "FieldElem":
        """The class ζ of x (the prime field has no proper generator, so 1 there)."""
        return self.from_coeffs([0, 1]) if self.m > 1 else self.one()

    def basis(self) -> list["FieldElem"]:
        """Polynomial basis 1, ζ, ..., ζ^(m-1) over the prime field."""
        return [self.from_coeffs([0] * k + [1]) for k in range(self.m)]

    def primitive_element(self) -> "FieldElem":
        return FieldElem(self, self._primitive)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in range(self.order)]

    def nonzero(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in range(1, self.order)]

    def automorphisms(self) -> list["FieldAut"]:
        return [FieldAut(r, self.m) for r in range(self.m)]

    def __repr__(self):
        return f"FieldCtx({self.name}, modulus={list(self.modulus)})"


# ---------------------------------------------------------------------------
# Elements and automorphisms
# ---------------------------------------------------------------------------

class FieldElem:
    __slots__ = ("field", "code")

    def __init__(self, field: FieldCtx, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._decode(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def _check(self, other) -> "FieldElem":
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            raise FieldError(f"mixing elements of {self.field.name} and {other.field.name}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field._add[self.code][other.code])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field._add[self.code][self.field._neg[other.code]])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field._mul[self.code][other.code])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __neg__(self):
        return FieldElem(self.field, self.field._neg[self.code])

    def inverse(self) -> "FieldElem":
        if self.code == 0:
            raise FieldError("inversion of zero")
        return FieldElem(self.field, self.field._inv[self.code])

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        result = self.field.one()
        for _ in range(abs(k)):
            result = result * base
        return result

    def frobenius(self, r: int) -> "FieldElem":
        return FieldElem(self.field, self.field._frob[r % self.field.m][self.code])

    def __eq__(self, other):
        return isinstance(other, FieldElem) and self.code == other.code and self.field == other.field

    def __hash__(self):
        return hash((self.code, self.field.p, self.field.m))

    def __lt__(self, other: "FieldElem"):
        return self.code < other.code

    def __repr__(self):
        return f"{self.field.name}{serialize_elem(self)}"


@dataclass(frozen=True)
class FieldAut:
    """Frobenius power x -> x^(p^r), with r read modulo m."""

    r: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.m)

    def __call__(self, a: FieldElem) -> FieldElem:
        return a.frobenius(self.r)

    def compose(self, other: "FieldAut") -> "FieldAut":
        return FieldAut(self.r + other.r, self.m)

    def inverse(self) -> "FieldAut":
        return FieldAut(-self.r, self.m)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

@lru_cache
def make_field(p: int, m: int = 1) -> FieldCtx:
    """Return the (cached) context for GF(p^m) from the built-in modulus table."""
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    modulus = MODULI.get((p, m))
    if modulus is None:
        raise FieldError(f"GF({p}^{m}) is not in the modulus table; supported: {sorted(MODULI)}")
    ctx = FieldCtx(p, m, modulus)
    logger.debug(f"Built {ctx.name} with modulus {list(modulus)}")
    return ctx


def field_arith(
    ctx: FieldCtx,
    op: Literal["add", "mul", "neg", "inv"],
    a: FieldElem,
    b: FieldElem | None = None,
) -> FieldElem:
    a = ctx.lift(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise FieldError(f"operation {op!r} needs two operands")
    b = ctx.lift(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise FieldError(f"unknown field operation {op!r}")


def frobenius(ctx: FieldCtx, r: FieldAut | int, a: FieldElem) -> FieldElem:
    exponent = r.r if isinstance(r, FieldAut) else r
    return ctx.lift(a).frobenius(exponent)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse "p^m" (or a bare prime "p") into a field context."""
    match = _SPEC_RE.match(text or "")
    if not match:
        raise FieldError(f"cannot parse field {text!r}; expected 'p^m'")
    p = int(match.group(1))
    m = int(match.group(2) or 1)
    return make_field(p, m)


def format_field_spec(ctx: FieldCtx) -> str:
    return ctx.spec


def serialize_elem(a: FieldElem) -> str:
    return "[" + ",".join(str(c) for c in a.coeffs) + "]"


def parse_elem(ctx: FieldCtx, text: str) -> FieldElem:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise FieldError(f"cannot parse field element {text!r}")
    try:
        coeffs = [int(c) for c in body[1:-1].split(",") if c.strip()]
    except ValueError as exc:
        raise FieldError(f"cannot parse field element {text!r}") from exc
    return ctx.from_coeffs(coeffs)
