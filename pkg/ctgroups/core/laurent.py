"""Laurent polynomials GF(q)[t, t^-1]."""

from dataclasses import dataclass

from ctgroups.core.errors import MatrixError
from ctgroups.core.field import FieldCtx, FieldElem, serialize_elem


class LaurentPoly:
    """Finitely supported map exponent -> nonzero coefficient."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldCtx, terms: dict[int, FieldElem] | None = None):
        self.field = field
        self.terms: tuple[tuple[int, FieldElem], ...] = tuple(
            sorted((k, c) for k, c in (terms or {}).items() if not c.is_zero())
        )

    @classmethod
    def constant(cls, c: FieldElem) -> "LaurentPoly":
        return cls(c.field, {0: c})

    @classmethod
    def monomial(cls, c: FieldElem, k: int) -> "LaurentPoly":
        return cls(c.field, {k: c})

    def as_dict(self) -> dict[int, FieldElem]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise MatrixError(f"{self!r} is not a unit of the Laurent ring")
        (k, c), = self.terms
        return LaurentPoly(self.field, {-k: c.inverse()})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, FieldElem):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.field, {k: -c for k, c in self.terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, FieldElem] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                k = k1 + k2
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return LaurentPoly(self.field, out)

    __rmul__ = __mul__

    def evaluate(self, c: FieldElem) -> FieldElem:
        """Substitute t -> c (c must be nonzero when negative powers occur)."""
        total = self.field.zero()
        for k, coeff in self.terms:
            total = total + coeff * (c ** k)
        return total

    def frobenius(self, r: int) -> "LaurentPoly":
        return LaurentPoly(self.field, {k: c.frobenius(r) for k, c in self.terms})

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms and self.field == other.field

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{serialize_elem(c)}t^{k}" for k, c in self.terms)


@dataclass(frozen=True)
class LaurentRing:
    """Coefficient ring GF(q)[t, t^-1]; the ring protocol mirrors FieldCtx."""

    field: FieldCtx
    is_field = False

    @property
    def name(self) -> str:
        return f"{self.field.name}[t,t^-1]"

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self.field)

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(self.field.one())

    def t(self, k: int = 1) -> LaurentPoly:
        return LaurentPoly.monomial(self.field.one(), k)

    def lift(self, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, FieldElem):
            return LaurentPoly.constant(self.field.lift(x))
        raise MatrixError(f"cannot lift {x!r} into {self.name}")


def serialize_laurent(x: LaurentPoly) -> dict[str, str]:
    return {str(k): serialize_elem(c) for k, c in x.terms}
