"""Truncated formal power series and the two coefficientwise products.

A series is a plain coefficient list c_0..c_N over one of three coefficient
fields: exact rationals (Fraction), complex doubles, or ExactCoeff.  Products
truncate to the minimum operand order, which is the only computable finite
presentation of the formal identities.

The two products:

    hadamard(F, G)   ->  sum A_n * B_n * z^n        (coefficientwise)
    ene_exp(F, G)    ->  -sum n * A_n * B_n * z^n   (its weighted twin)

``ene`` is the multiplicative form, conjugated through exp/log:
``ene(f, g) = exp(ene_exp(log f, log g))``.  On products of linear factors it
multiplies the roots: ene(prod(1 - z/a), prod(1 - z/b)) = prod(1 - z/(a*b)).

Sign convention: ``koebe(N)`` is the expansion of z/(1-z)^2 with positive
coefficients n, and the product identity used throughout is

    ene_exp(F, G) = -hadamard(koebe, hadamard(F, G)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .coeffs import ExactCoeff, GaussianRational


class FieldMismatch(TypeError):
    """Operands live over different coefficient fields."""


class BadConstantTerm(ValueError):
    """exp needs c_0 = 0; log and ene need c_0 = 1."""


class ZeroRoot(ValueError):
    """poly_from_roots requires nonzero roots."""


FIELD_RATIONAL = "rational"
FIELD_COMPLEX = "complex"
FIELD_EXACT = "exact"

_ZEROS = {FIELD_RATIONAL: Fraction(0), FIELD_COMPLEX: 0j, FIELD_EXACT: ExactCoeff.zero()}
_ONES = {FIELD_RATIONAL: Fraction(1), FIELD_COMPLEX: 1 + 0j, FIELD_EXACT: ExactCoeff.from_rational(1)}


def _infer_field(coeffs: Sequence) -> str:
    for c in coeffs:
        if isinstance(c, ExactCoeff):
            return FIELD_EXACT
        if isinstance(c, (complex, float)):
            return FIELD_COMPLEX
    return FIELD_RATIONAL


def _coerce(value, field: str):
    if field == FIELD_RATIONAL:
        return value if isinstance(value, Fraction) else Fraction(value)
    if field == FIELD_COMPLEX:
        return complex(value)
    if isinstance(value, ExactCoeff):
        return value
    return ExactCoeff.from_rational(Fraction(value))


class TruncatedSeries:
    """Power series truncated at an explicit order N (inclusive)."""

    __slots__ = ("order", "coeffs", "field")

    def __init__(self, coeffs: Sequence, field: str | None = None):
        field = field or _infer_field(coeffs)
        if field not in _ZEROS:
            raise ValueError(f"unknown field tag {field!r}")
        self.field = field
        self.coeffs = tuple(_coerce(c, field) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        self.order = len(self.coeffs) - 1

    @staticmethod
    def zero(order: int, field: str = FIELD_RATIONAL) -> "TruncatedSeries":
        return TruncatedSeries([_ZEROS[field]] * (order + 1), field)

    @staticmethod
    def geometric(order: int, field: str = FIELD_RATIONAL) -> "TruncatedSeries":
        return TruncatedSeries([_ONES[field]] * (order + 1), field)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries[{self.field}; N={self.order}]({head}{tail})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1], self.field)

    def _require_same_field(self, other: "TruncatedSeries") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_field(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], self.field
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.field)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def cauchy_mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Ordinary series product, truncated to min(orders)."""
        self._require_same_field(other)
        n = min(self.order, other.order)
        zero = _ZEROS[self.field]
        out = [zero] * (n + 1)
        for i in range(n + 1):
            acc = zero
            for j in range(i + 1):
                acc = acc + self.coeffs[j] * other.coeffs[i - j]
            out[i] = acc
        return TruncatedSeries(out, self.field)


def hadamard(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise product: coefficient n of the result is A_n * B_n."""
    f._require_same_field(g)
    n = min(f.order, g.order)
    return TruncatedSeries([f.coeffs[i] * g.coeffs[i] for i in range(n + 1)], f.field)


def ene_exp(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Weighted coefficientwise product: coefficient n is -n * A_n * B_n."""
    f._require_same_field(g)
    n = min(f.order, g.order)
    out = [_ZEROS[f.field]]
    for i in range(1, n + 1):
        out.append(_coerce(-i, f.field) * f.coeffs[i] * g.coeffs[i])
    return TruncatedSeries(out, f.field)


def koebe(order: int, field: str = FIELD_RATIONAL) -> TruncatedSeries:
    """Expansion of z/(1-z)^2: coefficients 0, 1, 2, 3, ..."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return TruncatedSeries([_coerce(n, field) for n in range(order + 1)], field)


def exp_series(f: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term, by the F'*e = e' recurrence."""
    zero = _ZEROS[f.field]
    if f.coeffs[0] != zero:
        raise BadConstantTerm("exp_series requires c_0 = 0")
    n = f.order
    out = [_ONES[f.field]] + [zero] * n
    for m in range(1, n + 1):
        acc = zero
        for k in range(1, m + 1):
            acc = acc + _coerce(k, f.field) * f.coeffs[k] * out[m - k]
        out[m] = _coerce(Fraction(1, m), f.field) * acc
    return TruncatedSeries(out, f.field)


def log_series(f: TruncatedSeries) -> TruncatedSeries:
    """log of a series with unit constant term; inverse of exp_series."""
    if f.coeffs[0] != _ONES[f.field]:
        raise BadConstantTerm("log_series requires c_0 = 1")
    n = f.order
    zero = _ZEROS[f.field]
    out = [zero] * (n + 1)
    for m in range(1, n + 1):
        acc = zero
        for k in range(1, m):
            acc = acc + _coerce(k, f.field) * out[k] * f.coeffs[m - k]
        out[m] = f.coeffs[m] - _coerce(Fraction(1, m), f.field) * acc
    return TruncatedSeries(out, f.field)


def ene(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative product with unit constant terms; multiplies root sets."""
    f._require_same_field(g)
    return exp_series(ene_exp(log_series(f), log_series(g)))


def poly_from_roots(roots: Sequence, order: int, field: str | None = None) -> TruncatedSeries:
    """Truncation of prod_j (1 - z / root_j); all roots must be nonzero."""
    coerced = []
    for r in roots:
        if isinstance(r, GaussianRational):
            if not r:
                raise ZeroRoot("roots must be nonzero")
        elif r == 0:
            raise ZeroRoot("roots must be nonzero")
        coerced.append(r)
    if field is None:
        field = FIELD_COMPLEX if any(isinstance(r, (complex, float)) for r in coerced) else FIELD_RATIONAL
    one = _ONES[field]
    out = TruncatedSeries([one] + [_ZEROS[field]] * order, field)
    for r in coerced:
        if field == FIELD_RATIONAL:
            slope = -Fraction(1) / Fraction(r)
        else:
            slope = -1.0 / complex(r)
        factor = TruncatedSeries([one, _coerce(slope, field)] + [_ZEROS[field]] * max(0, order - 1), field)
        out = out.cauchy_mul(factor)
    return out


def polylog_series(k: int, order: int) -> TruncatedSeries:
    """Coefficients n^(-k): the weight-k polylogarithm truncation."""
    if k < 1:
        raise ValueError("k must be >= 1")
    coeffs = [Fraction(0)] + [Fraction(1, n ** k) for n in range(1, order + 1)]
    return TruncatedSeries(coeffs, FIELD_RATIONAL)


def eval_series(f: TruncatedSeries, z: complex) -> complex:
    """Horner-evaluated partial sum at a numeric point."""
    acc = 0j
    for c in reversed(f.coeffs):
        value = c.eval() if isinstance(c, ExactCoeff) else complex(c)
        acc = acc * z + value
    return acc
