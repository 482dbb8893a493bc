"""Monodromies of Hadamard and ene product singularities, computed exactly.

A function enters as a FunctionSpec: a germ at 0 together with its isolated
singularities, each carrying an exact location, a global monodromy in
K[z^(+-1), log z], and a germ-part tag (totally holomorphic, or an explicit
polar part a_1/(u-a) + ... + a_d/(u-a)^d).

For a product location gamma the engine sums over all factorizations
gamma = alpha * beta:

  Hadamard product, totally holomorphic pairs:
      -(1/2pii) * integral_alpha^{z/beta} dF(u) dG(z/u) du/u

  Hadamard product, polar germ parts additionally contribute
      - Res_{u=alpha}( F0(u) dG(z/u) / u )  -  Res_{u=beta}( G0(u) dF(z/u) / u )

  ene product, totally holomorphic pairs:
      (1/2pii) dF(alpha) dG(z/alpha)
      + (1/2pii) * integral_alpha^{z/beta} dF'(u) dG(z/u) du

  ene product, polar parts additionally contribute
      + Res_{u=alpha}( F0'(u) dG(z/u) )  +  Res_{u=beta}( G0(u) dF'(z/u) z/u^2 )

Residues are computed symbolically from the stored polar coefficients,
Res = sum_k a_k * H^(k-1)(pole) / (k-1)!, never by numeric limits.  All four
routes reduce to the same two primitives (exact definite integral, exact
residue), so every special case is a consequence of those primitives rather
than a separate code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeffs import ExactCoeff, GaussianRational, as_exact
from .logpoly import BiLogPoly, LogLaurentPoly, integrate_u
from .series import TruncatedSeries

NEG_INV_TWO_PI_I = ExactCoeff.two_pi_i(-1) * (-1)
INV_TWO_PI_I = ExactCoeff.two_pi_i(-1)


class GermNotTotallyHolomorphic(ValueError):
    """A totally-holomorphic-only formula met a polar germ part."""


def _gauss(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational.of(Fraction(value))


@dataclass(frozen=True)
class GermPart:
    """Uniform part of a singularity: holomorphic, or an explicit polar part."""

    polar: tuple[ExactCoeff, ...] = ()

    def __post_init__(self):
        if self.polar and not self.polar[-1]:
            raise ValueError("highest-order polar coefficient must be nonzero")

    @staticmethod
    def totally_holomorphic() -> "GermPart":
        return GermPart()

    @staticmethod
    def polar_part(coeffs: Sequence) -> "GermPart":
        coeffs = tuple(as_exact(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a polar part needs at least one coefficient")
        return GermPart(coeffs)

    @property
    def is_totally_holomorphic(self) -> bool:
        return not self.polar


@dataclass(frozen=True)
class Singularity:
    """Isolated singularity: exact location, global monodromy, germ part."""

    location: GaussianRational
    monodromy: LogLaurentPoly
    germ: GermPart = field(default_factory=GermPart.totally_holomorphic)

    def __post_init__(self):
        if not self.location:
            raise ValueError("singularity location must be nonzero")


@dataclass(frozen=True)
class FunctionSpec:
    """A germ at 0 presented through its singularity data."""

    name: str
    singularities: tuple[Singularity, ...]
    germ_at_zero: TruncatedSeries | None = None

    def __post_init__(self):
        locations = [s.location for s in self.singularities]
        if len({(l.re, l.im) for l in locations}) != len(locations):
            raise ValueError("singularity locations must be pairwise distinct")

    @staticmethod
    def of(name: str, singularities: Sequence[Singularity], germ_at_zero=None) -> "FunctionSpec":
        return FunctionSpec(name, tuple(singularities), germ_at_zero)


@dataclass(frozen=True)
class MonodromyResult:
    """Total monodromy at gamma plus the per-factorization contributions."""

    gamma: GaussianRational
    pairs: tuple[tuple[GaussianRational, GaussianRational], ...]
    value: LogLaurentPoly
    contributions: tuple[LogLaurentPoly, ...] = ()

    def __post_init__(self):
        for alpha, beta in self.pairs:
            if alpha * beta != self.gamma:
                raise ValueError(f"pair ({alpha}, {beta}) does not multiply to {self.gamma}")


@dataclass(frozen=True)
class Divisor:
    """Formal zero/pole multiset; poles carry negative multiplicity."""

    points: tuple[tuple[GaussianRational, int], ...]

    @staticmethod
    def of(points: dict | Sequence[tuple]) -> "Divisor":
        items = points.items() if isinstance(points, dict) else points
        cleaned = []
        for loc, mult in items:
            loc = _gauss(loc)
            if not loc:
                raise ValueError("divisor points must be nonzero")
            if mult:
                cleaned.append((loc, int(mult)))
        cleaned.sort(key=lambda it: (it[0].re, it[0].im))
        return Divisor(tuple(cleaned))

    def as_dict(self) -> dict[GaussianRational, int]:
        return dict(self.points)


def _sort_key(value: GaussianRational):
    return (value.re, value.im)


def product_set(f: FunctionSpec, g: FunctionSpec):
    """All products alpha*beta grouped by exact value, multiplicity honored."""
    groups: dict[tuple, tuple[GaussianRational, list]] = {}
    for sf in f.singularities:
        for sg in g.singularities:
            gamma = sf.location * sg.location
            key = _sort_key(gamma)
            if key not in groups:
                groups[key] = (gamma, [])
            groups[key][1].append((sf, sg))
    out = []
    for key in sorted(groups):
        gamma, pairs = groups[key]
        pairs.sort(key=lambda p: (_sort_key(p[0].location), _sort_key(p[1].location)))
        out.append((gamma, pairs))
    return out


def _pairs_for_gamma(f: FunctionSpec, g: FunctionSpec, gamma) -> list[tuple[Singularity, Singularity]]:
    gamma = _gauss(gamma)
    for value, pairs in product_set(f, g):
        if value == gamma:
            return pairs
    return []


def residue_from_polar(
    polar: Sequence[ExactCoeff], h: BiLogPoly, pole: GaussianRational
) -> LogLaurentPoly:
    """Res_{u=pole} of (sum_k a_k (u-pole)^-k) * h(u) for holomorphic-at-pole h."""
    total = LogLaurentPoly.zero()
    current = h
    for k, a_k in enumerate(polar, start=1):
        if k > 1:
            current = current.derivative_u()
        if a_k:
            value = current.eval_u_at_location(pole)
            total = total + value.scale(a_k * Fraction(1, math.factorial(k - 1)))
    return total


def _polar_of_derivative(polar: Sequence[ExactCoeff]) -> tuple[ExactCoeff, ...]:
    """Polar part of d/du applied to sum_k a_k (u-pole)^-k: orders shift up by one."""
    out = [ExactCoeff.zero()]
    for k, a_k in enumerate(polar, start=1):
        out.append(a_k * (-k))
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def hadamard_monodromy_total(f: FunctionSpec, g: FunctionSpec, gamma) -> MonodromyResult:
    """Monodromy of the Hadamard product at gamma, totally holomorphic case."""
    gamma = _gauss(gamma)
    pairs = _pairs_for_gamma(f, g, gamma)
    contributions = []
    total = LogLaurentPoly.zero()
    for sf, sg in pairs:
        if not (sf.germ.is_totally_holomorphic and sg.germ.is_totally_holomorphic):
            raise GermNotTotallyHolomorphic(
                f"pair ({sf.location}, {sg.location}) carries a polar germ part"
            )
        value = _hadamard_integral_term(sf, sg)
        contributions.append(value)
        total = total + value
    return MonodromyResult(
        gamma, tuple((sf.location, sg.location) for sf, sg in pairs), total, tuple(contributions)
    )


def _hadamard_integral_term(sf: Singularity, sg: Singularity) -> LogLaurentPoly:
    integrand = (
        BiLogPoly.from_poly_in_u(sf.monodromy)
        * BiLogPoly.from_poly_at_z_over_u(sg.monodromy)
    ).times_u_power(-1)
    integral = integrate_u(integrand, sf.location, sg.location)
    return integral.scale(NEG_INV_TWO_PI_I)


def hadamard_monodromy_general(f: FunctionSpec, g: FunctionSpec, gamma) -> MonodromyResult:
    """Monodromy of the Hadamard product at gamma, polar germ parts allowed."""
    gamma = _gauss(gamma)
    pairs = _pairs_for_gamma(f, g, gamma)
    contributions = []
    total = LogLaurentPoly.zero()
    for sf, sg in pairs:
        value = _hadamard_integral_term(sf, sg)
        if sf.germ.polar:
            h = BiLogPoly.from_poly_at_z_over_u(sg.monodromy).times_u_power(-1)
            value = value - residue_from_polar(sf.germ.polar, h, sf.location)
        if sg.germ.polar:
            h = BiLogPoly.from_poly_at_z_over_u(sf.monodromy).times_u_power(-1)
            value = value - residue_from_polar(sg.germ.polar, h, sg.location)
        contributions.append(value)
        total = total + value
    return MonodromyResult(
        gamma, tuple((sf.location, sg.location) for sf, sg in pairs), total, tuple(contributions)
    )


def ene_monodromy_total(f: FunctionSpec, g: FunctionSpec, gamma) -> MonodromyResult:
    """Monodromy of the exponential ene product at gamma, totally holomorphic case."""
    gamma = _gauss(gamma)
    pairs = _pairs_for_gamma(f, g, gamma)
    contributions = []
    total = LogLaurentPoly.zero()
    for sf, sg in pairs:
        if not (sf.germ.is_totally_holomorphic and sg.germ.is_totally_holomorphic):
            raise GermNotTotallyHolomorphic(
                f"pair ({sf.location}, {sg.location}) carries a polar germ part"
            )
        value = _ene_core_terms(sf, sg)
        contributions.append(value)
        total = total + value
    return MonodromyResult(
        gamma, tuple((sf.location, sg.location) for sf, sg in pairs), total, tuple(contributions)
    )


def _ene_core_terms(sf: Singularity, sg: Singularity) -> LogLaurentPoly:
    # evaluation term: (1/2pii) dF(alpha) * dG(z/alpha)
    df_at_alpha = sf.monodromy.eval_at_location(sf.location)
    value = sg.monodromy.scale_argument(sf.location).scale(df_at_alpha * INV_TWO_PI_I)
    # integral term: (1/2pii) * int_alpha^{z/beta} dF'(u) dG(z/u) du   (no 1/u factor)
    integrand = BiLogPoly.from_poly_in_u(sf.monodromy.derivative()) * BiLogPoly.from_poly_at_z_over_u(
        sg.monodromy
    )
    value = value + integrate_u(integrand, sf.location, sg.location).scale(INV_TWO_PI_I)
    return value


def ene_monodromy_general(f: FunctionSpec, g: FunctionSpec, gamma) -> MonodromyResult:
    """Monodromy of the exponential ene product at gamma, polar germ parts allowed."""
    gamma = _gauss(gamma)
    pairs = _pairs_for_gamma(f, g, gamma)
    contributions = []
    total = LogLaurentPoly.zero()
    for sf, sg in pairs:
        value = _ene_core_terms(sf, sg)
        if sf.germ.polar:
            # Res_{u=alpha}( F0'(u) dG(z/u) ): differentiate the stored polar part
            h = BiLogPoly.from_poly_at_z_over_u(sg.monodromy)
            value = value + residue_from_polar(_polar_of_derivative(sf.germ.polar), h, sf.location)
        if sg.germ.polar:
            # Res_{u=beta}( G0(u) dF'(z/u) z/u^2 ): the z/u^2 Jacobian comes from
            # symmetrizing the residue at z/beta through v = z/u (the du measure,
            # unlike du/u, does not absorb it)
            h = (
                BiLogPoly.from_poly_at_z_over_u(sf.monodromy.derivative())
                .times_u_power(-2)
                .times_z_power(1)
            )
            value = value + residue_from_polar(sg.germ.polar, h, sg.location)
        contributions.append(value)
        total = total + value
    return MonodromyResult(
        gamma, tuple((sf.location, sg.location) for sf, sg in pairs), total, tuple(contributions)
    )


def ene_symmetry_check(f: FunctionSpec, g: FunctionSpec, gamma) -> bool:
    """The ene formula is symmetric in its arguments (integration by parts)."""
    return ene_monodromy_total(f, g, gamma).value == ene_monodromy_total(g, f, gamma).value


def divisor_ene(f: Divisor, g: Divisor) -> Divisor:
    """Product divisor: n_gamma = sum over alpha*beta = gamma of n_alpha * n_beta."""
    out: dict[tuple, tuple[GaussianRational, int]] = {}
    for loc_a, mult_a in f.points:
        for loc_b, mult_b in g.points:
            gamma = loc_a * loc_b
            key = _sort_key(gamma)
            prev = out.get(key, (gamma, 0))
            out[key] = (gamma, prev[1] + mult_a * mult_b)
    return Divisor.of([pair for pair in out.values() if pair[1]])


# --- ready-made function specs -------------------------------------------------


def log_ladder_monodromy(k: int) -> LogLaurentPoly:
    """Closed form -(2pii/(k-1)!) (log z)^(k-1): the weight-k ladder monodromy."""
    coeff = ExactCoeff.two_pi_i() * Fraction(-1, math.factorial(k - 1))
    return LogLaurentPoly.term(0, k - 1, 1).scale(coeff)


def polylog_function_spec(k: int) -> FunctionSpec:
    """Weight-k polylogarithm presented by its singularity at 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sing = Singularity(_gauss(1), log_ladder_monodromy(k))
    return FunctionSpec.of(f"Li_{k}", [sing])


def koebe_polar_function_spec() -> FunctionSpec:
    """-z/(1-z)^2 as a pure polar singularity at 1 (zero monodromy)."""
    germ = GermPart.polar_part([Fraction(-1), Fraction(-1)])
    sing = Singularity(_gauss(1), LogLaurentPoly.zero(), germ)
    return FunctionSpec.of("neg_koebe", [sing])


def polylog_monodromy(k: int) -> LogLaurentPoly:
    """Weight-k monodromy at 1 computed by iterating the Hadamard formula.

    Seeds from the classical logarithm (constant monodromy -2pii) and climbs
    the ladder Li_{j+1} = Li_j (.) Li_1 one exact integration at a time.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    li1 = polylog_function_spec(1)
    current = li1
    for j in range(1, k):
        value = hadamard_monodromy_total(current, li1, 1).value
        current = FunctionSpec.of(f"Li_{j + 1}", [Singularity(_gauss(1), value)])
    return current.singularities[0].monodromy
