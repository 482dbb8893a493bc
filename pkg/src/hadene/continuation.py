"""Numerical oracle: convolution quadrature and contour-measured monodromy.

Everything here works with double-precision complex numbers and knows nothing
about the symbolic formulas; agreement between the two engines is therefore a
genuine cross-check.

The two instruments:

* Convolution quadrature.  The coefficientwise products have integral forms

      hadamard:  (1/2pii) * contour integral of F(u) G(z/u) du/u
      ene:      -(1/2pii) * contour integral of F'(u) G(z/u) du

  over any positively oriented circle separating the singularities of F(u)
  (outside) from those of G(z/u) (inside).  Full circles use the trapezoid
  rule (spectrally accurate for periodic analytic integrands); other contours
  use clearance-graded Gauss-Legendre panels.

* Monodromy measurement.  Dragging z once around a product point gamma
  deforms the circle into a "train track": for each factorization
  gamma = alpha * beta the contour grows a detour that runs out to alpha,
  loops it, runs in to z/beta, loops it, then undoes both loops.  The
  difference I(deformed) - I(circle), with F and G continued branch-by-branch
  along the traversal, measures the monodromy of the Hadamard product at
  gamma directly from analytic continuation.  The measured value is exact up
  to quadrature error for any finite loop radius (homotopy invariance); the
  small loops capture polar-part residues automatically.

Branch tracking is chord-wise: elements advance between nearby points with
steps capped well below the local distance to their singularities, updating
logarithm branches through principal ratios and polylogarithm stacks through
spectral integration of   d Li_j = Li_{j-1}(u) du / u   down to
Li_1 = -log(1 - u).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
TWO_PI_I = 2j * math.pi


class PathTooCloseToSingularity(ValueError):
    """A continuation path violates the requested clearance."""


class QuadratureNotConverged(RuntimeError):
    """Refinement exhausted before reaching the requested tolerance."""


class GeometryInfeasible(ValueError):
    """No admissible contour exists for the requested configuration."""


# --- paths ---------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    a: complex
    b: complex

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("Line must have nonzero length")

    def point(self, t: float) -> complex:
        return self.a + (self.b - self.a) * t

    def derivative(self, t: float) -> complex:
        return self.b - self.a

    def length(self) -> float:
        return abs(self.b - self.a)

    def distance_to(self, p: complex) -> float:
        d = self.b - self.a
        denom = abs(d) ** 2
        if denom == 0.0:
            return abs(p - self.a)
        t = ((p - self.a).real * d.real + (p - self.a).imag * d.imag) / denom
        t = min(1.0, max(0.0, t))
        return abs(p - self.point(t))


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta_start: float
    theta_end: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("Arc radius must be positive")

    def point(self, t: float) -> complex:
        theta = self.theta_start + (self.theta_end - self.theta_start) * t
        return self.center + self.radius * cmath.exp(1j * theta)

    def derivative(self, t: float) -> complex:
        theta = self.theta_start + (self.theta_end - self.theta_start) * t
        return 1j * (self.theta_end - self.theta_start) * self.radius * cmath.exp(1j * theta)

    def length(self) -> float:
        return abs(self.theta_end - self.theta_start) * self.radius

    def distance_to(self, p: complex) -> float:
        rel = p - self.center
        rho = abs(rel)
        if rho == 0.0:
            return self.radius
        phi = cmath.phase(rel)
        lo, hi = sorted((self.theta_start, self.theta_end))
        # does some representative phi + 2*pi*k fall inside [lo, hi]?
        k_min = math.ceil((lo - phi) / TWO_PI)
        if phi + TWO_PI * k_min <= hi:
            return abs(rho - self.radius)
        return min(abs(p - self.point(0.0)), abs(p - self.point(1.0)))


PathSegment = Line | Arc


@dataclass(frozen=True)
class ContourSpec:
    segments: tuple[PathSegment, ...]
    closed: bool = True

    def __post_init__(self):
        seg = self.segments
        for i in range(1, len(seg)):
            if abs(seg[i].point(0.0) - seg[i - 1].point(1.0)) > 1e-12:
                raise ValueError(f"segment {i} does not start where segment {i - 1} ends")
        if self.closed and seg and abs(seg[-1].point(1.0) - seg[0].point(0.0)) > 1e-12:
            raise ValueError("closed contour does not return to its start")

    @staticmethod
    def circle(radius: float, phase: float = 0.0, center: complex = 0j) -> "ContourSpec":
        return ContourSpec((Arc(center, radius, phase, phase + TWO_PI),))

    def start(self) -> complex:
        return self.segments[0].point(0.0)


# --- analytic elements ------------------------------------------------------------


def _polyval(coeffs: Sequence[complex], u: complex) -> complex:
    acc = 0j
    for c in reversed(list(coeffs)):
        acc = acc * u + c
    return acc


def _polyder(coeffs: Sequence[complex]) -> list[complex]:
    return [n * c for n, c in enumerate(coeffs)][1:] or [0j]


class AnalyticElement:
    """A function with declared singularities, evaluable and continuable."""

    def singularities(self) -> list[complex]:
        raise NotImplementedError

    def principal_value(self, u: complex) -> complex:
        raise NotImplementedError

    def principal_derivative(self, u: complex) -> complex:
        raise NotImplementedError

    def make_state(self, u0: complex) -> "_ElementState":
        raise NotImplementedError


class RationalElement(AnalyticElement):
    """num(u)/den(u) with declared poles (inputs declare their singularities)."""

    def __init__(self, num: Sequence[complex], den: Sequence[complex], poles: Sequence[complex]):
        self.num = [complex(c) for c in num]
        self.den = [complex(c) for c in den]
        self.poles = [complex(p) for p in poles]

    def singularities(self) -> list[complex]:
        return list(self.poles)

    def principal_value(self, u: complex) -> complex:
        return _polyval(self.num, u) / _polyval(self.den, u)

    def principal_derivative(self, u: complex) -> complex:
        n, d = _polyval(self.num, u), _polyval(self.den, u)
        dn, dd = _polyval(_polyder(self.num), u), _polyval(_polyder(self.den), u)
        return (dn * d - n * dd) / (d * d)

    def make_state(self, u0: complex) -> "_RationalState":
        return _RationalState(self, u0)


def geometric_element() -> RationalElement:
    """1/(1-u): the geometric series."""
    return RationalElement([1.0], [1.0, -1.0], poles=[1.0 + 0j])


def neg_koebe_element() -> RationalElement:
    """-u/(1-u)^2: coefficients -n."""
    return RationalElement([0.0, -1.0], [1.0, -2.0, 1.0], poles=[1.0 + 0j])


class LogBranchElement(AnalyticElement):
    """prefactor(u) * log(1 - u/location), branch tracked around the location.

    The polynomial prefactor makes polynomial monodromies realizable: the
    monodromy at the location is 2pii * prefactor(u).
    """

    def __init__(self, location: complex, prefactor: Sequence[complex] = (1.0,)):
        if location == 0:
            raise ValueError("location must be nonzero")
        self.location = complex(location)
        self.prefactor = [complex(c) for c in prefactor]

    def singularities(self) -> list[complex]:
        return [self.location]

    def principal_value(self, u: complex) -> complex:
        return _polyval(self.prefactor, u) * cmath.log(1.0 - u / self.location)

    def principal_derivative(self, u: complex) -> complex:
        c = _polyval(self.prefactor, u)
        dc = _polyval(_polyder(self.prefactor), u)
        return dc * cmath.log(1.0 - u / self.location) + c / (u - self.location)

    def make_state(self, u0: complex) -> "_LogBranchState":
        return _LogBranchState(self, u0)


class PolylogElement(AnalyticElement):
    """Weight-k polylogarithm, continued through the integral recursion."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k

    def singularities(self) -> list[complex]:
        return [1.0 + 0j]

    def principal_value(self, u: complex) -> complex:
        if self.k == 1:
            return -cmath.log(1.0 - u)
        return _polylog_series_value(self.k, u)

    def principal_derivative(self, u: complex) -> complex:
        if self.k == 1:
            return 1.0 / (1.0 - u)
        if u == 0:
            return 1.0 + 0j
        if self.k == 2:
            return -cmath.log(1.0 - u) / u
        return _polylog_series_value(self.k - 1, u) / u

    def make_state(self, u0: complex) -> "_PolylogState":
        return _PolylogState(self, u0)


class SeriesElement(AnalyticElement):
    """Truncated-series evaluation and recentering; approximate by nature.

    Continuation recenters the polynomial at each step, which is only as good
    as the truncation allows; truncation_estimate reports a crude error bound.
    """

    is_approximate = True

    def __init__(self, coeffs: Sequence[complex], declared_singularities: Sequence[complex] = ()):
        self.coeffs = [complex(c) for c in coeffs]
        self.declared = [complex(s) for s in declared_singularities]

    def singularities(self) -> list[complex]:
        return list(self.declared)

    def principal_value(self, u: complex) -> complex:
        return _polyval(self.coeffs, u)

    def truncation_estimate(self, u: complex) -> float:
        tail = self.coeffs[-3:]
        return max(abs(c) for c in tail) * abs(u) ** max(0, len(self.coeffs) - 3) if tail else 0.0

    def principal_derivative(self, u: complex) -> complex:
        return _polyval(_polyder(self.coeffs), u)

    def make_state(self, u0: complex) -> "_SeriesState":
        return _SeriesState(self, u0)


class SumElement(AnalyticElement):
    """Finite sum of elements; realizes functions with several singularities."""

    def __init__(self, parts: Sequence[AnalyticElement]):
        if not parts:
            raise ValueError("SumElement needs at least one part")
        self.parts = list(parts)

    def singularities(self) -> list[complex]:
        out: list[complex] = []
        for part in self.parts:
            out.extend(part.singularities())
        return out

    def principal_value(self, u: complex) -> complex:
        return sum(part.principal_value(u) for part in self.parts)

    def principal_derivative(self, u: complex) -> complex:
        return sum(part.principal_derivative(u) for part in self.parts)

    def make_state(self, u0: complex) -> "_SumState":
        return _SumState(self, [part.make_state(u0) for part in self.parts])


def _polylog_series_value(k: int, u: complex, tol: float = 1e-17, n_max: int = 200000) -> complex:
    mag = abs(u)
    if mag >= 0.9995:
        raise QuadratureNotConverged(
            f"polylog series evaluation needs |u| < 0.9995, got {mag:.6f}"
        )
    total = 0j
    power = 1.0 + 0j
    for n in range(1, n_max + 1):
        power *= u
        term = power / n ** k
        total += term
        if abs(term) < tol * (1.0 + abs(total)) and mag ** n < tol:
            break
    return total


# --- continuation states -----------------------------------------------------------


class _ElementState:
    """Branch-tracked value of an element at a moving point."""

    point: complex

    def obstacles(self) -> list[complex]:
        raise NotImplementedError

    def step(self, target: complex) -> None:
        raise NotImplementedError

    def value(self) -> complex:
        raise NotImplementedError

    def derivative_value(self) -> complex:
        raise NotImplementedError

    def windings(self) -> dict[complex, int]:
        return {}

    def clone(self) -> "_ElementState":
        raise NotImplementedError

    def advance(self, target: complex, floor: float = 0.0) -> None:
        """Move to target along the straight chord, substepping as needed."""
        while True:
            current = self.point
            if current == target:
                return
            chord = Line(current, target)
            dist = min((chord.distance_to(s) for s in self.obstacles()), default=math.inf)
            if dist <= max(floor, 1e-13 * (1.0 + abs(target))):
                raise PathTooCloseToSingularity(
                    f"chord {current} -> {target} passes within {dist:.3e} of a singularity"
                )
            if abs(target - current) <= 0.35 * dist:
                self.step(target)
                return
            n_sub = max(2, math.ceil(abs(target - current) / (0.35 * dist)))
            self.step(current + (target - current) / n_sub)


class _RationalState(_ElementState):
    def __init__(self, spec: RationalElement, u0: complex):
        self.spec = spec
        self.point = u0

    def obstacles(self) -> list[complex]:
        return self.spec.poles

    def step(self, target: complex) -> None:
        self.point = target

    def value(self) -> complex:
        return self.spec.principal_value(self.point)

    def derivative_value(self) -> complex:
        return self.spec.principal_derivative(self.point)

    def clone(self) -> "_RationalState":
        return _RationalState(self.spec, self.point)


class _SeriesState(_ElementState):
    """Continuation by polynomial recentering (approximate)."""

    def __init__(self, spec: SeriesElement, u0: complex, coeffs: list[complex] | None = None):
        self.spec = spec
        self.point = u0
        # local expansion around the current point
        self.local = list(spec.coeffs) if coeffs is None else coeffs
        if coeffs is None and u0 != 0:
            self.local = _recenter(self.local, u0)

    def obstacles(self) -> list[complex]:
        return self.spec.declared

    def step(self, target: complex) -> None:
        self.local = _recenter(self.local, target - self.point)
        self.point = target

    def value(self) -> complex:
        return self.local[0]

    def derivative_value(self) -> complex:
        return self.local[1] if len(self.local) > 1 else 0j

    def clone(self) -> "_SeriesState":
        return _SeriesState(self.spec, self.point, list(self.local))


def _recenter(coeffs: Sequence[complex], delta: complex) -> list[complex]:
    """Coefficients of p(delta + v) as a polynomial in v (synthetic Taylor shift)."""
    out = list(coeffs)
    n = len(out)
    for j in range(n - 1):
        for i in range(n - 2, j - 1, -1):
            out[i] += delta * out[i + 1]
    return out


class _LogBranchState(_ElementState):
    def __init__(self, spec: LogBranchElement, u0: complex, log_value: complex | None = None,
                 arg_total: float = 0.0):
        self.spec = spec
        self.point = u0
        self.log_value = cmath.log(1.0 - u0 / spec.location) if log_value is None else log_value
        self.arg_total = arg_total

    def obstacles(self) -> list[complex]:
        return [self.spec.location]

    def step(self, target: complex) -> None:
        w_old = 1.0 - self.point / self.spec.location
        w_new = 1.0 - target / self.spec.location
        ratio = w_new / w_old
        increment = cmath.log(ratio)
        self.log_value += increment
        self.arg_total += increment.imag
        self.point = target

    def value(self) -> complex:
        return _polyval(self.spec.prefactor, self.point) * self.log_value

    def derivative_value(self) -> complex:
        c = _polyval(self.spec.prefactor, self.point)
        dc = _polyval(_polyder(self.spec.prefactor), self.point)
        return dc * self.log_value + c / (self.point - self.spec.location)

    def windings(self) -> dict[complex, int]:
        return {self.spec.location: round(self.arg_total / TWO_PI)}

    def clone(self) -> "_LogBranchState":
        return _LogBranchState(self.spec, self.point, self.log_value, self.arg_total)


class _SumState(_ElementState):
    def __init__(self, spec: "SumElement", states: list[_ElementState]):
        self.spec = spec
        self.states = states

    @property
    def point(self) -> complex:
        return self.states[0].point

    def obstacles(self) -> list[complex]:
        out: list[complex] = []
        for state in self.states:
            out.extend(state.obstacles())
        return out

    def advance(self, target: complex, floor: float = 0.0) -> None:
        # each part substeps against its own singularities
        for state in self.states:
            state.advance(target, floor)

    def step(self, target: complex) -> None:
        for state in self.states:
            state.step(target)

    def value(self) -> complex:
        return sum(state.value() for state in self.states)

    def derivative_value(self) -> complex:
        return sum(state.derivative_value() for state in self.states)

    def windings(self) -> dict[complex, int]:
        merged: dict[complex, int] = {}
        for state in self.states:
            merged.update(state.windings())
        return merged

    def clone(self) -> "_SumState":
        return _SumState(self.spec, [state.clone() for state in self.states])


_LOBATTO_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _lobatto_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev-Lobatto nodes on [-1,1] and the cumulative integration matrix."""
    if m not in _LOBATTO_CACHE:
        t = -np.cos(np.pi * np.arange(m) / (m - 1))
        vander = np.polynomial.chebyshev.chebvander(t, m - 1)
        inv = np.linalg.inv(vander)
        rows = []
        for basis in np.eye(m):
            ci = np.polynomial.chebyshev.chebint(basis, lbnd=-1)
            rows.append(np.polynomial.chebyshev.chebval(t, ci))
        cumulative = np.array(rows).transpose() @ inv
        _LOBATTO_CACHE[m] = (t, cumulative)
    return _LOBATTO_CACHE[m]


class _PolylogState(_ElementState):
    def __init__(self, spec: PolylogElement, u0: complex, stack: list[complex] | None = None,
                 arg_one: float = 0.0, nodes: int = 24):
        self.spec = spec
        self.point = u0
        self.nodes = nodes
        if stack is None:
            if spec.k == 1:
                self.stack = [-cmath.log(1.0 - u0)]
            else:
                self.stack = [(-cmath.log(1.0 - u0) if j == 1 else _polylog_series_value(j, u0))
                              for j in range(1, spec.k + 1)]
        else:
            self.stack = list(stack)
        self.arg_one = arg_one

    def obstacles(self) -> list[complex]:
        # the stack recursion integrates against du/u, so 0 must be avoided too
        return [1.0 + 0j, 0j]

    def step(self, target: complex) -> None:
        a, b = self.point, target
        ratio = (1.0 - b) / (1.0 - a)
        inc = cmath.log(ratio)
        if self.spec.k == 1:
            self.stack[0] -= inc
        else:
            t, cum = _lobatto_rule(self.nodes)
            us = a + (b - a) * (t + 1.0) / 2.0
            v_prev = np.empty(self.nodes, dtype=complex)
            v_prev[0] = self.stack[0]
            for i in range(1, self.nodes):
                v_prev[i] = v_prev[i - 1] - cmath.log((1.0 - us[i]) / (1.0 - us[i - 1]))
            new_stack = [complex(v_prev[-1])]
            scale = (b - a) / 2.0
            for j in range(1, self.spec.k):
                integrand = v_prev / us
                v_j = self.stack[j] + scale * (cum @ integrand)
                new_stack.append(complex(v_j[-1]))
                v_prev = v_j
            self.stack = new_stack
        self.arg_one += inc.imag
        self.point = target

    def value(self) -> complex:
        return self.stack[-1]

    def derivative_value(self) -> complex:
        if self.spec.k == 1:
            return 1.0 / (1.0 - self.point)
        return self.stack[-2] / self.point

    def windings(self) -> dict[complex, int]:
        return {1.0 + 0j: round(self.arg_one / TWO_PI)}

    def clone(self) -> "_PolylogState":
        return _PolylogState(self.spec, self.point, self.stack, self.arg_one, self.nodes)


@dataclass
class Continuation:
    """Result of continue_along: the branch-tracked element at the path end."""

    element: AnalyticElement
    state: _ElementState

    @property
    def point(self) -> complex:
        return self.state.point

    def value(self) -> complex:
        return self.state.value()

    def windings(self) -> dict[complex, int]:
        return self.state.windings()


def continue_along(element, path: Sequence[PathSegment], *, delta: float = 1e-6,
                   steps_per_segment: int = 64) -> tuple[complex, Continuation]:
    """Continue an element along a path, returning (end value, updated element).

    `element` is an AnalyticElement (started on the principal branch at the
    path start) or a Continuation being resumed; the path must then begin at
    its current point.
    """
    if not path:
        raise ValueError("continue_along needs a nonempty path")
    if isinstance(element, Continuation):
        spec, state = element.element, element.state.clone()
        if abs(path[0].point(0.0) - state.point) > 1e-9:
            raise ValueError("path does not start at the element's current point")
    else:
        spec = element
        state = spec.make_state(path[0].point(0.0))
    for seg in path:
        n = max(2, steps_per_segment if isinstance(seg, Arc) else steps_per_segment // 2)
        for i in range(1, n + 1):
            state.advance(seg.point(i / n), floor=delta)
    return state.value(), Continuation(spec, state)


# --- quadrature ----------------------------------------------------------------------


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _split_panels(seg: PathSegment, obstacles: Sequence[complex], frac: float,
                  min_len: float) -> list[tuple[float, float]]:
    """Clearance-graded parameter panels for one segment."""
    total_len = seg.length()
    out: list[tuple[float, float]] = []
    stack = [(0.0, 1.0)]
    while stack:
        t0, t1 = stack.pop()
        piece_len = total_len * (t1 - t0)
        mid = seg.point((t0 + t1) / 2.0)
        d = min((abs(mid - s) for s in obstacles), default=math.inf)
        d = max(d - piece_len / 2.0, 1e-30)
        if piece_len <= frac * d or piece_len <= min_len:
            out.append((t0, t1))
        else:
            tm = (t0 + t1) / 2.0
            stack.append((tm, t1))
            stack.append((t0, tm))
    out.sort()
    return out


def _integrate_contour_tracked(
    contour: ContourSpec,
    integrand: Callable[[complex, complex], complex],
    advance_hooks: Sequence[Callable[[complex], None]],
    obstacles: Sequence[complex],
    n_gl: int,
    frac: float,
    min_len: float,
) -> complex:
    """Panel Gauss-Legendre over the contour, advancing states node by node."""
    nodes, weights = _gl_rule(n_gl)
    total = 0j
    for seg in contour.segments:
        for t0, t1 in _split_panels(seg, obstacles, frac, min_len):
            half = (t1 - t0) / 2.0
            mid = (t0 + t1) / 2.0
            for x, w in zip(nodes, weights):
                t = mid + half * x
                u = seg.point(t)
                for hook in advance_hooks:
                    hook(u)
                total += w * half * integrand(u, seg.derivative(t))
    return total


# --- convolution quadrature ------------------------------------------------------------


def _admissible_radius(f: AnalyticElement, g: AnalyticElement, z: complex) -> float:
    f_sing = f.singularities()
    g_sing = g.singularities()
    upper = min((abs(s) for s in f_sing), default=math.inf)
    lower = max((abs(z) / abs(s) for s in g_sing), default=0.0)
    if not math.isfinite(upper):
        upper = max(1.0, 2.0 * lower)
    if lower >= upper:
        raise GeometryInfeasible(
            f"no admissible circle for |z| = {abs(z):.4f}: needs {lower:.4f} < r < {upper:.4f}"
        )
    return math.sqrt(max(lower, 1e-12) * upper) if lower > 0 else 0.5 * upper


def _trapezoid_circle(fn: Callable[[complex], complex], radius: float, tol: float,
                      n0: int = 32, n_max: int = 1 << 16, phase: float = 0.0) -> tuple[complex, int]:
    previous = None
    n = n0
    while n <= n_max:
        acc = 0j
        for j in range(n):
            theta = phase + TWO_PI * j / n
            acc += fn(radius * cmath.exp(1j * theta))
        value = acc / n
        if previous is not None and abs(value - previous) <= tol:
            return value, n
        previous = value
        n *= 2
    raise QuadratureNotConverged(f"trapezoid rule stalled above tolerance {tol:g}")


def _resolve_radius(f: AnalyticElement, g: AnalyticElement, z: complex,
                    contour: ContourSpec | None, radius: float | None) -> float:
    if contour is not None:
        circle = contour.segments[0]
        if len(contour.segments) != 1 or not isinstance(circle, Arc):
            raise ValueError("convolution quadrature expects a single full circle")
        radius = circle.radius
    if radius is None:
        return _admissible_radius(f, g, z)
    # reject circles that fail to separate the declared singularities
    for s in f.singularities():
        if radius >= abs(s):
            raise GeometryInfeasible(f"radius {radius:g} does not keep |u| < |{s}|")
    for s in g.singularities():
        if abs(z) / abs(s) >= radius:
            raise GeometryInfeasible(
                f"radius {radius:g} does not enclose z/beta for beta = {s}"
            )
    return radius


def pincherle_eval(f: AnalyticElement, g: AnalyticElement, z: complex,
                   contour: ContourSpec | None = None, *, radius: float | None = None,
                   tol: float = 1e-11) -> complex:
    """Hadamard product value by convolution quadrature on a separating circle."""
    radius = _resolve_radius(f, g, z, contour, radius)
    value, _ = _trapezoid_circle(
        lambda u: f.principal_value(u) * g.principal_value(z / u), radius, tol
    )
    return value


def ene_pincherle_eval(f: AnalyticElement, g: AnalyticElement, z: complex,
                       contour: ContourSpec | None = None, *, radius: float | None = None,
                       tol: float = 1e-11) -> complex:
    """Exponential ene product value: -(1/2pii) integral of F'(u) G(z/u) du."""
    radius = _resolve_radius(f, g, z, contour, radius)
    # du = i r e^{i theta} d theta, so the trapezoid average picks up -u
    value, _ = _trapezoid_circle(
        lambda u: -u * f.principal_derivative(u) * g.principal_value(z / u), radius, tol
    )
    return value


# --- train-track construction -----------------------------------------------------------


def _circle_crossing(p: complex, alpha: complex, r: float) -> complex:
    """Intersection of the segment [p, alpha] with the circle |u| = r."""
    d = alpha - p
    a = abs(d) ** 2
    b = 2.0 * (p.real * d.real + p.imag * d.imag)
    c = abs(p) ** 2 - r * r
    disc = b * b - 4.0 * a * c
    if disc < 0:
        raise GeometryInfeasible("marked-point segment misses the base circle")
    t = (-b + math.sqrt(disc)) / (2.0 * a)
    if not 0.0 < t < 1.0:
        raise GeometryInfeasible("marked-point segment crossing lies outside (0, 1)")
    return p + t * d


def build_traintrack(z0: complex, pairs: Sequence[tuple[complex, complex]], r: float,
                     eps: float) -> tuple[ContourSpec, ContourSpec]:
    """Base circle and its deformation with detours for each (alpha, beta) pair.

    Each detour leaves the circle at the anchor where [z0/beta, alpha] crosses
    it, loops alpha positively, loops z0/beta positively, then repeats both
    loops negatively, restoring every branch.
    """
    marked: list[tuple[complex, complex, complex]] = []
    for alpha, beta in pairs:
        alpha, beta = complex(alpha), complex(beta)
        p = z0 / beta
        if abs(alpha - p) < 2.0 * eps:
            raise GeometryInfeasible(
                f"marked points {alpha} and {p} closer than 2*eps = {2 * eps:g}"
            )
        if not (abs(p) < r - eps / 2.0 and abs(alpha) > r + eps / 2.0):
            raise GeometryInfeasible(
                f"circle r = {r:g} does not separate alpha = {alpha} from z0/beta = {p}"
            )
        marked.append((alpha, beta, p))
    points = [m[0] for m in marked] + [m[2] for m in marked]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(points[i] - points[j]) < 2.0 * eps:
                raise GeometryInfeasible("marked points closer than 2*eps")

    anchored = []
    for alpha, beta, p in marked:
        a = _circle_crossing(p, alpha, r)
        if abs(a - alpha) <= 1.25 * eps or abs(a - p) <= 1.25 * eps:
            raise GeometryInfeasible(
                "circle crossing falls inside a detour loop; shrink eps or move r"
            )
        anchored.append((cmath.phase(a), a, alpha, p))
    anchored.sort(key=lambda item: item[0])

    phase0 = anchored[0][0] if anchored else 0.0
    eta = ContourSpec.circle(r, phase=phase0)
    if not anchored:
        return eta, eta

    segments: list[PathSegment] = []
    for idx, (phi, a, alpha, p) in enumerate(anchored):
        segments.extend(_detour_block(a, alpha, p, eps))
        next_phi = anchored[(idx + 1) % len(anchored)][0]
        if idx + 1 == len(anchored):
            next_phi += TWO_PI
        segments.append(Arc(0j, r, phi, next_phi))
    eta_hat = ContourSpec(tuple(segments))
    return eta, eta_hat


def _detour_block(a: complex, alpha: complex, p: complex, eps: float) -> list[PathSegment]:
    out_entry = alpha + eps * (a - alpha) / abs(a - alpha)
    in_entry = p + eps * (a - p) / abs(a - p)
    th_out = cmath.phase(out_entry - alpha)
    th_in = cmath.phase(in_entry - p)
    block: list[PathSegment] = []
    for sign in (+1.0, -1.0):
        block.append(Line(a, out_entry))
        block.append(Arc(alpha, eps, th_out, th_out + sign * TWO_PI))
        block.append(Line(out_entry, a))
        block.append(Line(a, in_entry))
        block.append(Arc(p, eps, th_in, th_in + sign * TWO_PI))
        block.append(Line(in_entry, a))
    return block


# --- monodromy measurement ----------------------------------------------------------------


def _matched_pairs(f: AnalyticElement, g: AnalyticElement, gamma: complex,
                   tol: float = 1e-9) -> list[tuple[complex, complex]]:
    pairs = []
    for alpha in f.singularities():
        for beta in g.singularities():
            if abs(alpha * beta - gamma) <= tol * (1.0 + abs(gamma)):
                pairs.append((alpha, beta))
    return pairs


def default_traintrack_geometry(f: AnalyticElement, g: AnalyticElement, gamma: complex,
                                z0: complex) -> tuple[list[tuple[complex, complex]], float, float]:
    """Matched pairs plus the default circle radius and detour loop radius."""
    pairs = _matched_pairs(f, g, gamma)
    if not pairs:
        raise GeometryInfeasible(f"no declared factorization of gamma = {gamma}")
    alphas = [alpha for alpha, _ in pairs]
    ps = [z0 / beta for _, beta in pairs]
    r_hi = min(abs(a) for a in alphas)
    r_lo = max(abs(p) for p in ps)
    if r_lo >= r_hi:
        raise GeometryInfeasible(
            f"z0 = {z0} leaves no separating circle ({r_lo:.4f} >= {r_hi:.4f})"
        )
    r = math.sqrt(r_lo * r_hi)
    points = alphas + ps
    min_sep = min(
        abs(points[i] - points[j])
        for i in range(len(points))
        for j in range(i + 1, len(points))
        if abs(points[i] - points[j]) > 1e-14
    ) if len(points) > 1 else abs(alphas[0] - ps[0])
    eps = 0.1 * min_sep
    return pairs, r, eps


def _tracked_hadamard_integral(contour: ContourSpec, f: AnalyticElement, g: AnalyticElement,
                               z0: complex, obstacles: Sequence[complex], n_gl: int,
                               frac: float, min_len: float) -> complex:
    start = contour.start()
    f_state = f.make_state(start)
    g_state = g.make_state(z0 / start)

    def integrand(u: complex, du: complex) -> complex:
        return f_state.value() * g_state.value() / u * du

    hooks = [lambda u: f_state.advance(u), lambda u: g_state.advance(z0 / u)]
    total = _integrate_contour_tracked(contour, integrand, hooks, obstacles, n_gl, frac, min_len)
    return total / TWO_PI_I


def monodromy_numeric(f: AnalyticElement, g: AnalyticElement, gamma: complex, z0: complex, *,
                      r: float | None = None, eps: float | None = None, tol: float = 1e-7,
                      max_rounds: int = 3, node_budget: int | None = None) -> complex:
    """Measured monodromy of the Hadamard product at gamma, evaluated at z0.

    Integrates the convolution integrand over the deformed and base contours
    with branch tracking and returns the difference; no monodromy formula is
    consulted anywhere.
    """
    pairs, r_default, eps_default = default_traintrack_geometry(f, g, gamma, z0)
    r = r_default if r is None else r
    eps = eps_default if eps is None else eps
    eta, eta_hat = build_traintrack(z0, pairs, r, eps)
    obstacles = [alpha for alpha, _ in pairs] + [z0 / beta for _, beta in pairs] + [0j]
    min_len = eps / 8.0

    if node_budget is not None:
        # crude budget map: each refinement round roughly quadruples the nodes
        max_rounds = min(max_rounds, max(1, int(math.log2(max(node_budget, 2) / 2048)) // 2))
    previous = None
    settings = [(12, 0.5), (16, 0.25), (24, 0.125), (32, 0.0625)]
    for n_gl, frac in settings[: max_rounds + 1]:
        base = _tracked_hadamard_integral(eta, f, g, z0, obstacles, n_gl, frac, min_len)
        deformed = _tracked_hadamard_integral(eta_hat, f, g, z0, obstacles, n_gl, frac, min_len)
        value = deformed - base
        if previous is not None and abs(value - previous) <= tol:
            return value
        previous = value
    raise QuadratureNotConverged(
        f"train-track refinement stalled above tolerance {tol:g}"
    )


# --- dual-engine comparison -----------------------------------------------------------------


@dataclass
class OracleRow:
    z: complex
    winding: int
    symbolic: complex
    numeric: complex | None
    abs_error: float | None

    def rel_error(self) -> float | None:
        if self.abs_error is None:
            return None
        return self.abs_error / (1.0 + abs(self.symbolic))


@dataclass
class OracleReport:
    gamma: complex
    rows: list[OracleRow] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def max_abs_error(self) -> float:
        errors = [row.abs_error for row in self.rows if row.abs_error is not None]
        return max(errors) if errors else math.nan

    def to_csv(self) -> str:
        lines = ["z_re,z_im,winding,symbolic_re,symbolic_im,numeric_re,numeric_im,abs_error"]
        for row in self.rows:
            num_re = f"{row.numeric.real:.16e}" if row.numeric is not None else ""
            num_im = f"{row.numeric.imag:.16e}" if row.numeric is not None else ""
            err = f"{row.abs_error:.3e}" if row.abs_error is not None else ""
            lines.append(
                f"{row.z.real:.16e},{row.z.imag:.16e},{row.winding},"
                f"{row.symbolic.real:.16e},{row.symbolic.imag:.16e},{num_re},{num_im},{err}"
            )
        return "\n".join(lines) + "\n"


def crosscheck(f_spec, g_spec, gamma, samples: Sequence[complex], *,
               f_element: AnalyticElement, g_element: AnalyticElement,
               windings: Sequence[int] = (0,), tol: float = 1e-7,
               node_budget: int | None = None) -> OracleReport:
    """Compare the symbolic monodromy with contour measurements at sample points.

    The numeric side measures the principal-sheet monodromy, so only winding 0
    rows carry a measurement; other windings evaluate the symbolic result on
    that sheet for inspection.
    """
    from .logpoly import BranchPoint
    from .monodromy import hadamard_monodromy_general

    symbolic = hadamard_monodromy_general(f_spec, g_spec, gamma)
    gamma_value = complex(symbolic.gamma)
    report = OracleReport(gamma=gamma_value, metadata={"tol": tol, "engine": "traintrack"})
    for z0 in samples:
        for w in windings:
            sym_val = symbolic.value.lp_eval(BranchPoint(complex(z0), w))
            if w == 0:
                num_val = monodromy_numeric(f_element, g_element, gamma_value, complex(z0),
                                            tol=tol, node_budget=node_budget)
                err = abs(num_val - sym_val)
            else:
                num_val, err = None, None
            report.rows.append(OracleRow(complex(z0), w, sym_val, num_val, err))
    return report
