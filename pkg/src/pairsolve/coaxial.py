"""Coaxial two-circle configurations reduced to a univariate polynomial.

Anchors A, B, C lie on a circle in the plane z = a3 and D, E, F on a circle in
the plane z = d3, both centred on the z axis, with squared distances r1**2
and r2**2 from the origin.  For X = (0,0,U), Y = (0,0,V) on the axis every
anchor on circle i is at squared distance S_i(t) = r_i**2 + t**2 - 2*h_i*t
(h1 = a3, h2 = d3), so the six equations collapse to two:

    1/S_i(U) + 1/S_i(V) = kappa_i,          i = 1, 2.

Clearing denominators gives quadratics alpha_i U**2 + beta_i U + gamma_i = 0
with coefficients quadratic in V.  Eliminating U**2 leaves U = N(V)/D(V), and
substituting back yields alpha1*N**2 + beta1*N*D + gamma1*D**2.  Since
D = 2*(d3 - a3)*alpha1*alpha2, that numerator is alpha1 times a polynomial of
degree at most 8; ``w_polynomial`` returns the exact quotient.

All arithmetic here is exact over ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DegenerateConfigurationError, PairSolveError
from .genericity import Configuration
from .geom import Point3
from .ratpoly import RatPoly, RealRoot, real_roots
from .solver import SolutionPair

Scalar = Union[int, str, float, Fraction]

# absolute tolerance on the two rational equations when accepting an axis pair
AXIS_TOL = 1e-10
# width of the isolating intervals used to lift roots
LIFT_PRECISION = Fraction(1, 10**40)

# circle 1 at 0/120/240 degrees, circle 2 rotated by 30 degrees; identical
# phases would put AB || DE etc. and make those quadruples coplanar
DEFAULT_PHASES = (0.0, 120.0, 240.0, 30.0, 150.0, 270.0)


class InfiniteFamilyError(PairSolveError):
    """Both axis equations coincide, so the axis solutions form a continuum."""


def to_rational(value: Scalar) -> Fraction:
    """Exact rational from an int, Fraction or decimal literal.

    Floats are snapped through their shortest decimal repr, so ``0.1``
    becomes 1/10 rather than its binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DegenerateConfigurationError(f"non-finite input {value!r}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DegenerateConfigurationError(f"not a rational literal: {value!r}") from exc


@dataclass(frozen=True)
class CoaxialConfig:
    r1: Fraction
    r2: Fraction
    a3: Fraction
    d3: Fraction
    u: Fraction
    v: Fraction

    def __post_init__(self) -> None:
        for name in ("r1", "r2", "a3", "d3", "u", "v"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.r1 <= 0 or self.r2 <= 0:
            raise DegenerateConfigurationError("r1 and r2 must be positive")
        if self.r1**2 <= self.a3**2:
            raise DegenerateConfigurationError("circle 1 has no positive radius: need r1^2 > a3^2")
        if self.r2**2 <= self.d3**2:
            raise DegenerateConfigurationError("circle 2 has no positive radius: need r2^2 > d3^2")
        if self.u == self.v:
            raise DegenerateConfigurationError("u and v must differ")
        for i in (1, 2):
            s = s_poly(self, i)
            if s(self.u) == 0 or s(self.v) == 0:
                raise DegenerateConfigurationError(f"kappa_{i} is infinite")

    def radius_sq(self, which: int) -> Fraction:
        return self.r1**2 if which == 1 else self.r2**2

    def height(self, which: int) -> Fraction:
        if which not in (1, 2):
            raise ValueError(f"circle index must be 1 or 2, got {which!r}")
        return self.a3 if which == 1 else self.d3

    def rho_sq(self, which: int) -> Fraction:
        """Squared radius of circle ``which`` in its own plane."""
        return self.radius_sq(which) - self.height(which) ** 2

    @property
    def kappa1(self) -> Fraction:
        return kappa(self, 1)

    @property
    def kappa2(self) -> Fraction:
        return kappa(self, 2)


def s_poly(cc: CoaxialConfig, which: int) -> RatPoly:
    """S_i(t) = r_i^2 + t^2 - 2 h_i t, the squared anchor distance from (0,0,t)."""
    h = cc.height(which)
    return RatPoly([cc.radius_sq(which), -2 * h, 1])


def kappa(cc: CoaxialConfig, which: int) -> Fraction:
    s = s_poly(cc, which)
    su, sv = s(cc.u), s(cc.v)
    if su == 0 or sv == 0:
        raise DegenerateConfigurationError(f"kappa_{which} is infinite")
    return 1 / su + 1 / sv


@dataclass(frozen=True)
class AbcCoeffs:
    alpha1: RatPoly
    beta1: RatPoly
    gamma1: RatPoly
    alpha2: RatPoly
    beta2: RatPoly
    gamma2: RatPoly

    def __iter__(self):
        yield from (self.alpha1, self.beta1, self.gamma1, self.alpha2, self.beta2, self.gamma2)


def _abc(cc: CoaxialConfig, which: int) -> tuple[RatPoly, RatPoly, RatPoly]:
    s = s_poly(cc, which)
    alpha = 1 - s.scale(kappa(cc, which))
    beta = alpha.scale(-2 * cc.height(which))
    gamma = s + alpha.scale(cc.radius_sq(which))
    return alpha, beta, gamma


def abc_coeffs(cc: CoaxialConfig) -> AbcCoeffs:
    """Coefficients, as quadratics in V, of the two equations viewed as quadratics in U."""
    return AbcCoeffs(*_abc(cc, 1), *_abc(cc, 2))


def rational_u_of_v(cc: CoaxialConfig) -> tuple[RatPoly, RatPoly]:
    """``(N, D)`` with U = N(V)/D(V) on every axis solution where D(V) != 0."""
    a1, b1, g1, a2, b2, g2 = abc_coeffs(cc)
    return g2 * a1 - g1 * a2, b1 * a2 - b2 * a1


def w_numerator(cc: CoaxialConfig) -> RatPoly:
    """alpha1*N^2 + beta1*N*D + gamma1*D^2 before removing the alpha1 factor."""
    c = abc_coeffs(cc)
    n, d = rational_u_of_v(cc)
    return c.alpha1 * n * n + c.beta1 * n * d + c.gamma1 * d * d


def w_polynomial(cc: CoaxialConfig) -> RatPoly:
    """The degree <= 8 polynomial whose real roots carry every axis solution."""
    _, d = rational_u_of_v(cc)
    if d.is_zero():
        raise DegenerateConfigurationError("U is not a rational function of V when a3 == d3")
    return w_numerator(cc).exact_div(abc_coeffs(cc).alpha1)


def nontrivial_factor(cc: CoaxialConfig) -> RatPoly:
    """w divided by (V - u)(V - v), the factor contributed by the trivial pairs."""
    return w_polynomial(cc).exact_div(RatPoly.from_roots([cc.u, cc.v]))


def v8_coefficient(cc: CoaxialConfig) -> Fraction:
    """Closed form of the V^8 coefficient of ``w_polynomial``."""
    k1, k2 = cc.kappa1, cc.kappa2
    r1s, r2s = cc.r1**2, cc.r2**2
    a3, d3 = cc.a3, cc.d3
    inner = (
        a3**2 * (4 * r2s * k1 * k2 - 4 * k1)
        + d3**2 * (4 * r1s * k1 * k2 - 4 * k2)
        + 4 * a3 * d3 * (-k1 * k2 * (r1s + r2s) + k1 + k2)
    )
    return k1 * k2 * inner + (k1 * k2 * (r1s - r2s) + k1 - k2) ** 2


def axis_residual(cc: CoaxialConfig, u: Scalar, v: Scalar) -> tuple[float, float]:
    """The two equations ``1/S_i(U) + 1/S_i(V) - kappa_i`` at (U, V), evaluated exactly."""
    uu, vv = to_rational(u), to_rational(v)
    out = []
    for i in (1, 2):
        s = s_poly(cc, i)
        su, sv = s(uu), s(vv)
        if su == 0 or sv == 0:
            return (math.inf, math.inf)
        out.append(float(1 / su + 1 / sv - kappa(cc, i)))
    return out[0], out[1]


def _lift(cc: CoaxialConfig, u: Fraction, v: Fraction) -> SolutionPair:
    res = axis_residual(cc, u, v)
    tol = 1e-12 * max(1.0, float(abs(cc.u)), float(abs(cc.v)))
    trivial = any(
        abs(u - a) <= tol and abs(v - b) <= tol for a, b in ((cc.u, cc.v), (cc.v, cc.u))
    )
    return SolutionPair(
        Point3(0.0, 0.0, float(u)),
        Point3(0.0, 0.0, float(v)),
        max(abs(r) for r in res),
        trivial,
        None,
    )


def _root_value(root: RealRoot) -> Fraction:
    return (root.lo + root.hi) / 2


def _u_candidates(cc: CoaxialConfig, v: Fraction, n: RatPoly, d: RatPoly) -> list[Fraction]:
    dv = d(v)
    if dv != 0:
        return [n(v) / dv]
    # D(v) = 0: fall back to the quadratic in U of whichever equation is nondegenerate
    out = []
    for alpha, beta, gamma in (_abc(cc, 1), _abc(cc, 2)):
        a, b, c = alpha(v), beta(v), gamma(v)
        if a == 0:
            if b != 0:
                out.append(-c / b)
            continue
        disc = b * b - 4 * a * c
        if disc < 0:
            continue
        sq = Fraction(math.sqrt(float(disc)))
        out.extend({(-b + sq) / (2 * a), (-b - sq) / (2 * a)})
        break
    return out


def _equal_heights_solutions(cc: CoaxialConfig) -> list[tuple[Fraction, Fraction]]:
    # a3 == d3: both equations read alpha_i*q + gamma_i = 0 in q = U^2 - 2hU
    a1, _, g1, a2, _, g2 = abc_coeffs(cc)
    n = g2 * a1 - g1 * a2
    if n.is_zero():
        raise InfiniteFamilyError("the two axis equations coincide; infinitely many axis solutions")
    h = cc.a3
    pairs = []
    for root in real_roots(n, LIFT_PRECISION):
        v = _root_value(root)
        alpha, gamma = (a1(v), g1(v)) if a1(v) != 0 else (a2(v), g2(v))
        if alpha == 0:
            continue
        disc = h * h - gamma / alpha
        if disc < 0:
            continue
        sq = Fraction(math.sqrt(float(disc)))
        for u in {h + sq, h - sq}:
            pairs.append((u, v))
    return pairs


def enumerate_axis_solutions(cc: CoaxialConfig) -> list[SolutionPair]:
    """Every real axis solution (X, Y) = ((0,0,U), (0,0,V)), one ordered pair per
    distinct V, sorted by V.  Both orientations of a pair appear since U and V
    are each roots of w."""
    n, d = rational_u_of_v(cc)
    if d.is_zero():
        candidates = _equal_heights_solutions(cc)
    else:
        candidates = []
        for root in real_roots(w_polynomial(cc), LIFT_PRECISION):
            v = _root_value(root)
            candidates.extend((u, v) for u in _u_candidates(cc, v, n, d))
    out = []
    seen = set()
    for u, v in candidates:
        pair = _lift(cc, u, v)
        key = (pair.x.z, pair.y.z)
        if pair.residual_norm <= AXIS_TOL and key not in seen:
            seen.add(key)
            out.append(pair)
    return sorted(out, key=lambda p: (p.y.z, p.x.z))


def realize_anchors(cc: CoaxialConfig, phases: Optional[Sequence[float]] = None) -> Configuration:
    """Concrete anchors on the two circles; ``phases`` are six angles in degrees,
    three for A, B, C on circle 1 and three for D, E, F on circle 2."""
    phases = DEFAULT_PHASES if phases is None else tuple(float(p) for p in phases)
    if len(phases) != 6:
        raise ValueError(f"expected 6 phases, got {len(phases)}")
    for group in (phases[:3], phases[3:]):
        if len({p % 360.0 for p in group}) != 3:
            raise DegenerateConfigurationError("phases on one circle must be pairwise distinct")
    anchors = []
    for i, group in ((1, phases[:3]), (2, phases[3:])):
        rho = math.sqrt(cc.rho_sq(i))
        if rho == 0.0:
            raise DegenerateConfigurationError(f"circle {i} has zero radius")
        h = float(cc.height(i))
        for p in group:
            t = math.radians(p)
            anchors.append(Point3(rho * math.cos(t), rho * math.sin(t), h))
    return Configuration(tuple(anchors), Point3(0.0, 0.0, float(cc.u)), Point3(0.0, 0.0, float(cc.v)))
