"""Anchor configurations, the k_T constants, and the two genericity conditions.

Condition (i) asks that no four anchors are coplanar; condition (ii) asks
that no four of the spheres centred at the anchors with squared radius
``1/k_T`` have a common point.  Both are checked pointwise, quadruple by
quadruple, with the coplanarity determinant and the four-sphere polynomial
``omega``.

Note on ``omega``: it is evaluated in the form produced by substituting the
Cramer solution of the three linearised sphere differences back into the
first sphere equation, ``sum_j (N_j - 2*delta*p1_j)**2 - 4*delta**2*r1_sq``.
The closing term is ``-4*delta**2*r1_sq``; the variant
``-4*(delta**2 + |P1|**2 + r1**2)`` is not what the substitution gives and
would not vanish on concurrent spheres.  ``omega`` vanishes
for real *and* complex concurrency, so condition (ii) as checked here is the
conservative (stronger) reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Optional

from .errors import DegenerateConfigurationError
from .geom import COPLANAR_RTOL, Point3, coplanarity_det, det3, dist_sq, norm_sq, scale_of

ANCHOR_LABELS = ("A", "B", "C", "D", "E", "F")
QUADRUPLES = tuple(combinations(ANCHOR_LABELS, 4))

# relative tolerance for |omega| <= OMEGA_RTOL * scale**6
OMEGA_RTOL = 1e-7


@dataclass(frozen=True)
class Configuration:
    """Six anchors A..F, the target pair (X*, Y*) and an optional seventh anchor G."""

    anchors: tuple[Point3, ...]
    x_star: Point3
    y_star: Point3
    g: Optional[Point3] = None

    def __post_init__(self) -> None:
        anchors = tuple(self.anchors)
        object.__setattr__(self, "anchors", anchors)
        if len(anchors) != 6:
            raise DegenerateConfigurationError(f"expected 6 anchors, got {len(anchors)}")
        named = self.named_points()
        items = list(named.items())
        for i, (la, pa) in enumerate(items):
            for lb, pb in items[i + 1:]:
                if pa == pb:
                    raise DegenerateConfigurationError(f"points {la} and {lb} coincide at {tuple(pa)}")

    @property
    def labels(self) -> tuple[str, ...]:
        return ANCHOR_LABELS + (("G",) if self.g is not None else ())

    def point(self, label: str) -> Point3:
        if label in ANCHOR_LABELS:
            return self.anchors[ANCHOR_LABELS.index(label)]
        if label == "G" and self.g is not None:
            return self.g
        if label == "X*":
            return self.x_star
        if label == "Y*":
            return self.y_star
        raise KeyError(label)

    def named_points(self) -> dict[str, Point3]:
        out = dict(zip(ANCHOR_LABELS, self.anchors))
        if self.g is not None:
            out["G"] = self.g
        out["X*"] = self.x_star
        out["Y*"] = self.y_star
        return out

    @cached_property
    def scale(self) -> float:
        return scale_of(self.named_points().values())

    @cached_property
    def k(self) -> dict[str, float]:
        return {label: k_value(self, label) for label in self.labels}

    def with_g(self, g: Optional[Point3]) -> Configuration:
        return Configuration(self.anchors, self.x_star, self.y_star, g)


@dataclass(frozen=True)
class SphereSpec:
    center: Point3
    radius_sq: float

    def __post_init__(self) -> None:
        if not (self.radius_sq > 0 and math.isfinite(self.radius_sq)):
            raise ValueError(f"radius_sq must be positive and finite, got {self.radius_sq!r}")


@dataclass
class GenericityReport:
    condition_i: bool
    condition_ii: bool
    failing_quadruples_i: list[tuple[str, ...]]
    failing_quadruples_ii: list[tuple[str, ...]]
    delta_values: dict[tuple[str, ...], float] = field(default_factory=dict)
    omega_values: dict[tuple[str, ...], float] = field(default_factory=dict)
    k_values: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.condition_i and self.condition_ii


def k_value(cfg: Configuration, label: str) -> float:
    """``1/|X*-T|^2 + 1/|Y*-T|^2`` for the anchor ``T`` named by ``label``."""
    t = cfg.point(label)
    dx, dy = dist_sq(cfg.x_star, t), dist_sq(cfg.y_star, t)
    if dx == 0.0 or dy == 0.0:
        raise DegenerateConfigurationError(f"X* or Y* coincides with anchor {label}")
    return 1.0 / dx + 1.0 / dy


def omega(s1: SphereSpec, s2: SphereSpec, s3: SphereSpec, s4: SphereSpec) -> float:
    """Four-sphere concurrency polynomial; zero iff the spheres share a (complex) point.

    The equivalence holds when the centres are not coplanar.  For coplanar
    centres the last term drops and the value is a plain sum of squares.
    """
    p1 = s1.center
    lam1 = s1.radius_sq - norm_sq(p1)
    rows = []
    rhs = []
    for s in (s2, s3, s4):
        rows.append(tuple(p1 - s.center))
        rhs.append((s.radius_sq - norm_sq(s.center)) - lam1)
    delta = det3(rows)
    total = 0.0
    for j, pj in enumerate(p1):
        m = [list(r) for r in rows]
        for i in range(3):
            m[i][j] = rhs[i]
        total += (det3(m) - 2.0 * delta * pj) ** 2
    return total - 4.0 * delta * delta * s1.radius_sq


def omega_scale(spheres) -> float:
    return max(scale_of(s.center for s in spheres), max(math.sqrt(s.radius_sq) for s in spheres))


def spheres_concurrent(s1, s2, s3, s4, rtol: float = OMEGA_RTOL) -> bool:
    spheres = (s1, s2, s3, s4)
    return abs(omega(*spheres)) <= rtol * omega_scale(spheres) ** 6


def condition_sphere(cfg: Configuration, label: str) -> SphereSpec:
    return SphereSpec(cfg.point(label), 1.0 / cfg.k[label])


def check_conditions(cfg: Configuration) -> GenericityReport:
    s = cfg.scale
    k = {label: cfg.k[label] for label in ANCHOR_LABELS}
    deltas: dict[tuple[str, ...], float] = {}
    omegas: dict[tuple[str, ...], float] = {}
    for quad in QUADRUPLES:
        deltas[quad] = coplanarity_det(*(cfg.point(t) for t in quad))
        omegas[quad] = omega(*(condition_sphere(cfg, t) for t in quad))
    fail_i = [q for q in QUADRUPLES if abs(deltas[q]) <= COPLANAR_RTOL * s**3]
    fail_ii = [q for q in QUADRUPLES if abs(omegas[q]) <= OMEGA_RTOL * s**6]
    return GenericityReport(
        condition_i=not fail_i,
        condition_ii=not fail_ii,
        failing_quadruples_i=fail_i,
        failing_quadruples_ii=fail_ii,
        delta_values=deltas,
        omega_values=omegas,
        k_values=k,
    )
