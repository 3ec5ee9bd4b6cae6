"""Points in E^3, squared distances and the coplanarity / collinearity predicates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

# relative tolerance for |det| <= COPLANAR_RTOL * scale**3
COPLANAR_RTOL = 1e-9


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"Point3.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y
        yield self.z

    def __sub__(self, other: Point3) -> Point3:
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other: Point3) -> Point3:
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __mul__(self, s: float) -> Point3:
        return Point3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, other: Point3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> Point3:
        return cls(float(a[0]), float(a[1]), float(a[2]))


def norm_sq(p: Point3) -> float:
    return p.x * p.x + p.y * p.y + p.z * p.z


def dist_sq(p: Point3, q: Point3) -> float:
    return norm_sq(p - q)


def scale_of(points: Iterable[Point3]) -> float:
    """Largest coordinate magnitude among ``points`` (0.0 for an empty input)."""
    return max((abs(c) for p in points for c in p), default=0.0)


def det3(rows) -> float:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def coplanarity_det(a: Point3, b: Point3, c: Point3, d: Point3) -> float:
    """Determinant of the rows ``a-b``, ``a-c``, ``a-d``.

    Zero exactly when the four points lie on a common plane.  Equal to the
    4x4 determinant with coordinate columns and a trailing row of ones.
    """
    return det3((tuple(a - b), tuple(a - c), tuple(a - d)))


def coplanar(a: Point3, b: Point3, c: Point3, d: Point3, rtol: float = COPLANAR_RTOL) -> bool:
    s = scale_of((a, b, c, d))
    return abs(coplanarity_det(a, b, c, d)) <= rtol * s**3


def _minors(u, v):
    return (
        u[0] * v[1] - u[1] * v[0],
        u[0] * v[2] - u[2] * v[0],
        u[1] * v[2] - u[2] * v[1],
    )


def collinear(a: Point3, b: Point3, c: Point3, exact: bool = False, rtol: float = COPLANAR_RTOL) -> bool:
    """True iff the three 2x2 minors of the rows ``a-b``, ``a-c`` vanish.

    In exact mode the float inputs are converted to their exact binary
    rational values and the minors must be exactly zero.  Otherwise each
    minor is compared against ``rtol * scale**2``.
    """
    if exact:
        fa, fb, fc = ([Fraction(t) for t in p] for p in (a, b, c))
        u = [fa[i] - fb[i] for i in range(3)]
        v = [fa[i] - fc[i] for i in range(3)]
        return all(m == 0 for m in _minors(u, v))
    u, v = tuple(a - b), tuple(a - c)
    s = scale_of((a, b, c))
    return all(abs(m) <= rtol * s**2 for m in _minors(u, v))
