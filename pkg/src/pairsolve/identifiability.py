"""Does a seventh anchor G separate the known extra solutions from (X*, Y*)?

An extra solution (X, Y) of the six-anchor system survives the seventh
equation exactly when

    f(G) = 1/|X-G|^2 + 1/|Y-G|^2 - 1/|X*-G|^2 - 1/|Y*-G|^2

vanishes.  The bad-anchor surface is approximated by the zero set of the
product of f over all known extras; it is only as complete as the extra set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import EvaluationError
from .genericity import Configuration
from .geom import Point3, dist_sq
from .solver import SolutionPair, SolveReport, residual_norm

# relative tolerance for deciding f(G) == 0
BAD_ANCHOR_RTOL = 1e-8


def anchor_residual(x: Point3, y: Point3, cfg: Configuration, z: Point3) -> float:
    terms = [dist_sq(p, z) for p in (x, y, cfg.x_star, cfg.y_star)]
    if min(terms) == 0.0:
        raise EvaluationError(f"anchor {tuple(z)} coincides with a solution point")
    # grouped so the value is exactly swap-symmetric and exactly 0 at (X*, Y*) and (Y*, X*)
    return (1.0 / terms[0] + 1.0 / terms[1]) - (1.0 / terms[2] + 1.0 / terms[3])


def _terms_and_gradient(points: np.ndarray, z: np.ndarray):
    """Values ``f``, summed term magnitudes and gradient norms of f at the rows of ``z``.

    ``points`` holds X, Y, X*, Y* as rows; returns arrays of shape (len(z),).
    """
    sign = np.array([1.0, 1.0, -1.0, -1.0])
    diff = points[None, :, :] - z[:, None, :]
    d2 = (diff**2).sum(axis=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / d2
        f = inv @ sign
        mag = inv.sum(axis=1)
        # d/dz 1/|p-z|^2 = 2 (p-z)/|p-z|^4
        grad = 2.0 * np.einsum("k,nk,nkc->nc", sign, inv**2, diff)
    return f, mag, np.linalg.norm(grad, axis=1)


def _stack(pair: SolutionPair, cfg: Configuration) -> np.ndarray:
    return np.array([tuple(pair.x), tuple(pair.y), tuple(cfg.x_star), tuple(cfg.y_star)])


def default_tolerance(mag, grad_norm, scale: float):
    """``1e-8 * (|terms| + |grad f| * scale)``; the magnitude part keeps the
    test meaningful on symmetry sets where f and its gradient both vanish."""
    return BAD_ANCHOR_RTOL * (mag + grad_norm * scale)


@dataclass(frozen=True)
class BadAnchorProbe:
    extras: tuple[SolutionPair, ...]
    tolerance: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "extras", tuple(self.extras))
        if not self.tolerance >= 0:
            raise ValueError(f"tolerance must be non-negative, got {self.tolerance!r}")
        for e in self.extras:
            if not e.residual_norm <= self.tolerance:
                raise ValueError(f"extra {e.as_array()} has residual {e.residual_norm:.3g} > {self.tolerance:.3g}")

    @classmethod
    def build(cls, cfg: Configuration, extras: Sequence[SolutionPair], tolerance: float = 1e-9) -> BadAnchorProbe:
        """Validate the extras against the six-anchor residual of ``cfg``."""
        checked = []
        for e in extras:
            rn = residual_norm(cfg, e.x, e.y)
            checked.append(SolutionPair(e.x, e.y, rn, e.is_trivial, e.certificates))
        return cls(tuple(checked), tolerance)

    @classmethod
    def from_report(cls, cfg: Configuration, report: SolveReport) -> BadAnchorProbe:
        return cls.build(cfg, report.nontrivial, report.settings["accept_tol"])


def is_bad_anchor(probe: BadAnchorProbe, cfg: Configuration, g: Point3, tol: Optional[float] = None) -> bool:
    """True iff some known extra still satisfies the equation at ``g``."""
    if g in (cfg.x_star, cfg.y_star):
        raise EvaluationError("G coincides with X* or Y*")
    z = np.array([tuple(g)])
    for e in probe.extras:
        if g in (e.x, e.y):
            # infinite term against a finite right-hand side: this extra is cut
            continue
        f, mag, gn = _terms_and_gradient(_stack(e, cfg), z)
        limit = default_tolerance(mag[0], gn[0], cfg.scale) if tol is None else tol
        if abs(f[0]) <= limit:
            return True
    return False


def sample_bad_surface(
    probe: BadAnchorProbe,
    cfg: Configuration,
    box: Sequence[float],
    n: int,
    tol: Optional[float] = None,
) -> list[Point3]:
    """Grid points of ``box = (x0, x1, y0, y1, z0, z1)`` (``n`` nodes per axis)
    that lie within tolerance of the bad-anchor surface, or where the product
    of residuals changes sign along a grid edge (the node with the smaller
    product is reported).  Sorted lexicographically."""
    if n < 2:
        raise ValueError("grid needs at least 2 nodes per axis")
    x0, x1, y0, y1, z0, z1 = (float(b) for b in box)
    if not (x0 <= x1 and y0 <= y1 and z0 <= z1):
        raise ValueError(f"box bounds out of order: {tuple(box)}")
    if not probe.extras:
        return []
    axes = [np.linspace(a, b, n) for a, b in ((x0, x1), (y0, y1), (z0, z1))]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    prod = np.ones(len(grid))
    near = np.zeros(len(grid), dtype=bool)
    for e in probe.extras:
        f, mag, gn = _terms_and_gradient(_stack(e, cfg), grid)
        limit = default_tolerance(mag, gn, cfg.scale) if tol is None else tol
        near |= np.abs(f) <= limit
        prod *= f
    finite = np.isfinite(prod)
    near &= finite
    prod = prod.reshape(n, n, n)
    finite = finite.reshape(n, n, n)
    hit = near.reshape(n, n, n).copy()
    aprod = np.abs(prod)
    for ax in range(3):
        lo = [slice(None)] * 3
        hi = [slice(None)] * 3
        lo[ax] = slice(0, -1)
        hi[ax] = slice(1, None)
        lo, hi = tuple(lo), tuple(hi)
        change = finite[lo] & finite[hi] & (np.sign(prod[lo]) * np.sign(prod[hi]) < 0)
        take_lo = change & (aprod[lo] <= aprod[hi])
        hit[lo] |= take_lo
        hit[hi] |= change & ~take_lo
    pts = grid[hit.reshape(-1)]
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
    return [Point3.from_array(p) for p in pts[order]]


def format_cloud(points: Sequence[Point3]) -> str:
    return "".join(" ".join(format(c, ".17g") for c in p) + "\n" for p in points)
