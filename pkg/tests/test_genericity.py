import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairsolve.errors import DegenerateConfigurationError
from pairsolve.genericity import (
    QUADRUPLES,
    Configuration,
    SphereSpec,
    check_conditions,
    condition_sphere,
    k_value,
    omega,
    omega_scale,
    spheres_concurrent,
)
from pairsolve.geom import Point3, dist_sq, norm_sq

from conftest import random_configuration


def radical_oracle(spheres):
    """4 delta^2 (|X - P1|^2 - r1^2) with X the numpy-solved radical centre."""
    p = np.array([tuple(s.center) for s in spheres])
    lam = np.array([s.radius_sq - p[i] @ p[i] for i, s in enumerate(spheres)])
    rows = p[0] - p[1:]
    delta = np.linalg.det(rows)
    x = np.linalg.solve(2.0 * rows, lam[1:] - lam[0])
    return 4.0 * delta**2 * ((x - p[0]) @ (x - p[0]) - spheres[0].radius_sq)


def test_k_value_definition():
    cfg = random_configuration(np.random.default_rng(0))
    for label in "ABCDEF":
        t = cfg.point(label)
        assert k_value(cfg, label) == pytest.approx(1 / dist_sq(cfg.x_star, t) + 1 / dist_sq(cfg.y_star, t))
        assert cfg.k[label] == k_value(cfg, label)


def test_configuration_validation():
    pts = [Point3(i, i * i, 1) for i in range(6)]
    with pytest.raises(DegenerateConfigurationError):
        Configuration(tuple(pts[:5]), Point3(9, 9, 9), Point3(8, 8, 8))
    with pytest.raises(DegenerateConfigurationError):
        Configuration(tuple(pts), pts[2], Point3(8, 8, 8))
    with pytest.raises(DegenerateConfigurationError):
        Configuration(tuple(pts), Point3(8, 8, 8), Point3(8, 8, 8))


def test_point_lookup_and_with_g():
    cfg = random_configuration(np.random.default_rng(1))
    g = Point3(5, 5, 5)
    cg = cfg.with_g(g)
    assert cg.labels[-1] == "G" and cg.point("G") == g
    assert cfg.labels == ("A", "B", "C", "D", "E", "F")
    assert cg.point("X*") == cfg.x_star and cg.point("Y*") == cfg.y_star
    with pytest.raises(KeyError):
        cfg.point("G")


def test_sphere_spec_validation():
    with pytest.raises(ValueError):
        SphereSpec(Point3(0, 0, 0), 0.0)
    with pytest.raises(ValueError):
        SphereSpec(Point3(0, 0, 0), math.inf)


def test_omega_unit_spheres_through_origin():
    centres = [Point3(1, 0, 0), Point3(0, 1, 0), Point3(0, 0, 1), Point3(-1, 0, 0)]
    # (-1,0,0) with the other three: centres are not coplanar
    spheres = [SphereSpec(c, 1.0) for c in centres]
    assert omega(*spheres) == pytest.approx(0.0, abs=1e-12)
    assert spheres_concurrent(*spheres)
    moved = [SphereSpec(c, 1.3) for c in centres[:1]] + spheres[1:]
    assert not spheres_concurrent(*moved)


def test_omega_closing_term():
    # substituting back gives -4*delta^2*r1^2; the variant
    # -4*(delta^2 + |P1|^2 + r1^2) leaves a nonzero value on concurrent spheres
    q = Point3(0.3, -0.2, 0.5)
    centres = [Point3(1, 0.2, 0), Point3(0, 1, 0.4), Point3(0.1, 0, 1), Point3(-1, -1, 0.3)]
    spheres = [SphereSpec(c, dist_sq(c, q)) for c in centres]
    value = omega(*spheres)
    assert abs(value) < 1e-12
    p1 = centres[0]
    rows = [tuple(p1 - c) for c in centres[1:]]
    delta = float(np.linalg.det(np.array(rows)))
    variant = value + 4 * delta**2 * spheres[0].radius_sq - 4 * (delta**2 + norm_sq(p1) + spheres[0].radius_sq)
    assert abs(variant) > 1e-3


sphere_centre = st.tuples(*[st.floats(-2, 2)] * 3)


@settings(max_examples=200, deadline=None)
@given(st.lists(sphere_centre, min_size=4, max_size=4), st.lists(st.floats(0.1, 4.0), min_size=4, max_size=4))
def test_omega_matches_radical_centre_oracle(centres, radii):
    spheres = [SphereSpec(Point3(*c), r) for c, r in zip(centres, radii)]
    rows = np.array([np.subtract(centres[0], c) for c in centres[1:]])
    if abs(np.linalg.det(rows)) < 1e-2:
        return
    expected = radical_oracle(spheres)
    assert omega(*spheres) == pytest.approx(expected, rel=1e-6, abs=1e-9 * omega_scale(spheres) ** 6)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(sphere_centre, min_size=4, max_size=4),
    st.lists(st.floats(0.1, 4.0), min_size=4, max_size=4),
    sphere_centre,
)
def test_omega_translation_invariant(centres, radii, shift):
    spheres = [SphereSpec(Point3(*c), r) for c, r in zip(centres, radii)]
    moved = [SphereSpec(s.center + Point3(*shift), s.radius_sq) for s in spheres]
    s = omega_scale(spheres + moved)
    assert omega(*moved) == pytest.approx(omega(*spheres), abs=1e-9 * s**6)


def test_coplanar_anchors_fail_condition_i():
    anchors = tuple(Point3(math.cos(t), math.sin(t), 0.0) for t in range(6))
    cfg = Configuration(anchors, Point3(0, 0, 1), Point3(0.2, 0.1, -1))
    report = check_conditions(cfg)
    assert not report.condition_i
    assert len(report.failing_quadruples_i) == 15
    assert not report.passed


def test_generic_passes_both():
    report = check_conditions(random_configuration(np.random.default_rng(7)))
    assert report.passed
    assert set(report.delta_values) == set(QUADRUPLES) == set(report.omega_values)
    assert len(report.k_values) == 6


def _anchor_on_condition_sphere(x_star, y_star, q, direction):
    """Bisection for t with |T - q|^2 = 1/k_T at T = q + t*direction."""
    d = np.asarray(direction, float) / np.linalg.norm(direction)

    def f(t):
        tp = Point3(*(np.asarray(tuple(q)) + t * d))
        a, b = dist_sq(x_star, tp), dist_sq(y_star, tp)
        return dist_sq(q, tp) - a * b / (a + b)

    lo, hi = 1e-9, 1.0
    while f(hi) < 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
    return Point3(*(np.asarray(tuple(q)) + lo * d))


def test_condition_ii_fails_for_constructed_concurrent_spheres():
    x_star, y_star, q = Point3(0.4, 0.1, 1.2), Point3(-0.3, 0.2, -0.9), Point3(0.05, -0.1, 0.1)
    dirs = [(1, 0.1, 0.2), (-0.3, 1, 0.1), (-0.5, -0.7, 0.3), (0.2, 0.1, -1)]
    anchors = [_anchor_on_condition_sphere(x_star, y_star, q, d) for d in dirs]
    anchors += [Point3(1.7, 1.1, -0.4), Point3(-1.2, 0.9, 0.8)]
    cfg = Configuration(tuple(anchors), x_star, y_star)
    for t in "ABCD":
        s = condition_sphere(cfg, t)
        assert dist_sq(s.center, q) == pytest.approx(s.radius_sq, rel=1e-12)
    report = check_conditions(cfg)
    assert report.condition_i
    assert ("A", "B", "C", "D") in report.failing_quadruples_ii
    assert not report.passed
