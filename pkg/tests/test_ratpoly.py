from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pairsolve.ratpoly import (
    RatPoly,
    count_roots,
    format_poly,
    gcd,
    parse_poly,
    real_roots,
    sign_variations,
    squarefree_decomposition,
    squarefree_part,
    sturm_sequence,
)

from conftest import SEXTIC

V = RatPoly.x()
small_ints = st.integers(-9, 9)
polys = st.lists(small_ints, min_size=1, max_size=7).map(RatPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_product_example():
    assert (V - 3) * (V + 2) == RatPoly([-6, -1, 1])


def test_gcd_example():
    g = gcd(V * V - 1, V * V - 2 * V + 1)
    assert g == V - 1


def test_sextic_at_zero():
    assert RatPoly(SEXTIC).eval(0) == -3429216


def test_zero_and_constants():
    assert RatPoly([0, 0]).is_zero() and RatPoly([0, 0]).degree == -1
    assert RatPoly([5]).degree == 0
    assert RatPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert RatPoly([3, 1]) == RatPoly([Fraction(6, 2), 1])


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        divmod(V, RatPoly())
    with pytest.raises(ArithmeticError):
        (V * V + 1).exact_div(V - 1)


def test_derivative_and_scale():
    p = RatPoly([1, 2, 3, 4])
    assert p.derivative() == RatPoly([2, 6, 12])
    assert p.scale(Fraction(1, 2)) == RatPoly([Fraction(1, 2), 1, Fraction(3, 2), 2])
    assert p.eval(Fraction(1, 2)) == 1 + 1 + Fraction(3, 4) + Fraction(1, 2)


def test_content_and_primitive():
    p = RatPoly([Fraction(2, 3), Fraction(-4, 9)])
    assert p.content() == Fraction(2, 9)
    assert p.primitive() == RatPoly([-3, 2])
    assert p.is_proportional(RatPoly([3, -2]))
    assert not p.is_proportional(RatPoly([3, 2]))


def test_format_roundtrip():
    p = RatPoly([Fraction(-1, 3), 0, 2])
    assert format_poly(p) == "-1/3 0/1 2/1"
    assert parse_poly(format_poly(p)) == p
    assert format_poly(RatPoly()) == "0/1"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == RatPoly()


@given(polys, nonzero_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_is_monic(a, b, c):
    g = gcd(a * c, b * c)
    assert g.lead == 1
    assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero()
    assert (g % c.monic()).is_zero()


@given(nonzero_polys, nonzero_polys)
def test_squarefree_decomposition_reconstructs(a, b):
    p = a * b * b
    parts = squarefree_decomposition(p)
    prod = RatPoly([p.lead])
    for f, i in parts:
        prod = prod * f**i
        assert gcd(f, f.derivative()).degree == 0
    assert prod == p


def test_real_roots_simple():
    roots = real_roots((V - 3) * (V + 2))
    assert [(r.approx, r.multiplicity) for r in roots] == [(-2.0, 1), (3.0, 1)]


def test_real_roots_multiplicity():
    roots = real_roots((V - 1) ** 2)
    assert len(roots) == 1 and roots[0].multiplicity == 2 and roots[0].approx == 1.0
    roots = real_roots((V - 1) ** 2 * (V + Fraction(1, 3)) ** 3 * (V * V + 1))
    assert [r.multiplicity for r in roots] == [3, 2]
    assert roots[0].lo <= Fraction(-1, 3) <= roots[0].hi


def test_real_roots_precision_and_errors():
    roots = real_roots(V * V - 2, Fraction(1, 10**20))
    assert len(roots) == 2
    for r in roots:
        assert r.width <= Fraction(1, 10**20)
        assert r.lo * r.lo <= 2 <= r.hi * r.hi or r.lo * r.lo >= 2 >= r.hi * r.hi
    with pytest.raises(ValueError):
        real_roots(RatPoly())
    with pytest.raises(ValueError):
        real_roots(V, 0)


def test_sextic_real_roots_against_independent_oracles():
    p = RatPoly(SEXTIC)
    ours = [r.approx for r in real_roots(p, Fraction(1, 10**15))]
    x = sympy.Symbol("x")
    sym = sympy.Poly(list(reversed(SEXTIC)), x)
    assert sympy.count_roots(sym) == len(ours) == 4
    exact = sorted(float(r.evalf(30)) for r in sympy.real_roots(sym))
    assert np.allclose(ours, exact, atol=1e-12)
    num = np.roots(list(reversed(SEXTIC)))
    num = sorted(z.real for z in num if abs(z.imag) < 1e-9)
    assert np.allclose(ours, num, atol=1e-8)


def _oracle_roots(p: RatPoly, lo: Fraction, hi: Fraction, depth=0) -> list[Fraction]:
    """Roots of a square-free p in (lo, hi) from its critical points: p is
    monotone between consecutive roots of p', so each sign change there is one
    root, located by exact bisection."""
    if p.degree <= 0:
        return []
    crit = _oracle_roots(p.derivative(), lo, hi, depth + 1) if p.degree > 1 else []
    knots = [lo] + crit + [hi]
    out = []
    for a, b in zip(knots, knots[1:]):
        fa, fb = p.eval(a), p.eval(b)
        if fa == 0:
            if a != lo and (not out or out[-1] != a):
                out.append(a)
            continue
        if fb == 0 or (fa > 0) == (fb > 0):
            continue
        for _ in range(80):
            m = (a + b) / 2
            fm = p.eval(m)
            if fm == 0:
                a = b = m
                break
            a, b = (m, b) if (fm > 0) == (fa > 0) else (a, m)
        out.append((a + b) / 2)
    return out


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=8), st.integers(-40, 40), st.integers(1, 40))
def test_sturm_counts_against_derivative_oracle(coeffs, lo, width):
    p = RatPoly(coeffs)
    assume(p.degree >= 1)
    p = squarefree_part(p)
    bound = Fraction(10**6)
    oracle = _oracle_roots(p, -bound, bound)
    roots = real_roots(p)
    assert len(roots) == len(oracle) == count_roots(p)
    # Sturm count on (lo, hi] is the sign-variation difference at the endpoints
    a, b = Fraction(lo, 4), Fraction(lo + width, 4)
    seq = sturm_sequence(p)
    diff = sign_variations(q.eval(a) for q in seq) - sign_variations(q.eval(b) for q in seq)
    expected = sum(1 for r in roots if a < r.lo and r.hi <= b or (r.lo == r.hi and a < r.lo <= b))
    straddle = [r for r in roots if r.lo <= a <= r.hi or r.lo <= b <= r.hi]
    if not straddle:
        assert diff == count_roots(p, a, b) == expected
