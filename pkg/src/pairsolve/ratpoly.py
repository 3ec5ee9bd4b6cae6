"""Exact univariate polynomials over the rationals, with real root isolation.

Coefficients are ``fractions.Fraction`` values (always reduced, positive
denominator), stored lowest degree first with no trailing zeros.  ``gcd``
returns the monic greatest common divisor (leading coefficient 1), or the zero
polynomial when both inputs are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class RatPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c: Number) -> RatPoly:
        return cls([c])

    @classmethod
    def x(cls) -> RatPoly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[Number]) -> RatPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatPoly.const(other)
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        return format_poly(self)

    def __neg__(self) -> RatPoly:
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other) -> RatPoly:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> RatPoly:
        return self + (-_lift(other))

    def __rsub__(self, other) -> RatPoly:
        return _lift(other) - self

    def __mul__(self, other) -> RatPoly:
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RatPoly:
        if n < 0:
            raise ValueError("negative power")
        out, base = RatPoly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Number) -> RatPoly:
        c = Fraction(c)
        return RatPoly(c * a for a in self.coeffs)

    def __call__(self, x: Number) -> Fraction:
        return self.eval(x)

    def eval(self, x: Number) -> Fraction:
        """Horner evaluation; exact for rational ``x``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> RatPoly:
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divmod(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return RatPoly(), RatPoly(rem)
        quot = [Fraction(0)] * (len(rem) - dd)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] * inv
            quot[i - dd] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i - dd + j] -= q * b
        return RatPoly(quot), RatPoly(rem[:dd])

    def __divmod__(self, other) -> tuple[RatPoly, RatPoly]:
        return self.divmod(_lift(other))

    def __floordiv__(self, other) -> RatPoly:
        return self.divmod(_lift(other))[0]

    def __mod__(self, other) -> RatPoly:
        return self.divmod(_lift(other))[1]

    def exact_div(self, other: RatPoly) -> RatPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division leaves a remainder")
        return q

    def monic(self) -> RatPoly:
        return self if self.is_zero() else self.scale(1 / self.lead)

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` having coprime integer coefficients."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> RatPoly:
        """Integer-coefficient associate with coprime coefficients and positive lead."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return self.scale(1 / c)

    def is_proportional(self, other: RatPoly) -> bool:
        """True iff ``self == c * other`` for some nonzero rational c."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()


def _lift(p) -> RatPoly:
    if isinstance(p, RatPoly):
        return p
    if isinstance(p, (int, Fraction)):
        return RatPoly.const(p)
    raise TypeError(f"cannot combine RatPoly with {type(p).__name__}")


def gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: monic square-free, pairwise coprime ``(f_i, i)`` with
    ``p = lead * prod f_i**i``.  Factors equal to 1 are omitted."""
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        f = gcd(b, d)
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        if f.degree > 0:
            out.append((f.monic(), i))
        i += 1
    return out


def squarefree_part(p: RatPoly) -> RatPoly:
    return p.exact_div(gcd(p, p.derivative())).monic()


def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_variations(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _variations_at(seq: Sequence[RatPoly], x: Fraction) -> int:
    return sign_variations(q.eval(x) for q in seq)


def _variations_at_inf(seq: Sequence[RatPoly], sign: int) -> int:
    return sign_variations(q.lead * (sign ** q.degree) for q in seq)


def count_roots(p: RatPoly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (unbounded where None)."""
    seq = sturm_sequence(squarefree_part(p))
    vlo = _variations_at_inf(seq, -1) if lo is None else _variations_at(seq, Fraction(lo))
    vhi = _variations_at_inf(seq, 1) if hi is None else _variations_at(seq, Fraction(hi))
    return vlo - vhi


def cauchy_bound(p: RatPoly) -> Fraction:
    """Every real root lies strictly inside ``(-bound, bound)``."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RealRoot:
    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _isolate(p: RatPoly, precision: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Intervals ``[lo, hi]`` of width <= precision, one per root of the
    square-free ``p``; ``lo == hi`` when the root was hit exactly."""
    seq = sturm_sequence(p)
    # a power of two keeps every bisection point dyadic, so small integer
    # and dyadic roots are hit exactly
    bound = Fraction(1 << (math.ceil(cauchy_bound(p)) - 1).bit_length())
    out = []
    stack = [(-bound, bound, _variations_at(seq, -bound), _variations_at(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi  # roots in (lo, hi]
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(p, seq, lo, hi, precision))
            continue
        mid = (lo + hi) / 2
        vmid = _variations_at(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    return sorted(out)


def _refine(p: RatPoly, seq, lo: Fraction, hi: Fraction, precision: Fraction) -> tuple[Fraction, Fraction]:
    # exactly one simple root in (lo, hi]
    if p.eval(hi) == 0:
        return hi, hi
    while p.eval(lo) == 0:
        # lo is the neighbouring root; shrink until the sign at lo is usable
        mid = (lo + hi) / 2
        if _variations_at(seq, lo) - _variations_at(seq, mid) == 1:
            hi = mid
        else:
            lo = mid
    slo = p.eval(lo)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        sm = p.eval(mid)
        if sm == 0:
            return mid, mid
        if (sm > 0) == (slo > 0):
            lo, slo = mid, sm
        else:
            hi = mid
    return lo, hi


def real_roots(p: RatPoly, precision: Number | float = Fraction(1, 10**12)) -> list[RealRoot]:
    """All distinct real roots of ``p``, ascending, with multiplicities."""
    if p.is_zero():
        raise ValueError("real roots of the zero polynomial")
    prec = Fraction(precision)
    if prec <= 0:
        raise ValueError("precision must be positive")
    roots = []
    for factor, mult in squarefree_decomposition(p):
        roots.extend(RealRoot(lo, hi, mult) for lo, hi in _isolate(factor, prec))
    return sorted(roots, key=lambda r: (r.lo + r.hi) / 2)


def format_poly(p: RatPoly) -> str:
    """Ascending coefficients as space-separated ``num/den`` tokens."""
    if p.is_zero():
        return "0/1"
    return " ".join(f"{c.numerator}/{c.denominator}" for c in p.coeffs)


def parse_poly(text: str) -> RatPoly:
    return RatPoly(Fraction(tok) for tok in text.split())
