"""Rigorous enclosures of roots, exp, log and pi.

Each function evaluates a convergent series in interval arithmetic at a
guarded working precision and adds an explicit bound on the truncated tail,
so the returned interval provably contains the true value.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2

from covolcert.errors import DomainError
from covolcert.rigor.interval import (
    Interval,
    PrecisionLike,
    _pow_directed,
    as_precision,
    interval,
    round_fraction,
    to_fraction,
    working_precision,
)


def _root_directed(y: Fraction, q: int, bits: int, up: bool) -> Fraction:
    """The q-th root of y > 0 rounded to ``bits`` bits, up or down."""
    n, d = y.numerator, y.denominator
    e = (n.bit_length() - d.bit_length()) // q
    s = bits + 2 - e
    t = s * q
    if t >= 0:
        num, den = n << t, d
    else:
        num, den = n, d << -t
    fl = num // den
    r, exact = gmpy2.iroot(gmpy2.mpz(fl), q)
    r = int(r)
    if up and not (exact and fl * den == num):
        r += 1
    val = Fraction(r, 1 << s) if s >= 0 else Fraction(r << -s)
    return round_fraction(val, bits, up)


def pow_rational(x: "Interval | int | Fraction", e: "Fraction | int | str", p: PrecisionLike = None) -> Interval:
    """Enclosure of x**e for a rational exponent e and x > 0.

    Computed as the q-th root of x**p for e = p/q; both steps are rounded in
    the direction that keeps the final endpoint outside the true value.
    """
    x = interval(x)
    e = to_fraction(e)
    if e.denominator == 1:
        with working_precision(as_precision(p)):
            return x ** e.numerator
    if x.lo <= 0:
        raise DomainError(f"rational power of a nonpositive enclosure {x}")
    bits = as_precision(p).bits
    num, q = e.numerator, e.denominator
    w = bits + 2 * abs(num).bit_length() + q.bit_length() + 8

    def point(t: Fraction, up: bool) -> Fraction:
        if num > 0:
            base = _pow_directed(t, num, w, up)
        else:
            base = 1 / _pow_directed(t, -num, w, not up)
        return _root_directed(base, q, w, up)

    if num > 0:
        lo, hi = point(x.lo, False), point(x.hi, True)
    else:
        lo, hi = point(x.hi, False), point(x.lo, True)
    return Interval._make(round_fraction(lo, bits, False), round_fraction(hi, bits, True))


def sqrt(x: "Interval | int | Fraction", p: PrecisionLike = None) -> Interval:
    return pow_rational(x, Fraction(1, 2), p)


# -- exponential ------------------------------------------------------------


@lru_cache(maxsize=4096)
def _exp_point(t: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    if t == 0:
        return Fraction(1), Fraction(1)
    mag = abs(t)
    # choose k with |t| / 2**k < 1/2
    k = max(0, mag.numerator.bit_length() - mag.denominator.bit_length() + 2)
    w = bits + k + 24
    eps = Fraction(1, 1 << w)
    with working_precision(w):
        y = Interval(t / (1 << k)).outward()
        ymag = y.mag()
        total = Interval(1)
        term = Interval(1)
        i = 0
        while True:
            i += 1
            term = (term * y / i).outward()
            total = total + term
            if term.mag() < eps:
                break
        # remaining terms form a series dominated by a geometric one with ratio <= 1/2
        tail = round_fraction(2 * term.mag() * ymag / (i + 1), 32, True)
        total = total + Interval(-tail, tail)
        for _ in range(k):
            total = total * total
    return round_fraction(total.lo, bits, False), round_fraction(total.hi, bits, True)


def exp(x: "Interval | int | Fraction | str", p: PrecisionLike = None) -> Interval:
    """Enclosure of e**x (exp is increasing, so endpoints map to endpoints)."""
    x = interval(x)
    bits = as_precision(p).bits
    lo = _exp_point(x.lo, bits)[0]
    hi = _exp_point(x.hi, bits)[1]
    return Interval._make(lo, hi)


# -- logarithm --------------------------------------------------------------


def _atanh_series(z: Interval, w: int) -> Interval:
    """sum z^(2i+1)/(2i+1) for |z| <= 1/3 at working precision w."""
    if z.is_exact and z.lo == 0:
        return Interval(0)
    with working_precision(w):
        z2 = (z * z).outward()
        z2mag = z2.mag()
        stop = z.mig() * Fraction(1, 1 << w) if z.mig() > 0 else Fraction(1, 1 << (2 * w))
        power = z.outward()
        total = power
        i = 0
        while True:
            i += 1
            power = (power * z2).outward()
            total = total + power / (2 * i + 1)
            if power.mag() < stop:
                break
        # tail <= |power| * z2 / (1 - z2) <= 2 |power| z2 since z2 <= 1/9
        tail = round_fraction(2 * power.mag() * z2mag, 32, True)
        return total + Interval(-tail, tail)


@lru_cache(maxsize=64)
def _ln2(w: int) -> Interval:
    return 2 * _atanh_series(Interval(Fraction(1, 3)), w + 4)


@lru_cache(maxsize=4096)
def _log_point(t: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    if t == 1:
        return Fraction(0), Fraction(0)
    e = t.numerator.bit_length() - t.denominator.bit_length()
    m = t / 2**e if e >= 0 else t * 2**-e
    if m > Fraction(4, 3):
        m /= 2
        e += 1
    elif m < Fraction(2, 3):
        m *= 2
        e -= 1
    w = bits + 24 + abs(e).bit_length()
    with working_precision(w):
        z = Interval((m - 1) / (m + 1))
        res = 2 * _atanh_series(z, w)
        if e:
            res = res + e * _ln2(w)
    return round_fraction(res.lo, bits, False), round_fraction(res.hi, bits, True)


def log(x: "Interval | int | Fraction | str", p: PrecisionLike = None) -> Interval:
    """Enclosure of the natural logarithm; requires x > 0."""
    x = interval(x)
    if x.lo <= 0:
        raise DomainError(f"logarithm of a nonpositive enclosure {x}")
    bits = as_precision(p).bits
    return Interval._make(_log_point(x.lo, bits)[0], _log_point(x.hi, bits)[1])


# -- pi ---------------------------------------------------------------------


def _arctan_inverse(n: int, w: int) -> Interval:
    """arctan(1/n) for an integer n >= 2 via its alternating Taylor series."""
    with working_precision(w):
        eps = Fraction(1, 1 << w)
        n2 = n * n
        power = Interval(Fraction(1, n)).outward()
        total = power
        i = 0
        while True:
            i += 1
            power = (power / n2).outward()
            term = power / (2 * i + 1)
            total = total - term if i % 2 else total + term
            if power.mag() < eps:
                break
        # alternating series with decreasing terms: tail below the next term
        nxt = round_fraction(power.mag() / n2 / (2 * i + 3), 32, True)
        return total + Interval(-nxt, nxt)


@lru_cache(maxsize=64)
def _pi(bits: int) -> Interval:
    w = bits + 16
    with working_precision(w):
        val = 16 * _arctan_inverse(5, w) - 4 * _arctan_inverse(239, w)
    return val.outward(bits)


def enclose_pi(p: PrecisionLike = None) -> Interval:
    """Enclosure of pi with about ``p.bits`` significant bits (Machin's formula)."""
    return _pi(as_precision(p).bits)
