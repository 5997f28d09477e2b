"""Rigorous enclosures of zeta(s) at integers s >= 2 and of zeta products.

zeta(s) = sum_{j<N} j^-s + N^(1-s)/(s-1) + N^-s/2
          + sum_{k=1}^{M} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1) + R

is the Euler-Maclaurin expansion of the tail sum_{j>=N} j^-s.  Because the
derivatives of x^-s have constant sign on [N, oo), the remainder satisfies
|R| <= |last included correction term|, which gives a rigorous enclosure.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from covolcert.rigor.elementary import exp
from covolcert.rigor.interval import Interval, PrecisionLike, as_precision, round_fraction, working_precision

INFINITY = math.inf

_BERNOULLI: list[Fraction] = []
_AT: list[Fraction] = []


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (with B_1 = +1/2), by the Akiyama-Tanigawa algorithm."""
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        _AT.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            _AT[j - 1] = j * (_AT[j - 1] - _AT[j])
        _BERNOULLI.append(_AT[0])
    return _BERNOULLI[k]


def _em_attempt(s: int, n_cut: int, w: int) -> Interval | None:
    """Euler-Maclaurin evaluation with cut-off n_cut; None if it cannot reach 2^-w."""
    eps = Fraction(1, 1 << w)
    with working_precision(w):
        total = Interval(0)
        for j in range(1, n_cut):
            total = total + Interval(Fraction(1, j**s)).outward()
        total = total + Interval(Fraction(1, (s - 1) * n_cut ** (s - 1))).outward()
        total = total + Interval(Fraction(1, 2 * n_cut**s)).outward()
        rising = Fraction(s)          # s (s+1) ... (s+2k-2)
        fact = Fraction(2)            # (2k)!
        npow = Fraction(1, n_cut ** (s + 1))
        previous = None
        k = 1
        while True:
            term = bernoulli(2 * k) / fact * rising * npow
            total = total + Interval(term).outward()
            size = abs(term)
            if size < eps:
                bound = round_fraction(size, 32, True)
                return total + Interval(-bound, bound)
            if previous is not None and size >= previous:
                return None  # asymptotic series has started to diverge
            previous = size
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
            npow /= n_cut * n_cut
            k += 1


@lru_cache(maxsize=512)
def _zeta(s: int, bits: int) -> Interval:
    w = bits + 16
    n_cut = max(8, bits // 4)
    while True:
        res = _em_attempt(s, n_cut, w)
        if res is not None:
            return res.outward(bits)
        n_cut *= 2


def zeta_enclosure(s: int, p: PrecisionLike = None) -> Interval:
    """Enclosure of the Riemann zeta function at an integer s >= 2."""
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"zeta_enclosure needs an integer s >= 2, got {s!r}")
    return _zeta(s, as_precision(p).bits)


def zeta_product_bound(n_max: "int | float", p: PrecisionLike = None) -> Interval:
    """Enclosure of prod_{i=2}^{n_max} zeta(i).

    For ``n_max = INFINITY`` the upper endpoint is the rigorous estimate
    prod_{i>=9} zeta(i) <= exp(2 zeta(9) - 2), which follows from
    log zeta(i) <= zeta(i) - 1 and zeta(i) - 1 <= 2^(9-i) (zeta(9) - 1).
    The lower endpoint is the partial product up to i = 9.
    """
    prec = as_precision(p)
    w = prec.bits + 16
    if n_max == INFINITY:
        with working_precision(w):
            head = Interval(1)
            for i in range(2, 9):
                head = head * zeta_enclosure(i, w)
            z9 = zeta_enclosure(9, w)
            upper = head * exp(2 * z9 - 2, w)
            lower = head * z9
        return Interval._make(lower.lo, upper.hi).outward(prec)
    if not isinstance(n_max, int) or n_max < 2:
        raise ValueError(f"n_max must be an integer >= 2 or INFINITY, got {n_max!r}")
    if n_max == 2:
        return zeta_enclosure(2, prec)
    with working_precision(w):
        prod = Interval(1)
        for i in range(2, n_max + 1):
            prod = prod * zeta_enclosure(i, w)
    return prod.outward(prec)
