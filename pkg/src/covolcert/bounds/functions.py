"""The named bounding functions of the covolume argument.

Every function returns an :class:`Interval` enclosing the exact value.  The
parts that are rational multiples of powers of pi are built as exact
:class:`PiMonomial` values and converted once; the remaining factors are
rational powers of printed decimal constants and exponentials of them.

Notation: ntilde = 1 for odd n and 2 for even n; V_n = prod_{i<n} i!/(2 pi)^(i+1).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from covolcert.bounds.odlyzko import odlyzko_disc_lower, odlyzko_row
from covolcert.errors import MissingDiscriminantOverride, SExponentDegenerate
from covolcert.rigor import (
    Interval,
    PiMonomial,
    as_precision,
    exp,
    interval,
    pow_rational,
    v_n,
    working_precision,
    zeta_enclosure,
)
from covolcert.rigor.interval import PrecisionLike
from covolcert.volume import Form, ntilde, s_qs

# printed decimal constants, stored exactly
A_SQUARED = Fraction("29.534")          # A = 29.534^(1/2), totally real Odlyzko constant
E_EXPONENT = Fraction("4.13335")        # E = exp(-4.13335)
VOLUME_BOUND = Fraction("2.3")          # prod_{i>=2} zeta(i) < 2.3
VOLUME_BOUND_X100 = 230                 # 100 * 2.3, the constant of the discriminant bounds
ZETA23_BOUND = Fraction("1.97731")      # zeta(2) zeta(3) < 1.97731
BRAUER_SIEGEL_CONST = Fraction("0.82")  # from the regulator bound 0.04 exp(2*0.46 + (m-1)*0.1)
BRAUER_SIEGEL_SLOPE = Fraction("0.1")
PRINTED_REFINED_CONST = Fraction("67.9029")  # 2.3 * 29.523, the rounded m = 4 constant

TWELVE_OVER_PI_SQ = PiMonomial(Fraction(144), -2)   # (12/pi)^2
PI_OVER_TWELVE_SQ = PiMonomial(Fraction(1, 144), 2)  # (pi/12)^2


def _finish(p: PrecisionLike, build) -> Interval:
    prec = as_precision(p)
    w = prec.bits + 32
    with working_precision(w):
        val = build(w)
    return val.outward(prec)


def fn_E1(n: int, q: int, exponent_denom: int = 4, p: PrecisionLike = None) -> Interval:
    """E(n,q) = n^-1 (q-1) q^(n^2/d - 1) with d = 4 (or d = 3 for the n = 3 variant)."""
    if exponent_denom not in (3, 4):
        raise ValueError("exponent_denom is 3 or 4")
    if n < 2 or q < 2:
        raise ValueError("need n >= 2 and q >= 2")
    e = Fraction(n * n, exponent_denom) - 1
    return _finish(p, lambda w: Fraction(q - 1, n) * pow_rational(q, e, w))


def fn_E2(n: int, q: int) -> Interval:
    """ntilde^-1 (q+1)^-1 q^ceil((n+1)/2), exact."""
    if n < 2 or q < 2:
        raise ValueError("need n >= 2 and q >= 2")
    return Interval(Fraction(q ** ((n + 2) // 2), ntilde(n) * (q + 1)))


def _m_monomial(m: int, n: int) -> PiMonomial:
    """(1/(100 ntilde^m)) (12/pi)^(2m) V_n^(m-1) n^-1, the common part of M and M'."""
    return TWELVE_OVER_PI_SQ**m * v_n(n) ** (m - 1) * Fraction(1, 100 * ntilde(n) ** m * n)


def fn_M(m: int, n: int, p: PrecisionLike = None) -> Interval:
    """M(m,n): the outer-form bound with D_k^(1/2) >= m^m/m! (Minkowski)."""
    _check_mn(m, n)
    mono = _m_monomial(m, n) * Fraction(m**m, factorial(m)) ** (n * n - 5)
    return mono.to_interval(p)


def fn_Mprime(m: int, n: int, p: PrecisionLike = None) -> Interval:
    """M'(m,n): the same bound with D_k^(1/2) > A^m E (Odlyzko)."""
    _check_mn(m, n)
    k = n * n - 5

    def build(w: int) -> Interval:
        a_part = pow_rational(A_SQUARED, Fraction(m * k, 2), w)
        e_part = exp(-E_EXPONENT * k, w)
        return _m_monomial(m, n).to_interval(w) * a_part * e_part

    return _finish(p, build)


def fn_N(n: int, p: PrecisionLike = None) -> Interval:
    """N(n) = (1/(100 ntilde^2)) (12/pi)^2 40^((n^2-n-6)/4) n^-1."""
    if n < 2:
        raise ValueError("n >= 2")
    mono = TWELVE_OVER_PI_SQ * Fraction(1, 100 * ntilde(n) ** 2 * n)
    return _finish(p, lambda w: mono.to_interval(w) * pow_rational(40, Fraction(n * n - n - 6, 4), w))


def fn_Nprime(n: int, p: PrecisionLike = None) -> Interval:
    """N'(n) = ntilde^-2 n^-1 5^((n^2-n-2)/4)."""
    if n < 2:
        raise ValueError("n >= 2")
    return _finish(p, lambda w: Fraction(1, ntilde(n) ** 2 * n) * pow_rational(5, Fraction(n * n - n - 2, 4), w))


def fn_C(m: int, n: int, p: PrecisionLike = None) -> Interval:
    """C(m,n) = (230 ntilde^m (pi/12)^(2m) V_n^(1-m) n)^(2/(n^2-5)), the bound D_k < C(m,n)."""
    _check_mn(m, n)
    if n < 3:
        raise ValueError("C(m,n) needs n >= 3")
    mono = PI_OVER_TWELVE_SQ**m * v_n(n) ** (1 - m) * (VOLUME_BOUND_X100 * ntilde(n) ** m * n)
    return _finish(p, lambda w: pow_rational(mono.to_interval(w), Fraction(2, n * n - 5), w))


def refined_constant(m: int, p: PrecisionLike = None) -> Interval:
    """230 exp(-0.82 - 0.1 m): 2.3 times the Brauer-Siegel constant with Zimmert's regulator bound."""
    return _finish(p, lambda w: VOLUME_BOUND_X100 * exp(-(BRAUER_SIEGEL_CONST + BRAUER_SIEGEL_SLOPE * m), w))


def rel_disc_bound(m: int, n: int, D_k: int, p: PrecisionLike = None, refined: bool = False) -> Interval:
    """Upper bound on D_l/D_k^2 for an outer form over k of degree m.

    (K ntilde^m (pi/12)^(2m) D_k^((5-n^2)/2) V_n^(1-m) n)^(2/(s-2)) with K = 230,
    or K = 230 exp(-0.82 - 0.1 m) when ``refined`` (class number bounded through
    the regulator instead of the generic bound).
    """
    _check_mn(m, n)
    s = s_qs(n, Form.OUTER)
    if s <= 2:
        raise SExponentDegenerate(f"s = {s} <= 2 for n = {n}")
    mono = PI_OVER_TWELVE_SQ**m * v_n(n) ** (1 - m) * (ntilde(n) ** m * n)

    def build(w: int) -> Interval:
        const = refined_constant(m, w) if refined else Interval(VOLUME_BOUND_X100)
        base = const * mono.to_interval(w) * pow_rational(D_k, Fraction(5 - n * n, 2), w)
        return pow_rational(base, Fraction(2, s - 2), w)

    return _finish(p, build)


def class_number_upper(m: int, D_l: int, p: PrecisionLike = None) -> Interval:
    """h_l <= 100 exp(-0.82 - 0.1 m) (2 pi)^(-2m) zeta(2)^(2m) D_l.

    Since zeta(2) = pi^2/6, the factor (2 pi)^(-2m) zeta(2)^(2m) equals (pi/12)^(2m).
    """
    if m < 1 or D_l < 1:
        raise ValueError("need m >= 1 and D_l >= 1")
    c = BRAUER_SIEGEL_CONST + BRAUER_SIEGEL_SLOPE * m
    return _finish(p, lambda w: 100 * exp(-c, w) * (PI_OVER_TWELVE_SQ**m).to_interval(w) * D_l)


def zeta23(p: PrecisionLike = None) -> Interval:
    return _finish(p, lambda w: zeta_enclosure(2, w) * zeta_enclosure(3, w))


def hout_disc_lower(m: int, p: PrecisionLike = None) -> Interval:
    """25.465^2 13.316^(2m-2) exp(-7.0667): lower bound for D_l of signature (2, m-1)."""
    return odlyzko_disc_lower(odlyzko_row("class-number-lower"), 2, m - 1, None, p)


def fn_H(m: int, p: PrecisionLike = None, dl_min_override: int | None = None) -> Interval:
    """Lower bound H(m) for h_l: D^2 V_3^(m-1) / (3 zeta(2) zeta(3)).

    D is the minimal discriminant of signature (2, m-1) when supplied and the
    Odlyzko bound otherwise (allowed only for m >= 5).
    """
    if m < 2:
        raise ValueError("m >= 2")
    if dl_min_override is None and m <= 4:
        raise MissingDiscriminantOverride(f"H({m}) needs the minimal discriminant of signature (2,{m - 1})")

    def build(w: int) -> Interval:
        d = Interval(dl_min_override) if dl_min_override is not None else hout_disc_lower(m, w)
        return d * d * (v_n(3) ** (m - 1)).to_interval(w) / (3 * zeta23(w))

    return _finish(p, build)


def hilbert_cf_disc_bound(m: int, h: "Interval | int | Fraction", p: PrecisionLike = None) -> Interval:
    """60.015^2 22.210^(2m-2) exp(-80.001/h): lower bound on D_l through the Hilbert class field."""
    if m < 2:
        raise ValueError("m >= 2")
    h = interval(h)
    if h.lo < 1:
        raise ValueError("class number enclosure must be >= 1")
    return odlyzko_disc_lower(odlyzko_row("hilbert-class-field"), 2, m - 1, h, p)


def _check_mn(m: int, n: int) -> None:
    if m < 1 or n < 2:
        raise ValueError(f"need m >= 1 and n >= 2, got m={m}, n={n}")
