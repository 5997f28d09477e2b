"""Prasad's volume formula for groups of type A_{n-1} and its local factors.

For an absolutely simple simply connected group G of type A_{n-1} over a
totally real field k of degree m, with quasi-split inner form split over l,

    mu(G(k_v0)/Lambda) = D_k^{(n^2-1)/2} (D_l/D_k^{[l:k]})^{s/2} V_n^m prod_v e(P_v).

Only the exact split hyperspecial Euler factor and the lower bounds on the
other local factors are implemented; general parahoric volumes are not.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from covolcert.errors import InconsistentInput, InconsistentLocalCase
from covolcert.rigor import (
    Interval,
    as_precision,
    pow_rational,
    v_n,
    working_precision,
    zeta_product_bound,
)
from covolcert.rigor.interval import PrecisionLike


class Form(str, Enum):
    INNER = "inner"
    OUTER = "outer"


class LocalKind(str, Enum):
    T_PLACE = "T_place"
    SPECIAL = "special"
    NONSPECIAL_NONSPLIT = "nonspecial_nonsplit"
    NONSPECIAL_SPLIT = "nonspecial_split"
    HYPERSPECIAL = "hyperspecial"


def ntilde(n: int) -> int:
    """1 for odd n, 2 for even n."""
    return 2 if n % 2 == 0 else 1


@dataclass(frozen=True)
class CaseParams:
    """Degree m = [k:Q], rank parameter n and whether the form is inner or outer."""

    m: int
    n: int
    form: Form

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", Form(self.form))
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")

    @property
    def l_degree_over_k(self) -> int:
        return 1 if self.form is Form.INNER else 2


@dataclass(frozen=True)
class LocalCase:
    """Data of one finite place: residue field size q, n_v, d_v = n/n_v and the parahoric kind."""

    q: int
    n_v: int
    d_v: int
    kind: LocalKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LocalKind(self.kind))
        if self.q < 2:
            raise InconsistentLocalCase(f"residue field size must be >= 2, got {self.q}")
        if self.kind is LocalKind.T_PLACE and self.d_v < 2:
            raise InconsistentLocalCase("a place of T needs d_v >= 2")
        if self.kind is LocalKind.HYPERSPECIAL and self.d_v != 1:
            raise InconsistentLocalCase("a hyperspecial parahoric needs d_v = 1")

    def check(self, n: int) -> None:
        if self.n_v * self.d_v != n:
            raise InconsistentLocalCase(f"n_v * d_v = {self.n_v * self.d_v} differs from n = {n}")


@dataclass(frozen=True)
class DiscriminantData:
    """Absolute discriminants of k and l and the norm of the relative discriminant."""

    D_k: int
    D_l: int
    rel_norm: int

    def __post_init__(self) -> None:
        if min(self.D_k, self.D_l, self.rel_norm) < 1:
            raise InconsistentInput("discriminants must be positive integers")

    @classmethod
    def for_form(cls, D_k: int, D_l: int, form: Form | str) -> "DiscriminantData":
        """Build the record, deriving rel_norm = D_l / D_k^[l:k]."""
        deg = 1 if Form(form) is Form.INNER else 2
        rel = Fraction(D_l, D_k**deg)
        if rel.denominator != 1:
            raise InconsistentInput(f"D_l = {D_l} is not divisible by D_k^{deg} = {D_k**deg}")
        return cls(D_k, D_l, int(rel))


def s_qs(n: int, form: Form | str) -> int:
    """The exponent s of the relative discriminant for the quasi-split inner form."""
    if Form(form) is Form.INNER:
        return 0
    r = n - 1
    if r % 2 == 0:
        return r * (r + 3) // 2
    return (r - 1) * (r + 2) // 2


def euler_factor_split_hyperspecial(n: int, q: int) -> Fraction:
    """e(SL_n(Z_v)) = prod_{i=2}^n (1 - q^-i)^-1, exact."""
    if n < 2 or q < 2:
        raise ValueError("need n >= 2 and q >= 2")
    out = Fraction(1)
    for i in range(2, n + 1):
        out *= Fraction(q**i, q**i - 1)
    return out


def euler_factor_lower_bound(c: LocalCase, n: int) -> Interval:
    """Lower bound on #Xi^-1 * e(P_v) for one place, by parahoric kind.

    * ``T_place``: n^-1 (q-1) q^((n^2 - n^2/d - 2)/2), using #Xi <= n.
    * ``special``: 1; the true factor is strictly larger since e(P_v) > 1.
    * ``nonspecial_nonsplit``: ntilde^-1 (q+1)^-1 q^(r_v+1), r_v = ceil((n-1)/2).
    * ``nonspecial_split``: n^-1 q^(n-1), from [H_v:P_v] > q^(n-1).
    * ``hyperspecial``: 1; the exact factor is ``euler_factor_split_hyperspecial``.
    """
    c.check(n)
    q = c.q
    if c.kind is LocalKind.T_PLACE:
        if n % c.d_v:
            raise InconsistentLocalCase(f"d_v = {c.d_v} does not divide n = {n}")
        twice = n * n - n * n // c.d_v - 2
        return Interval(Fraction((q - 1) * q ** (twice // 2), n))
    if c.kind is LocalKind.SPECIAL or c.kind is LocalKind.HYPERSPECIAL:
        return Interval(1)
    if c.kind is LocalKind.NONSPECIAL_NONSPLIT:
        r_v = n // 2  # ceil((n-1)/2)
        return Interval(Fraction(q ** (r_v + 1), ntilde(n) * (q + 1)))
    return Interval(Fraction(q ** (n - 1), n))


def prasad_volume_bound(
    cp: CaseParams, dd: DiscriminantData, euler: Interval, p: PrecisionLike = None
) -> Interval:
    """Evaluate the volume formula given an enclosure (or lower bound) of the Euler product."""
    deg = cp.l_degree_over_k
    if dd.D_l != dd.rel_norm * dd.D_k**deg:
        raise InconsistentInput("D_l must equal rel_norm * D_k^[l:k]")
    if cp.form is Form.INNER and (dd.D_l != dd.D_k or dd.rel_norm != 1):
        raise InconsistentInput("an inner form has l = k")
    if cp.m == 1 and dd.D_k != 1:
        raise InconsistentInput("k = Q has D_k = 1")
    if euler.lo <= 0:
        raise InconsistentInput("Euler product enclosure must be positive")
    prec = as_precision(p)
    n = cp.n
    s = s_qs(n, cp.form)
    w = prec.bits + 32
    with working_precision(w):
        val = pow_rational(dd.D_k, Fraction(n * n - 1, 2), w)
        if s:
            val = val * pow_rational(dd.rel_norm, Fraction(s, 2), w)
        val = val * (v_n(n) ** cp.m).to_interval(w) * euler
    return val.outward(prec)


def covolume_slnz(n: int, p: PrecisionLike = None) -> Interval:
    """Covolume of SL_n(Z) in SL_n(R): V_n * prod_{i=2}^n zeta(i)."""
    prec = as_precision(p)
    w = prec.bits + 16
    with working_precision(w):
        val = v_n(n).to_interval(w) * zeta_product_bound(n, w)
    return val.outward(prec)
