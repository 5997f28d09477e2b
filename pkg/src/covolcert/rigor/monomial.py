"""Exact numbers of the form (rational) * pi**e."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from covolcert.rigor.elementary import enclose_pi
from covolcert.rigor.interval import Interval, PrecisionLike, as_precision, to_fraction, working_precision


@dataclass(frozen=True)
class PiMonomial:
    """The exact real number ``coeff * pi**pi_exp``."""

    coeff: Fraction
    pi_exp: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", to_fraction(self.coeff))
        if not isinstance(self.pi_exp, int):
            raise TypeError("pi_exp must be an integer")

    def __mul__(self, other: "PiMonomial | int | Fraction") -> "PiMonomial":
        if isinstance(other, PiMonomial):
            return PiMonomial(self.coeff * other.coeff, self.pi_exp + other.pi_exp)
        if isinstance(other, (int, Fraction)):
            return PiMonomial(self.coeff * other, self.pi_exp)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "PiMonomial | int | Fraction") -> "PiMonomial":
        if isinstance(other, PiMonomial):
            return PiMonomial(self.coeff / other.coeff, self.pi_exp - other.pi_exp)
        if isinstance(other, (int, Fraction)):
            return PiMonomial(self.coeff / other, self.pi_exp)
        return NotImplemented

    def __pow__(self, k: int) -> "PiMonomial":
        if not isinstance(k, int):
            return NotImplemented
        return PiMonomial(self.coeff**k, self.pi_exp * k)

    def to_interval(self, p: PrecisionLike = None) -> Interval:
        """Enclosure of the monomial at precision p."""
        prec = as_precision(p)
        if self.pi_exp == 0:
            return Interval(self.coeff)
        w = prec.bits + abs(self.pi_exp).bit_length() + 8
        with working_precision(w):
            val = self.coeff * enclose_pi(w) ** self.pi_exp
        return val.outward(prec)


def v_n(n: int) -> PiMonomial:
    """V_n = prod_{i=1}^{n-1} i!/(2 pi)^(i+1), the volume factor of SL_n."""
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"v_n needs an integer n >= 2, got {n!r}")
    e = (n * n + n - 2) // 2
    num = 1
    for i in range(1, n):
        num *= factorial(i)
    return PiMonomial(Fraction(num, 2**e), -e)
