"""Closed intervals with exact rational endpoints and outward rounding.

An :class:`Interval` encloses a real number.  Arithmetic returns an interval
that contains every possible exact result; when an operand is not a single
point the endpoints are rounded outward to a grid of ``bits`` significant
binary digits, so sizes stay bounded.  Point intervals combined with point
intervals are never rounded: expressions built from rational literals with
``+ - * /`` and integer powers stay exact.

The working precision is carried in a context variable, in the style of the
:mod:`decimal` module::

    with working_precision(256):
        x = Interval(2).sqrt()
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, Union

from covolcert.errors import DivisionByEnclosedZero, DomainError

Number = Union[int, Fraction, Decimal, str, float]

DEFAULT_BITS = 128


@dataclass(frozen=True)
class Precision:
    """Number of significant bits kept in rounded interval endpoints."""

    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or isinstance(self.bits, bool) or self.bits < 2:
            raise ValueError(f"precision must be an integer >= 2, got {self.bits!r}")

    def guarded(self, extra: int) -> "Precision":
        """Return a precision with ``extra`` additional guard bits."""
        return Precision(self.bits + extra)


PrecisionLike = Union[Precision, int, None]

_CURRENT: contextvars.ContextVar[Precision] = contextvars.ContextVar(
    "covolcert_precision", default=Precision(DEFAULT_BITS)
)


def get_precision() -> Precision:
    """Return the precision in effect in the current context."""
    return _CURRENT.get()


def as_precision(p: PrecisionLike) -> Precision:
    """Normalise ``None`` (current context), an int, or a Precision."""
    if p is None:
        return _CURRENT.get()
    if isinstance(p, Precision):
        return p
    return Precision(p)


@contextlib.contextmanager
def working_precision(p: PrecisionLike) -> Iterator[Precision]:
    """Temporarily set the rounding precision used by interval operations."""
    prec = as_precision(p)
    token = _CURRENT.set(prec)
    try:
        yield prec
    finally:
        _CURRENT.reset(token)


def to_fraction(x: Number) -> Fraction:
    """Convert an exact number to a Fraction.

    Strings and Decimals are read as exact decimals (``"29.534"`` is
    ``14767/500``); floats are converted exactly from their binary value.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Decimal, float)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def round_fraction(x: Fraction, bits: int, up: bool) -> Fraction:
    """Round ``x`` to ``bits`` significant binary digits, toward +inf if ``up``.

    Values already on the grid are returned unchanged.
    """
    n, d = x.numerator, x.denominator
    if n == 0:
        return x
    shift = bits - (abs(n).bit_length() - d.bit_length())
    if shift >= 0:
        q, r = divmod(n << shift, d)
        if r == 0:
            return x
        return Fraction(q + 1 if up else q, 1 << shift)
    q, r = divmod(n, d << -shift)
    if r == 0:
        return x
    return Fraction((q + 1 if up else q) << -shift)


def _pow_directed(x: Fraction, k: int, bits: int, up: bool) -> Fraction:
    """x**k for x >= 0 and k >= 0, every intermediate rounded in one direction."""
    result = Fraction(1)
    base = x
    while k:
        if k & 1:
            result = round_fraction(result * base, bits, up)
        k >>= 1
        if k:
            base = round_fraction(base * base, bits, up)
    return result


class Interval:
    """A closed interval ``[lo, hi]`` with Fraction endpoints."""

    __slots__ = ("lo", "hi")

    lo: Fraction
    hi: Fraction

    def __init__(self, lo: Number, hi: Number | None = None) -> None:
        lo_f = to_fraction(lo)
        hi_f = lo_f if hi is None else to_fraction(hi)
        if lo_f > hi_f:
            raise ValueError(f"empty interval [{lo_f}, {hi_f}]")
        object.__setattr__(self, "lo", lo_f)
        object.__setattr__(self, "hi", hi_f)

    @classmethod
    def _make(cls, lo: Fraction, hi: Fraction) -> "Interval":
        obj = object.__new__(cls)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        return obj

    @classmethod
    def _rounded(cls, lo: Fraction, hi: Fraction, exact: bool) -> "Interval":
        if exact:
            return cls._make(lo, hi)
        bits = _CURRENT.get().bits
        return cls._make(round_fraction(lo, bits, False), round_fraction(hi, bits, True))

    @classmethod
    def hull(cls, *items: "Interval | Number") -> "Interval":
        """Smallest interval containing all arguments."""
        ivs = [_coerce(i) for i in items]
        if not ivs:
            raise ValueError("hull of nothing")
        return cls._make(min(i.lo for i in ivs), max(i.hi for i in ivs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Interval is immutable")

    def __delattr__(self, name: str) -> None:
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        return (Interval, (self.lo, self.hi))

    # -- inspection -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def mag(self) -> Fraction:
        """Largest absolute value in the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        """Smallest absolute value in the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def contains(self, x: "Interval | Number") -> bool:
        other = _coerce(x)
        return self.lo <= other.lo and other.hi <= self.hi

    __contains__ = contains

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Interval | Number") -> "Interval":
        o = _coerce(other)
        lo, hi = max(self.lo, o.lo), min(self.hi, o.hi)
        if lo > hi:
            raise ValueError("intervals are disjoint")
        return Interval._make(lo, hi)

    def certainly_lt(self, other: "Interval | Number") -> bool:
        return self.hi < _coerce(other).lo

    def certainly_le(self, other: "Interval | Number") -> bool:
        return self.hi <= _coerce(other).lo

    def certainly_gt(self, other: "Interval | Number") -> bool:
        return self.lo > _coerce(other).hi

    def certainly_ge(self, other: "Interval | Number") -> bool:
        return self.lo >= _coerce(other).hi

    def outward(self, p: PrecisionLike = None) -> "Interval":
        """Round both endpoints outward to the grid, even for point intervals."""
        bits = as_precision(p).bits
        return Interval._make(round_fraction(self.lo, bits, False), round_fraction(self.hi, bits, True))

    def __float__(self) -> float:
        return float(self.mid())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        if self.is_exact:
            return f"Interval({str(self.lo)!r})"
        return f"Interval({str(self.lo)!r}, {str(self.hi)!r})"

    def __str__(self) -> str:
        if self.is_exact:
            return f"[{_short(self.lo)}]"
        return f"[{_short(self.lo)}, {_short(self.hi)}]"

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval._make(-self.hi, -self.lo)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        return Interval._make(self.mig(), self.mag())

    def __add__(self, other: "Interval | Number") -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        exact = self.is_exact and o.is_exact
        return Interval._rounded(self.lo + o.lo, self.hi + o.hi, exact)

    __radd__ = __add__

    def __sub__(self, other: "Interval | Number") -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        exact = self.is_exact and o.is_exact
        return Interval._rounded(self.lo - o.hi, self.hi - o.lo, exact)

    def __rsub__(self, other: Number) -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: "Interval | Number") -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if self.is_exact and o.is_exact:
            v = self.lo * o.lo
            return Interval._make(v, v)
        if self.lo >= 0 and o.lo >= 0:
            lo, hi = self.lo * o.lo, self.hi * o.hi
        else:
            prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
            lo, hi = min(prods), max(prods)
        return Interval._rounded(lo, hi, False)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise DivisionByEnclosedZero(f"reciprocal of {self} which contains 0")
        return Interval._rounded(1 / self.hi, 1 / self.lo, self.is_exact)

    def __truediv__(self, other: "Interval | Number") -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise DivisionByEnclosedZero(f"division by {o} which contains 0")
        if self.is_exact and o.is_exact:
            v = self.lo / o.lo
            return Interval._make(v, v)
        quots = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval._rounded(min(quots), max(quots), False)

    def __rtruediv__(self, other: Number) -> "Interval":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: "int | Fraction") -> "Interval":
        if isinstance(k, Fraction):
            if k.denominator != 1:
                return self.pow_rational(k)
            k = k.numerator
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k == 0:
            return Interval._make(Fraction(1), Fraction(1))
        if k < 0:
            if self.lo <= 0 <= self.hi:
                raise DivisionByEnclosedZero(f"negative power of {self} which contains 0")
            return (self ** -k).reciprocal()
        if self.is_exact:
            v = self.lo ** k
            return Interval._make(v, v)
        bits = _CURRENT.get().bits
        w = bits + k.bit_length() + 2
        a, b = abs(self.lo), abs(self.hi)
        if self.lo >= 0:
            lo, hi = _pow_directed(a, k, w, False), _pow_directed(b, k, w, True)
        elif self.hi <= 0:
            if k % 2:
                lo, hi = -_pow_directed(a, k, w, True), -_pow_directed(b, k, w, False)
            else:
                lo, hi = _pow_directed(b, k, w, False), _pow_directed(a, k, w, True)
        else:
            if k % 2:
                lo, hi = -_pow_directed(a, k, w, True), _pow_directed(b, k, w, True)
            else:
                lo, hi = Fraction(0), _pow_directed(max(a, b), k, w, True)
        return Interval._rounded(lo, hi, False)

    # -- transcendental helpers (implemented in elementary) ---------------

    def pow_rational(self, e: "Fraction | int | str") -> "Interval":
        from covolcert.rigor.elementary import pow_rational

        return pow_rational(self, e)

    def root(self, q: int) -> "Interval":
        from covolcert.rigor.elementary import pow_rational

        return pow_rational(self, Fraction(1, q))

    def sqrt(self) -> "Interval":
        return self.root(2)

    def exp(self) -> "Interval":
        from covolcert.rigor.elementary import exp

        return exp(self)

    def log(self) -> "Interval":
        from covolcert.rigor.elementary import log

        return log(self)


def _short(x: Fraction) -> str:
    if x.denominator == 1 and abs(x.numerator) < 10**15:
        return str(x.numerator)
    return f"{float(x):.12g}" if x != 0 else "0"


def _coerce(x: "Interval | Number") -> Interval:
    if isinstance(x, Interval):
        return x
    v = to_fraction(x)
    return Interval._make(v, v)


def _coerce_or_none(x: object) -> Interval | None:
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, Fraction, Decimal, str, float)) and not isinstance(x, bool):
        v = to_fraction(x)
        return Interval._make(v, v)
    return None


def interval(x: "Interval | Number", hi: Number | None = None) -> Interval:
    """Build an interval from a number, a pair of numbers, or an interval."""
    if isinstance(x, Interval):
        if hi is not None:
            raise TypeError("upper endpoint given together with an Interval")
        return x
    return Interval(x, hi)


def require_positive(x: Interval, what: str) -> None:
    if x.lo <= 0:
        raise DomainError(f"{what} requires a positive enclosure, got {x}")
