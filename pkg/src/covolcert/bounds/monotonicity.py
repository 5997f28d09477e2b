"""Certified monotonicity of the bounding functions E1, E2, M, M', N and N'.

Each function is shown increasing by the ratio method: the quotient of
neighbouring values has a closed form, the closed form is bounded below by a
quantity that is itself increasing, and that quantity is checked at the
base of the domain with interval arithmetic.  The base-case checks are
critical steps and carry the claim to the whole unbounded domain.  Facts
that are elementary (a product of factors each exceeding 1, or the growth
of ((m+1)/m)^m) are recorded as axiom steps.

In addition every adjacent pair of a finite grid is compared directly.
These grid steps are non-critical smoke tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from covolcert.bounds.functions import (
    A_SQUARED,
    E_EXPONENT,
    fn_E1,
    fn_E2,
    fn_M,
    fn_Mprime,
    fn_N,
    fn_Nprime,
)
from covolcert.certificate import Relation, Step, axiom_step, numeric_step
from covolcert.rigor import Interval, enclose_pi, exp, pow_rational, v_n

WHICH = ("E1", "E2", "M", "Mprime", "N", "Nprime")

# lower corners of the domains on which each function is claimed increasing
DOMAIN_MIN = {
    "E1": {"n": 2, "q": 2},
    "E2": {"n": 2, "q": 2},
    "M": {"m": 2, "n": 6},
    "Mprime": {"m": 1, "n": 3},
    "N": {"n": 2},
    "Nprime": {"n": 2},
}
AXES = {
    "E1": ("n", "q"),
    "E2": ("n", "q"),
    "M": ("m", "n"),
    "Mprime": ("m", "n"),
    "N": ("n",),
    "Nprime": ("n",),
}


@dataclass(frozen=True)
class Grid:
    """Finite grid of smoke-test points; an axis not used by a function is ignored."""

    m: tuple[int, ...] = ()
    n: tuple[int, ...] = ()
    q: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for axis in ("m", "n", "q"):
            values = tuple(sorted(set(getattr(self, axis))))
            object.__setattr__(self, axis, values)

    @classmethod
    def up_to(cls, which: str, m_max: int = 20, n_max: int = 20, q_max: int = 20) -> "Grid":
        """All points of the domain of monotonicity with coordinates below the given maxima."""
        lo = DOMAIN_MIN[which]
        return cls(
            m=tuple(range(lo.get("m", 1), m_max + 1)),
            n=tuple(range(lo.get("n", 2), n_max + 1)),
            q=tuple(range(lo.get("q", 2), q_max + 1)),
        )


def _A(w: int) -> Interval:
    return pow_rational(A_SQUARED, Fraction(1, 2), w)


def _AE(m: int, w: int) -> Interval:
    """A^m E with E = exp(-4.13335)."""
    return pow_rational(A_SQUARED, Fraction(m, 2), w) * exp(-E_EXPONENT, w)


def _one_below(build: Callable[[int], Interval]) -> Callable[[int], tuple[Interval, int]]:
    return lambda w: (Interval(1), build(w))


def _proof_E1(ref: str) -> list[Step]:
    pre = "mono/E1"
    steps = [
        axiom_step(
            f"{pre}/q-ratio",
            "E(n,q+1)/E(n,q) = q^2 (q+1)^(n^2/d) / ((q^2-1) q^(n^2/d)) > 1",
            ref,
            note="both factors exceed 1",
        )
    ]
    for d in (4, 3):
        # E(n+1,q)/E(n,q) = n/(n+1) q^((2n+1)/d), increasing in n and q
        steps.append(
            numeric_step(
                f"{pre}/d{d}/n-ratio",
                f"1 < (2/3) 2^(5/{d})",
                Relation.LT,
                _one_below(lambda w, d=d: Fraction(2, 3) * pow_rational(2, Fraction(5, d), w)),
                ref,
                note=f"lower bound of n/(n+1) q^((2n+1)/{d}) for n, q >= 2",
            )
        )
    steps.append(
        numeric_step(f"{pre}/d4/base", "1 < E(4,2) = 2", Relation.LT, _one_below(lambda w: fn_E1(4, 2, 4, w)), ref,
                     inputs=(f"{pre}/q-ratio", f"{pre}/d4/n-ratio"))
    )
    steps.append(
        numeric_step(f"{pre}/d3/base", "1 < E(3,2) = 4/3 (exponent n^2/3)", Relation.LT,
                     _one_below(lambda w: fn_E1(3, 2, 3, w)), ref, inputs=(f"{pre}/q-ratio", f"{pre}/d3/n-ratio"))
    )
    return steps


def _proof_E2(ref: str) -> list[Step]:
    pre = "mono/E2"
    return [
        axiom_step(
            f"{pre}/q-ratio",
            "E(n,q+1)/E(n,q) = (q^2+2q+1)/(q^2+2q) ((q+1)/q)^(c-1) > 1 with c = ceil((n+1)/2)",
            ref,
            note="both factors exceed 1",
        ),
        # n even: the exponent is unchanged and ntilde drops from 2 to 1, ratio 2;
        # n odd: the exponent grows by one and ntilde rises to 2, ratio q/2 >= 1
        numeric_step(f"{pre}/n-ratio-odd", "1 <= q/2 at q = 2", Relation.LE, lambda w: (1, Fraction(2, 2)), ref),
        numeric_step(f"{pre}/n-ratio-even", "1 < 2", Relation.LT, lambda w: (1, 2), ref),
        numeric_step(f"{pre}/base", "1 < E(3,2) = 4/3", Relation.LT, _one_below(lambda w: fn_E2(3, 2)), ref,
                     inputs=(f"{pre}/q-ratio", f"{pre}/n-ratio-odd", f"{pre}/n-ratio-even")),
    ]


def _proof_M(ref: str) -> list[Step]:
    pre = "mono/M"
    pi_ratio = lambda w: Fraction(81, 16) / enclose_pi(w)  # noqa: E731
    steps = [
        axiom_step(f"{pre}/binomial", "((m+1)/m)^m >= 9/4 for m >= 2", ref, note="the sequence increases towards e"),
        numeric_step(f"{pre}/cross-growth", "1 < 81/(16 pi)", Relation.LT, _one_below(pi_ratio), ref,
                     note="with n!/2^n >= 3/2 for n >= 4 the cross-ratio bound increases in n"),
        numeric_step(
            f"{pre}/cross",
            "1 < (9/(16 pi)) (81/(16 pi))^4",
            Relation.LT,
            _one_below(lambda w: Fraction(9, 16) / enclose_pi(w) * pi_ratio(w) ** 4),
            ref,
            inputs=(f"{pre}/binomial", f"{pre}/cross-growth"),
            note="d_m d_n M >= (1/2)(9/4)^(2n+1) n!/(2 pi)^(n+1) for m >= 2, n >= 4",
        ),
        numeric_step(
            f"{pre}/dm-base",
            "1 < (144/(2 pi^2)) (9/4)^31 V_6",
            Relation.LT,
            _one_below(lambda w: (v_n(6) * 72).to_interval(w) / enclose_pi(w) ** 2 * Fraction(9, 4) ** 31),
            ref,
            inputs=(f"{pre}/binomial",),
            note="lower bound of d_m M(m,6) for m >= 2",
        ),
        numeric_step(f"{pre}/dn-growth", "1 < 14/pi", Relation.LT, _one_below(lambda w: 14 / enclose_pi(w)), ref,
                     note="2^n n!/pi^(n+1) increases in n for n >= 6"),
        numeric_step(
            f"{pre}/dn-base",
            "1 < (3/14) 2^6 6!/pi^7",
            Relation.LT,
            _one_below(lambda w: Fraction(3 * 64 * 720, 14) / enclose_pi(w) ** 7),
            ref,
            inputs=(f"{pre}/dn-growth",),
            note="lower bound of d_n M(2,n) for n >= 6",
        ),
    ]
    return steps


def _proof_Mprime(ref: str) -> list[Step]:
    pre = "mono/Mprime"

    def dn_base(n_fact: int, two_pi_exp: int, ae_exp: int, w: int) -> Interval:
        two_pi = 2 * enclose_pi(w)
        return Fraction(4, 5 * 16) * _AE(4, w) ** ae_exp * n_fact**3 / two_pi**two_pi_exp

    return [
        numeric_step(f"{pre}/A-vs-2pi", "2 pi < A^2", Relation.LT, lambda w: (2 * enclose_pi(w), A_SQUARED), ref),
        numeric_step(
            f"{pre}/cross",
            "1 < (1/2) A 3!/(2 pi)",
            Relation.LT,
            _one_below(lambda w: _A(w) * 3 / (2 * enclose_pi(w))),
            ref,
            inputs=(f"{pre}/A-vs-2pi",),
            note="d_m d_n M' >= (1/2) A n!/(2 pi) for n >= 3",
        ),
        numeric_step(
            f"{pre}/dm-base",
            "1 < (144/pi^2) A^4 2/(2 pi)^5",
            Relation.LT,
            _one_below(lambda w: 144 * pow_rational(A_SQUARED, 2, w) * 2 / (enclose_pi(w) ** 2 * (2 * enclose_pi(w)) ** 5)),
            ref,
            note="d_m M'(m,3) does not depend on m",
        ),
        numeric_step(
            f"{pre}/dn-base",
            "1 < (1/2^4) (A^4 E)^9 (4!)^3/(2 pi)^15 (4/5)",
            Relation.LT,
            _one_below(lambda w: dn_base(24, 15, 9, w)),
            ref,
            note="lower bound of d_n M'(4,n) at n = 4",
        ),
        numeric_step(
            f"{pre}/dn-growth",
            "1 < (A^4 E)^2 5^3/(2 pi)^3",
            Relation.LT,
            _one_below(lambda w: _AE(4, w) ** 2 * 125 / (2 * enclose_pi(w)) ** 3),
            ref,
            note="ratio of consecutive lower bounds (A^4 E)^2 (n+1)^3/(2 pi)^3 at n = 4",
        ),
        numeric_step(
            f"{pre}/dn-base-as-printed",
            "1 < (1/2^4) (A^4 E)^9 (6!)^3/(2 pi)^21 (4/5)",
            Relation.LT,
            _one_below(lambda w: dn_base(720, 21, 9, w)),
            ref,
            critical=False,
            note="mixed n = 4 and n = 6 base as printed; superseded by dn-base and dn-growth",
        ),
    ]


def _proof_N(ref: str) -> list[Step]:
    return [
        numeric_step("mono/N/ratio", "1 < (1/4) 40 (2/3)", Relation.LT, lambda w: (1, Fraction(40 * 2, 4 * 3)), ref,
                     note="N(n+1)/N(n) = (ntilde/ntilde')^2 40^(n/2) n/(n+1)"),
    ]


def _proof_Nprime(ref: str) -> list[Step]:
    pre = "mono/Nprime"
    return [
        numeric_step(f"{pre}/ratio-even", "1 < 4 5 (2/3)", Relation.LT, lambda w: (1, Fraction(40, 3)), ref,
                     note="n even: (ntilde/ntilde')^2 = 4 and 5^(n/2) n/(n+1) >= 5 (2/3)"),
        numeric_step(
            f"{pre}/ratio-odd",
            "1 < (1/4) 5^(3/2) (3/4)",
            Relation.LT,
            _one_below(lambda w: Fraction(3, 16) * pow_rational(5, Fraction(3, 2), w)),
            ref,
            note="n odd: (ntilde/ntilde')^2 = 1/4 and n >= 3",
        ),
    ]


_PROOFS = {
    "E1": _proof_E1,
    "E2": _proof_E2,
    "M": _proof_M,
    "Mprime": _proof_Mprime,
    "N": _proof_N,
    "Nprime": _proof_Nprime,
}


def _value(which: str, pt: dict[str, int], w: int) -> Interval:
    if which == "E1":
        return fn_E1(pt["n"], pt["q"], 4, w)
    if which == "E2":
        return fn_E2(pt["n"], pt["q"])
    if which == "M":
        return fn_M(pt["m"], pt["n"], w)
    if which == "Mprime":
        return fn_Mprime(pt["m"], pt["n"], w)
    if which == "N":
        return fn_N(pt["n"], w)
    return fn_Nprime(pt["n"], w)


def _pair_relation(which: str, axis: str, pt: dict[str, int]) -> Relation | None:
    """Relation claimed between f(pt) and its neighbour along ``axis``, or None if not claimed."""
    if which == "E2" and axis == "n":
        return Relation.LE
    if which == "Mprime" and axis == "n" and (pt["m"] < 4 or pt["n"] < 4):
        return None
    return Relation.LT


def _label(pt: dict[str, int]) -> str:
    return ",".join(f"{k}={v}" for k, v in pt.items())


def _grid_steps(which: str, grid: Grid, ref: str) -> list[Step]:
    axes = AXES[which]
    values = {a: getattr(grid, a) for a in axes}
    lo = DOMAIN_MIN[which]
    for a in axes:
        if not values[a]:
            raise ValueError(f"grid for {which} needs values on axis {a}")
        if values[a][0] < lo[a]:
            raise ValueError(f"{which} is only claimed increasing for {a} >= {lo[a]}")

    points: list[dict[str, int]] = [{}]
    for a in axes:
        points = [dict(p, **{a: v}) for p in points for v in values[a]]

    steps = []
    for pt in points:
        for a in axes:
            nxt = [v for v in values[a] if v > pt[a]]
            if not nxt or nxt[0] != pt[a] + 1:
                continue
            rel = _pair_relation(which, a, pt)
            if rel is None:
                continue
            other = dict(pt, **{a: pt[a] + 1})
            steps.append(
                numeric_step(
                    f"mono/{which}/grid/{_label(pt)}/{a}+1",
                    f"{which}({_label(pt)}) {rel.value} {which}({_label(other)})",
                    rel,
                    lambda w, pt=pt, other=other: (_value(which, pt, w), _value(which, other, w)),
                    ref,
                    critical=False,
                )
            )
    return steps


def verify_monotonicity(which: str, domain: Grid | None = None) -> list[Step]:
    """Steps proving that ``which`` increases on its domain, then grid smoke tests.

    ``domain`` defaults to the grid with all coordinates up to 20.  Pass an
    empty ``Grid()`` to obtain only the proof steps.
    """
    if which not in _PROOFS:
        raise ValueError(f"unknown function {which!r}; expected one of {WHICH}")
    ref = f"monotonicity/{which}"
    steps = _PROOFS[which](ref)
    if domain is None:
        domain = Grid.up_to(which)
    if any(getattr(domain, a) for a in AXES[which]):
        steps += _grid_steps(which, domain, ref)
    return steps

