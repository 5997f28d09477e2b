"""Integer bounds on the index [Gamma : Lambda] of a principal arithmetic subgroup."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from covolcert.volume import ntilde


@dataclass(frozen=True)
class IndexBoundInputs:
    """Class number h, n, m = [k:Q], local indices d_v for v in T and bounds on #Xi."""

    h: int
    n: int
    m: int
    d_list: tuple[int, ...] = ()
    xi_list: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "d_list", tuple(self.d_list))
        object.__setattr__(self, "xi_list", tuple(self.xi_list))
        if self.h < 1 or self.n < 2 or self.m < 1:
            raise ValueError("need h >= 1, n >= 2, m >= 1")
        if any(d < 2 for d in self.d_list):
            raise ValueError("every d_v in T is at least 2")
        if any(x < 1 for x in self.xi_list):
            raise ValueError("every #Xi bound is at least 1")

    @property
    def ntilde(self) -> int:
        return ntilde(self.n)


def index_bound_inner(h_k: int, n: int, m: int, d_list: tuple[int, ...] | list[int] = ()) -> int:
    """Bound for an inner form: h_k ntilde n^(m-1) prod d_v, or ntilde prod d_v over Q."""
    inp = IndexBoundInputs(h_k, n, m, tuple(d_list))
    if m == 1:
        return inp.ntilde * prod(inp.d_list)
    return h_k * inp.ntilde * n ** (m - 1) * prod(inp.d_list)


def index_bound_outer(
    h_l: int,
    n: int,
    m: int,
    d_list: tuple[int, ...] | list[int] = (),
    xi_list: tuple[int, ...] | list[int] = (),
    k_is_Q: bool = False,
) -> int:
    """Bound for an outer form: h_l ntilde^(m + [k = Q]) n prod d_v prod #Xi."""
    inp = IndexBoundInputs(h_l, n, m, tuple(d_list), tuple(xi_list))
    exponent = m + (1 if k_is_Q else 0)
    return h_l * inp.ntilde**exponent * n * prod(inp.d_list) * prod(inp.xi_list)


def dirichlet_units_bound(
    n: int, m: int, m1: int, mu_quotient: int, class_torsion: int, norm_surjective: bool
) -> int:
    """Bound on #((l_n cap l_0)/l^xn) from Dirichlet's unit theorem.

    The factor ntilde^(m-1) disappears when the norm map on units is surjective.
    """
    if not 0 <= m1 <= m:
        raise ValueError("need 0 <= m1 <= m")
    if mu_quotient < 1 or class_torsion < 1:
        raise ValueError("mu_quotient and class_torsion are positive")
    units = 1 if norm_surjective else ntilde(n) ** (m - 1)
    return mu_quotient * units * n**m1 * class_torsion
