"""Exact and interval arithmetic with rigorous transcendental enclosures."""

from covolcert.rigor.elementary import enclose_pi, exp, log, pow_rational, sqrt
from covolcert.rigor.interval import (
    Interval,
    Precision,
    as_precision,
    get_precision,
    interval,
    round_fraction,
    to_fraction,
    working_precision,
)

__all__ = [
    "Interval",
    "Precision",
    "as_precision",
    "enclose_pi",
    "exp",
    "get_precision",
    "interval",
    "log",
    "pow_rational",
    "round_fraction",
    "sqrt",
    "to_fraction",
    "working_precision",
]

from covolcert.rigor.monomial import PiMonomial, v_n  # noqa: E402
from covolcert.rigor.zeta import INFINITY, bernoulli, zeta_enclosure, zeta_product_bound  # noqa: E402

__all__ += ["INFINITY", "PiMonomial", "bernoulli", "v_n", "zeta_enclosure", "zeta_product_bound"]
