"""Bounding functions, index bounds, discriminant lower bounds and monotonicity proofs."""

from covolcert.bounds.functions import (
    class_number_upper,
    fn_C,
    fn_E1,
    fn_E2,
    fn_H,
    fn_M,
    fn_Mprime,
    fn_N,
    fn_Nprime,
    hilbert_cf_disc_bound,
    hout_disc_lower,
    refined_constant,
    rel_disc_bound,
    zeta23,
)
from covolcert.bounds.index import (
    IndexBoundInputs,
    dirichlet_units_bound,
    index_bound_inner,
    index_bound_outer,
)
from covolcert.bounds.monotonicity import Grid, verify_monotonicity
from covolcert.bounds.odlyzko import (
    OdlyzkoRow,
    load_odlyzko_rows,
    minkowski_disc_lower,
    odlyzko_disc_lower,
    odlyzko_row,
)

__all__ = [
    "Grid",
    "IndexBoundInputs",
    "OdlyzkoRow",
    "class_number_upper",
    "dirichlet_units_bound",
    "fn_C",
    "fn_E1",
    "fn_E2",
    "fn_H",
    "fn_M",
    "fn_Mprime",
    "fn_N",
    "fn_Nprime",
    "hilbert_cf_disc_bound",
    "hout_disc_lower",
    "index_bound_inner",
    "index_bound_outer",
    "load_odlyzko_rows",
    "minkowski_disc_lower",
    "odlyzko_disc_lower",
    "odlyzko_row",
    "refined_constant",
    "rel_disc_bound",
    "verify_monotonicity",
    "zeta23",
]
