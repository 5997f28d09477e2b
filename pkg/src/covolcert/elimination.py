"""The case elimination driver.

The argument runs through five cases, in order:

* outer forms with large m or n, excluded by the bounding functions M and M';
* outer forms with 2 <= m <= 5 and 4 <= n <= 8, excluded field by field using
  discriminant windows, relative discriminant bounds and the field snapshot;
* outer forms with n = 3, excluded through class number lower bounds and
  the Hilbert class field;
* inner forms over k = Q split by a real quadratic field, excluded by N and N';
* groups over Q with a non-hyperspecial parahoric or a non-split place.

Every case ends in a ``nonexistence`` step whose status is the weakest
status of its inputs.  The non-numeric reductions that feed the numeric
claims are recorded as axiom steps.

All public functions accept an optional :class:`Ledger` so that shared
prerequisites (constants, monotonicity proofs) are emitted once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable

from covolcert import __version__
from covolcert.bounds import (
    fn_C,
    fn_E1,
    fn_H,
    fn_M,
    fn_Mprime,
    fn_N,
    fn_Nprime,
    hilbert_cf_disc_bound,
    odlyzko_disc_lower,
    odlyzko_row,
    rel_disc_bound,
    zeta23,
)
from covolcert.bounds.functions import PI_OVER_TWELVE_SQ, TWELVE_OVER_PI_SQ, VOLUME_BOUND, ZETA23_BOUND
from covolcert.bounds.monotonicity import Grid, verify_monotonicity
from covolcert.certificate import (
    Certificate,
    Relation,
    Status,
    Step,
    axiom_step,
    data_step,
    derived_step,
    get_precision_cap,
    numeric_step,
)
from covolcert.field_data import (
    Certainty,
    FieldRecord,
    Snapshot,
    min_disc,
    quadratic_extension_candidates,
    quadratic_extensions_of_totally_real,
    query_window,
    relative_norm,
)
from covolcert.errors import NoData
from covolcert.finite_groups import Composition, compositions, parabolic_index, parabolic_index_lower
from covolcert.rigor import INFINITY, Interval, pow_rational, v_n, zeta_product_bound
from covolcert.volume import Form, ntilde, s_qs

DEFAULT_N_MAX = 12
OUTER_SMALL_M = (2, 3, 4, 5)
OUTER_SMALL_N = (4, 5, 6, 7, 8)
N3_M_MAX = 15           # M'(16,3) settles m >= 16 for n = 3
REFINED_BASES = {4: (725, 1125)}   # (m, D_k) where the regulator-refined class number bound is used

# printed values checked as upper bounds of the relative discriminant bound
PRINTED_REL_BOUNDS = {(5, 4, 14641): "1.271", (4, 4, 1600): "1.365", (3, 4, 169): "1.661"}

# Descriptions of the anchors used in Step.ref.
REF_ANCHORS = {
    "constants/zeta-product": "prod_{i>=2} zeta(i) < 2.3, covolume of SL_n(Z) below 2.3 V_n",
    "constants/zeta23": "zeta(2) zeta(3) < 1.97731, covolume of SL_3(Z) below 1.97731 V_3",
    "constants/covolume": "covolume of SL_n(Z) equals V_n prod_{i=2}^n zeta(i)",
    "reduction/setup": "a lattice of minimal covolume normalizes a principal arithmetic subgroup",
    "reduction/index": "index bounds for the normalizer over the principal arithmetic subgroup",
    "reduction/local-factors": "local factor bounds at places of T and at non-special places",
    "reduction/class-number": "h_l^-1 D_l >= (1/100)(12/pi)^(2m)",
    "reduction/discriminant-bounds": "Minkowski and Odlyzko lower bounds for discriminants",
    "reduction/regulator": "regulator lower bound combined with Brauer-Siegel",
    "reduction/inner-k": "an inner form forces k = Q",
    "reduction/s-exponent": "s >= (n^2-n-2)/2 for the quasi-split outer form",
    "reduction/hasse": "a non-split inner form over Q is non-split at two or more finite places",
    "reduction/xi-iwahori": "#Xi equals n only for Iwahori subgroups",
    "reduction/parabolic-index": "[H_v:P_v] equals the index of a parabolic subgroup of SL_n(F_q)",
    "monotonicity/E1": "E(n,q) = n^-1 (q-1) q^(n^2/4-1) increasing",
    "monotonicity/E2": "ntilde^-1 (q+1)^-1 q^ceil((n+1)/2) increasing",
    "monotonicity/M": "M(m,n) increasing for m >= 2, n >= 6",
    "monotonicity/Mprime": "M'(m,n) increasing for m, n >= 4 and in m for n >= 3",
    "monotonicity/N": "N(n) increasing for n >= 2",
    "monotonicity/Nprime": "N'(n) increasing for n >= 2",
    "outer/local-factors": "the product of local factors exceeds 1",
    "outer/large": "outer forms with m >= 2, n >= 9 or m >= 6, n >= 4 or m >= 16, n = 3",
    "outer/window": "D_k < C(m,n) against the smallest discriminants",
    "outer/relative-discriminant": "upper bound on D_l / D_k^2",
    "outer/candidates": "quadratic extensions l of k within the relative bound",
    "outer/volume": "the volume lower bound with the actual h_l, D_k, D_l",
    "outer/odlyzko": "Odlyzko's bound for D_l in signature (2, m-1)",
    "outer/n3": "outer forms with n = 3",
    "outer": "k = Q",
    "inner-nonsplit": "G is an inner form",
    "hyperspecial": "all parahorics hyperspecial and G split at every place",
    "conclusion": "SL_n(Z) is the lattice of minimal covolume",
}

SMOKE = "smoke"  # suffix of non-critical consistency steps


class Ledger:
    """Ordered collection of steps with id lookup; prerequisites are added once."""

    def __init__(self, snapshot: Snapshot | None = None, n_max: int = DEFAULT_N_MAX, grid_m_max: int = 20) -> None:
        self.steps: list[Step] = []
        self._by_id: dict[str, Step] = {}
        self._groups: set[str] = set()
        self.snapshot = snapshot
        self.n_max = n_max
        self.grid_m_max = grid_m_max

    def add(self, step: Step) -> str:
        if step.id in self._by_id:
            raise ValueError(f"duplicate step id {step.id}")
        missing = [i for i in step.inputs if i not in self._by_id]
        if missing:
            raise ValueError(f"step {step.id} depends on unknown steps {missing}")
        self.steps.append(step)
        self._by_id[step.id] = step
        return step.id

    def __contains__(self, id: str) -> bool:
        return id in self._by_id

    def __getitem__(self, id: str) -> Step:
        return self._by_id[id]

    def once(self, group: str) -> bool:
        """True the first time ``group`` is requested."""
        if group in self._groups:
            return False
        self._groups.add(group)
        return True

    def require_snapshot(self) -> Snapshot:
        if self.snapshot is None:
            raise NoData("this case needs a field snapshot")
        return self.snapshot


def _num(led: Ledger, id: str, claim: str, relation: Relation, evaluate: Callable, ref: str,
         inputs=(), note: str = "", critical: bool = True) -> str:
    return led.add(numeric_step(id, claim, relation, evaluate, ref, inputs, note, critical))


def _const(v) -> Callable[[int], Interval]:
    return lambda w: Interval(v)


# prerequisites


def _constants(led: Ledger) -> None:
    if not led.once("constants"):
        return
    led.add(axiom_step("const/covolume", "mu(SL_n(R)/SL_n(Z)) = V_n prod_{i=2}^n zeta(i)", "constants/covolume"))
    led.add(axiom_step(
        "const/zeta-tail",
        "log prod_{i>=9} zeta(i) <= sum_{i>=9} (zeta(i)-1) <= 2 (zeta(9)-1)",
        "constants/zeta-product",
        note="log(1+x) <= x and sum_{i>=9} j^-i = j^-9 j/(j-1) <= 2 j^-9",
    ))
    _num(led, "const/zeta-product", "prod_{i=2}^8 zeta(i) exp(2 zeta(9) - 2) < 2.3", Relation.LT,
         lambda w: (zeta_product_bound(INFINITY, w), VOLUME_BOUND), "constants/zeta-product",
         inputs=("const/zeta-tail",))
    _num(led, "const/zeta23", "zeta(2) zeta(3) < 1.97731", Relation.LT, lambda w: (zeta23(w), ZETA23_BOUND),
         "constants/zeta23")


def _reductions(led: Ledger) -> None:
    if not led.once("reductions"):
        return
    for id, claim, ref in [
        ("red/setup", "a lattice of minimal covolume is the normalizer of a principal arithmetic subgroup "
                      "of a group of type A_{n-1} over a totally real field k", "reduction/setup"),
        ("red/index-outer", "[Gamma:Lambda] <= h_l ntilde^m n prod_T d_v prod #Xi (ntilde^(m+1) when k = Q)",
         "reduction/index"),
        ("red/index-inner", "#H^1(k,C)_xi <= ntilde prod_T d_v for k = Q", "reduction/index"),
        ("red/local-factors", "e(P_v) >= (q-1) q^((n^2 - n^2/d_v - 2)/2) on T, >= (q+1)^-1 q^(r_v+1) non-special "
                              "non-split, = [H_v:P_v] e(H_v) non-special split", "reduction/local-factors"),
        ("red/class-number", "h_l^-1 D_l >= (1/100) (12/pi)^(2m)", "reduction/class-number"),
        ("red/disc-bounds", "D_k^(1/2) >= m^m/m! and the configured Odlyzko bounds", "reduction/discriminant-bounds"),
        ("red/inner-k", "an inner form has V_inf = {v_0}, hence k = Q", "reduction/inner-k"),
    ]:
        led.add(axiom_step(id, claim, ref))


def _mono(led: Ledger, which: str) -> list[str]:
    """Ids of the critical proof steps of the monotonicity of ``which`` (emitted once)."""
    if led.once(f"mono/{which}"):
        if which in ("N", "Nprime"):
            grid = Grid(n=range(2, led.n_max + 1))
        elif which in ("E1", "E2"):
            grid = Grid(n=range(2, led.n_max + 1), q=range(2, 10))
        else:
            lo = Grid.up_to(which)
            grid = Grid(m=range(lo.m[0], led.grid_m_max + 1), n=range(lo.n[0], max(led.n_max, lo.n[0]) + 1))
        for s in verify_monotonicity(which, grid):
            led.add(s)
    return [s.id for s in led.steps if s.ref == f"monotonicity/{which}" and s.critical]


def _outer_local_factors(led: Ledger) -> str:
    id = "outer/local-factors"
    if id in led:
        return id
    ref = "outer/local-factors"
    e1, e2 = _mono(led, "E1"), _mono(led, "E2")
    _num(led, "outer/local/split-base", "1 < (1/3) 2^2", Relation.LT, lambda w: (1, Fraction(4, 3)), ref,
         note="n^-1 q^(n-1) at n = 3, q = 2")
    _num(led, "outer/local/split-ratio", "1 < 2 (3/4)", Relation.LT, lambda w: (1, Fraction(3, 2)), ref,
         note="q n/(n+1) >= 2 (3/4): n^-1 q^(n-1) increases in n and q")
    led.add(derived_step(
        id, "prod_T d_v^-1 prod #Xi^-1 prod e(P_v) > 1 for every n >= 3", ref,
        ["red/local-factors", *e1, *e2, "outer/local/split-base", "outer/local/split-ratio"], led.steps,
        note="T: E1 >= 1; special: e > 1; non-special non-split: E2 > 1; non-special split: n^-1 q^(n-1) > 1",
    ))
    return id


# outer forms, large parameters


def exclude_outer_large(n_min: int = 3, n_max: int = DEFAULT_N_MAX, m_min: int = 2, m_max: int = 20,
                        led: Ledger | None = None) -> list[Step]:
    """M(2,9) > 2.3, M'(6,4) > 2.3 and M'(16,3) > 1.97731 with the monotonicity that extends them.

    The ranges only size the grid smoke tests; the exclusion itself holds
    for all m >= 2, n >= 9, for all m >= 6, n >= 4 and for all m >= 16, n = 3.
    """
    if led is None:
        led = Ledger(n_max=n_max, grid_m_max=m_max)
    if n_min > 3 or m_min > 2:
        raise ValueError("the outer-large steps cover n >= 3 and m >= 2 from their base points")
    _constants(led)
    _reductions(led)
    loc = _outer_local_factors(led)
    mono_m, mono_mp = _mono(led, "M"), _mono(led, "Mprime")
    ref = "outer/large"
    base = ["red/setup", "red/index-outer", "red/class-number", "red/disc-bounds", loc]
    _num(led, "outer/large/M(2,9)", "2.3 < M(2,9)", Relation.LT, lambda w: (VOLUME_BOUND, fn_M(2, 9, w)), ref,
         inputs=base + mono_m + ["const/zeta-product"], note="covers m >= 2, n >= 9")
    _num(led, "outer/large/M'(6,4)", "2.3 < M'(6,4)", Relation.LT, lambda w: (VOLUME_BOUND, fn_Mprime(6, 4, w)), ref,
         inputs=base + mono_mp + ["const/zeta-product"], note="covers m >= 6, n >= 4")
    _num(led, "outer/large/M'(16,3)", "1.97731 < M'(16,3)", Relation.LT,
         lambda w: (ZETA23_BOUND, fn_Mprime(16, 3, w)), ref,
         inputs=base + mono_mp + ["const/zeta23"], note="covers m >= 16, n = 3")
    led.add(derived_step(
        "case/outer-large",
        "no lattice of minimal covolume from an outer form with m >= 2, n >= 9; m >= 6, n >= 4; or m >= 16, n = 3",
        ref, ["outer/large/M(2,9)", "outer/large/M'(6,4)", "outer/large/M'(16,3)"], led.steps,
    ))
    return led.steps


# outer forms, small parameters


@dataclass(frozen=True)
class Window:
    """Admissible D_k for (m, n): fields of degree m with D_k <= floor(C(m,n))."""

    m: int
    n: int
    upper: int
    lower: int | None
    fields: tuple[FieldRecord, ...]
    certainty: Certainty
    step_id: str

    @property
    def empty(self) -> bool:
        return not self.fields


def _floor_step(led: Ledger, id: str, label: str, value: Callable[[int], Interval], ref: str,
                inputs=(), note: str = "") -> int:
    """Emit ``value < F + 1`` (critical) and ``F <= value`` (smoke); return F = floor(value)."""
    v = value(128)
    f = floor(v.lo)
    if floor(v.hi) != f:
        v = value(get_precision_cap())
        f = floor(v.lo)
    _num(led, id, f"{label} < {f + 1}", Relation.LT, lambda w: (value(w), f + 1), ref, inputs, note)
    _num(led, f"{id}/{SMOKE}", f"{f} <= {label}", Relation.LE, lambda w: (f, value(w)), ref, critical=False,
         note="the integer bound is the floor")
    return f


def disc_window(m: int, n: int, led: Ledger | None = None, snapshot: Snapshot | None = None) -> Window:
    """D_k < C(m,n) and the totally real fields of degree m below that bound."""
    if m not in OUTER_SMALL_M or n not in OUTER_SMALL_N:
        raise ValueError("windows are computed for 2 <= m <= 5 and 4 <= n <= 8")
    if led is None:
        led = Ledger(snapshot)
    s = led.require_snapshot()
    _constants(led)
    _reductions(led)
    pre = f"outer/window/m{m}/n{n}"
    if f"{pre}/query" in led:
        raise ValueError(f"window ({m},{n}) already emitted")
    upper = _floor_step(led, f"{pre}/C", f"C({m},{n})", lambda w: fn_C(m, n, w), "outer/window",
                        inputs=("const/zeta-product", "red/class-number"), note="D_k < C(m,n)")
    q = query_window(s, m, m, 0, 1, upper)
    try:
        lo = min_disc(s, m, m, 0).value
    except NoData:
        lo = None
    discs = [r.disc_abs for r in q.records]
    window = f"[{lo}, {upper}]" if discs else "empty"
    led.add(data_step(
        f"{pre}/query", f"totally real fields of degree {m} with D_k <= {upper}: {discs or 'none'}",
        Relation.EXISTENCE if discs else Relation.NONEXISTENCE, len(discs), upper,
        holds=True, certain=q.certainty is Certainty.CERTAIN, ref="outer/window", inputs=(f"{pre}/C",),
        note=f"window {window}; snapshot complete up to {q.covered_up_to}",
    ))
    return Window(m, n, upper, lo, q.records, q.certainty, f"{pre}/query")


def _bout_value(m: int, n: int, h: int, D_k: int, rel: int, w: int) -> Interval:
    """ntilde^-m n^-1 h^-1 D_k^((n^2-1)/2) rel^(s/2) V_n^(m-1), the volume bound divided by V_n."""
    s = s_qs(n, Form.OUTER)
    val = pow_rational(D_k, Fraction(n * n - 1, 2), w) * pow_rational(rel, Fraction(s, 2), w)
    return val * (v_n(n) ** (m - 1)).to_interval(w) * Fraction(1, ntilde(n) ** m * n * h)


def _odlyzko_rel_floor(m: int, D_k: int, w: int) -> Interval:
    row = odlyzko_row("totally-real")
    return odlyzko_disc_lower(row, 2, m - 1, None, w) / (D_k * D_k)


def _case_field(led: Ledger, m: int, n: int, k: FieldRecord, window_id: str, loc: str) -> str:
    """Exclude one (m, n, k); returns the id of the derived step."""
    s = led.require_snapshot()
    D_k = k.disc_abs
    pre = f"outer/m{m}/n{n}/D{D_k}"
    refined = D_k in REFINED_BASES.get(m, ()) and n == 4
    inputs = [window_id, "const/zeta-product", "red/class-number", loc]
    if refined:
        if "red/regulator" not in led:
            led.add(axiom_step("red/regulator", "h_l <= 100 exp(-0.82 - 0.1 m) (2 pi)^(-2m) zeta(2)^(2m) D_l",
                               "reduction/regulator", note="regulator lower bound 0.04 exp(2 (0.46) + (m-1) 0.1)"))
        inputs.append("red/regulator")
    label = f"Brel({m},{n},{D_k}{', refined' if refined else ''})"
    rmax = _floor_step(led, f"{pre}/rel", label, lambda w: rel_disc_bound(m, n, D_k, w, refined=refined),
                       "outer/relative-discriminant", inputs=inputs, note="D_l/D_k^2 < bound")
    printed = PRINTED_REL_BOUNDS.get((m, n, D_k))
    if printed is not None:
        _num(led, f"{pre}/rel/printed", f"{label} < {printed}", Relation.LT,
             lambda w: (rel_disc_bound(m, n, D_k, w, refined=refined), Fraction(printed)),
             "outer/relative-discriminant", critical=False)
    closing = [f"{pre}/rel"]
    if m == 5:
        # Odlyzko in signature (2, 4): D_l/D_k^2 > 2, so D_l/D_k^2 >= 3 > rmax
        _num(led, f"{pre}/odlyzko", f"2 < D_l lower bound / {D_k}^2", Relation.LT,
             lambda w: (2, _odlyzko_rel_floor(m, D_k, w)), "outer/odlyzko", inputs=("red/disc-bounds",),
             note=f"D_l/D_k^2 >= 3 contradicts D_l/D_k^2 <= {rmax}")
        _num(led, f"{pre}/contradiction", f"{rmax} < 3", Relation.LT, lambda w: (rmax, 3), "outer/odlyzko",
             inputs=(f"{pre}/rel", f"{pre}/odlyzko"))
        closing += [f"{pre}/odlyzko", f"{pre}/contradiction"]
    else:
        q = quadratic_extension_candidates(s, k, rmax)
        rels = [relative_norm(r, k) for r in q.records]
        holds = True
        led.add(data_step(
            f"{pre}/candidates",
            f"quadratic extensions of {k.label} of signature (2,{m - 1}) with D_l/D_k^2 <= {rmax}: "
            f"{rels or 'none'}",
            Relation.EXISTENCE if rels else Relation.NONEXISTENCE, len(rels), rmax * D_k * D_k,
            holds=holds, certain=q.certainty is Certainty.CERTAIN, ref="outer/candidates", inputs=(f"{pre}/rel",),
            note=f"labels {[r.label for r in q.records]}; certainty {q.certainty.value}",
        ))
        closing.append(f"{pre}/candidates")
        for r, rel in zip(q.records, rels):
            cid = f"{pre}/volume/{r.label}"
            _num(led, cid, f"2.3 < volume bound / V_n for {r.label} (h_l={r.class_number}, D_l/D_k^2={rel})",
                 Relation.LT, lambda w, r=r, rel=rel: (VOLUME_BOUND, _bout_value(m, n, r.class_number, D_k, rel, w)),
                 "outer/volume", inputs=(f"{pre}/candidates", "const/zeta-product", "red/index-outer", loc),
                 note=f"field {r.label}, D_l = {r.disc_abs}, class number {r.class_number} ({r.class_number_provenance})")
            closing.append(cid)
    return led.add(derived_step(f"case/outer/m{m}/n{n}/D{D_k}",
                                f"no lattice of minimal covolume for m={m}, n={n}, D_k={D_k}",
                                "outer", closing, led.steps))


def _outer_mn(led: Ledger, m: int, n: int) -> list[str]:
    _constants(led)
    _reductions(led)
    loc = _outer_local_factors(led)
    win = disc_window(m, n, led)
    if win.empty:
        return [win.step_id]
    return [_case_field(led, m, n, k, win.step_id, loc) for k in win.fields]


def case_outer_small(snapshot: Snapshot | None = None, led: Ledger | None = None) -> list[Step]:
    """Exclude 2 <= m <= 5 and 4 <= n <= 8 for outer forms."""
    if led is None:
        led = Ledger(snapshot)
    elif snapshot is not None and led.snapshot is None:
        led.snapshot = snapshot
    ends = [e for m in OUTER_SMALL_M for n in OUTER_SMALL_N for e in _outer_mn(led, m, n)]
    led.add(derived_step("case/outer-small", "no lattice of minimal covolume from an outer form with "
                         "2 <= m <= 5 and 4 <= n <= 8", "outer", ends, led.steps))
    return led.steps


# outer forms, n = 3


def _n3_upper(m: int, w: int) -> Interval:
    """300 zeta(2) zeta(3) (pi/12)^(2m) V_3^(1-m): D_l is below this for n = 3."""
    return 300 * zeta23(w) * (PI_OVER_TWELVE_SQ**m * v_n(3) ** (1 - m)).to_interval(w)


def case_n3(snapshot: Snapshot | None = None, led: Ledger | None = None) -> list[Step]:
    """Exclude outer forms with n = 3 and 2 <= m <= 15."""
    if led is None:
        led = Ledger(snapshot)
    elif snapshot is not None and led.snapshot is None:
        led.snapshot = snapshot
    s = led.require_snapshot()
    _constants(led)
    _reductions(led)
    loc = _outer_local_factors(led)
    if "outer/large/M'(16,3)" not in led:
        exclude_outer_large(led=led)
    ref = "outer/n3"
    led.add(axiom_step("red/hilbert-class-field",
                       "the Hilbert class field of l has degree 2 m h_l, signature (2 h_l, (m-1) h_l), "
                       "discriminant D_l^h_l", ref))
    ends = ["outer/large/M'(16,3)"]
    for m in range(2, N3_M_MAX + 1):
        pre = f"outer/n3/m{m}"
        base = ["red/index-outer", "red/disc-bounds", "const/zeta23", loc]
        override = None
        if m <= 4:
            try:
                md = min_disc(s, 2 * m, 2, m - 1)
                override, certain = md.value, md.certainty is Certainty.CERTAIN
            except NoData:
                certain = False
            led.add(data_step(f"{pre}/min-disc", f"smallest D_l in signature (2,{m - 1}) is {override}",
                              Relation.EQ, override, None, holds=override is not None, certain=certain, ref=ref))
            base.append(f"{pre}/min-disc")
            if override is None:
                ends.append(f"{pre}/min-disc")
                continue
        H = lambda w, m=m, o=override: fn_H(m, w, o)  # noqa: E731
        if m >= 4:
            _num(led, pre, f"300 zeta(2) zeta(3) (pi/12)^(2m) V_3^(1-m) < Hilbert bound at h = H({m})",
                 Relation.LT, lambda w, m=m, H=H: (_n3_upper(m, w), hilbert_cf_disc_bound(m, H(w), w)), ref,
                 inputs=base + ["red/hilbert-class-field"],
                 note="the volume bound caps D_l below the Hilbert class field lower bound")
            ends.append(pre)
            continue
        upper = _floor_step(led, f"{pre}/upper", f"300 zeta(2) zeta(3) (pi/12)^{2 * m} V_3^{1 - m}",
                            lambda w, m=m: _n3_upper(m, w), ref, inputs=base)
        q = quadratic_extensions_of_totally_real(s, m, upper)
        hs = sorted({r.class_number for r in q.records})
        hmax = max(hs, default=0)
        led.add(data_step(f"{pre}/class-numbers",
                          f"fields of signature (2,{m - 1}) quadratic over a totally real field with "
                          f"D_l <= {upper} have class numbers {hs}",
                          Relation.LE, hmax, 2, holds=hmax <= 2, certain=q.certainty is Certainty.CERTAIN,
                          ref=ref, inputs=(f"{pre}/upper",),
                          note=f"{len(q.records)} fields; snapshot complete up to {q.covered_up_to}"))
        _num(led, f"{pre}/H", f"{max(hmax, 2)} < H({m})", Relation.LT, lambda w, H=H, h=max(hmax, 2): (h, H(w)), ref,
             inputs=base + [f"{pre}/class-numbers"], note=f"H({m}) uses the smallest D_l = {override}")
        ends.append(f"{pre}/H")
    led.add(derived_step("case/outer-n3", "no lattice of minimal covolume from an outer form with n = 3",
                         ref, ends, led.steps))
    return led.steps


# inner forms split by a real quadratic field over Q


def case_inner_nonsplit_l(snapshot: Snapshot | None = None, n_max: int = DEFAULT_N_MAX,
                          led: Ledger | None = None) -> list[Step]:
    """Exclude k = Q with l a real quadratic field."""
    if led is None:
        led = Ledger(snapshot, n_max=n_max)
    elif snapshot is not None and led.snapshot is None:
        led.snapshot = snapshot
    s = led.require_snapshot()
    _constants(led)
    _reductions(led)
    ref = "inner-nonsplit"
    led.add(axiom_step("red/s-exponent", "s >= (n^2 - n - 2)/2, with s = 5 for n = 3", "reduction/s-exponent",
                       note="equality for odd n - 1"))
    led.add(axiom_step("red/kQ-volume", "mu > ntilde^-2 n^-1 h_l^-1 D_l^(s/2) V_n >= "
                       "(1/(100 ntilde^2)) (12/pi)^2 D_l^(s/2-1) V_n n^-1", ref,
                       inputs=("red/index-outer", "red/class-number", "red/local-factors")))

    # h_l != 1 forces D_l >= 40
    q = query_window(s, 2, 2, 0, 1, 39)
    bad = [r.label for r in q.records if r.class_number != 1]
    led.add(data_step("inner/h-not-1", "every real quadratic field with D_l <= 39 has class number 1",
                      Relation.NONEXISTENCE, len(bad), 0, holds=not bad, certain=q.certainty is Certainty.CERTAIN,
                      ref=ref, note=f"fields with h > 1: {bad or 'none'}"))
    try:
        md = min_disc(s, 2, 2, 0)
        d2, d2_certain = md.value, md.certainty is Certainty.CERTAIN
    except NoData:
        d2, d2_certain = None, False
    led.add(data_step("inner/min-disc", f"smallest real quadratic discriminant is {d2}", Relation.EQ, d2, 5,
                      holds=d2 is not None and d2 >= 5, certain=d2_certain, ref=ref))
    mono_n, mono_np = _mono(led, "N"), _mono(led, "Nprime")
    common = ["red/kQ-volume", "red/s-exponent", "const/zeta-product"]
    _num(led, "inner/N(4)", "2.3 < N(4)", Relation.LT, lambda w: (VOLUME_BOUND, fn_N(4, w)), ref,
         inputs=common + ["inner/h-not-1"] + mono_n, note="h_l != 1, n >= 4")
    _num(led, "inner/N'(4)", "2.3 < N'(4)", Relation.LT, lambda w: (VOLUME_BOUND, fn_Nprime(4, w)), ref,
         inputs=common + ["inner/min-disc"] + mono_np, note="h_l = 1, n >= 4")
    n3 = ["red/kQ-volume", "red/s-exponent", "const/zeta23"]
    _num(led, "inner/n3/h-not-1", "12.3035 < (1/300) (12/pi)^2 40^(3/2)", Relation.LT,
         lambda w: (Fraction("12.3035"), TWELVE_OVER_PI_SQ.to_interval(w) * pow_rational(40, Fraction(3, 2), w) / 300),
         ref, inputs=n3 + ["inner/h-not-1"])
    _num(led, "inner/n3/h-1", "18.6338 < (1/3) 5^(5/2)", Relation.LT,
         lambda w: (Fraction("18.6338"), pow_rational(5, Fraction(5, 2), w) / 3), ref, inputs=n3 + ["inner/min-disc"])
    _num(led, "inner/n3/compare", "1.97731 < 12.3035", Relation.LT, lambda w: (ZETA23_BOUND, Fraction("12.3035")),
         ref, inputs=("inner/n3/h-not-1", "inner/n3/h-1"), note="and 12.3035 < 18.6338")
    for n in range(5, max(led.n_max, 4) + 1):
        _num(led, f"inner/N({n})/{SMOKE}", f"2.3 < N({n})", Relation.LT, lambda w, n=n: (VOLUME_BOUND, fn_N(n, w)),
             ref, critical=False)
    led.add(derived_step("case/inner-nonsplit", "l = k: no outer form over Q", ref,
                         ["inner/N(4)", "inner/N'(4)", "inner/n3/h-not-1", "inner/n3/h-1", "inner/n3/compare"],
                         led.steps))
    return led.steps


# inner forms over Q: hyperspecial parahorics and split places


def case_hyperspecial(n_max: int = DEFAULT_N_MAX, led: Ledger | None = None) -> list[Step]:
    """Exclude non-split places (T) and non-hyperspecial parahorics (T') for G = SL_n'(D) over Q."""
    if led is None:
        led = Ledger(n_max=n_max)
    _constants(led)
    _reductions(led)
    ref = "hyperspecial"
    e1 = _mono(led, "E1")
    led.add(axiom_step("red/hasse", "if T is not empty then d_v >= 2 at two or more finite places, "
                       "and d_v = 3 there when n = 3", "reduction/hasse"))
    led.add(axiom_step("red/BQ", "mu >= ntilde^-1 V_n prod_{T'} n^-1 prod e(P_v)", ref,
                       inputs=("red/index-inner", "red/local-factors")))

    # T non-empty
    _num(led, "hyper/T/n4", "27 <= E(4,2) E(4,3)", Relation.LE,
         lambda w: (27, fn_E1(4, 2, 4, w) * fn_E1(4, 3, 4, w)), ref, inputs=["red/hasse", "red/BQ", *e1],
         note="the two smallest residue fields are F_2 and F_3; E increases in n and q")
    _num(led, "hyper/T/n4-volume", "2.3 < 27/2", Relation.LT, lambda w: (VOLUME_BOUND, Fraction(27, 2)), ref,
         inputs=("hyper/T/n4", "const/zeta-product"), note="ntilde <= 2")
    _num(led, "hyper/T/n3-volume", "1.97731 < E(3,2) E(3,3) (exponent n^2/3)", Relation.LT,
         lambda w: (ZETA23_BOUND, fn_E1(3, 2, 3, w) * fn_E1(3, 3, 3, w)), ref,
         inputs=["red/hasse", "red/BQ", "const/zeta23", *e1], note="the product equals 8")

    # T empty, T' non-empty: ratio to SL_n(Z) is >= ntilde^-1 prod_{T'} n^-1 q^(n-1)
    led.add(axiom_step("red/parabolic", "e(P_v) = [H_v:P_v] e(H_v) and [H_v:P_v] = [SL_n(F_q) : P]",
                       "reduction/parabolic-index"))
    rq = "hyper/Tprime"

    def place_factor(n: int, q: int, xi: int | None = None) -> Fraction:
        return Fraction(q ** (n - 1), ntilde(n) * (xi if xi is not None else n))

    _num(led, f"{rq}/n3", "1 < (1/3) 2^2", Relation.LT, lambda w: (1, place_factor(3, 2)), ref, inputs=("red/BQ",))
    _num(led, f"{rq}/n5", "1 < (1/5) 2^4", Relation.LT, lambda w: (1, place_factor(5, 2)), ref, inputs=("red/BQ",))
    _num(led, f"{rq}/n6", "1 < (1/2)(1/6) 2^5", Relation.LT, lambda w: (1, place_factor(6, 2)), ref, inputs=("red/BQ",))
    _num(led, f"{rq}/step", "1 < 4 (3/5)", Relation.LT, lambda w: (1, Fraction(12, 5)), ref,
         note="ntilde^-1 n^-1 q^(n-1) grows by q^2 n/(n+2) >= 4 (3/5) from n to n + 2")
    _num(led, f"{rq}/n4-q3", "1 < (1/2)(1/4) 3^3", Relation.LT, lambda w: (1, place_factor(4, 3)), ref,
         inputs=("red/BQ",))
    _num(led, f"{rq}/n4-two-places", "1 < (1/2) 2 2", Relation.LT, lambda w: (1, 2), ref, inputs=("red/BQ",),
         note="with two places in T' each factor n^-1 q^3 is >= 2")
    _num(led, f"{rq}/n4-q2", "1 <= (1/2)(1/4) 2^3", Relation.LE, lambda w: (1, place_factor(4, 2)), ref,
         inputs=("red/BQ",), note="the equality case n = 4, T' = {2}")
    led.add(axiom_step("red/xi-iwahori", "#Xi_Theta = n = 4 only for an Iwahori subgroup; otherwise #Xi_Theta <= 2",
                       "reduction/xi-iwahori", note="Xi acts on the affine diagram of type A_3 by rotations"))
    iwahori = Composition.borel(4)
    _num(led, f"{rq}/iwahori-index", "64 <= 2^((16-4)/2) <= [SL_4(F_2) : B]", Relation.LE,
         lambda w: (64, min(parabolic_index_lower(iwahori, 2), parabolic_index(iwahori, 2))), ref,
         inputs=("red/parabolic",))
    _num(led, f"{rq}/iwahori", "1 < (1/2)(1/4) 64", Relation.LT, lambda w: (1, Fraction(64, 8)), ref,
         inputs=(f"{rq}/iwahori-index", "red/xi-iwahori"))
    _num(led, f"{rq}/non-iwahori", "1 < (1/2)(1/2) 2^3", Relation.LT, lambda w: (1, Fraction(8, 4)), ref,
         inputs=("red/xi-iwahori", "red/parabolic"))
    for n in range(2, min(led.n_max, 8) + 1):
        for q in (2, 3):
            worst = min(parabolic_index_lower(c, q) for c in compositions(n) if c.proper)
            _num(led, f"{rq}/parabolic/n{n}/q{q}/{SMOKE}", f"{q}^{n - 1} <= min over proper P of q^(dim U)",
                 Relation.LE, lambda w, a=q ** (n - 1), b=worst: (a, b), ref, critical=False)
    led.add(derived_step(
        "case/hyperspecial", "G splits at every finite place and every P_v is hyperspecial", ref,
        ["hyper/T/n4-volume", "hyper/T/n3-volume", f"{rq}/n3", f"{rq}/n5", f"{rq}/n6", f"{rq}/step",
         f"{rq}/n4-q3", f"{rq}/n4-two-places", f"{rq}/n4-q2", f"{rq}/iwahori", f"{rq}/non-iwahori"],
        led.steps,
    ))
    return led.steps


def verify_lemmas(n_max: int = DEFAULT_N_MAX, grid_m_max: int = 20, led: Ledger | None = None) -> list[Step]:
    """The constants and every monotonicity statement, each with its grid smoke tests."""
    if led is None:
        led = Ledger(n_max=n_max, grid_m_max=grid_m_max)
    _constants(led)
    for which in ("E1", "E2", "M", "Mprime", "N", "Nprime"):
        _mono(led, which)
    return led.steps


def eliminate(m: int, n: int, snapshot: Snapshot | None = None, n_max: int = DEFAULT_N_MAX) -> list[Step]:
    """The steps excluding one pair (m, n), where m = [k:Q] and G has type A_{n-1}.

    m = 1 runs the two cases over Q (l real quadratic, then l = Q).
    """
    if m < 1 or n < 3:
        raise ValueError("need m >= 1 and n >= 3")
    led = Ledger(snapshot, n_max=n_max)
    if m == 1:
        case_inner_nonsplit_l(n_max=n_max, led=led)
        case_hyperspecial(n_max=n_max, led=led)
    elif n == 3:
        case_n3(led=led)
    elif m in OUTER_SMALL_M and n in OUTER_SMALL_N:
        ends = _outer_mn(led, m, n)
        led.add(derived_step(f"case/outer/m{m}/n{n}", f"no lattice of minimal covolume for m={m}, n={n}",
                             "outer", ends, led.steps))
    else:
        exclude_outer_large(led=led)
    return led.steps


# everything


def certify_all(n_max: int = DEFAULT_N_MAX, snapshot: Snapshot | None = None, grid_m_max: int = 20) -> Certificate:
    """Run every case and assemble the certificate.

    ``n_max`` bounds the explicit per-n smoke tests; all larger n are covered
    by the monotonicity steps.
    """
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    from covolcert.field_data import empty_snapshot

    snap = snapshot if snapshot is not None else empty_snapshot()
    led = Ledger(snap, n_max=n_max, grid_m_max=grid_m_max)
    exclude_outer_large(n_max=n_max, m_max=grid_m_max, led=led)
    case_outer_small(led=led)
    case_n3(led=led)
    led.add(derived_step("case/k-is-Q", "k = Q", "outer",
                         ["red/inner-k", "case/outer-large", "case/outer-small", "case/outer-n3"], led.steps))
    case_inner_nonsplit_l(n_max=n_max, led=led)
    case_hyperspecial(n_max=n_max, led=led)
    led.add(derived_step("conclusion", "k = Q, G is an inner form split at every place and all P_v are hyperspecial",
                         "conclusion", ["case/k-is-Q", "case/inner-nonsplit", "case/hyperspecial"], led.steps))
    return Certificate(tuple(led.steps), snap.fingerprint, get_precision_cap(), __version__)


def status_summary(steps: list[Step]) -> dict[str, int]:
    out: dict[str, int] = {}
    for s in steps:
        out[s.status.value] = out.get(s.status.value, 0) + 1
    return out


__all__ = [
    "DEFAULT_N_MAX",
    "Ledger",
    "REF_ANCHORS",
    "Status",
    "Window",
    "case_hyperspecial",
    "case_inner_nonsplit_l",
    "case_n3",
    "case_outer_small",
    "certify_all",
    "disc_window",
    "eliminate",
    "exclude_outer_large",
    "status_summary",
    "verify_lemmas",
]
