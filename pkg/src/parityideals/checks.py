"""Named verification checks for I_{K_n} and the report that collects them."""

from __future__ import annotations

import json
import multiprocessing as mp
import time
import traceback
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations

from . import __version__
from .betti import DeskScaleExceeded, alternating_sum, graded_betti, hilbert_rank_oracle, load_k7_fixture
from .formulas import (
    closed_form_numerator,
    exact_sequence_assembly,
    extremal_betti,
    lemma_numerators,
    predicted_invariants,
)
from .graphs import (
    Graph,
    chain_ideal,
    complete_parity_ideal,
    embedded_complete_parity_ideal,
    f_minor,
    g_parity,
    lemma_A_ideal,
    p_minus,
    p_plus,
    permanental_ideal,
    prime_P,
    saturation_generators,
    x,
    y,
)
from .groebner import Ideal, groebner_basis, initial_ideal
from .hilbert import (
    HilbertNumerator,
    hilbert_function,
    hilbert_numerator,
    krull_dim,
    one_minus_t_pow,
    tpoly_add,
    tpoly_mul,
    tpoly_shift,
)
from .ideals import (
    colon,
    containment_witness,
    ideal_equal,
    image_ideal,
    intersect,
    intersect_all,
    saturate,
)
from .poly import QQ, Field, RingMap, RingSpec, TermOrder


class CheckFailed(AssertionError):
    """A mathematical discrepancy; the message is the witness."""


class CheckSkipped(Exception):
    """The check did not run; the message is the reason."""


@dataclass
class CheckResult:
    check_id: str
    n: int
    status: str  # pass | fail | skipped
    witness: str | None = None
    reason: str | None = None  # also used for an informational note on a pass
    runtime_ms: int = 0

    def __post_init__(self):
        if self.status == "fail" and not self.witness:
            raise ValueError("a failed check must carry a witness")
        if self.status == "skipped" and not self.reason:
            raise ValueError("a skipped check must carry a reason")


@dataclass(frozen=True)
class Context:
    field: Field = QQ
    poison: bool = False
    betti_cap: int = 2_000_000


# --------------------------------------------------------------------------
# cached objects (per process)
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def parity_KN(n: int, field: Field, poison: bool) -> Ideal:
    I = complete_parity_ideal(n, field)
    if not poison:
        return I
    R = I.ring
    bad = x(R, 1) * x(R, 2) + y(R, 1) * y(R, 2)
    return Ideal(R, [bad] + [g for g in I.generators if g != g_parity(R, 1, 2)], name=I.name)


@lru_cache(maxsize=None)
def chain(n: int, k: int, field: Field) -> Ideal:
    return chain_ideal(n, k, field)


@lru_cache(maxsize=None)
def P(n: int, i: int, j: int, field: Field) -> Ideal:
    return prime_P(n, i, j, field)


@lru_cache(maxsize=None)
def J_sat(n: int, field: Field) -> Ideal:
    return saturation_generators(Graph.complete(n), field)


@lru_cache(maxsize=None)
def lemA(n: int, field: Field) -> Ideal:
    return lemma_A_ideal(n, field)


@lru_cache(maxsize=None)
def numerator(I: Ideal, order_name: str = "degrevlex") -> HilbertNumerator:
    return hilbert_numerator(I, TermOrder.named(I.ring, order_name))


def _ring(n: int, ctx: Context) -> RingSpec:
    return RingSpec(n, (), ctx.field)


def _require(cond: bool, witness: str):
    if not cond:
        raise CheckFailed(witness)


def _equal(I: Ideal, J: Ideal, what: str):
    if ideal_equal(I, J):
        return
    w = containment_witness(I, J)
    if w is not None:
        raise CheckFailed(f"{what}: {w} lies in the right side but not the left")
    w = containment_witness(J, I)
    raise CheckFailed(f"{what}: {w} lies in the left side but not the right")


def _num_equal(got: HilbertNumerator, want: HilbertNumerator, what: str):
    _require(got.coefficients == want.coefficients,
             f"{what}: computed {got} but expected {want}")


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------

def check_sat(n: int, ctx: Context):
    I = parity_KN(n, ctx.field, ctx.poison)
    R = I.ring
    g = R.one()
    for i in range(1, n + 1):
        g = g * x(R, i) * y(R, i)
    _equal(saturate(I, g), J_sat(n, ctx.field), "I_Kn : g^inf vs saturation generators")


def check_pd(n: int, ctx: Context):
    I = parity_KN(n, ctx.field, ctx.poison)
    comps = [P(n, i, j, ctx.field) for i, j in combinations(range(1, n + 1), 2)]
    _equal(I, intersect_all(comps + [J_sat(n, ctx.field)]), "I_Kn vs J_Kn ∩ ⋂ P_ij")


def check_dim(n: int, ctx: Context):
    d = krull_dim(numerator(parity_KN(n, ctx.field, ctx.poison)))
    _require(d == n, f"dim R/I_Kn = {d}, expected {n}")


def check_contain(n: int, ctx: Context):
    comps = [P(n, i, j, ctx.field) for i, j in combinations(range(1, n), 2)] + [J_sat(n, ctx.field)]
    for k in range(1, n):
        Ik = chain(n, k - 1, ctx.field) if not (ctx.poison and k == 1) else parity_KN(n, ctx.field, True)
        targets = comps + [P(n, t, n, ctx.field) for t in range(k, n)]
        for T in targets:
            w = containment_witness(T, Ik)
            _require(w is None, f"k={k}: generator {w} of I_{k - 1} not in {T.name}")


def check_colon_k(n: int, ctx: Context):
    R = _ring(n, ctx)
    for k in range(1, n):
        _equal(colon(chain(n, k - 1, ctx.field), f_minor(R, k, n)), P(n, k, n, ctx.field),
               f"I_{k - 1} : f_{k}{n} vs P_{k}{n}")


def printed_intersection(n: int, field: Field) -> Ideal:
    """x_{n-1}x_n - y_{n-1}y_n, x_i - y_i, (x_{n-1}-y_{n-1})y_i, (x_n-y_n)y_i, i <= n-2."""
    R = RingSpec(n, (), field)
    gens = [g_parity(R, n - 1, n)]
    for i in range(1, n - 1):
        gens += [x(R, i) - y(R, i), (x(R, n - 1) - y(R, n - 1)) * y(R, i),
                 (x(R, n) - y(R, n)) * y(R, i)]
    return Ideal(R, gens, name="printed p- ∩ P")


def printed_t_basis(n: int, field: Field) -> list:
    """The lex basis of t*p^- + (1-t)*P_{n-1,n} as printed, with t the last variable."""
    E = RingSpec(n, ("t",), field)
    t = E.var("t")
    gens = [(x(E, n - 1) - y(E, n - 1)) * t, (x(E, n) - y(E, n)) * t, g_parity(E, n - 1, n)]
    for i in range(1, n - 1):
        gens += [x(E, i) - y(E, i), (x(E, n - 1) - y(E, n - 1)) * y(E, i),
                 (x(E, n) - y(E, n)) * y(E, i), (t - 1) * y(E, i)]
    return gens


def t_trick_ideal(n: int, field: Field) -> list:
    E = RingSpec(n, ("t",), field)
    t = E.var("t")
    gens = [t * g.embed(E) for g in p_minus(n, field).generators]
    gens += [(1 - t) * g.embed(E) for g in prime_P(n, n - 1, n, field).generators]
    return gens


def check_colon_xy(n: int, ctx: Context):
    R = _ring(n, ctx)
    lhs = colon(chain(n, n - 2, ctx.field), x(R, n) + y(R, n))
    inter = intersect(p_minus(n, ctx.field), P(n, n - 1, n, ctx.field))
    _equal(lhs, inter, "I_{n-2} : (x_n + y_n) vs p- ∩ P_{n-1,n}")
    _equal(inter, printed_intersection(n, ctx.field), "p- ∩ P_{n-1,n} vs printed generators")
    E = RingSpec(n, ("t",), ctx.field)
    order = TermOrder.lex(E)
    got = groebner_basis(t_trick_ideal(n, ctx.field), order).elements
    want = groebner_basis(printed_t_basis(n, ctx.field), order).elements
    _require(got == want, "lex basis of t p- + (1-t) P_{n-1,n} differs from the printed set")


def check_claim1(n: int, ctx: Context):
    J = lemA(n, ctx.field)
    R = J.ring
    lhs = Ideal(R, list(J.generators) + [x(R, n)])
    rhs = Ideal(R, [x(R, n), y(R, n)] + list(embedded_complete_parity_ideal(n, n - 1, ctx.field)))
    _equal(lhs, rhs, "(J, x_n) vs (x_n, y_n, I_K(n-1))")


def check_claim2(n: int, ctx: Context):
    J = lemA(n, ctx.field)
    _equal(colon(J, x(J.ring, n)), p_plus(n, ctx.field), "J : x_n vs p+")


def check_hp_closed(n: int, ctx: Context):
    _num_equal(numerator(parity_KN(n, ctx.field, ctx.poison)), closed_form_numerator(n),
               "HP numerator of R/I_Kn")


def _S_numerator(n: int, ctx: Context) -> tuple:
    """Numerator of S/I_{K_{n-1}} with S on n-1 vertices."""
    return numerator(complete_parity_ideal(n - 1, ctx.field)).coefficients


def check_hp_exseq(n: int, ctx: Context):
    f = ctx.field
    m = 2 * n
    chain_term = tpoly_shift(tpoly_mul((1, 1), one_minus_t_pow(2 * n - 3)), 2)
    for k in range(1, n - 1):
        lhs = numerator(chain(n, k - 1, f) if k > 1 else parity_KN(n, f, ctx.poison))
        rhs = HilbertNumerator(tpoly_add(chain_term, numerator(chain(n, k, f)).coefficients), m)
        _num_equal(lhs, rhs, f"P(I_{k - 1}) vs t^2(1+t)(1-t)^(2n-3) + P(I_{k})")
    PS = _S_numerator(n, ctx)
    rest = tpoly_mul(one_minus_t_pow(2), PS)
    want = tpoly_add(tpoly_add(tpoly_shift(tpoly_mul((2,), one_minus_t_pow(n)), 1),
                               tpoly_shift(tpoly_mul((2,), one_minus_t_pow(2 * n - 3)), 2)), rest)
    _num_equal(numerator(chain(n, n - 2, f)), HilbertNumerator(want, m),
               "P(I_{n-2}) vs 2t(1-t)^n + 2t^2(1-t)^(2n-3) + (1-t)^2 P_S")
    want = tpoly_add(tpoly_shift(one_minus_t_pow(n), 1), rest)
    _num_equal(numerator(lemA(n, f)), HilbertNumerator(want, m),
               "P(R/J) vs t(1-t)^n + (1-t)^2 P_S")
    if n >= 4:
        _num_equal(exact_sequence_assembly(n), closed_form_numerator(n),
                   "closed form vs its recursive assembly")


def check_hp_lemmas(n: int, ctx: Context):
    f = ctx.field
    R = _ring(n, ctx)
    for k in range(1, n):
        _num_equal(numerator(P(n, k, n, f)), lemma_numerators(n, "lem01"), f"P(R/P_{k}{n})")
    col = colon(chain(n, n - 2, f), x(R, n) + y(R, n))
    _num_equal(numerator(col), lemma_numerators(n, "lem02"), "P(R/(I_{n-2} : (x_n + y_n)))")
    _num_equal(numerator(lemA(n, f)), lemma_numerators(n, "lemA"), "P(R/J)")


def order_corpus(n: int, field: Field) -> list:
    out = [complete_parity_ideal(n, field), J_sat(n, field), p_plus(n, field), p_minus(n, field),
           lemma_A_ideal(n, field)]
    out += [P(n, i, j, field) for i, j in combinations(range(1, n + 1), 2)]
    out += [chain(n, k, field) for k in range(0, n)]
    return out


def check_order_inv(n: int, ctx: Context):
    for I in order_corpus(n, ctx.field):
        a, b = numerator(I, "lex"), numerator(I, "degrevlex")
        _num_equal(a, b, f"lex vs degrevlex numerator of {I.name or I}")


def check_oracle_hf(n: int, ctx: Context):
    if n > 4:
        raise CheckSkipped("rank oracle limited to n <= 4")
    I = parity_KN(n, ctx.field, ctx.poison)
    series = hilbert_function(numerator(I), 2 * n)
    try:
        oracle = hilbert_rank_oracle(I, 2 * n, cap=ctx.betti_cap)
    except DeskScaleExceeded as e:
        raise CheckSkipped(str(e)) from None
    _require(series == oracle, f"series {series} vs rank oracle {oracle}")


def check_betti_top(n: int, ctx: Context):
    e = extremal_betti(n)
    closed = closed_form_numerator(n).coefficient(2 * n)
    _require(closed == -e, f"closed-form t^{2 * n} coefficient {closed}, expected {-e}")
    got = numerator(parity_KN(n, ctx.field, ctx.poison)).coefficient(2 * n)
    _require(got == -e, f"computed t^{2 * n} coefficient {got}, expected {-e}")


def check_betti_full(n: int, ctx: Context):
    if n > 4:
        raise CheckSkipped("full Koszul table only attempted for n <= 4")
    I = parity_KN(n, ctx.field, ctx.poison)
    pred = predicted_invariants(n)
    try:
        B = graded_betti(I, row_max=pred.reg + 1, cap=ctx.betti_cap)
        Bin = graded_betti(initial_ideal(I), row_max=pred.reg + 1, cap=ctx.betti_cap)
    except DeskScaleExceeded as e:
        raise CheckSkipped(str(e)) from None
    _num_equal(alternating_sum(B), numerator(I), "alternating Betti sum")
    _require(B[(2 * n - 3, 2 * n)] == pred.extremal_betti,
             f"beta_{2 * n - 3},{2 * n} = {B[(2 * n - 3, 2 * n)]}, expected {pred.extremal_betti}")
    for label, T in (("R/I", B), ("R/in(I)", Bin)):
        got = (T.reg, T.pd, T.depth)
        want = (pred.reg, pred.pd, pred.depth)
        _require(got == want, f"{label}: (reg, pd, depth) = {got}, expected {want}")
    if n == 3:
        return f"note: reg = {B.reg} already at n = 3; constant regularity is only stated for n >= 4"


def check_fixture_7(n: int, ctx: Context):
    B = load_k7_fixture()
    _num_equal(alternating_sum(B), closed_form_numerator(7), "stored K_7 table alternating sums")


def check_perm_eq(n: int, ctx: Context):
    if ctx.field.characteristic == 2:
        raise CheckSkipped("coordinate change degenerate in characteristic 2")
    I = parity_KN(n, ctx.field, ctx.poison)
    img = image_ideal(RingMap.coordinate_change(I.ring), I)
    _equal(img, permanental_ideal(Graph.complete(n), ctx.field), "image of I_Kn vs permanental ideal")


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    fn: object
    fixed_n: int | None = None  # run once, labelled with this n
    tier_nmax: dict | None = None  # per-tier upper bound on n


REGISTRY = [
    CheckSpec("SAT", check_sat),
    CheckSpec("PD", check_pd),
    CheckSpec("DIM", check_dim),
    CheckSpec("CONTAIN", check_contain),
    CheckSpec("COLON-K", check_colon_k),
    CheckSpec("COLON-XY", check_colon_xy),
    CheckSpec("CLAIM1", check_claim1),
    CheckSpec("CLAIM2", check_claim2),
    CheckSpec("HP-CLOSED", check_hp_closed),
    CheckSpec("HP-EXSEQ", check_hp_exseq),
    CheckSpec("HP-LEMMAS", check_hp_lemmas),
    CheckSpec("ORDER-INV", check_order_inv),
    CheckSpec("ORACLE-HF", check_oracle_hf, tier_nmax={"quick": 4, "full": 4}),
    CheckSpec("BETTI-TOP", check_betti_top),
    CheckSpec("BETTI-FULL", check_betti_full, tier_nmax={"quick": 3, "full": 4}),
    CheckSpec("FIXTURE-7", check_fixture_7, fixed_n=7),
    CheckSpec("PERM-EQ", check_perm_eq),
]
CHECK_IDS = [c.check_id for c in REGISTRY]
_BY_ID = {c.check_id: c for c in REGISTRY}


def run_check(check_id: str, n: int, ctx: Context) -> CheckResult:
    spec = _BY_ID[check_id]
    t0 = time.perf_counter()
    try:
        note = spec.fn(n, ctx)
        status, witness, reason = "pass", None, note
    except CheckFailed as e:
        status, witness, reason = "fail", str(e), None
    except CheckSkipped as e:
        status, witness, reason = "skipped", None, str(e)
    except Exception as e:  # an internal error is reported as a failure, never hidden
        status, witness, reason = "fail", f"internal error: {e!r}\n{traceback.format_exc()}", None
    ms = int(1000 * (time.perf_counter() - t0))
    return CheckResult(check_id, n, status, witness, reason, ms)


def plan(check_ids, nmin: int, nmax: int, tier: str = "quick") -> list:
    """(check_id, n) pairs in registry order; tier limits become skips, not omissions."""
    tasks = []
    for spec in REGISTRY:
        if spec.check_id not in check_ids:
            continue
        if spec.fixed_n is not None:
            tasks.append((spec.check_id, spec.fixed_n, None))
            continue
        for n in range(nmin, nmax + 1):
            limit = (spec.tier_nmax or {}).get(tier)
            skip = None
            if limit is not None and n > limit:
                skip = f"not run in tier '{tier}' for n > {limit}"
            tasks.append((spec.check_id, n, skip))
    return tasks


def _worker(check_id, n, ctx, queue):
    queue.put(asdict(run_check(check_id, n, ctx)))


def _run_isolated(tasks, ctx: Context, workers: int, timeout: float | None) -> dict:
    """Run tasks in child processes, at most ``workers`` at a time; timeouts become skips."""
    mpctx = mp.get_context("fork")
    results: dict = {}
    pending = list(enumerate(tasks))
    running: dict = {}
    while pending or running:
        while pending and len(running) < workers:
            k, (cid, n) = pending.pop(0)
            q = mpctx.Queue()
            p = mpctx.Process(target=_worker, args=(cid, n, ctx, q), daemon=True)
            p.start()
            running[k] = (p, q, time.perf_counter(), cid, n)
        for k, (p, q, t0, cid, n) in list(running.items()):
            done = None
            try:
                done = q.get(timeout=0.05)
            except Exception:
                pass
            if done is not None:
                p.join()
                results[k] = CheckResult(**done)
                del running[k]
            elif not p.is_alive() and q.empty():
                results[k] = CheckResult(cid, n, "fail", witness=f"worker exited with {p.exitcode}")
                del running[k]
            elif timeout is not None and time.perf_counter() - t0 > timeout:
                p.terminate()
                p.join()
                results[k] = CheckResult(cid, n, "skipped", reason="timeout",
                                         runtime_ms=int(1000 * timeout))
                del running[k]
    return results


def run_verify(nmin: int, nmax: int, check_ids=None, field: Field = QQ, report_path=None,
               tier: str = "quick", poison: bool = False, workers: int = 1,
               timeout: float | None = None, progress=None) -> dict:
    """Run the requested checks and return (and optionally write) the JSON report."""
    if nmin < 3:
        raise ValueError("the theorems require n >= 3")
    if nmax < nmin:
        raise ValueError("empty n range")
    check_ids = list(CHECK_IDS if check_ids is None else check_ids)
    unknown = [c for c in check_ids if c not in _BY_ID]
    if unknown:
        raise ValueError(f"unknown check id(s): {', '.join(unknown)}")
    ctx = Context(field=field, poison=poison)
    tasks = plan(check_ids, nmin, nmax, tier)
    results: list = [None] * len(tasks)
    runnable = []
    for k, (cid, n, skip) in enumerate(tasks):
        if skip:
            results[k] = CheckResult(cid, n, "skipped", reason=skip)
        else:
            runnable.append(k)
    if workers <= 1 and timeout is None:
        for k in runnable:
            cid, n, _ = tasks[k]
            results[k] = run_check(cid, n, ctx)
            if progress:
                progress(results[k])
    else:
        done = _run_isolated([tasks[k][:2] for k in runnable], ctx, max(1, workers), timeout)
        for pos, k in enumerate(runnable):
            results[k] = done[pos]
            if progress:
                progress(results[k])
    summary = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skipped")}
    report = {
        "version": __version__,
        "field": field.tag,
        "checks": [asdict(r) for r in results],
        "summary": summary,
    }
    if report_path:
        with open(report_path, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report


def exit_code(report: dict) -> int:
    s = report["summary"]
    if s["fail"]:
        return 1
    if s["pass"]:
        return 0
    return 2
