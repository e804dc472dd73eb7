"""Verification suites: quantitative checks of the library's core claims.

Each criterion function builds what it needs (bases and coefficient tables
are cached and shared), runs one quantitative check at a fixed tolerance,
and returns a CriterionResult whose summary line reads
``PASS/FAIL  <name>: <numbers>``.  The ``all`` suite is the full gate; the
CLI maps any failure to exit status 1.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import time

import numpy as np

from .basis import MeasureSpec, build_basis, circle_measure, interval_measure, kappa_lower_envelope
from .catalog import ENTRIES, RADIUS_CASES, distinct_functions, get_entry
from .coeffs import CoeffTable, contour_series, radius_from_coeffs
from .errors import InsufficientDataError
from .functions import AnalyticFunction
from .incomplete import matched_distance, pole_capture_trace
from .poles import approximation_rate_check, flat_zeros
from .solver import assemble_system, classical_denominator, coefficient_tables, solve_denominator
from .sweep import config_from_entry, run_sweep

N_MAX = 60


def _measure(weight: str) -> MeasureSpec:
    if weight == "circle_lebesgue":
        return circle_measure()
    if weight == "jacobi":
        return interval_measure("jacobi", alpha=0.5, beta=-0.25)
    return interval_measure(weight)


def _basis(weight: str):
    return build_basis(_measure(weight), n_max=N_MAX)


@functools.lru_cache(maxsize=None)
def _table(weight: str, fn: AnalyticFunction) -> CoeffTable:
    return CoeffTable(_basis(weight), fn)


@dataclasses.dataclass(frozen=True)
class CriterionResult:
    criterion: str
    passed: bool
    summary: str
    data: dict
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.criterion}: {self.summary} [{self.elapsed:.2f}s]"


def _pad_diff(q_a, q_b) -> float:
    width = max(len(q_a), len(q_b))
    a = np.zeros(width, dtype=complex)
    a[: len(q_a)] = q_a
    b = np.zeros(width, dtype=complex)
    b[: len(q_b)] = q_b
    return float(np.max(np.abs(a - b)))


# -- criteria ----------------------------------------------------------------


def criterion_orthonormality() -> CriterionResult:
    """Discrete Gram matrices of the shipped weights are identities."""
    tols = {"circle_lebesgue": 1e-12, "chebyshev": 1e-10, "legendre": 1e-10}
    residuals = {}
    ok = True
    for weight, tol in tols.items():
        basis = _basis(weight)
        gram = (basis.p_nodes * basis.weights[None, :]) @ basis.conj_p_nodes.T
        resid = float(np.max(np.abs(gram - np.eye(basis.n_max + 1))))
        residuals[weight] = resid
        ok = ok and resid <= tol
    summary = (
        "max |<p_j,p_k> - delta| for j,k <= 60: "
        + ", ".join(f"{w} {residuals[w]:.2e} (tol {tols[w]:.0e})" for w in tols)
    )
    return CriterionResult("orthonormality", ok, summary, {"residuals": residuals})


def criterion_circle_equivalence() -> CriterionResult:
    """On the circle the expansion-based and Maclaurin-based denominators agree.

    Where either linear system is rank-deficient the representative is not
    unique, so the check there is that both routes report the same
    uniqueness flag; wherever both are unique the monic coefficients must
    match to 1e-10.
    """
    entry_ids = ("circle_theta06", "circle_theta_d2", "rational_exact", "quad_exact")
    basis = _basis("circle_lebesgue")
    worst = 0.0
    flags_agree = True
    compared = 0
    for eid in entry_ids:
        entry = get_entry(eid)
        mi = entry.system.multi_index
        tables = [_table("circle_lebesgue", fn) for fn in entry.system.functions]
        taylors = [fn.taylor(upto=30) for fn in entry.system.functions]
        for n in range(31):
            den_o = solve_denominator(assemble_system(tables, n, mi), n)
            den_c = classical_denominator(taylors, n, mi)
            if den_o.unique != den_c.unique:
                flags_agree = False
                continue
            if den_o.unique:
                worst = max(worst, _pad_diff(den_o.q, den_c.q))
                compared += 1
    ok = flags_agree and worst <= 1e-10
    summary = (
        f"max |Q_expansion - Q_maclaurin| = {worst:.2e} (tol 1e-10) over 4 systems, "
        f"n <= 30 ({compared} unique orders); uniqueness flags "
        + ("agree" if flags_agree else "DISAGREE")
    )
    return CriterionResult(
        "circle-equivalence",
        ok,
        summary,
        {"max_deviation": worst, "flags_agree": flags_agree, "compared_orders": compared},
    )


def criterion_rational_recovery() -> CriterionResult:
    """A fully rational 3-pole system is recovered exactly at finite order."""
    entry = get_entry("rational_exact")
    mi = entry.system.multi_index
    tables = [_table("circle_lebesgue", fn) for fn in entry.system.functions]
    targets = entry.truth.pole_locations()
    worst_q = 0.0
    worst_zero = 0.0
    for n in range(10, 41):
        den = solve_denominator(assemble_system(tables, n, mi), n)
        worst_q = max(worst_q, _pad_diff(den.q, entry.truth.q_exact))
        worst_zero = max(worst_zero, matched_distance(flat_zeros(den.q), targets))
    ok = worst_q <= 1e-8 and worst_zero <= 1e-8
    summary = (
        f"d=2, |m|=3: max |Q_n - Q_limit| = {worst_q:.2e}, max zero-to-pole distance = "
        f"{worst_zero:.2e} (tol 1e-8), n in [10, 40]"
    )
    return CriterionResult(
        "rational-recovery", ok, summary, {"max_coeff_err": worst_q, "max_zero_dist": worst_zero}
    )


def _rate_criterion(name: str, entry_id: str, weight: str) -> CriterionResult:
    entry = get_entry(entry_id)
    config = config_from_entry(entry, n_range=(5, 30))
    report = run_sweep(config, basis=_basis(weight))
    target = entry.theta
    fit = report.theta_fit
    ok = fit is not None and abs(fit - target) <= 0.05
    summary = (
        f"{entry_id}: fitted theta = {fit:.4f} vs predicted {target:.4f} "
        f"(band +/- 0.05), n in [5, 30]"
        if fit is not None
        else f"{entry_id}: rate fit unavailable"
    )
    return CriterionResult(name, ok, summary, {"theta_fit": fit, "theta_pred": target})


def criterion_rate_circle() -> CriterionResult:
    """The circle benchmark reproduces denominator rate 0.6."""
    return _rate_criterion("rate-circle", "circle_theta06", "circle_lebesgue")


def criterion_rate_interval() -> CriterionResult:
    """The interval benchmark reproduces the exterior-map rate ~0.4492."""
    return _rate_criterion("rate-interval", "interval_theta", "chebyshev")


def criterion_radius() -> CriterionResult:
    """Coefficient decay recovers the holomorphy radius within 5 percent."""
    rows = {}
    ok = True
    for case in RADIUS_CASES:
        weight = case.measure.weight
        series = np.abs(_table(weight, case.fn).series(40))
        est = radius_from_coeffs(series)
        rel = abs(est.value - case.rho_true) / case.rho_true
        rows[case.case_id] = {"estimate": est.value, "truth": case.rho_true, "rel_err": rel}
        ok = ok and rel <= 0.05
    summary = "; ".join(
        f"{cid}: {info['estimate']:.4f} vs {info['truth']:.4f} ({100 * info['rel_err']:.2f}%)"
        for cid, info in rows.items()
    ) + " (tol 5%)"
    return CriterionResult("radius", ok, summary, rows)


def criterion_cross_method() -> CriterionResult:
    """Node quadrature and contour integration give the same coefficients."""
    worst = 0.0
    checked = 0
    for weight in ("circle_lebesgue", "chebyshev"):
        basis = _basis(weight)
        for fn in distinct_functions():
            rho0 = fn.rho0(basis.cmap)
            rho = 4.0 if math.isinf(rho0) else math.sqrt(rho0)
            quad = _table(weight, fn).series(40)
            contour = contour_series(basis, fn, upto=40, rho=rho)
            worst = max(worst, float(np.max(np.abs(quad - contour))))
            checked += 1
    ok = worst <= 1e-9
    summary = (
        f"max |quadrature - contour| = {worst:.2e} (tol 1e-9) over {checked} "
        "(function, measure) pairs, n <= 40"
    )
    return CriterionResult("cross-method", ok, summary, {"max_diff": worst, "pairs": checked})


def criterion_second_type_identity() -> CriterionResult:
    """p_n(z) s_n(z) equals the weighted Cauchy sum of |p_n|^2 off support."""
    probes = (3.0 + 0.0j, 2.0 + 2.0j, -2.5 + 0.0j, 1.8j, -1.5 - 1.5j)
    orders = (10, 25, 40)
    worst = 0.0
    for weight in ("circle_lebesgue", "chebyshev", "legendre"):
        basis = _basis(weight)
        for n in orders:
            p_sq = np.abs(basis.p_nodes[n]) ** 2 * basis.weights
            for z in probes:
                lhs = complex(basis.eval_p(n, z)) * complex(basis.second_type(n, z))
                rhs = complex(np.sum(p_sq / (z - basis.nodes)))
                worst = max(worst, abs(lhs - rhs))
    ok = worst <= 1e-10
    summary = (
        f"max |p_n s_n - sum w |p_n|^2/(z - node)| = {worst:.2e} (tol 1e-10), "
        "5 probes, n in {10, 25, 40}, 3 weights"
    )
    return CriterionResult("second-type-identity", ok, summary, {"max_defect": worst})


def criterion_kappa_bounds() -> CriterionResult:
    """Leading-coefficient ratios obey the sup-norm upper bound and stay
    bounded away from zero per step."""
    ok = True
    data = {}
    for weight in ("circle_lebesgue", "chebyshev", "legendre", "jacobi"):
        basis = _basis(weight)
        sup = basis.domain.sup_norm
        worst_excess = -math.inf
        for m in range(1, 5):
            ratios = np.array([basis.kappa_ratio(n, m) for n in range(m, N_MAX + 1)])
            worst_excess = max(worst_excess, float(np.max(ratios)) - sup**m)
        envelope = kappa_lower_envelope(basis, m_max=4)
        data[weight] = {
            "worst_upper_excess": worst_excess,
            "per_step_envelope": envelope["per_step"],
            "per_m_min": envelope["per_m"],
        }
        ok = ok and worst_excess <= 1e-12 and envelope["per_step"] >= 0.1
    summary = "; ".join(
        f"{w}: upper slack {data[w]['worst_upper_excess']:.1e}, "
        f"per-step envelope {data[w]['per_step_envelope']:.3f}"
        for w in data
    ) + " (envelope >= 0.1)"
    return CriterionResult("kappa-bounds", ok, summary, data)


def criterion_incomplete_capture() -> CriterionResult:
    """With a spare zero, the constrained one still locks onto the pole."""
    entry = get_entry("incomplete_log")
    basis = _basis("circle_lebesgue")
    trace = pole_capture_trace(
        basis,
        entry.system.functions[0],
        m=entry.system.multi_index.m[0],
        m_star=entry.m_star,
        ns=range(10, 31),
        targets=entry.capture_targets,
    )
    final = float(trace.distances[-1])
    bound = entry.capture_rate_bound + 0.05
    ok = final < 1e-4 and trace.rate <= bound
    summary = (
        f"distance to pole at n=30: {final:.2e} (tol 1e-4); fitted capture rate "
        f"{trace.rate:.4f} <= {bound:.2f}"
    )
    return CriterionResult(
        "incomplete-capture", ok, summary, {"final_distance": final, "rate": trace.rate}
    )


def criterion_inverse_sanity() -> CriterionResult:
    """Constructed degeneracies show up as flags, entire input as wandering."""
    dup = get_entry("dup_pair")
    tables = [_table("circle_lebesgue", fn) for fn in dup.system.functions]
    dup_ok = True
    for n in range(10, 31):
        den = solve_denominator(assemble_system(tables, n, dup.system.multi_index), n)
        dup_ok = dup_ok and not den.unique
    exp_entry = get_entry("entire_exp")
    exp_tables = [_table("circle_lebesgue", fn) for fn in exp_entry.system.functions]
    locations = {}
    for n in (20, 30):
        den = solve_denominator(assemble_system(exp_tables, n, exp_entry.system.multi_index), n)
        zeros = flat_zeros(den.q)
        locations[n] = zeros[0] if zeros else None
    if locations[20] is None or locations[30] is None:
        moved = math.inf
    else:
        moved = abs(locations[20] - locations[30])
    ok = dup_ok and moved > 0.1
    summary = (
        f"duplicated pair non-unique at every n in [10, 30]: {dup_ok}; entire-function "
        f"zero moved {moved:.3g} between n=20 and n=30 (> 0.1)"
    )
    return CriterionResult(
        "inverse-sanity", ok, summary, {"dup_all_nonunique": dup_ok, "zero_move": moved}
    )


def criterion_approximation_rate() -> CriterionResult:
    """Function-value errors on a point cloud decay no slower than the bound."""
    entry = get_entry("circle_theta06")
    basis = _basis("circle_lebesgue")
    tables = [_table("circle_lebesgue", fn) for fn in entry.system.functions]
    check = approximation_rate_check(
        basis,
        entry.system,
        entry.truth,
        0,
        points=(0.0, 0.3, 0.3j),
        ns=range(5, 31),
        tables=tables,
    )
    mode = f" ({check.fit.mode})" if check.fit.mode != "fit" else ""
    summary = (
        f"fitted rate {check.fit.theta:.4f}{mode} <= bound {check.bound:.2f} + 0.05 "
        "on K = {0, 0.3, 0.3i}, n in [5, 30]"
    )
    return CriterionResult(
        "approximation-rate",
        check.passed,
        summary,
        {"rate": check.fit.theta, "mode": check.fit.mode, "bound": check.bound},
    )


SUITES = {
    "orthonormality": (criterion_orthonormality,),
    "circle-equivalence": (criterion_circle_equivalence,),
    "rational-recovery": (criterion_rational_recovery,),
    "rate-circle": (criterion_rate_circle,),
    "rate-interval": (criterion_rate_interval,),
    "radius": (criterion_radius,),
    "cross-method": (criterion_cross_method,),
    "second-type-identity": (criterion_second_type_identity,),
    "kappa-bounds": (criterion_kappa_bounds,),
    "incomplete-capture": (criterion_incomplete_capture,),
    "inverse-sanity": (criterion_inverse_sanity,),
    "approximation-rate": (criterion_approximation_rate,),
}
SUITES["all"] = tuple(fn for name in SUITES for fn in SUITES[name])


@dataclasses.dataclass(frozen=True)
class VerifyReport:
    suite: str
    results: tuple
    passed: bool

    def lines(self):
        for r in self.results:
            yield r.line()
        status = "PASS" if self.passed else "FAIL"
        yield f"{status}  suite '{self.suite}': {sum(r.passed for r in self.results)}/{len(self.results)} criteria passed"

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "results": [
                {
                    "criterion": r.criterion,
                    "passed": r.passed,
                    "summary": r.summary,
                    "elapsed_s": round(r.elapsed, 3),
                    "data": r.data,
                }
                for r in self.results
            ],
        }


def run_suite(suite: str = "all") -> VerifyReport:
    from .errors import ParameterError

    if suite not in SUITES:
        raise ParameterError(
            f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}"
        )
    results = []
    for fn in SUITES[suite]:
        start = time.perf_counter()
        result = fn()
        results.append(dataclasses.replace(result, elapsed=time.perf_counter() - start))
    return VerifyReport(suite=suite, results=tuple(results), passed=all(r.passed for r in results))
