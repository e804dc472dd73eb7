"""Order sweeps: run the solver across a range of orders and emit reports.

A sweep builds one basis and one set of coefficient tables, solves the
defining system for every order in the window, records denominator
coefficients, zeros, and errors against the known limit denominator when one
is available, and fits the geometric decay rate.  Reports serialize to JSON
(one document) and CSV (one row per order); identical configuration and
build produce bit-identical files, and all files are written atomically.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import tempfile

import numpy as np

from .basis import MeasureSpec, OrthoBasis, build_basis
from .catalog import CatalogEntry, get_entry
from .errors import ConfigError, InsufficientDataError, OhpadeError
from .functions import AnalyticFunction
from .incomplete import CaptureTrace, pole_capture_trace
from .poles import GroundTruth, SystemPoleSpec, flat_zeros, measured_theta, predicted_theta
from .solver import FunctionSystem, MultiIndex, coefficient_tables, solve_hp

CONFIG_SCHEMA = "ohpade-experiment/1"


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """A resolved sweep description: what to run and where to write."""

    label: str
    measure: MeasureSpec
    system: FunctionSystem
    truth: GroundTruth | None
    n_range: tuple
    out_dir: str | None = None
    formats: tuple = ("csv", "json")
    m_star: int | None = None
    capture_targets: tuple = ()

    def __post_init__(self):
        n_lo, n_hi = (int(v) for v in self.n_range)
        object.__setattr__(self, "n_range", (n_lo, n_hi))
        max_m = max(self.system.multi_index)
        if n_lo < max_m:
            raise ConfigError(f"n_lo must be at least max(m) = {max_m}, got {n_lo}")
        if n_hi < n_lo + 8:
            raise ConfigError(f"n_hi must be at least n_lo + 8 = {n_lo + 8}, got {n_hi}")
        for fmt in self.formats:
            if fmt not in ("csv", "json"):
                raise ConfigError(f"unknown output format {fmt!r}")

    @property
    def orders(self):
        return range(self.n_range[0], self.n_range[1] + 1)


def config_from_entry(entry: CatalogEntry, n_range=None, out_dir=None, formats=("csv", "json")) -> ExperimentConfig:
    return ExperimentConfig(
        label=entry.entry_id,
        measure=entry.measure,
        system=entry.system,
        truth=entry.truth,
        n_range=tuple(n_range) if n_range is not None else entry.default_n_range,
        out_dir=out_dir,
        formats=tuple(formats),
        m_star=entry.m_star,
        capture_targets=entry.capture_targets,
    )


def _ground_truth_from_config(cfg: dict) -> GroundTruth:
    poles = []
    for p in cfg.get("poles", []):
        xi = p["xi"]
        xi = complex(xi[0], xi[1]) if isinstance(xi, (list, tuple)) else complex(xi)
        tau = int(p.get("tau", 1))
        rho = p.get("rho", [math.inf] * tau)
        rho = [float("inf") if r in ("inf", None) else float(r) for r in rho]
        poles.append(SystemPoleSpec(xi=xi, tau=tau, rho_list=tuple(rho)))
    q_exact = cfg.get("q_exact")
    if q_exact is not None:
        q_exact = tuple(
            complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c) for c in q_exact
        )
    rho_star = tuple(
        (int(item["i"]), int(item.get("k", 0)), float(item["rho"]))
        for item in cfg.get("rho_star", [])
    )
    return GroundTruth(
        poles=tuple(poles),
        q_exact=q_exact,
        unique=bool(cfg.get("unique", True)),
        exact_from=cfg.get("exact_from"),
        rho_star=rho_star,
    )


def load_config(source) -> ExperimentConfig:
    """Build an ExperimentConfig from a JSON file path or a parsed dict."""
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    else:
        cfg = source
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    schema = cfg.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ConfigError(f"unsupported config schema {schema!r} (expected {CONFIG_SCHEMA!r})")

    out = cfg.get("out", {})
    out_dir = out.get("dir")
    formats = tuple(out.get("formats", ("csv", "json")))
    n_range = cfg.get("n_range")

    try:
        if "entry" in cfg:
            entry = get_entry(str(cfg["entry"]))
            return config_from_entry(
                entry,
                n_range=tuple(n_range) if n_range is not None else None,
                out_dir=out_dir,
                formats=formats,
            )
        if "system" not in cfg or "measure" not in cfg:
            raise ConfigError("config needs either an 'entry' id or inline 'system' + 'measure'")
        if n_range is None:
            raise ConfigError("inline configs must specify 'n_range'")
        measure = MeasureSpec.from_config(cfg["measure"])
        sys_cfg = cfg["system"]
        functions = tuple(
            AnalyticFunction.from_config(fc, label=f"F{i + 1}")
            for i, fc in enumerate(sys_cfg["functions"])
        )
        system = FunctionSystem(functions=functions, multi_index=MultiIndex(tuple(sys_cfg["m"])))
        truth = None
        if "ground_truth" in cfg:
            truth = _ground_truth_from_config(cfg["ground_truth"])
        return ExperimentConfig(
            label=str(cfg.get("label", "inline")),
            measure=measure,
            system=system,
            truth=truth,
            n_range=tuple(n_range),
            out_dir=out_dir,
            formats=formats,
            m_star=cfg.get("m_star"),
            capture_targets=tuple(cfg.get("capture_targets", ())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config: {exc!r}") from exc


@dataclasses.dataclass(frozen=True)
class PerOrderRow:
    n: int
    err_coeff_norm: float | None
    theta_running: float | None
    unique: bool
    degree_deficient: bool
    nullspace_dim: int
    zeros: tuple


@dataclasses.dataclass(frozen=True)
class ConvergenceReport:
    """Sweep outcome: predicted vs fitted rate plus the per-order trace."""

    entry_id: str
    theta_pred: float | None
    theta_fit: float | None
    fit_mode: str | None
    per_n: tuple

    def to_json_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "theta_pred": self.theta_pred,
            "theta_fit": self.theta_fit,
            "fit_mode": self.fit_mode,
            "per_n": [
                {
                    "n": row.n,
                    "err_coeff_norm": row.err_coeff_norm,
                    "theta_running": row.theta_running,
                    "unique": row.unique,
                    "degree_deficient": row.degree_deficient,
                    "nullspace_dim": row.nullspace_dim,
                    "zeros": [[z.real, z.imag] for z in row.zeros],
                }
                for row in self.per_n
            ],
        }


def _coeff_error(q, q_exact) -> float:
    width = max(len(q), len(q_exact))
    padded = np.zeros(width, dtype=complex)
    padded[: len(q)] = q
    exact = np.zeros(width, dtype=complex)
    exact[: len(q_exact)] = q_exact
    return float(np.max(np.abs(padded - exact)))


def _attach_order(exc: OhpadeError, n: int):
    if exc.args:
        exc.args = (f"{exc.args[0]} (at order n={n})",) + exc.args[1:]
    else:
        exc.args = (f"error at order n={n}",)


def run_sweep(config: ExperimentConfig, basis: OrthoBasis | None = None) -> ConvergenceReport:
    """Solve every order in the window and assemble the convergence report."""
    if basis is None:
        basis = build_basis(config.measure, n_max=config.n_range[1])
    tables = coefficient_tables(basis, config.system)
    q_exact = config.truth.q_exact if config.truth is not None else None

    ns: list[int] = []
    errors: list[float] = []
    rows: list[PerOrderRow] = []
    for n in config.orders:
        try:
            den, _ = solve_hp(basis, config.system, n, tables=tables)
        except OhpadeError as exc:
            _attach_order(exc, n)
            raise
        err = _coeff_error(den.q, q_exact) if q_exact is not None else None
        ns.append(n)
        if err is not None:
            errors.append(err)
        theta_running = None
        if len(errors) >= 2:
            try:
                theta_running = measured_theta(ns[: len(errors)], errors).theta
            except InsufficientDataError:
                theta_running = None
        rows.append(
            PerOrderRow(
                n=n,
                err_coeff_norm=err,
                theta_running=theta_running,
                unique=den.unique,
                degree_deficient=den.degree_deficient,
                nullspace_dim=den.nullspace_dim,
                zeros=tuple(flat_zeros(den.q)),
            )
        )

    theta_pred = None
    if config.truth is not None and config.truth.total_order == config.system.multi_index.total:
        theta_pred = predicted_theta(
            config.truth, basis.cmap, require_total=config.system.multi_index.total
        )
    theta_fit = None
    fit_mode = None
    if errors:
        try:
            fit = measured_theta(ns, errors)
            theta_fit, fit_mode = fit.theta, fit.mode
        except InsufficientDataError:
            theta_fit, fit_mode = None, "insufficient-data"
    return ConvergenceReport(
        entry_id=config.label,
        theta_pred=theta_pred,
        theta_fit=theta_fit,
        fit_mode=fit_mode,
        per_n=tuple(rows),
    )


def run_capture(config: ExperimentConfig, basis: OrthoBasis | None = None) -> CaptureTrace:
    """Run the underdetermined solver across the window and trace capture."""
    if config.m_star is None:
        raise ConfigError("capture sweeps need m_star")
    if config.system.size != 1:
        raise ConfigError("capture sweeps are defined for single-function systems")
    if basis is None:
        basis = build_basis(config.measure, n_max=config.n_range[1])
    return pole_capture_trace(
        basis,
        config.system.functions[0],
        m=config.system.multi_index.m[0],
        m_star=config.m_star,
        ns=list(config.orders),
        targets=list(config.capture_targets),
    )


# -- deterministic writers ---------------------------------------------------


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def report_csv_text(report: ConvergenceReport, max_zeros: int) -> str:
    header = ["n", "err_coeff_norm", "theta_running", "unique", "degree_deficient", "nullspace_dim"]
    for j in range(1, max_zeros + 1):
        header.extend([f"zero{j}_re", f"zero{j}_im"])
    lines = [",".join(header)]
    for row in report.per_n:
        cells = [
            _cell(row.n),
            _cell(row.err_coeff_norm),
            _cell(row.theta_running),
            _cell(row.unique),
            _cell(row.degree_deficient),
            _cell(row.nullspace_dim),
        ]
        for j in range(max_zeros):
            if j < len(row.zeros):
                cells.extend([repr(row.zeros[j].real), repr(row.zeros[j].imag)])
            else:
                cells.extend(["", ""])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def capture_csv_text(trace: CaptureTrace) -> str:
    lines = ["n,zero_re,zero_im,dist_to_pole,nullspace_dim"]
    for n, z, dist, dim in trace.zero_rows():
        lines.append(f"{n},{z.real!r},{z.imag!r},{dist!r},{dim}")
    return "\n".join(lines) + "\n"


def write_report(report: ConvergenceReport, config: ExperimentConfig) -> list[str]:
    """Write the report in the configured formats; returns written paths."""
    if config.out_dir is None:
        raise ConfigError("no output directory configured")
    written = []
    base = os.path.join(config.out_dir, f"{config.label}_sweep")
    if "json" in config.formats:
        path = base + ".json"
        _atomic_write(path, json.dumps(report.to_json_dict(), indent=2) + "\n")
        written.append(path)
    if "csv" in config.formats:
        path = base + ".csv"
        _atomic_write(path, report_csv_text(report, max_zeros=config.system.multi_index.total))
        written.append(path)
    return written


def write_capture(trace: CaptureTrace, config: ExperimentConfig) -> list[str]:
    if config.out_dir is None:
        raise ConfigError("no output directory configured")
    written = []
    base = os.path.join(config.out_dir, f"{config.label}_capture")
    if "csv" in config.formats:
        path = base + ".csv"
        _atomic_write(path, capture_csv_text(trace))
        written.append(path)
    if "json" in config.formats:
        payload = {
            "entry_id": config.label,
            "m": trace.m,
            "m_star": trace.m_star,
            "rate": trace.rate,
            "per_n": [
                {
                    "n": int(n),
                    "max_matched_distance": float(dist),
                    "nullspace_dim": int(dim),
                    "zeros": [[z.real, z.imag] for z in zeros],
                }
                for n, dist, dim, zeros in zip(
                    trace.ns, trace.distances, trace.nullspace_dims, trace.zeros_per_n
                )
            ],
        }
        path = base + ".json"
        _atomic_write(path, json.dumps(payload, indent=2) + "\n")
        written.append(path)
    return written
