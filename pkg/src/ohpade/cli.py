"""Command-line interface.

Subcommands::

    basis       build an orthonormal basis and print diagnostics
    coeff       one expansion coefficient by both routes (quadrature/contour)
    approx      one (n, m) simultaneous-approximant solve
    incomplete  underdetermined sweep with pole-capture trace
    sweep       order sweep with convergence report (CSV/JSON)
    catalog     list shipped benchmark systems or show one entry
    verify      run verification suites

Exit codes: 0 success, 1 verification failure, 2 configuration/parameter
error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import verify as verify_mod
from .basis import build_basis, kappa_lower_envelope
from .catalog import ENTRIES, catalog_rows, get_entry
from .coeffs import CoeffTable, coeff_contour, coeff_quadrature
from .errors import ConfigError, OhpadeError
from .functions import AnalyticFunction
from .poles import flat_zeros
from .solver import FunctionSystem, MultiIndex, solve_hp
from .sweep import (
    capture_csv_text,
    config_from_entry,
    load_config,
    report_csv_text,
    run_capture,
    run_sweep,
    write_capture,
    write_report,
)


def _parse_n_range(text: str) -> tuple:
    for sep in (":", ","):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return (int(lo), int(hi))
    raise ConfigError(f"cannot parse order range {text!r}; expected LO:HI")


def _parse_m(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"cannot parse multi-index {text!r}; expected comma-separated integers")


def _measure_from_name(name: str):
    from .basis import WEIGHTS, circle_measure, interval_measure

    if name == "circle_lebesgue":
        return circle_measure()
    if name in WEIGHTS:
        return interval_measure(name)
    raise ConfigError(f"unknown measure {name!r}; choose from {', '.join(WEIGHTS)}")


def _emit(text: str, out_path: str | None):
    if out_path:
        from .sweep import _atomic_write

        _atomic_write(out_path, text if text.endswith("\n") else text + "\n")
        print(out_path)
    else:
        print(text)


def _json_complex(z: complex) -> list:
    return [z.real, z.imag]


# -- subcommand handlers -----------------------------------------------------


def cmd_basis(args) -> int:
    measure = _measure_from_name(args.measure)
    basis = build_basis(measure, n_max=args.n)
    from ._kernels import BACKEND

    payload = {
        "weight": measure.weight,
        "domain": measure.domain.to_config(),
        "n_max": basis.n_max,
        "backend": BACKEND,
        "node_count": basis.node_count,
        "orthonormality_residual": basis.orthonormality_residual,
        "kappa_envelope": kappa_lower_envelope(basis, m_max=min(4, basis.n_max)),
        "kappa": [float(k) for k in basis.kappa],
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _resolve_function(args) -> tuple:
    """(measure, function) for coeff: from a catalog entry or a config file."""
    if args.entry:
        entry = get_entry(args.entry)
        fn = entry.system.functions[args.component]
        measure = entry.measure if args.measure is None else _measure_from_name(args.measure)
        return measure, fn
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
        from .basis import MeasureSpec

        if args.measure is not None:
            measure = _measure_from_name(args.measure)
        elif "measure" in cfg:
            measure = MeasureSpec.from_config(cfg["measure"])
        else:
            raise ConfigError("config must carry a 'measure' or use --measure")
        if "function" not in cfg:
            raise ConfigError("config must carry a 'function' object")
        return measure, AnalyticFunction.from_config(cfg["function"])
    raise ConfigError("coeff needs --entry or --config")


def cmd_coeff(args) -> int:
    measure, fn = _resolve_function(args)
    basis = build_basis(measure, n_max=args.n)
    quad = coeff_quadrature(basis, fn, args.n, shift=args.shift)
    rho0 = fn.rho0(basis.cmap)
    rho = args.rho if args.rho is not None else (4.0 if math.isinf(rho0) else math.sqrt(rho0))
    contour = coeff_contour(basis, fn, args.n, rho=rho, shift=args.shift)
    payload = {
        "n": args.n,
        "shift": args.shift,
        "weight": measure.weight,
        "rho": rho,
        "quadrature": _json_complex(quad),
        "contour": _json_complex(contour),
        "abs_diff": abs(quad - contour),
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def _resolve_system(args) -> tuple:
    """(measure, system) for approx: catalog entry or experiment config."""
    if args.entry:
        entry = get_entry(args.entry)
        return entry.measure, entry.system
    if args.config:
        cfg = load_config(args.config)
        system = cfg.system
        if args.m is not None:
            m = _parse_m(args.m)
            if len(m) != system.size:
                raise ConfigError("--m must list one order per function")
            system = FunctionSystem(functions=system.functions, multi_index=MultiIndex(m))
        return cfg.measure, system
    raise ConfigError("approx needs --entry or --config")


def cmd_approx(args) -> int:
    measure, system = _resolve_system(args)
    basis = build_basis(measure, n_max=max(args.n, 8))
    den, approx = solve_hp(basis, system, args.n)
    zeros = flat_zeros(den.q)
    record = {
        "n": den.n,
        "q_coeffs": [_json_complex(c) for c in den.q],
        "singular_values": [float(s) for s in den.singular_values],
        "unique": den.unique,
        "degree_deficient": den.degree_deficient,
        "nullspace_dim": den.nullspace_dim,
        "zeros": [_json_complex(z) for z in zeros],
        "numerator_degrees": {
            f"{i},{k}": len(coeffs) - 1 for (i, k), coeffs in approx.numerators.items()
        },
    }
    if args.format == "csv":
        header = ["n", "unique", "degree_deficient", "nullspace_dim"]
        cells = [str(den.n), str(den.unique).lower(), str(den.degree_deficient).lower(), str(den.nullspace_dim)]
        for j, c in enumerate(den.q):
            header.extend([f"q{j}_re", f"q{j}_im"])
            cells.extend([repr(c.real), repr(c.imag)])
        _emit(",".join(header) + "\n" + ",".join(cells), args.out)
    else:
        _emit(json.dumps(record, indent=2), args.out)
    return 0


def cmd_incomplete(args) -> int:
    if args.entry:
        entry = get_entry(args.entry)
        config = config_from_entry(entry, n_range=args.n_range)
    else:
        if not args.config:
            raise ConfigError("incomplete needs --entry or --config")
        config = load_config(args.config)
        if args.n_range is not None:
            import dataclasses as _dc

            config = _dc.replace(config, n_range=args.n_range)
    if args.m is not None:
        import dataclasses as _dc

        m = _parse_m(args.m)
        config = _dc.replace(
            config,
            system=FunctionSystem(functions=config.system.functions, multi_index=MultiIndex(m)),
        )
    if args.m_star is not None:
        import dataclasses as _dc

        config = _dc.replace(config, m_star=args.m_star)
    trace = run_capture(config)
    if args.out_dir:
        import dataclasses as _dc

        config = _dc.replace(config, out_dir=args.out_dir, formats=(args.format,))
        for path in write_capture(trace, config):
            print(path)
    elif args.format == "csv":
        print(capture_csv_text(trace), end="")
    else:
        payload = {
            "entry_id": config.label,
            "m": trace.m,
            "m_star": trace.m_star,
            "rate": trace.rate,
            "distances": [float(d) for d in trace.distances],
        }
        print(json.dumps(payload, indent=2))
    return 0


def cmd_sweep(args) -> int:
    if args.config:
        config = load_config(args.config)
    elif args.entry:
        config = config_from_entry(get_entry(args.entry), n_range=args.n_range)
    else:
        raise ConfigError("sweep needs --entry or --config")
    if args.n_range is not None or args.out_dir is not None or args.format is not None:
        import dataclasses as _dc

        config = _dc.replace(
            config,
            n_range=args.n_range if args.n_range is not None else config.n_range,
            out_dir=args.out_dir if args.out_dir is not None else config.out_dir,
            formats=(args.format,) if args.format is not None else config.formats,
        )
    report = run_sweep(config)
    if config.out_dir:
        for path in write_report(report, config):
            print(path)
    elif "csv" == (args.format or "json"):
        print(report_csv_text(report, max_zeros=config.system.multi_index.total), end="")
    else:
        print(json.dumps(report.to_json_dict(), indent=2))
    return 0


def cmd_catalog(args) -> int:
    if args.entry:
        entry = get_entry(args.entry)
        payload = {
            "entry_id": entry.entry_id,
            "title": entry.title,
            "weight": entry.measure.weight,
            "domain": entry.measure.domain.to_config(),
            "m": list(entry.system.multi_index),
            "functions": [fn.to_config() for fn in entry.system.functions],
            "theta": entry.theta,
            "q_exact": [
                _json_complex(c) for c in entry.truth.q_exact
            ] if entry.truth.q_exact is not None else None,
            "poles": [
                {
                    "xi": _json_complex(p.xi),
                    "tau": p.tau,
                    "rho": [None if math.isinf(r) else r for r in p.rho_list],
                }
                for p in entry.truth.poles
            ],
            "unique_expected": entry.truth.unique,
            "exact_from": entry.truth.exact_from,
            "m_star": entry.m_star,
            "capture_targets": [_json_complex(complex(t)) for t in entry.capture_targets],
            "default_n_range": list(entry.default_n_range),
            "tags": list(entry.tags),
            "note": entry.note,
        }
        _emit(json.dumps(payload, indent=2), args.out)
        return 0
    rows = catalog_rows()
    if args.format == "json":
        _emit(json.dumps(rows, indent=2), args.out)
        return 0
    lines = [f"{len(rows)} catalog entries:"]
    for row in rows:
        theta = "-" if row["theta"] is None else f"{row['theta']:.4f}"
        mstar = "" if row["m_star"] is None else f" m*={row['m_star']}"
        lines.append(
            f"  {row['entry_id']:<20} d={row['d']} m={','.join(map(str, row['m']))}{mstar} "
            f"{row['weight']:<15} theta={theta:<7} unique={str(row['unique_expected']).lower():<5} "
            f"{row['title']}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify_mod.run_suite(args.suite)
    if args.format == "json":
        text = json.dumps(report.to_json_dict(), indent=2)
        _emit(text, args.out)
    else:
        for line in report.lines():
            print(line)
        if args.out:
            from .sweep import _atomic_write

            _atomic_write(args.out, json.dumps(report.to_json_dict(), indent=2) + "\n")
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ohpade",
        description="Simultaneous rational approximation from orthogonal expansions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="build an orthonormal basis and print diagnostics")
    p.add_argument("--measure", default="chebyshev", help="weight name (e.g. circle_lebesgue, chebyshev)")
    p.add_argument("--n", type=int, default=40, help="highest polynomial degree")
    p.add_argument("--out", default=None, help="write output to this file")
    p.set_defaults(handler=cmd_basis)

    p = sub.add_parser("coeff", help="one expansion coefficient by both routes")
    p.add_argument("--entry", default=None, help="catalog entry id")
    p.add_argument("--component", type=int, default=0, help="component index within the entry")
    p.add_argument("--config", default=None, help="JSON file with 'function' (and 'measure')")
    p.add_argument("--measure", default=None, help="override measure by name")
    p.add_argument("--n", type=int, required=True, help="coefficient index")
    p.add_argument("--shift", type=int, default=0, help="power-of-z shift k in [z^k F]_n")
    p.add_argument("--rho", type=float, default=None, help="contour level (> 1)")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_coeff)

    p = sub.add_parser("approx", help="one (n, m) simultaneous-approximant solve")
    p.add_argument("--entry", default=None, help="catalog entry id")
    p.add_argument("--config", default=None, help="experiment config JSON")
    p.add_argument("--m", default=None, help="comma-separated orders overriding the config")
    p.add_argument("--n", type=int, required=True, help="approximation order")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_approx)

    p = sub.add_parser("incomplete", help="underdetermined sweep with capture trace")
    p.add_argument("--entry", default=None, help="catalog entry id")
    p.add_argument("--config", default=None, help="experiment config JSON")
    p.add_argument("--m", default=None, help="denominator degree bound")
    p.add_argument("--m-star", dest="m_star", type=int, default=None, help="number of conditions")
    p.add_argument("--n-range", dest="n_range", type=_parse_n_range, default=None, help="orders LO:HI")
    p.add_argument("--out", dest="out_dir", default=None, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_incomplete)

    p = sub.add_parser("sweep", help="order sweep with convergence report")
    p.add_argument("--entry", default=None, help="catalog entry id")
    p.add_argument("--config", default=None, help="experiment config JSON")
    p.add_argument("--n-range", dest="n_range", type=_parse_n_range, default=None, help="orders LO:HI")
    p.add_argument("--out", dest="out_dir", default=None, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("catalog", help="list benchmark systems or show one entry")
    p.add_argument("--entry", default=None, help="show full details for this entry")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument(
        "--suite",
        default="all",
        help="suite name (see README); 'all' runs every criterion",
    )
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="also write the JSON summary here")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except OhpadeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
