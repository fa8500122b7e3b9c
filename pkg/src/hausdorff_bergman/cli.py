"""Command-line front end.

Subcommands: apply, norm, moment, classify, sweep, verify, plotdata.
Exit codes: 0 success, 1 numeric/verification failure, 2 usage or config
errors.  Complex numbers on the command line use the form a+bi with a
mandatory sign, e.g. 0.3+1.2i or -0.25-0.1i.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from pathlib import Path

from . import harness
from .errors import NumericsError, ParameterOutOfRange
from .halfplane import parse_function_spec
from .hausdorff import HausdorffOperator, apply_with_error, as_function
from .measure import (
    Measure,
    classify_boundedness,
    load_measure,
    measure_from_json,
    moment,
    pushforward_inverse,
)
from .quadrature import QuadratureConfig, bergman_norm_p


class _UsageError(Exception):
    pass

SCHEMA_VERSION = 1

_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$"
)


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' (sign before the imaginary part is mandatory)."""
    m = _COMPLEX_RE.match(text.strip())
    if not m:
        raise ValueError(
            f"cannot parse complex number {text!r}; expected a+bi, e.g. 0.3+1.2i"
        )
    return complex(float(m.group("re")), float(m.group("im")))


def format_complex(z: complex) -> str:
    re, im = z.real, z.imag
    scale = max(abs(re), abs(im))
    if scale > 0.0:
        if abs(im) < 1e-13 * scale:
            im = 0.0
        if abs(re) < 1e-13 * scale:
            re = 0.0
    return f"{re:.12g}{im:+.12g}i"


def _config_from_args(args) -> QuadratureConfig:
    return QuadratureConfig(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        max_subdivisions=args.max_subdiv,
        halfplane_truncation_radius=args.radius,
    )


def _add_common_flags(sp) -> None:
    sp.add_argument("--rel-tol", type=float, default=1e-6)
    sp.add_argument("--abs-tol", type=float, default=1e-10)
    sp.add_argument("--max-subdiv", type=int, default=2000)
    sp.add_argument("--radius", type=float, default=None,
                    help="explicit half-plane truncation radius")
    sp.add_argument("-o", "--outdir", type=Path, default=None,
                    help="directory for output files")


def _load_measure_arg(path: str) -> Measure:
    try:
        return load_measure(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot load measure {path}: {exc}") from exc


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_apply(args) -> int:
    if not args.point and not args.points:
        raise _UsageError("apply needs -z/--point or --points FILE")
    mu = _load_measure_arg(args.measure)
    try:
        f = parse_function_spec(args.function)
    except ValueError as exc:
        return _usage_error(str(exc))
    cfg = _config_from_args(args)
    if args.quasi:
        mu = pushforward_inverse(mu)
    op = HausdorffOperator(mu, p=args.p, truncation=args.delta)

    def one(z: complex):
        res = apply_with_error(op, f, z, cfg)
        return res.value, res.error_estimate

    if args.points:
        rows = []
        with open(args.points, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                z = parse_complex(line)
                v, e = one(z)
                rows.append((z.real, z.imag, v.real, v.imag, e))
        out = sys.stdout
        close = False
        if args.outdir:
            args.outdir.mkdir(parents=True, exist_ok=True)
            out = open(args.outdir / "apply.csv", "w", encoding="utf-8", newline="")
            close = True
        writer = csv.writer(out)
        writer.writerow(["x", "y", "re", "im", "err"])
        for row in rows:
            writer.writerow([f"{v:.12g}" for v in row])
        if close:
            out.close()
            print(args.outdir / "apply.csv")
        return 0

    z = parse_complex(args.point)
    value, err = one(z)
    print(format_complex(value))
    print(f"error {err:.3g}")
    return 0


def cmd_norm(args) -> int:
    try:
        f = parse_function_spec(args.function)
    except ValueError as exc:
        return _usage_error(str(exc))
    cfg = _config_from_args(args)
    if args.measure:
        mu = _load_measure_arg(args.measure)
        if args.quasi:
            mu = pushforward_inverse(mu)
        op = HausdorffOperator(mu, p=args.p, truncation=args.delta)
        f = as_function(op, f, cfg.tighter())
    res = bergman_norm_p(f, args.p, cfg)
    print(f"{res.value:.12g}")
    print(f"error {res.error_estimate:.3g}")
    return 0 if res.converged else 1


def cmd_moment(args) -> int:
    mu = _load_measure_arg(args.measure)
    cfg = _config_from_args(args)
    alpha = args.alpha if args.alpha is not None else 2.0 / args.p - 1.0
    res = moment(mu, alpha, cfg)
    if res.diverged:
        print("inf")
        return 0
    print(f"{res.value:.12g}")
    print(f"error {res.error_estimate:.3g}")
    return 0


def cmd_classify(args) -> int:
    mu = _load_measure_arg(args.measure)
    verdict = classify_boundedness(mu, args.p)
    print(verdict.value)
    return 0


def cmd_sweep(args) -> int:
    mu = _load_measure_arg(args.measure)
    cfg = _config_from_args(args)
    epsilons = tuple(float(e) for e in args.epsilons.split(","))
    t0 = time.perf_counter()
    sweep = harness.run_sharpness_sweep(mu, args.p, epsilons, cfg,
                                        truncation=args.delta)
    runtime_ms = int(round(1000 * (time.perf_counter() - t0)))
    report = harness.sweep_to_report(sweep, cfg, runtime_ms)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "kind": "sharpness" if args.delta is None else "truncated",
        "p": args.p,
        "delta": args.delta,
        "epsilons": list(sweep.epsilons),
        "ratios": list(sweep.ratios),
        "target": sweep.target,
        "extrapolated": sweep.extrapolated,
        "passed": report.passed,
    }
    outdir = args.outdir or Path(".")
    path = outdir / "sweep.json"
    _write_json(path, payload)
    for eps, ratio in zip(sweep.epsilons, sweep.ratios):
        print(f"eps={eps:g} ratio={ratio:.10g}")
    print(f"extrapolated {sweep.extrapolated:.10g}")
    print(f"target {sweep.target:.10g}")
    print(path)
    return 0 if report.passed else 1


def cmd_plotdata(args) -> int:
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        epsilons = doc["epsilons"]
        ratios = doc["ratios"]
        target = doc["target"]
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        return _usage_error(f"cannot read sweep report {args.report}: {exc}")
    outdir = args.outdir or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "sweep_plot.dat"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# target {target!r}\n")
        for eps, ratio in zip(epsilons, ratios):
            fh.write(f"{eps!r} {ratio!r}\n")
    print(path)
    return 0


_BUILTIN_SUITE = {
    "experiments": [
        {"kind": "gnorm", "lambdas": [1.0], "deltas": [1.0, 2.0], "p": 2.0},
        {"kind": "sharpness", "p": 2.0, "epsilons": [0.2, 0.1, 0.05],
         "measure": {"atoms": [], "segments": [
             {"lo": 1.0, "hi": 2.0,
              "density": {"kind": "const", "params": [1.0]}}]}},
        {"kind": "truncated", "p": 1.0, "delta": 0.25,
         "epsilons": [0.2, 0.1, 0.05],
         "measure": {"atoms": [], "segments": [
             {"lo": 0.0, "hi": "inf",
              "density": {"kind": "exp", "params": [1.0, 1.0]},
              "exp_lo": 0.0, "exp_hi": "-inf"}]}},
        {"kind": "sector", "case": "I", "p": 6.0, "eps": 0.05, "samples": 4000},
        {"kind": "sector", "case": "II", "p": 2.0, "eps": 0.4, "samples": 4000},
        {"kind": "sector", "case": "III", "p": 1.0, "eps": 0.05,
         "theta0": math.pi / 32.0, "samples": 4000},
        {"kind": "boundedness", "ps": [1.0, 2.0], "measures": [
            {"atoms": [], "segments": [
                {"lo": 0.0, "hi": "inf",
                 "density": {"kind": "const", "params": [1.0]},
                 "exp_lo": 0.0, "exp_hi": 0.0}]},
            {"atoms": [{"t": 2.0, "w": 0.5}], "segments": []},
        ]},
        {"kind": "growth", "function": "test:p=2,eps=0.5", "p": 2.0},
        {"kind": "lower_bound", "p": 4.0, "eps": 0.25},
        {"kind": "lower_bound", "p": 2.0, "eps": 0.3},
        {"kind": "lower_bound", "p": 1.0, "eps": 0.2,
         "theta0": math.pi / 32.0},
        {"kind": "feps_norm", "p": 2.0, "epsilons": [0.2, 0.1, 0.05]},
        {"kind": "quasi", "n_samples": 25},
        {"kind": "minkowski", "n_samples": 10},
    ]
}


def _suite_measure(entry, base: Path) -> Measure:
    raw = entry["measure"]
    if isinstance(raw, str):
        return load_measure(base / raw)
    return measure_from_json(raw)


def _run_suite_entry(entry: dict, base: Path, cfg: QuadratureConfig) -> list:
    kind = entry["kind"]
    if kind == "gnorm":
        return harness.run_gnorm_experiment(
            entry["lambdas"], entry["deltas"], entry.get("p", 2.0), cfg
        )
    if kind == "sharpness":
        mu = _suite_measure(entry, base)
        t0 = time.perf_counter()
        sweep = harness.run_sharpness_sweep(
            mu, entry["p"], entry.get("epsilons", harness.DEFAULT_EPSILONS),
            cfg, truncation=entry.get("delta"),
        )
        ms = int(round(1000 * (time.perf_counter() - t0)))
        return [harness.sweep_to_report(sweep, cfg, ms)]
    if kind == "truncated":
        mu = _suite_measure(entry, base)
        return [harness.run_truncated_norm_experiment(
            mu, entry["p"], entry["delta"],
            entry.get("epsilons", harness.DEFAULT_EPSILONS), cfg,
        )]
    if kind == "sector":
        return [harness.run_sector_experiment(
            entry["case"], entry["p"], entry["eps"],
            entry.get("samples", 10_000), theta0=entry.get("theta0"),
            seed=entry.get("seed", 20240801),
        )]
    if kind == "boundedness":
        measures = [measure_from_json(m) if not isinstance(m, str)
                    else load_measure(base / m) for m in entry["measures"]]
        return harness.run_boundedness_matrix(measures, entry["ps"], cfg)
    if kind == "growth":
        f = parse_function_spec(entry["function"])
        return [harness.run_growth_decay_check(f, entry["p"], cfg)]
    if kind == "lower_bound":
        mu = (_suite_measure(entry, base) if "measure" in entry
              else Measure.from_atoms((1.0, 1.0)))
        return [harness.run_lower_bound_experiment(
            mu, entry["p"], entry["eps"], theta0=entry.get("theta0"), cfg=cfg
        )]
    if kind == "feps_norm":
        return harness.run_feps_norm_experiment(
            entry["p"], entry.get("epsilons", (0.2, 0.1, 0.05)), cfg
        )
    if kind == "quasi":
        return [harness.run_quasi_equivalence(entry.get("n_samples", 100),
                                              entry.get("seed", 20240801))]
    if kind == "minkowski":
        return [harness.run_minkowski_samples(entry.get("n_samples", 50),
                                              entry.get("seed", 20240801), cfg)]
    raise ValueError(f"unknown experiment kind {kind!r}")


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    if args.suite:
        try:
            with open(args.suite, "r", encoding="utf-8") as fh:
                suite = json.load(fh)
            experiments = suite["experiments"]
            base = Path(args.suite).resolve().parent
        except (OSError, KeyError, json.JSONDecodeError) as exc:
            return _usage_error(f"cannot read suite config {args.suite}: {exc}")
    else:
        suite = _BUILTIN_SUITE
        experiments = suite["experiments"]
        base = Path(".")

    reports = []
    for entry in experiments:
        t0 = time.perf_counter()
        try:
            reports.extend(_run_suite_entry(entry, base, cfg))
        except ParameterOutOfRange as exc:
            return _usage_error(f"experiment parameters out of range: {exc}")
        except (KeyError, ValueError, TypeError) as exc:
            return _usage_error(f"bad experiment entry {entry!r}: {exc}")
        except NumericsError as exc:
            # a numerically impossible experiment is a failed report, not a crash
            reports.append(harness.VerificationReport(
                experiment=str(entry.get("kind", "unknown")),
                parameters={k: v for k, v in entry.items()
                            if k not in ("measure", "measures")},
                computed=f"error: {exc}",
                expected="experiment completes",
                tolerance=0.0,
                passed=False,
                runtime_ms=int(round(1000 * (time.perf_counter() - t0))),
            ))

    reports.sort(key=lambda r: (r.experiment, json.dumps(r.to_dict()["parameters"],
                                                         sort_keys=True)))
    outdir = args.outdir or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    _write_json(outdir / "reports.json",
                {"schema_version": SCHEMA_VERSION,
                 "reports": [r.to_dict() for r in reports]})
    with open(outdir / "reports.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["experiment", "passed", "computed", "expected",
                         "tolerance", "runtime_ms", "parameters"])
        for r in reports:
            d = r.to_dict()
            writer.writerow([
                d["experiment"], d["passed"], json.dumps(d["computed"]),
                json.dumps(d["expected"]), d["tolerance"], d["runtime_ms"],
                json.dumps(d["parameters"], sort_keys=True),
            ])
    n_failed = sum(1 for r in reports if not r.passed)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.experiment} {json.dumps(r.to_dict()['parameters'], sort_keys=True)}")
    print(f"{len(reports) - n_failed}/{len(reports)} passed")
    print(outdir / "reports.json")
    return 0 if n_failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hausdorff-bergman",
        description="Dilation-average operators on Bergman spaces of the "
                    "upper half-plane: evaluation, norms, verification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("apply", help="evaluate the operator at a point")
    sp.add_argument("-m", "--measure", required=True)
    sp.add_argument("-f", "--function", required=True)
    sp.add_argument("-z", "--point", help="evaluation point a+bi")
    sp.add_argument("--points", help="file with one point per line (batch CSV mode)")
    sp.add_argument("-p", type=float, default=2.0)
    sp.add_argument("--delta", type=float, default=None,
                    help="truncate the measure to [delta, 1/delta]")
    sp.add_argument("--quasi", action="store_true",
                    help="evaluate the adjoint operator instead")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("norm", help="Bergman norm of a function or operator image")
    sp.add_argument("-f", "--function", required=True)
    sp.add_argument("-m", "--measure", default=None)
    sp.add_argument("-p", type=float, default=2.0)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--quasi", action="store_true")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("moment", help="moment integral of a measure")
    sp.add_argument("-m", "--measure", required=True)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("-p", type=float, default=2.0,
                    help="use the norm exponent 2/p - 1 when --alpha is absent")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_moment)

    sp = sub.add_parser("classify", help="boundedness classification")
    sp.add_argument("-m", "--measure", required=True)
    sp.add_argument("-p", type=float, default=2.0)
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("sweep", help="sharpness sweep against the exact norm")
    sp.add_argument("-m", "--measure", required=True)
    sp.add_argument("-p", type=float, default=2.0)
    sp.add_argument("--epsilons", default="0.2,0.1,0.05,0.025")
    sp.add_argument("--delta", type=float, default=None)
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", default=None,
                    help="suite config JSON (default: built-in suite)")
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("plotdata", help="plot-ready data from a sweep report")
    sp.add_argument("--report", required=True)
    _add_common_flags(sp)
    sp.set_defaults(func=cmd_plotdata)

    return ap


def _merge_point_values(argv):
    """Join '-z -5+2i' into '-z=-5+2i' so argparse does not read a complex
    value with a negative real part as an option string."""
    merged = []
    it = iter(argv)
    for token in it:
        if token in ("-z", "--point"):
            value = next(it, None)
            if value is None:
                merged.append(token)
            elif value.startswith("-") and _COMPLEX_RE.match(value.strip()):
                merged.append(f"--point={value}")
            else:
                merged.extend([token, value])
        else:
            merged.append(token)
    return merged


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_point_values(list(argv)))
    try:
        return args.func(args)
    except NumericsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _UsageError as exc:
        return _usage_error(str(exc))
    except ValueError as exc:
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
