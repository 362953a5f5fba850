"""Command-line front end: parse samples, run a check, write a report.

Exit codes: 0 consistent (or successful synthesis), 1 inconsistent (or a
failed synthesis audit), 2 inconclusive, 3 input or configuration error.
Every flag can also be set through an environment variable with the
HEISWHIT_ prefix (flag --delta-ratio becomes HEISWHIT_DELTA_RATIO); the
flag wins when both are present.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass

from .divdiff import SampledCurve
from .errors import (
    DuplicateNodeError,
    HeisWhitError,
    NonFiniteError,
    ParseError,
    SynthesisDefectError,
)
from .horizontal import (
    check_c1,
    check_cm,
    check_cm_via_w,
    finiteness_check,
    synthesize,
)
from .profiles import ThresholdPolicy
from .whitney import ModulusFn

MODES = ("check-c1", "check-cm", "check-cm-w", "synthesize", "finiteness")
EXIT_BY_STATUS = {"consistent": 0, "inconsistent": 1, "inconclusive": 2}
ENV_PREFIX = "HEISWHIT_"


@dataclass
class RunConfig:
    """Everything one invocation needs; mirrors the CLI flags."""

    mode: str
    input_path: str
    m: int = 1
    tol: float = None
    window: int = None
    delta_ratio: float = 0.5
    omega: str = "power:1:1"
    report_path: str = None
    grid_out: str = None
    plot_out: str = None
    grid_samples: int = 1000
    full_enum: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParseError(f"unknown mode {self.mode!r}; pick one of {MODES}")
        if self.m < 1:
            raise ParseError("m must be at least 1")
        if self.grid_samples < 2:
            raise ParseError("grid-samples must be at least 2")
        if not (0.0 < self.delta_ratio < 1.0):
            raise ParseError("delta-ratio must lie in (0, 1)")

    def policy(self):
        if self.tol is None:
            return ThresholdPolicy()
        return ThresholdPolicy(rel_tol=self.tol)

    def modulus(self):
        return parse_omega(self.omega)


def parse_omega(spec):
    """Parse a modulus spec of the form power:<c>:<s>."""
    parts = spec.split(":")
    if parts[0] != "power" or len(parts) != 3:
        raise ParseError(f"unsupported omega spec {spec!r}; use power:<c>:<s>")
    try:
        coeff, exponent = float(parts[1]), float(parts[2])
    except ValueError as exc:
        raise ParseError(f"bad omega numbers in {spec!r}") from exc
    try:
        return ModulusFn("power", coeff, exponent)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _rows_to_curve(rows):
    seen = {}
    for t, x, y, z in rows:
        if any(not math.isfinite(v) for v in (t, x, y, z)):
            raise NonFiniteError(f"non-finite sample at t={t}")
        if t in seen:
            raise DuplicateNodeError(f"duplicate node t={t}")
        seen[t] = (x, y, z)
    rows = sorted((t, *p) for t, p in seen.items())
    # A single-row file parses fine; SampledCurve raises TooFewNodes.
    return SampledCurve.from_rows(rows)


def parse_input(path):
    """Load samples from a .csv (header t,x,y,z) or .json file."""
    curve, _ = load_input(path)
    return curve


def load_input(path):
    """Like parse_input but also returns the file's own order hint, if any."""
    if path.endswith(".csv"):
        return _load_csv(path), None
    if path.endswith(".json"):
        return _load_json(path)
    raise ParseError(f"cannot tell the format of {path!r}; use .csv or .json")


def _load_csv(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        if [c.strip().lower() for c in header] != ["t", "x", "y", "z"]:
            raise ParseError(f"{path}: header must be t,x,y,z")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 fields")
            try:
                rows.append(tuple(float(c) for c in row))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: bad number") from None
    return _rows_to_curve(rows)


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "samples" not in doc:
        raise ParseError(f"{path}: expected an object with a 'samples' array")
    rows = []
    for i, rec in enumerate(doc["samples"]):
        if not isinstance(rec, dict) or any(k not in rec for k in "txyz"):
            raise ParseError(f"{path}: samples[{i}] needs keys t, x, y, z")
        try:
            rows.append(
                tuple(float(rec[k]) for k in "txyz")
            )
        except (TypeError, ValueError):
            raise ParseError(f"{path}: samples[{i}] holds a bad number") from None
    m_hint = doc.get("m")
    if m_hint is not None and (not isinstance(m_hint, int) or m_hint < 1):
        raise ParseError(f"{path}: 'm' must be a positive integer")
    return _rows_to_curve(rows), m_hint


def dump_samples_json(curve, path, m=None):
    """Write samples as JSON that parse_input reads back bit-exactly."""
    doc = {
        "samples": [
            {"t": t, "x": p.x, "y": p.y, "z": p.z}
            for t, p in zip(curve.nodes, curve.points)
        ]
    }
    if m is not None:
        doc["m"] = m
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_plot_data(profiles, path):
    """Write profiles as CSV rows delta,value,series.

    Ordering is deterministic: series name, then delta descending.  An
    empty profile collection is an error and writes nothing.
    """
    rows = []
    for name in sorted(profiles):
        prof = profiles[name]
        series = prof.name or name
        for d, v in prof.points:
            rows.append((d, v, series))
    if not rows:
        raise ValueError("no profile points to emit")
    rows.sort(key=lambda r: (r[2], -r[0]))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["delta", "value", "series"])
    for d, v, series in rows:
        writer.writerow([repr(d), repr(v), series])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def _profile_dict(prof, policy):
    status, slope = policy.classify(prof)
    return {
        "points": [[d, v] for d, v in prof.points],
        "slope": slope,
        "status": status,
        "terminal": prof.terminal,
    }


def _verdict_report(verdict):
    return {
        "status": verdict.status,
        "profiles": {
            name: {
                "points": [[d, v] for d, v in prof.points],
                "slope": verdict.slopes[name],
                "status": verdict.statuses[name],
                "terminal": prof.terminal,
            }
            for name, prof in verdict.profiles.items()
        },
        "constants": verdict.constants,
        "thresholds": {
            "slope_consistent": verdict.policy.slope_consistent,
            "slope_flat": verdict.policy.slope_flat,
            "rel_tol": verdict.policy.rel_tol,
            "zero_tol": verdict.policy.zero_tol,
            "deadband": verdict.policy.deadband,
        },
    }


def _write_grid(curve_obj, config):
    import numpy as np

    lo, hi = curve_obj.nodes[0], curve_obj.nodes[-1]
    ts = np.linspace(lo, hi, config.grid_samples)
    fv, gv = curve_obj.f(ts), curve_obj.g(ts)
    dfv, dgv = curve_obj.f(ts, 1), curve_obj.g(ts, 1)
    hv, dhv = curve_obj.h(ts), curve_obj.h(ts, 1)
    defect = np.abs(dhv - 2.0 * (dfv * gv - fv * dgv))
    with open(config.grid_out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "x", "y", "z", "defect"])
        for i in range(len(ts)):
            writer.writerow(
                [repr(float(ts[i])), repr(float(fv[i])), repr(float(gv[i])),
                 repr(float(hv[i])), repr(float(defect[i]))]
            )


def run(config):
    """Execute one configured run; returns the process exit code."""
    timings = {}
    report = {"mode": config.mode, "m": config.m}
    try:
        t0 = time.perf_counter()
        curve, m_hint = load_input(config.input_path)
        timings["parse_s"] = time.perf_counter() - t0
        m = m_hint if m_hint is not None else config.m
        report["m"] = m
        policy = config.policy()

        t0 = time.perf_counter()
        plot_profiles = None
        if config.mode == "check-c1":
            verdict = check_c1(curve, policy=policy, ratio=config.delta_ratio)
            report.update(_verdict_report(verdict))
            code = EXIT_BY_STATUS[verdict.status]
            plot_profiles = verdict.profiles
        elif config.mode == "check-cm":
            verdict = check_cm(
                curve, m, window=config.window, policy=policy,
                ratio=config.delta_ratio, full_enum=config.full_enum,
            )
            report.update(_verdict_report(verdict))
            code = EXIT_BY_STATUS[verdict.status]
            plot_profiles = verdict.profiles
        elif config.mode == "check-cm-w":
            verdict = check_cm_via_w(
                curve, m, window=config.window, policy=policy,
                ratio=config.delta_ratio, full_enum=config.full_enum,
            )
            report.update(_verdict_report(verdict))
            code = EXIT_BY_STATUS[verdict.status]
            plot_profiles = verdict.profiles
        elif config.mode == "finiteness":
            rep = finiteness_check(
                curve, m, config.modulus(), window=config.window,
                policy=policy, full_enum=config.full_enum or None,
                ratio=config.delta_ratio,
            )
            report["status"] = rep.status
            report["constants"] = {
                "M_hat": rep.m_hat,
                "C2_hat": rep.c2_hat,
                "subsets_scanned": rep.subsets_scanned,
            }
            report["worst_subset"] = list(rep.worst_subset)
            report["worst_pair"] = list(rep.worst_pair)
            report["profiles"] = {
                "finiteness_ratio": _profile_dict(rep.profile, policy)
            }
            code = EXIT_BY_STATUS[rep.status]
            plot_profiles = {"finiteness_ratio": rep.profile}
        else:  # synthesize
            try:
                curve_obj = synthesize(
                    curve, m, window=config.window, policy=policy,
                    ratio=config.delta_ratio, full_enum=config.full_enum,
                )
            except SynthesisDefectError as exc:
                report["status"] = "defect"
                report["error"] = str(exc)
                code = 1
            else:
                report["status"] = "synthesized"
                report["defect"] = curve_obj.defect
                report["bump_amplitudes"] = list(curve_obj.bump_amplitudes)
                report["profiles"] = {
                    f"modulus_{k}": _profile_dict(p, policy)
                    for k, p in curve_obj.modulus.items()
                }
                plot_profiles = curve_obj.modulus
                code = 0
                if config.grid_out:
                    _write_grid(curve_obj, config)
        timings["compute_s"] = time.perf_counter() - t0

        if config.plot_out and plot_profiles:
            emit_plot_data(plot_profiles, config.plot_out)
    except (HeisWhitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    report["timings"] = timings
    report["exit_code"] = code
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.report_path:
        with open(config.report_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _env_default(name, fallback=None):
    return os.environ.get(ENV_PREFIX + name, fallback)


def _env_flag(name):
    val = os.environ.get(ENV_PREFIX + name)
    return val is not None and val.strip().lower() in ("1", "true", "yes", "on")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heiswhit",
        description="Check sampled curves for horizontal C^m interpolants, "
        "synthesize the interpolant, or scan finiteness constants.",
    )
    parser.add_argument("--mode", choices=MODES, default=_env_default("MODE"),
                        required=_env_default("MODE") is None)
    parser.add_argument("--input", default=_env_default("INPUT"),
                        required=_env_default("INPUT") is None,
                        help="sample file (.csv with header t,x,y,z, or .json)")
    parser.add_argument("--m", type=int, default=int(_env_default("M", "1")))
    parser.add_argument("--tol", type=float,
                        default=_env_default("TOL") and float(_env_default("TOL")))
    parser.add_argument("--window", type=int,
                        default=_env_default("WINDOW") and int(_env_default("WINDOW")))
    parser.add_argument("--delta-ratio", type=float,
                        default=float(_env_default("DELTA_RATIO", "0.5")))
    parser.add_argument("--omega", default=_env_default("OMEGA", "power:1:1"),
                        help="modulus spec power:<c>:<s>")
    parser.add_argument("--report", default=_env_default("REPORT"),
                        help="JSON report path (default: stdout)")
    parser.add_argument("--grid-out", default=_env_default("GRID_OUT"),
                        help="CSV grid export for synthesize mode")
    parser.add_argument("--plot-out", default=_env_default("PLOT_OUT"),
                        help="CSV profile export (delta,value,series)")
    parser.add_argument("--grid-samples", type=int,
                        default=int(_env_default("GRID_SAMPLES", "1000")))
    parser.add_argument("--full-enum", action="store_true",
                        default=_env_flag("FULL_ENUM"))
    return parser


def config_from_args(argv=None):
    args = build_parser().parse_args(argv)
    return RunConfig(
        mode=args.mode,
        input_path=args.input,
        m=args.m,
        tol=args.tol,
        window=args.window,
        delta_ratio=args.delta_ratio,
        omega=args.omega,
        report_path=args.report,
        grid_out=args.grid_out,
        plot_out=args.plot_out,
        grid_samples=args.grid_samples,
        full_enum=args.full_enum,
    )


def main(argv=None):
    try:
        config = config_from_args(argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
