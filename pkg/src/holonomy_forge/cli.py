"""Command-line interface.

Subcommands:
  spectrum   singular-value layout and algebraic sanity of a matrix
  holonomy   closed-form holonomy of one curve, checked against the lift ODE
  sweep      circle/ellipse family over a list of radii, one row per radius
  verify     randomized self-test over matrices and curves, worst residuals

Matrix JSON is {"rows": m, "cols": n, "re": [...], "im": [...]} row-major;
curve JSON is {"kind": "circle"|"ellipse"|"polar_samples", ...}.  --input and
--curve accept a file path or the JSON text itself.  Output is JSON (default)
or CSV; every numeric claim is reported with its residual and threshold.
Exit codes: 0 ok, 2 invalid input, 3 ill-conditioned, 4 numerical failure.
HOLONOMY_FORGE_THREADS caps the sweep worker pool.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import os
import secrets
import sys
import time

import numpy as np

from .algebra import Signature, is_pseudo_unitary, matrix_from_json
from .config import DEFAULTS, RunConfig
from .curves import ClosedCurve, circle, curve_from_json, ellipse, star
from .errors import HolonomyForgeError, IllConditionedError, NumericalError
from .holonomy import holonomy, span_membership_residual, vandermonde_system
from .surface import SurfaceSpec, build_surface, exp_surface_point, totally_geodesic_check
from .transport import compare_holonomies, integrate_lift

SCHEMA_VERSION = 1

_EXIT_INVALID = 2
_EXIT_ILL_CONDITIONED = 3
_EXIT_NUMERICAL = 4


def _exit_code(exc: HolonomyForgeError) -> int:
    if isinstance(exc, IllConditionedError):
        return _EXIT_ILL_CONDITIONED
    if isinstance(exc, NumericalError):
        return _EXIT_NUMERICAL
    return _EXIT_INVALID


def _load_json_arg(text: str, what: str) -> dict:
    """Accept inline JSON (starts with '{') or a path to a JSON file."""
    text = text.strip()
    if text.startswith("{"):
        raw = text
    else:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise HolonomyForgeError(f"cannot read {what} file {text!r}: {exc}") from exc
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise HolonomyForgeError(f"{what} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise HolonomyForgeError(f"{what} JSON must be an object")
    return obj


def _load_surface(args) -> SurfaceSpec:
    if not args.input:
        raise HolonomyForgeError("--input is required")
    x = matrix_from_json(_load_json_arg(args.input, "matrix"))
    sig = Signature(n=x.shape[1], m=x.shape[0])
    return build_surface(sig, x, group_tol=args.group_tol)


def _load_curve(args) -> ClosedCurve:
    if not args.curve:
        raise HolonomyForgeError("--curve is required")
    return curve_from_json(_load_json_arg(args.curve, "curve"), samples=args.samples)


def _worker_count() -> int:
    raw = os.environ.get("HOLONOMY_FORGE_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        count = int(raw)
    except ValueError as exc:
        raise HolonomyForgeError(
            f"HOLONOMY_FORGE_THREADS must be a positive integer, got {raw!r}"
        ) from exc
    if count < 1:
        raise HolonomyForgeError("HOLONOMY_FORGE_THREADS must be a positive integer")
    return count


def _check(name: str, residual: float, threshold: float) -> dict:
    return {
        "name": name,
        "residual": float(residual),
        "threshold": float(threshold),
        "pass": bool(residual <= threshold),
    }


def _flatten_report(obj, prefix="") -> list[tuple[str, object]]:
    rows: list[tuple[str, object]] = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            rows.extend(_flatten_report(obj[key], f"{prefix}{key}." if prefix else f"{key}."))
    elif isinstance(obj, (list, tuple)):
        for i, item in enumerate(obj):
            rows.extend(_flatten_report(item, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _emit(report: dict, fmt: str, table: list[dict] | None = None, columns: list[str] | None = None):
    """Print the report: JSON verbatim, or CSV (table rows, else key/value)."""
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
        return
    buf = io.StringIO()
    if table is not None:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(columns) + ["schema"])
        for row in table:
            writer.writerow([row.get(c, "") for c in columns] + [SCHEMA_VERSION])
    else:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value", "schema"])
        for key, value in _flatten_report(report):
            writer.writerow([key, value, SCHEMA_VERSION])
    sys.stdout.write(buf.getvalue())


def cmd_spectrum(args) -> int:
    s = _load_surface(args)
    checks = [
        _check("sigma_square_sum", abs(float(np.sum(s.sigma**2)) - 1.0), 1e-12),
        _check(
            "svd_reconstruction",
            float(
                np.linalg.norm(
                    s.svd.left[:, : min(s.sig.n, s.sig.m)]
                    @ np.diag(s.svd.diag)
                    @ s.svd.right[:, : min(s.sig.n, s.sig.m)].conj().T
                    - s.w
                )
            )
            / max(1e-300, float(np.linalg.norm(s.w))),
            1e-10,
        ),
    ]
    geo = totally_geodesic_check(s)
    cond = vandermonde_system(s).cond
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "surface": s.to_json(),
        "distinct_values": s.p,
        "mode_matrix_cond": cond,
        "totally_geodesic": {
            "ok": geo.ok,
            "residual": geo.residual,
            "threshold": DEFAULTS.geodesic_tol,
            "bracket_residual": geo.bracket_residual,
        },
        "checks": checks,
    }
    _emit(report, args.format)
    return 0


def cmd_holonomy(args) -> int:
    s = _load_surface(args)
    curve = _load_curve(args)
    run_oracle = args.ode_steps != 0
    if run_oracle:
        RunConfig(samples=curve.samples, ode_steps=args.ode_steps, group_tol=args.group_tol)
    else:
        RunConfig(samples=curve.samples, group_tol=args.group_tol)
    result = holonomy(s, curve)
    unitary_defect = float(
        np.linalg.norm(result.holonomy.conj().T @ result.holonomy - np.eye(s.sig.n))
    )
    anti_defect = float(np.linalg.norm(result.psi + result.psi.conj().T))
    checks = [
        _check("trace_identity", result.trace_residual, DEFAULTS.trace_tol),
        _check("span_membership", span_membership_residual(s, result.psi), DEFAULTS.span_tol),
        _check("psi_anti_hermitian", anti_defect, DEFAULTS.anti_hermitian_tol),
        _check("holonomy_unitary", unitary_defect, DEFAULTS.unitary_tol),
    ]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "holonomy",
        "surface": s.to_json(),
        "curve": curve.to_json(),
        "result": result.to_json(),
    }
    if run_oracle:
        trace = integrate_lift(s, curve, steps=args.ode_steps)
        checks.append(_check("ode_endpoint_gap", compare_holonomies(result, trace), DEFAULTS.oracle_tol))
        checks.append(_check("transport_drift", trace.unitarity_drift, DEFAULTS.drift_tol))
        report["transport"] = trace.to_json()
    report["checks"] = checks
    _emit(report, args.format)
    return 0 if all(c["pass"] for c in checks) else _EXIT_NUMERICAL


_SWEEP_COLUMNS = [
    "R",
    "area0",
    "area1",
    "trace_over_2i",
    "trace_residual",
    "oracle_residual",
    "status",
]


def _sweep_row(s: SurfaceSpec, args, radius: float) -> dict:
    row: dict = {"R": radius, "status": "ok"}
    try:
        if args.curve_kind == "ellipse":
            curve = ellipse(radius, args.eps, samples=args.samples)
        else:
            curve = circle(radius, samples=args.samples)
        result = holonomy(s, curve)
        row["area0"] = result.area0
        row["area1"] = result.area1
        row["trace_over_2i"] = float((np.trace(result.psi) / 2j).real)
        row["trace_residual"] = result.trace_residual
        if args.ode_steps != 0:
            trace = integrate_lift(s, curve, steps=args.ode_steps)
            row["oracle_residual"] = compare_holonomies(result, trace)
        else:
            row["oracle_residual"] = None
    except HolonomyForgeError as exc:
        row["status"] = exc.code
        row["message"] = str(exc)
    return row


def cmd_sweep(args) -> int:
    s = _load_surface(args)
    radii = [float(tok) for tok in args.radii.split(",") if tok.strip()]
    rows: list[dict] = []
    if radii:
        with concurrent.futures.ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            rows = list(pool.map(lambda radius: _sweep_row(s, args, radius), radii))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "sweep",
        "surface": s.to_json(),
        "curve_kind": args.curve_kind,
        "eps": args.eps if args.curve_kind == "ellipse" else None,
        "rows": rows,
    }
    _emit(report, args.format, table=rows, columns=_SWEEP_COLUMNS)
    failed = [row for row in rows if row["status"] != "ok"]
    if rows and len(failed) == len(rows):
        first = failed[0]["status"]
        if first == "ill_conditioned":
            return _EXIT_ILL_CONDITIONED
        if first == "numerical":
            return _EXIT_NUMERICAL
        return _EXIT_INVALID
    return 0


def _random_case(rng: np.random.Generator, samples: int):
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 5))
    x = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    x *= rng.uniform(0.3, 3.0) / np.linalg.norm(x)
    radius = float(rng.uniform(0.2, 2.0))
    kind = int(rng.integers(0, 3))
    if kind == 0:
        curve = circle(radius, samples=samples)
    elif kind == 1:
        curve = ellipse(radius, float(rng.uniform(0.0, 0.5)), samples=samples)
    else:
        curve = star(radius, float(rng.uniform(0.0, 0.5)), lobes=3, samples=samples)
    return Signature(n=n, m=m), x, curve


def cmd_verify(args) -> int:
    started = time.perf_counter()
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    rng = np.random.default_rng(seed)
    RunConfig(samples=args.samples, ode_steps=args.ode_steps, group_tol=args.group_tol)
    worst = {
        "trace_identity": 0.0,
        "span_membership": 0.0,
        "ode_endpoint_gap": 0.0,
        "transport_drift": 0.0,
        "frame_pseudo_unitarity": 0.0,
        "svd_reconstruction": 0.0,
        "sigma_square_sum": 0.0,
    }
    failures: list[dict] = []
    for case in range(args.cases):
        sig, x, curve = _random_case(rng, args.samples)
        try:
            s = build_surface(sig, x, group_tol=args.group_tol)
            result = holonomy(s, curve)
            trace = integrate_lift(s, curve, steps=args.ode_steps)
        except HolonomyForgeError as exc:
            failures.append({"case": case, "error": exc.code, "message": str(exc)})
            continue
        a = min(sig.n, sig.m)
        recon = s.svd.left[:, :a] @ np.diag(s.svd.diag) @ s.svd.right[:, :a].conj().T
        worst["svd_reconstruction"] = max(
            worst["svd_reconstruction"],
            float(np.linalg.norm(recon - s.w)) / max(1e-300, float(np.linalg.norm(s.w))),
        )
        worst["sigma_square_sum"] = max(
            worst["sigma_square_sum"], abs(float(np.sum(s.sigma**2)) - 1.0)
        )
        worst["trace_identity"] = max(worst["trace_identity"], result.trace_residual)
        worst["span_membership"] = max(
            worst["span_membership"], span_membership_residual(s, result.psi)
        )
        worst["ode_endpoint_gap"] = max(
            worst["ode_endpoint_gap"], compare_holonomies(result, trace)
        )
        worst["transport_drift"] = max(worst["transport_drift"], trace.unitarity_drift)
        frame_worst = 0.0
        for t, u in zip(trace.times[:: max(1, len(trace.times) // 8)],
                        trace.u[:: max(1, len(trace.times) // 8)]):
            z = float(curve.r(t)) * np.exp(1j * float(curve.theta(t)))
            lifted = exp_surface_point(s, z).copy()
            lifted[:, : sig.n] = lifted[:, : sig.n] @ u
            frame_worst = max(frame_worst, is_pseudo_unitary(sig, lifted).residual)
        worst["frame_pseudo_unitarity"] = max(worst["frame_pseudo_unitarity"], frame_worst)
    thresholds = {
        "trace_identity": DEFAULTS.trace_tol,
        "span_membership": DEFAULTS.span_tol,
        "ode_endpoint_gap": DEFAULTS.oracle_tol,
        "transport_drift": DEFAULTS.drift_tol,
        "frame_pseudo_unitarity": 1e-8,
        "svd_reconstruction": 1e-10,
        "sigma_square_sum": 1e-12,
    }
    checks = [_check(name, worst[name], thresholds[name]) for name in sorted(worst)]
    ok = not failures and all(c["pass"] for c in checks)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "seed": int(seed),
        "cases": args.cases,
        "failures": failures,
        "checks": checks,
        "all_pass": ok,
        "elapsed_seconds": round(time.perf_counter() - started, 3),
    }
    _emit(report, args.format)
    return 0 if ok else _EXIT_NUMERICAL


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="matrix JSON (path or inline)")
    common.add_argument("--curve", help="curve JSON (path or inline)")
    common.add_argument("--samples", type=int, default=DEFAULTS.samples,
                        help="quadrature nodes per curve (min 64)")
    common.add_argument("--ode-steps", type=int, default=DEFAULTS.ode_steps, dest="ode_steps",
                        help="transport integrator steps; 0 skips the transport check")
    common.add_argument("--group-tol", type=float, default=DEFAULTS.group_tol, dest="group_tol",
                        help="relative threshold for merging singular values")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (verify)")

    parser = argparse.ArgumentParser(
        prog="holonomy-forge",
        description="holonomy of horizontally lifted closed curves over matrix surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common],
                   help="singular-value layout and algebraic checks")
    sub.add_parser("holonomy", parents=[common],
                   help="closed-form holonomy of one curve plus the ODE check")
    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="radius sweep with one table row per curve")
    p_sweep.add_argument("--radii", default="0.25,0.5,0.75,1.0,1.25,1.5,1.75,2.0",
                         help="comma-separated list of radii")
    p_sweep.add_argument("--curve-kind", choices=("circle", "ellipse"), default="circle",
                         dest="curve_kind")
    p_sweep.add_argument("--eps", type=float, default=0.25,
                         help="ellipse radial modulation depth")
    p_verify = sub.add_parser("verify", parents=[common],
                              help="randomized end-to-end self-test")
    p_verify.add_argument("--cases", type=int, default=25)
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "holonomy": cmd_holonomy,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except HolonomyForgeError as exc:
        sys.stderr.write(
            json.dumps({"error": exc.code, "message": str(exc)}, sort_keys=True) + "\n"
        )
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
