"""Command-line front end: scan data and verification reports as CSV or JSON.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Iterable, Sequence

import numpy as np

from . import __version__
from .duality import duality_report
from .entropy import EntropyIndex, critical_indices, delta_r, normalized_renyi
from .errors import BoundConsistencyError, DomainError
from .hilbert import max_oracle_deviation
from .majorization import (
    Verdict,
    attainability_gap,
    closed_form_bounds,
    compare,
    compute_bound_vector,
    joint_vs_intrinsic,
    ordered_family_vectors,
    purity_threshold_joint_vs_intrinsic,
)
from .statistics import MeasurementConfig, StatisticsKind, as_prob_vec

KINDS = [k.value for k in StatisticsKind]
BOUND_TOL = 1e-6
THRESHOLD_TOL = 1e-9
DUALITY_TOL = 1e-12

NAMED_VECTORS = (
    "lambda-tilde",
    "mu-tilde",
    "lambda-tilde-prime",
    "mu-tilde-prime",
    "lambda",
    "mu",
    "omega",
    "omega-tilde",
    "omega-tilde-prime",
)


# -- output --------------------------------------------------------------------


def _format_value(value: Any, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{precision}g")
    return str(value)


def _json_value(value: Any, precision: int) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        return float(format(x, f".{precision}g")) if math.isfinite(x) else str(x)
    return value


def emit(rows: Iterable[dict], columns: Sequence[str], args, out=None) -> None:
    out = out or sys.stdout
    rows = list(rows)
    if args.format == "json":
        records = [{c: _json_value(r.get(c), args.precision) for c in columns} for r in rows]
        out.write(json.dumps(records, indent=2) + "\n")
        return
    out.write(",".join(columns) + "\n")
    for r in rows:
        out.write(",".join(_format_value(r.get(c), args.precision) for c in columns) + "\n")


# -- argument helpers -------------------------------------------------------------


def _angle_in(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _angle_out(args, value: float) -> float:
    return math.degrees(value) if args.degrees else value


def _config(args) -> MeasurementConfig:
    if args.delta is None:
        return MeasurementConfig(math.pi / 4)
    return MeasurementConfig(_angle_in(args, args.delta))


def _is_balanced(cfg: MeasurementConfig) -> bool:
    return abs(cfg.delta - math.pi / 4) <= 1e-15


def _alpha(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value) or value < 0:
        raise argparse.ArgumentTypeError(f"entropic index must be >= 0, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text!r}")
    return value


def _named_vector(name: str, cfg: MeasurementConfig, smag: float) -> np.ndarray:
    kinds = {
        "lambda-tilde": (StatisticsKind.JOINT, 0),
        "mu-tilde": (StatisticsKind.JOINT, 1),
        "lambda-tilde-prime": (StatisticsKind.MARGINAL_PRODUCT, 0),
        "mu-tilde-prime": (StatisticsKind.MARGINAL_PRODUCT, 1),
        "lambda": (StatisticsKind.INTRINSIC_PRODUCT, 0),
        "mu": (StatisticsKind.INTRINSIC_PRODUCT, 1),
    }
    if name in kinds:
        kind, which = kinds[name]
        return ordered_family_vectors(kind, smag, cfg)[which]
    kind = {
        "omega-tilde": StatisticsKind.JOINT,
        "omega-tilde-prime": StatisticsKind.MARGINAL_PRODUCT,
        "omega": StatisticsKind.INTRINSIC_PRODUCT,
    }[name]
    if _is_balanced(cfg):
        return closed_form_bounds().of(kind)
    return compute_bound_vector(kind, cfg)


def _parse_vector(text: str, cfg: MeasurementConfig, smag: float) -> np.ndarray:
    if text in NAMED_VECTORS:
        return _named_vector(text, cfg, smag)
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise DomainError(f"cannot parse vector {text!r}; use comma-separated numbers or one of {', '.join(NAMED_VECTORS)}")
    return as_prob_vec(values)


# -- commands ------------------------------------------------------------------


def cmd_scan_theta(args) -> int:
    cfg = _config(args)
    kind = StatisticsKind(args.kind)
    thetas = np.linspace(0.0, 2 * math.pi, args.points)
    columns = ["theta"] + [f"norm_alpha_{a:g}" for a in args.alpha]
    curves = [normalized_renyi(kind, EntropyIndex(a), cfg, args.smag, thetas) for a in args.alpha]
    rows = []
    for i, t in enumerate(thetas):
        row = {"theta": _angle_out(args, float(t))}
        for name, curve in zip(columns[1:], curves):
            row[name] = float(curve[i])
        rows.append(row)
    emit(rows, columns, args)
    return 0


def cmd_delta_r(args) -> int:
    lo, hi, step = args.alpha_range
    if not (0.0 <= lo < hi) or step <= 0.0:
        raise DomainError(f"invalid alpha range LO={lo:g} HI={hi:g} STEP={step:g}; need 0 <= LO < HI, STEP > 0")
    cfg = _config(args)
    n = int(math.floor((hi - lo) / step + 1e-9))
    columns = ["alpha", "dR_joint", "dR_marginal_product", "dR_intrinsic_product"]
    rows = []
    for i in range(1, n + 1):
        a = lo + i * step
        row = {"alpha": a}
        for kind, col in zip(StatisticsKind, columns[1:]):
            row[col] = delta_r(kind, EntropyIndex(a), cfg, args.smag)
        rows.append(row)
    emit(rows, columns, args)
    return 0


def cmd_critical_alpha(args) -> int:
    cfg = _config(args)
    kinds = [StatisticsKind(args.kind)] if args.kind else list(StatisticsKind)
    columns = ["kind", "root_index", "alpha", "sign_below", "sign_above", "extreme_representative"]
    rows = []
    for kind in kinds:
        report = critical_indices(kind, cfg, args.smag, (0.0, args.alpha_max))
        for i, root in enumerate(report.roots):
            rows.append(
                {
                    "kind": kind.value,
                    "root_index": i + 1,
                    "alpha": root,
                    "sign_below": report.sign_pattern[i],
                    "sign_above": report.sign_pattern[i + 1],
                    "extreme_representative": report.extreme_representative,
                }
            )
    emit(rows, columns, args)
    return 0


def cmd_bounds(args) -> int:
    cfg = _config(args)
    balanced = _is_balanced(cfg)
    closed = closed_form_bounds() if balanced else None
    try:
        omegas = {k: compute_bound_vector(k, cfg) for k in StatisticsKind}
    except BoundConsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    partner = {
        StatisticsKind.JOINT: StatisticsKind.MARGINAL_PRODUCT,
        StatisticsKind.MARGINAL_PRODUCT: StatisticsKind.INTRINSIC_PRODUCT,
        StatisticsKind.INTRINSIC_PRODUCT: StatisticsKind.JOINT,
    }
    columns = (
        ["kind"]
        + [f"omega_{i}" for i in range(1, 5)]
        + [f"closed_{i}" for i in range(1, 5)]
        + ["max_deviation", "attainability_gap", "compared_with", "verdict", "witness"]
    )
    rows = []
    ok = True
    for kind, omega in omegas.items():
        row: dict[str, Any] = {"kind": kind.value}
        for i, v in enumerate(omega, 1):
            row[f"omega_{i}"] = float(v)
        if closed is not None:
            ref = closed.of(kind)
            for i, v in enumerate(ref, 1):
                row[f"closed_{i}"] = float(v)
            row["max_deviation"] = float(np.max(np.abs(omega - ref)))
            ok &= row["max_deviation"] <= BOUND_TOL
        gap = attainability_gap(kind, cfg, omega)
        row["attainability_gap"] = gap
        ok &= gap > 0.0
        other = partner[kind]
        rel = compare(omega, omegas[other])
        row["compared_with"] = other.value
        row["verdict"] = rel.verdict.value
        row["witness"] = "" if rel.witness is None else f"{rel.witness[0]};{rel.witness[1]}"
        rows.append(row)
    emit(rows, columns, args)
    return 0 if ok else 1


def cmd_compare(args) -> int:
    cfg = _config(args)
    p = _parse_vector(args.p, cfg, args.smag)
    q = _parse_vector(args.q, cfg, args.smag)
    rel = compare(p, q, args.tol)
    columns = ["p", "q", "verdict", "witness_k1", "witness_k2"]
    row = {
        "p": args.p if args.p in NAMED_VECTORS else ";".join(_format_value(float(v), args.precision) for v in p),
        "q": args.q if args.q in NAMED_VECTORS else ";".join(_format_value(float(v), args.precision) for v in q),
        "verdict": rel.verdict.value,
        "witness_k1": None if rel.witness is None else rel.witness[0],
        "witness_k2": None if rel.witness is None else rel.witness[1],
    }
    emit([row], columns, args)
    return 0


def cmd_duality(args) -> int:
    cfg = _config(args)
    columns = ["theta", "D", "V", "P", "sum_sq"]
    rows = []
    ok = True
    for t in np.linspace(0.0, math.pi, args.points):
        rep = duality_report(float(t), cfg)
        ok &= abs(rep.sum_sq - 1.0) <= DUALITY_TOL
        rows.append({"theta": _angle_out(args, float(t)), "D": rep.D, "V": rep.V, "P": rep.P, "sum_sq": rep.sum_sq})
    emit(rows, columns, args)
    return 0 if ok else 1


def cmd_oracle_check(args) -> int:
    joint_dev, marg_dev = max_oracle_deviation(args.trials, args.seed)
    passed = joint_dev <= args.tol and marg_dev <= args.tol
    columns = ["trials", "seed", "tol", "max_joint_deviation", "max_marginal_deviation", "status"]
    row = {
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "max_joint_deviation": joint_dev,
        "max_marginal_deviation": marg_dev,
        "status": "pass" if passed else "fail",
    }
    emit([row], columns, args)
    return 0 if passed else 1


def cmd_threshold(args) -> int:
    t = purity_threshold_joint_vs_intrinsic()
    exact = 2 * (math.sqrt(2) - 1)
    below, above = joint_vs_intrinsic(t - 0.01), joint_vs_intrinsic(t + 0.01)
    columns = ["quantity", "smag", "verdict"]
    rows = [
        {"quantity": "threshold", "smag": t},
        {"quantity": "closed_form", "smag": exact},
        {"quantity": "below", "smag": t - 0.01, "verdict": below.verdict.value},
        {"quantity": "above", "smag": t + 0.01, "verdict": above.verdict.value},
    ]
    emit(rows, columns, args)
    ok = (
        abs(t - exact) <= THRESHOLD_TOL
        and below.verdict is Verdict.MAJORIZED_BY
        and above.verdict is Verdict.INCOMPARABLE
    )
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--precision", type=_positive_int, default=12, help="significant digits")
    common.add_argument("--degrees", action="store_true", help="angles in degrees instead of radians")

    state = argparse.ArgumentParser(add_help=False)
    state.add_argument("--delta", type=float, default=None, help="apparatus angle (default pi/4)")
    state.add_argument("--smag", type=float, default=1.0, help="Bloch vector length |s|")

    parser = argparse.ArgumentParser(
        prog="jointunc",
        description="Entropic and majorization uncertainty of a noisy joint sigma_x/sigma_z measurement.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "scan-theta",
        parents=[common, state],
        help="normalized Renyi entropy along the XZ-plane state family",
        description="Columns: theta, norm_alpha_<a> for each --alpha in the given order. "
        "theta runs over [0, 2pi] inclusive.",
    )
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--alpha", type=_alpha, nargs="+", required=True)
    p.add_argument("--points", type=_positive_int, default=721)
    p.set_defaults(func=cmd_scan_theta)

    p = sub.add_parser(
        "delta-r",
        parents=[common, state],
        help="extreme minus intermediate entropy versus alpha",
        description="Columns: alpha, dR_joint, dR_marginal_product, dR_intrinsic_product. "
        "alpha runs over (LO, HI] in steps of STEP; the extreme state is Z(+).",
    )
    p.add_argument("--alpha-range", type=float, nargs=3, metavar=("LO", "HI", "STEP"), default=[0.0, 5.0, 0.01])
    p.set_defaults(func=cmd_delta_r)

    p = sub.add_parser(
        "critical-alpha",
        parents=[common, state],
        help="entropic indices where the extreme/intermediate ordering flips",
        description="Columns: kind, root_index, alpha, sign_below, sign_above, extreme_representative.",
    )
    p.add_argument("--kind", choices=KINDS, default=None, help="default: all kinds")
    p.add_argument("--alpha-max", type=float, default=10.0)
    p.set_defaults(func=cmd_critical_alpha)

    p = sub.add_parser(
        "bounds",
        parents=[common],
        help="majorization uncertainty bound vectors",
        description="Columns: kind, omega_1..omega_4, closed_1..closed_4 (balanced only), max_deviation, "
        "attainability_gap, compared_with, verdict, witness.",
    )
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser(
        "compare",
        parents=[common, state],
        help="majorization verdict between two distributions",
        description="Columns: p, q, verdict, witness_k1, witness_k2. Vectors are comma-separated "
        f"numbers or one of: {', '.join(NAMED_VECTORS)}.",
    )
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "duality",
        parents=[common],
        help="distinguishability / visibility scan over pure states",
        description="Columns: theta, D, V, P, sum_sq. theta runs over [0, pi] inclusive.",
    )
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--points", type=_positive_int, default=181)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser(
        "oracle-check",
        parents=[common],
        help="closed-form statistics against the Hilbert-space model",
        description="Columns: trials, seed, tol, max_joint_deviation, max_marginal_deviation, status.",
    )
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser(
        "threshold",
        parents=[common],
        help="purity below which joint statistics are majorized by the intrinsic product",
        description="Columns: quantity, smag, verdict.",
    )
    p.set_defaults(func=cmd_threshold)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
