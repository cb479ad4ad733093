"""Command-line entry point: ``qcdivide {analytic,simulate,check,scan}``.

Exit codes: 0 success / classically consistent data, 1 data that no
classical joint distribution reproduces, 2 input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from . import classical, consistency, experiment, quantum
from .core import PAIRS, coincidence_summary, make_joint, pairwise_from_joint
from .errors import QCDivideError
from .io import (CountsFormatError, dumps_json, read_counts, rows_to_csv,
                 rows_to_table, write_counts)

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2

# Classical joint with no three-way agreement: uniform over the six mixed outcomes.
NO_TRIPLE_JOINT = (0.0, 1 / 6, 1 / 6, 1 / 6, 1 / 6, 1 / 6, 1 / 6, 0.0)


class UsageError(QCDivideError):
    pass


def _floats(text: str, n: Optional[int], what: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what}: expected {n} values, got {len(vals)}")
    return vals


def _bases(args) -> quantum.BasisTriple:
    if args.bases and args.k is not None:
        raise UsageError("give either --bases or --k, not both")
    if args.bases:
        return quantum.BasisTriple.from_degrees(*_floats(args.bases, 3, "--bases"))
    if args.k is not None:
        return quantum.BasisTriple(quantum.COMPUTATIONAL,
                                   quantum.basis_from_k(args.k, "-"),
                                   quantum.basis_from_k(args.k, "+"))
    return quantum.DEFAULT_BASES


def _bases_info(b: quantum.BasisTriple) -> dict:
    return {"degrees": [b.a.degrees, b.b.degrees, b.c.degrees],
            "k": [b.a.k, b.b.k, b.c.k]}


def _source(args):
    """Return (kind, object, description) for the configured data source."""
    given = [x for x in (args.joint, args.independent, args.amplitudes) if x]
    if len(given) > 1 or (given and args.r is not None):
        raise UsageError("choose one source: --r, --amplitudes, --joint or --independent")
    if args.joint:
        text = args.joint
        vals = NO_TRIPLE_JOINT if text == "no-triple" else _floats(text, 8, "--joint")
        return "classical", make_joint(vals), {"joint": list(vals)}
    if args.independent:
        spec = classical.IndependentSpec(*_floats(args.independent, 3, "--independent"))
        return "classical", classical.independent_joint(spec), {"independent": [spec.r, spec.s, spec.t]}
    if args.amplitudes:
        state = quantum.PureTwoQubitState.from_amplitudes(
            _floats(args.amplitudes, 4, "--amplitudes"), normalize=True)
        return "quantum", state, {"amplitudes": [a.real for a in state.amplitudes()]}
    r = 1.0 if args.r is None else args.r
    return "quantum", quantum.entangled_pair(r), {"r": r}


def _summary_dict(s) -> dict:
    return {
        "p_same": dict(zip((p.value for p in PAIRS), s.p_same)),
        "p_notsame": dict(zip((p.value for p in PAIRS), s.p_notsame)),
        "p_s_total": s.p_s_total,
        "p_n_total": s.p_n_total,
        "ratio": s.ratio if s.ratio_defined else None,
    }


def _estimate_dict(e: experiment.RatioEstimate) -> dict:
    return {
        "p_same": dict(zip((p.value for p in PAIRS), e.p_same)),
        "p_s_hat": e.p_s_hat,
        "p_n_hat": e.p_n_hat,
        "ratio_hat": e.ratio_hat,
        "stderr": e.stderr,
        "n_total": e.n_total,
    }


def _verdict_dict(v: experiment.Verdict) -> dict:
    return {"label": v.label.value, "threshold": v.threshold, "z": v.z, "z_margin": v.z_margin}


def _report_dict(r: consistency.ConsistencyReport) -> dict:
    out = {
        "marginal_ok": r.marginal_ok,
        "violated_marginal": list(r.violated_marginal),
        "marginal_equations": [
            {"name": e.name, "lhs": e.lhs, "rhs": e.rhs, "holds": e.holds}
            for e in r.marginal_equations],
        "bell_sum": r.bell_sum,
        "bell_ok": r.bell_ok,
        "feasible": r.feasible,
        "notes": list(r.notes),
    }
    if r.witness is not None:
        out["witness"] = {"p111_interval": list(r.witness.h_interval),
                          "joint": list(r.witness.joint.as_tuple()) if r.witness.joint else None}
    return out


REFERENCE = {"classical_no_triple_ratio": 0.5, "quantum_r1_ratio": 1.0 / 3.0,
             "threshold_midpoint": 5.0 / 12.0}


# -- commands ---------------------------------------------------------------

def cmd_analytic(args) -> tuple[dict, int]:
    rs = sorted(set([0.0, 0.1, *quantum.separation_interval(), 0.5, 1.0, 2.0, 3.0, 5.0, 10.0]
                    + ([args.r] if args.r is not None else [])))
    ks = sorted(set([1.5, 2.0, 3.0, 4.0, 5.0, 10.0] + ([args.k] if args.k is not None and args.k > 1 else [])))
    bases = _bases(args)
    classical_rows = [{"p_abc_same": p, "ratio": classical.ratio_classical(p),
                       "p_s": 1 + 2 * p, "p_n": classical.notsame_total_classical(p)}
                      for p in np.round(np.arange(0.0, 0.951, 0.05), 10).tolist()]
    k_rows = [{"k": k, "angle_deg": quantum.basis_from_k(k, "-").degrees,
               "p_same": 1.0 / k, "ratio": quantum.ratio_two_bases(k)} for k in ks]
    r_rows = []
    for r in rs:
        s = quantum.triple_summary(r, bases)
        r_rows.append({"r": r, "P_sq": s.p_s_total, "P_nq": s.p_n_total, "ratio": s.ratio,
                       "P_sq_closed": quantum.psq_closed(r), "ratio_closed": quantum.ratio_quantum(r),
                       "bell_violated": s.p_s_total < 1.0})
    half = math.sqrt(0.5)
    audit_rows = [quantum.agreement_formula_audit(*abcd, k) for abcd, k in [
        ((0.5, 0.5, 0.5, 0.5), 2.0),
        ((half, half, 0.0, 0.0), 2.0),
        ((0.9, -0.3, -0.1, -0.3), 2.0),
        ((0.9, -0.3, -0.1, -0.3), 4.0),
        ((3 / math.sqrt(10), 0.0, 0.0, 1 / math.sqrt(10)), 3.0),
    ]]
    lo, hi = quantum.separation_interval()
    report = {
        "command": "analytic",
        "analytic": {"separation_interval": [lo, hi], "bases": _bases_info(bases), **REFERENCE},
        "tables": {"classical_ratio": classical_rows, "two_basis_ratio": k_rows,
                   "quantum_r_grid": r_rows, "agreement_formula_audit": audit_rows},
    }
    return report, EXIT_OK


def _simulate_counts(args, kind, obj, bases):
    noise = experiment.NoiseSpec(args.epsilon)
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    common = dict(noise=noise, seed=args.seed, chunks=args.chunks, schedule=args.schedule)
    if kind == "classical":
        return experiment.sample_classical(obj, args.trials, **common)
    return experiment.sample_quantum(obj, args.trials, bases=bases, **common)


def cmd_simulate(args) -> tuple[dict, int]:
    kind, obj, desc = _source(args)
    bases = _bases(args)
    counts = _simulate_counts(args, kind, obj, bases)
    if kind == "classical":
        analytic = _summary_dict(coincidence_summary(pairwise_from_joint(obj)))
    else:
        analytic = _summary_dict(quantum.state_triple_summary(obj, bases))
    meta = {"source": kind, **desc, "bases": _bases_info(bases), "trials_per_pair": args.trials,
            "epsilon": args.epsilon, "seed": args.seed, "schedule": args.schedule}
    if args.out:
        write_counts(args.out, counts, meta)
    est = experiment.estimate(counts)
    report = {"command": "simulate", "meta": meta, "counts": counts.to_mapping(),
              "analytic": {**analytic, **REFERENCE}, "empirical": _estimate_dict(est)}
    if est.defined:
        report["verdict"] = _verdict_dict(experiment.classify(est, args.threshold, args.z))
    return report, EXIT_OK


def statistical_tolerance(counts: experiment.CountTable, z: float) -> float:
    """Allowed sampling slack for equality/nonnegativity checks on frequencies.

    Every quantity checked is a combination of cell frequencies from at most
    three independent pair samples with standard deviation below
    ``1/sqrt(n_min)``.
    """
    n_min = min(counts.total(p) for p in PAIRS)
    return max(consistency.NORM_TOL, z / math.sqrt(n_min))


def cmd_check(args) -> tuple[dict, int]:
    counts, meta = read_counts(args.counts_file)
    for p in PAIRS:
        if counts.total(p) == 0:
            raise CountsFormatError(f"pair {p.value} has no trials")
    freqs = counts.frequencies()
    tol = args.tol if args.tol is not None else statistical_tolerance(counts, args.z)
    rep = consistency.full_check(freqs, tol=tol)
    est = experiment.estimate(counts)
    report = {"command": "check", "file": str(args.counts_file), "tolerance": tol,
              "consistency": _report_dict(rep), "empirical": _estimate_dict(est),
              "verdict": _verdict_dict(experiment.classify(est, args.threshold, args.z)),
              "analytic": dict(REFERENCE)}
    if meta:
        report["meta"] = meta
    return report, EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def find_crossings(f, grid: np.ndarray, xtol: float = 1e-12) -> list[float]:
    """Roots of ``f`` located by sign changes on ``grid`` refined by bisection."""
    vals = np.array([f(x) for x in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(float(bisect(f, grid[i], grid[i + 1], xtol=xtol)))
    if len(grid) and vals[-1] == 0:
        roots.append(float(grid[-1]))
    return roots


def cmd_scan(args) -> tuple[dict, int]:
    lo, hi, step = args.r_min, args.r_max, args.r_step
    if not (0 <= lo < hi) or step <= 0 or not all(map(math.isfinite, (lo, hi, step))):
        raise UsageError("scan range needs 0 <= r-min < r-max and r-step > 0")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid = lo + step * np.arange(n)
    if grid[-1] < hi - 1e-12:
        grid = np.append(grid, hi)
    bases = _bases(args)
    rows = []
    for r in grid.tolist():
        s = quantum.triple_summary(r, bases)
        rows.append({"r": r, "P_sq": s.p_s_total, "P_nq": s.p_n_total, "ratio": s.ratio})
    roots = find_crossings(lambda r: quantum.triple_summary(r, bases).p_s_total - 1.0, grid)
    i_min = int(np.argmin([row["ratio"] for row in rows]))
    refined = minimize_scalar(lambda r: quantum.triple_summary(r, bases).ratio,
                              bounds=(float(grid[max(i_min - 1, 0)]), float(grid[min(i_min + 1, len(grid) - 1)])),
                              method="bounded", options={"xatol": 1e-10})
    analytic = {"roots": roots,
                "separation_interval": list(quantum.separation_interval()),
                "grid_min_ratio": {"r": rows[i_min]["r"], "ratio": rows[i_min]["ratio"]},
                "min_ratio": {"r": float(refined.x), "ratio": float(refined.fun)},
                "bases": _bases_info(bases)}
    if not roots:
        analytic["note"] = "no crossing of P_sq = 1 in range"
    return {"command": "scan", "analytic": analytic, "tables": {"scan": rows}}, EXIT_OK


# -- rendering ----------------------------------------------------------------

def _flatten(d: Any, prefix: str = "") -> list[dict]:
    rows = []
    if isinstance(d, dict):
        for k, v in d.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(d, list) and d and isinstance(d[0], dict):
        for i, v in enumerate(d):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
    elif isinstance(d, list):
        for i, v in enumerate(d):
            rows.append({"key": f"{prefix}[{i}]", "value": v})
    else:
        rows.append({"key": prefix, "value": d})
    return rows


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(report) + "\n"
    body = {k: v for k, v in report.items() if k != "tables"}
    emit = rows_to_csv if fmt == "csv" else rows_to_table
    parts = [f"# summary\n{emit(_flatten(body))}"]
    for name, rows in report.get("tables", {}).items():
        parts.append(f"# {name}\n{emit(rows)}")
    return "\n".join(parts)


COMMANDS = {"analytic": cmd_analytic, "simulate": cmd_simulate, "check": cmd_check, "scan": cmd_scan}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=float, help="entanglement parameter of (r|00>+|11>)/sqrt(1+r^2)")
    common.add_argument("--k", type=float, help="bases (0, -theta_k, +theta_k) with cos^2(theta_k) = 1/k")
    common.add_argument("--bases", help="three comma-separated angles in degrees (default 0,-60,60)")
    common.add_argument("--threshold", type=float, default=experiment.DEFAULT_THRESHOLD)
    common.add_argument("--z", type=float, default=experiment.DEFAULT_Z)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--out", help="output file (simulate: counts file; others: report)")

    parser = argparse.ArgumentParser(prog="qcdivide", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analytic", parents=[common], help="closed-form reference tables")

    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo coincidence experiment")
    sim.add_argument("--amplitudes", help="quantum source: four real amplitudes a,b,c,d")
    sim.add_argument("--joint", help="classical source: eight probabilities p000..p111, or 'no-triple'")
    sim.add_argument("--independent", help="classical source: P(A=1),P(B=1),P(C=1)")
    sim.add_argument("--trials", type=int, default=100_000, help="trials per pair")
    sim.add_argument("--epsilon", type=float, default=0.0, help="detector bit-flip probability")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--chunks", type=int, default=1, help="parallel chunks (results unchanged)")
    sim.add_argument("--schedule", choices=("equal", "random"), default="equal")

    chk = sub.add_parser("check", parents=[common], help="test a counts file for classical consistency")
    chk.add_argument("counts_file")
    chk.add_argument("--tol", type=float, help="override the statistical tolerance")

    scan = sub.add_parser("scan", parents=[common], help="scan r for Bell-sum crossings")
    scan.add_argument("--r-min", type=float, default=0.1)
    scan.add_argument("--r-max", type=float, default=10.0)
    scan.add_argument("--r-step", type=float, default=0.01)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = COMMANDS[args.command](args)
    except (QCDivideError, ValueError) as exc:
        print(f"qcdivide {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.format)
    if args.out and args.command != "simulate":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
