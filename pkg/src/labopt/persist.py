"""File formats for traces, summaries, and comparison reports.

Traces are CSV with ``#`` metadata lines on top.  Only algorithmic
state is persisted: floats are written with ``repr`` so parsing gives
back the exact doubles, and wall-clock timings stay out of the file,
which makes repeated runs of the same seed byte-identical.  Timing is
reported in the summary JSON instead.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .engine import IterationRecord, RunTrace
from .problem import Sense
from .stats import ComparisonReport, RunSummary, WilcoxonResult


def _fmt(x: float) -> str:
    return repr(float(x))


def _ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def write_trace(trace: RunTrace, path: str | Path) -> Path:
    """Write one run to CSV; returns the path written.

    Layout: ``#`` key=value lines for run metadata, then a header row
    ``iteration,global_best,leader_g1..leader_gG,best_so_far`` and one
    row per recorded iteration.  Baseline runs have no leader columns.
    """
    path = Path(path)
    _ensure_parent(path)
    n_leaders = len(trace.records[0].leaders) if trace.records else 0
    leader_cols = [f"leader_g{i + 1}" for i in range(n_leaders)]
    lines = [
        f"# problem={trace.problem}",
        f"# algorithm={trace.algorithm}",
        f"# sense={trace.sense.value}",
        f"# seed={trace.seed}",
        f"# evaluations={trace.n_evaluations}",
        f"# termination={trace.termination}",
        f"# best_fitness={_fmt(trace.best_fitness)}",
        "# best_position=" + ",".join(_fmt(v) for v in trace.best_position),
        ",".join(["iteration", "global_best", *leader_cols, "best_so_far"]),
    ]
    for rec in trace.records:
        if len(rec.leaders) != n_leaders:
            raise ValueError("records disagree on leader count")
        row = [
            str(rec.iteration),
            _fmt(rec.global_best),
            *(_fmt(v) for v in rec.leaders),
            _fmt(rec.best_so_far),
        ]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def read_trace(path: str | Path) -> RunTrace:
    """Parse a trace CSV back into a RunTrace.

    Timing is not persisted, so reloaded records carry 0.0 elapsed
    seconds.
    """
    meta: dict[str, str] = {}
    records: list[IterationRecord] = []
    n_leaders = None
    for line in Path(path).read_text().splitlines():
        if not line:
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
            continue
        cells = line.split(",")
        if cells[0] == "iteration":
            n_leaders = len(cells) - 3
            continue
        if n_leaders is None:
            raise ValueError(f"{path}: data row before header")
        records.append(
            IterationRecord(
                iteration=int(cells[0]),
                global_best=float(cells[1]),
                leaders=tuple(float(v) for v in cells[2 : 2 + n_leaders]),
                best_so_far=float(cells[2 + n_leaders]),
                elapsed_seconds=0.0,
            )
        )
    required = {
        "problem", "algorithm", "sense", "seed",
        "evaluations", "termination", "best_fitness", "best_position",
    }
    absent = required - meta.keys()
    if absent:
        raise ValueError(f"{path}: missing metadata {sorted(absent)}")
    return RunTrace(
        problem=meta["problem"],
        algorithm=meta["algorithm"],
        sense=Sense(meta["sense"]),
        seed=int(meta["seed"]),
        records=tuple(records),
        best_fitness=float(meta["best_fitness"]),
        best_position=tuple(
            float(v) for v in meta["best_position"].split(",") if v
        ),
        n_evaluations=int(meta["evaluations"]),
        termination=meta["termination"],
    )


def _summary_dict(s: RunSummary) -> dict:
    return {
        "problem": s.problem,
        "algorithm": s.algorithm,
        "sense": s.sense.value,
        "num_runs": s.num_runs,
        "seeds": list(s.seeds),
        "best": s.best,
        "mean": s.mean,
        "std_dev": s.std_dev,
        "mean_runtime_seconds": s.mean_runtime_seconds,
        "mean_function_evaluations": s.mean_function_evaluations,
        "finals": list(s.finals),
        "runtimes": list(s.runtimes),
    }


def write_summary(summary: RunSummary, path: str | Path) -> Path:
    path = Path(path)
    _ensure_parent(path)
    path.write_text(
        json.dumps(_summary_dict(summary), indent=2, sort_keys=True) + "\n",
        newline="\n",
    )
    return path


def read_summary(path: str | Path) -> RunSummary:
    d = json.loads(Path(path).read_text())
    return RunSummary(
        problem=d["problem"],
        algorithm=d["algorithm"],
        sense=Sense(d["sense"]),
        num_runs=int(d["num_runs"]),
        seeds=tuple(int(v) for v in d["seeds"]),
        best=float(d["best"]),
        mean=float(d["mean"]),
        std_dev=float(d["std_dev"]),
        mean_runtime_seconds=float(d["mean_runtime_seconds"]),
        mean_function_evaluations=float(d["mean_function_evaluations"]),
        finals=tuple(float(v) for v in d["finals"]),
        runtimes=tuple(float(v) for v in d["runtimes"]),
    )


def write_convergence(traces: Sequence[RunTrace], path: str | Path) -> Path:
    """Write best-so-far curves of repeated runs as one wide CSV.

    One column per run (named by seed) plus median and quartile
    columns.  Runs that stopped early are padded by carrying their
    last best-so-far forward so every row is complete.
    """
    if not traces:
        raise ValueError("need at least one trace")
    path = Path(path)
    _ensure_parent(path)
    length = max(len(t.records) for t in traces)
    series = []
    for t in traces:
        vals = [r.best_so_far for r in t.records]
        vals += [vals[-1]] * (length - len(vals))
        series.append(vals)
    matrix = np.array(series)  # runs x iterations
    header = ["iteration"] + [f"seed{t.seed}" for t in traces]
    header += ["median", "q25", "q75"]
    lines = [",".join(header)]
    for it in range(length):
        col = matrix[:, it]
        row = [str(it)]
        row += [_fmt(v) for v in col]
        row += [
            _fmt(np.median(col)),
            _fmt(np.quantile(col, 0.25)),
            _fmt(np.quantile(col, 0.75)),
        ]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path


def _result_dict(r: WilcoxonResult) -> dict:
    return {
        "t_plus": r.t_plus,
        "t_minus": r.t_minus,
        "n_effective": r.n_effective,
        "p_value": r.p_value,
        "verdict": r.verdict,
        "degenerate": r.degenerate,
        "method": r.method,
    }


def _report_dict(report: ComparisonReport) -> dict:
    return {
        "problems": list(report.problems),
        "algorithms": list(report.algorithms),
        "alpha": report.alpha,
        "use_raw_pairs": report.use_raw_pairs,
        "per_problem": [
            {
                "problem": t.problem,
                "algo_a": t.algo_a,
                "algo_b": t.algo_b,
                **_result_dict(t.result),
            }
            for t in report.per_problem
        ],
        "pairwise": [
            {
                "algo_a": row.algo_a,
                "algo_b": row.algo_b,
                "wins_a": row.wins_a,
                "wins_b": row.wins_b,
                "ties": row.ties,
                "overall": _result_dict(row.overall),
            }
            for row in report.pairwise
        ],
    }


def format_report_text(report: ComparisonReport) -> str:
    """Human-readable comparison report.

    The counts line per pair reads ``wins/losses/ties (+/-/=)`` from
    the first algorithm's point of view.
    """
    mode = "pooled (problem, run) pairs" if report.use_raw_pairs else "per-problem means"
    lines = [
        "paired comparison report",
        f"problems ({len(report.problems)}): " + ", ".join(report.problems),
        f"algorithms ({len(report.algorithms)}): " + ", ".join(report.algorithms),
        f"alpha={_fmt(report.alpha)}, overall test on {mode}",
        "",
        "per-problem verdicts",
        "problem,algo_a,algo_b,t_plus,t_minus,n_eff,p_value,method,verdict",
    ]
    for t in report.per_problem:
        r = t.result
        lines.append(
            ",".join(
                [
                    t.problem, t.algo_a, t.algo_b,
                    _fmt(r.t_plus), _fmt(r.t_minus), str(r.n_effective),
                    _fmt(r.p_value), r.method, r.verdict,
                ]
            )
        )
    lines.append("")
    lines.append("pairwise counts")
    for row in report.pairwise:
        r = row.overall
        lines.append(
            f"{row.algo_a} vs {row.algo_b}: "
            f"{row.wins_a}/{row.wins_b}/{row.ties} (+/-/=) | "
            f"overall: p={_fmt(r.p_value)}, verdict={r.verdict}, method={r.method}"
        )
    return "\n".join(lines) + "\n"


def write_comparison(report: ComparisonReport, out_dir: str | Path) -> dict[str, Path]:
    """Write a comparison report as JSON, CSV tables, and plain text.

    Returns the paths written, keyed by artifact name.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    paths["report_json"] = out / "report.json"
    paths["report_json"].write_text(
        json.dumps(_report_dict(report), indent=2, sort_keys=True) + "\n",
        newline="\n",
    )

    per_lines = ["problem,algo_a,algo_b,t_plus,t_minus,n_effective,p_value,method,verdict"]
    for t in report.per_problem:
        r = t.result
        per_lines.append(
            ",".join(
                [
                    t.problem, t.algo_a, t.algo_b,
                    _fmt(r.t_plus), _fmt(r.t_minus), str(r.n_effective),
                    _fmt(r.p_value), r.method, r.verdict,
                ]
            )
        )
    paths["per_problem_csv"] = out / "per_problem.csv"
    paths["per_problem_csv"].write_text("\n".join(per_lines) + "\n", newline="\n")

    pair_lines = ["algo_a,algo_b,wins_a,wins_b,ties,overall_p,overall_verdict,overall_method"]
    for row in report.pairwise:
        r = row.overall
        pair_lines.append(
            ",".join(
                [
                    row.algo_a, row.algo_b,
                    str(row.wins_a), str(row.wins_b), str(row.ties),
                    _fmt(r.p_value), r.verdict, r.method,
                ]
            )
        )
    paths["pairwise_csv"] = out / "pairwise.csv"
    paths["pairwise_csv"].write_text("\n".join(pair_lines) + "\n", newline="\n")

    paths["report_txt"] = out / "report.txt"
    paths["report_txt"].write_text(format_report_text(report), newline="\n")
    return paths


def write_oracle(payload: dict, path: str | Path) -> Path:
    path = Path(path)
    _ensure_parent(path)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", newline="\n"
    )
    return path
