"""Experiment harness: repeated seeded runs, comparisons, and reports.

A plan names the input files, the algorithms to compare, the repeat
count, and the hyperparameters.  Each repeat r of every algorithm runs
with seed base_seed + r, so algorithms see identical seed sets.  The
harness pools each algorithm's fronts across repeats, filters them by
the quality-gain filter, and writes summary CSVs, a JSON report, and
rendered figures into the output directory.

The ablation mode runs the same engine twice per seed: once with all
three objectives and once with availability dropped from dominance
(availability is still computed on every solution for reporting).
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .code_model import load_code_facts
from .errors import ConfigError, InputError
from .refactoring import Solution
from .reports import write_csv, write_json
from .review import ReviewParams, build_profiles, load_activities, load_aliases, load_commits
from .search import ParetoFront, SearchConfig, default_max_evaluations, resolve_algorithm, run
from .semantics import SemanticParams
from . import plots

QUAL_FILTERS = ("nonneg", "positive")
WINDOW_LENGTH_SECONDS = 7 * 24 * 3600


@dataclass
class ExperimentPlan:
    facts: str
    commits: str
    activity: str
    aliases: str | None = None
    algorithms: list[str] = field(default_factory=lambda: ["nsga2"])
    repeats: int = 5
    base_seed: int = 1
    qual_filter: str = "nonneg"
    out_dir: str = "out"
    ablation: bool = False
    population_size: int = 100
    crossover_probability: float = 0.90
    mutation_probability: float = 0.05
    max_sequence_length: int = 5
    max_evaluations: int | None = None
    alpha: float = 0.8
    commit_cap: int = 10
    workload_cutoff: int = 2
    window_start: int | None = None
    window_end: int | None = None
    max_reviewers: int = 2

    def validate(self) -> None:
        if not self.algorithms:
            raise ConfigError("plan names no algorithms")
        for name in self.algorithms:
            resolve_algorithm(name)
        if self.repeats < 1:
            raise ConfigError(f"repeats must be >= 1, got {self.repeats}")
        if self.qual_filter not in QUAL_FILTERS:
            raise ConfigError(f"unknown quality filter: {self.qual_filter}")


_PLAN_KEYS = {
    "facts", "commits", "activity", "aliases", "algorithms", "repeats",
    "base_seed", "qual_filter", "out_dir", "ablation", "population_size",
    "crossover_probability", "mutation_probability", "max_sequence_length",
    "max_evaluations", "alpha", "commit_cap", "workload_cutoff",
    "window_start", "window_end", "max_reviewers",
}


def load_plan(path: str | Path) -> ExperimentPlan:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"plan file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"plan file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"plan must be a JSON object: {path}")
    unknown = set(data) - _PLAN_KEYS
    if unknown:
        raise ConfigError(f"unknown plan keys: {sorted(unknown)}")
    for key in ("facts", "commits", "activity"):
        if key not in data:
            raise ConfigError(f"plan missing required key: {key}")
    try:
        plan = ExperimentPlan(**data)
    except TypeError as exc:
        raise ConfigError(f"bad plan value: {exc}") from exc
    plan.validate()
    return plan


def qual_filter_fn(name: str):
    if name == "positive":
        return lambda s: s.fitness.qual > 0.0
    return lambda s: s.fitness.qual >= 0.0


def reviewable_ratio(solutions: list[Solution]) -> float:
    """Fraction of solutions with a non-zero availability score."""
    if not solutions:
        return 0.0
    reviewable = sum(1 for s in solutions if s.fitness.ra > 0.0)
    return reviewable / len(solutions)


def summarize(values: list[float]) -> dict:
    if not values:
        return {"count": 0, "min": None, "q1": None, "median": None,
                "q3": None, "max": None, "mean": None}
    if len(values) == 1:
        v = values[0]
        return {"count": 1, "min": v, "q1": v, "median": v, "q3": v, "max": v, "mean": v}
    q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return {
        "count": len(values),
        "min": min(values),
        "q1": q1,
        "median": median,
        "q3": q3,
        "max": max(values),
        "mean": statistics.fmean(values),
    }


def hypervolume(points: list[tuple[float, ...]], reference: tuple[float, ...]) -> float:
    """Dominated hypervolume of maximized points above a reference point."""
    pts = [p for p in points if all(x > r for x, r in zip(p, reference))]
    if not pts:
        return 0.0
    if len(reference) == 1:
        return max(p[0] for p in pts) - reference[0]
    pts.sort(key=lambda p: p[0], reverse=True)
    total = 0.0
    active: list[tuple[float, ...]] = []
    for i, p in enumerate(pts):
        active.append(p[1:])
        hi = p[0]
        lo = pts[i + 1][0] if i + 1 < len(pts) else reference[0]
        if hi > lo:
            total += (hi - lo) * hypervolume(active, reference[1:])
    return total


@dataclass
class _LoadedInputs:
    model: object
    graph: object
    profiles: dict
    review_params: ReviewParams
    semantic_params: SemanticParams
    men: int


def derive_window(plan: ExperimentPlan, activities, commits) -> tuple[int, int]:
    """Window bounds; defaults to the seven days ending at the last event."""
    end = plan.window_end
    if end is None:
        event_times = [e.timestamp for a in activities for e in a.events]
        if event_times:
            end = max(event_times)
        elif commits:
            end = max(c.timestamp for c in commits)
        else:
            end = WINDOW_LENGTH_SECONDS
    start = plan.window_start
    if start is None:
        start = end - WINDOW_LENGTH_SECONDS
    return start, end


def load_inputs(plan: ExperimentPlan) -> _LoadedInputs:
    model, graph = load_code_facts(plan.facts)
    aliases = load_aliases(plan.aliases) if plan.aliases else None
    commits = load_commits(plan.commits, aliases)
    activities = load_activities(plan.activity, aliases)
    window_start, window_end = derive_window(plan, activities, commits)
    review_params = ReviewParams(
        window_start=window_start,
        window_end=window_end,
        commit_cap=plan.commit_cap,
        workload_cutoff=plan.workload_cutoff,
        max_reviewers=plan.max_reviewers,
    )
    semantic_params = SemanticParams(alpha=plan.alpha)
    profiles = build_profiles(commits, activities, review_params)
    men = plan.max_evaluations
    if men is None:
        men = default_max_evaluations(len(model.internal_ids()))
    return _LoadedInputs(model, graph, profiles, review_params, semantic_params, men)


def _config_for(plan: ExperimentPlan, inputs: _LoadedInputs, algorithm: str,
                seed: int, objectives: tuple[str, ...]) -> SearchConfig:
    return SearchConfig(
        max_evaluations=inputs.men,
        population_size=plan.population_size,
        crossover_probability=plan.crossover_probability,
        mutation_probability=plan.mutation_probability,
        max_sequence_length=plan.max_sequence_length,
        seed=seed,
        algorithm=algorithm,
        objectives=objectives,
    )


def _run_cell(plan, inputs, algorithm, seed, objectives=("qual", "sem", "ra")) -> ParetoFront:
    config = _config_for(plan, inputs, algorithm, seed, tuple(objectives))
    return run(
        inputs.model,
        inputs.graph,
        inputs.profiles,
        inputs.review_params,
        inputs.semantic_params,
        config,
    )


def run_experiment(plan: ExperimentPlan) -> dict:
    """Run every algorithm for every seed and write the comparison report."""
    plan.validate()
    inputs = load_inputs(plan)
    out = Path(plan.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    keep = qual_filter_fn(plan.qual_filter)

    cells = []
    pooled: dict[str, dict[str, list[float]]] = {}
    ratio_rows = []
    for name in plan.algorithms:
        algorithm = resolve_algorithm(name)
        pooled.setdefault(algorithm, {"qual": [], "sem": [], "ra": []})
        for repeat in range(plan.repeats):
            seed = plan.base_seed + repeat
            front = _run_cell(plan, inputs, algorithm, seed)
            kept = [s for s in front.solutions if keep(s)]
            cells.append(
                {
                    "algorithm": algorithm,
                    "seed": seed,
                    "evaluations": front.provenance.evaluations,
                    "front_size": len(front.solutions),
                    "kept": len(kept),
                    "reviewable_ratio": reviewable_ratio(kept),
                }
            )
            ratio_rows.append(
                [algorithm, str(seed), len(kept),
                 sum(1 for s in kept if s.fitness.ra > 0.0),
                 reviewable_ratio(kept)]
            )
            for s in kept:
                pooled[algorithm]["qual"].append(s.fitness.qual)
                pooled[algorithm]["sem"].append(s.fitness.sem)
                pooled[algorithm]["ra"].append(s.fitness.ra)

    summaries = {
        algorithm: {obj: summarize(values[obj]) for obj in ("qual", "sem", "ra")}
        for algorithm, values in pooled.items()
    }
    for algorithm in sorted(pooled):
        kept_all = pooled[algorithm]["ra"]
        ratio_rows.append(
            [algorithm, "all", len(kept_all),
             sum(1 for v in kept_all if v > 0.0),
             (sum(1 for v in kept_all if v > 0.0) / len(kept_all)) if kept_all else 0.0]
        )

    dist_rows = []
    for algorithm in sorted(summaries):
        for objective in ("qual", "sem", "ra"):
            s = summaries[algorithm][objective]
            dist_rows.append(
                [algorithm, objective, s["count"], s["min"], s["q1"], s["median"],
                 s["q3"], s["max"], s["mean"]]
            )
    write_csv(
        out / "distributions.csv",
        ["algorithm", "objective", "count", "min", "q1", "median", "q3", "max", "mean"],
        dist_rows,
    )
    write_csv(
        out / "reviewable_ratio.csv",
        ["label", "seed", "solutions", "reviewable", "ratio"],
        ratio_rows,
    )
    plots.render_distribution_boxplots(pooled, out / "distributions.png")

    report = {
        "mode": "compare",
        "algorithms": [resolve_algorithm(a) for a in plan.algorithms],
        "repeats": plan.repeats,
        "base_seed": plan.base_seed,
        "qual_filter": plan.qual_filter,
        "max_evaluations": inputs.men,
        "cells": cells,
        "summaries": summaries,
    }
    write_json(out / "report.json", report)
    return report


def ablation_compare(plan: ExperimentPlan) -> dict:
    """Compare searches with and without the availability objective."""
    plan.validate()
    inputs = load_inputs(plan)
    out = Path(plan.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    keep = qual_filter_fn(plan.qual_filter)
    algorithm = resolve_algorithm(plan.algorithms[0])

    modes = {"ra_plus": ("qual", "sem", "ra"), "ra_minus": ("qual", "sem")}
    kept_by_mode: dict[str, list[Solution]] = {m: [] for m in modes}
    per_seed_ratio: dict[str, dict[int, float]] = {m: {} for m in modes}
    scatter_qual = []
    scatter_sem = []
    ratio_rows = []
    cells = []
    for mode, objectives in modes.items():
        for repeat in range(plan.repeats):
            seed = plan.base_seed + repeat
            front = _run_cell(plan, inputs, algorithm, seed, objectives)
            kept = [s for s in front.solutions if keep(s)]
            kept_by_mode[mode].extend(kept)
            ratio = reviewable_ratio(kept)
            per_seed_ratio[mode][seed] = ratio
            cells.append(
                {
                    "mode": mode,
                    "seed": seed,
                    "evaluations": front.provenance.evaluations,
                    "front_size": len(front.solutions),
                    "kept": len(kept),
                    "reviewable_ratio": ratio,
                }
            )
            ratio_rows.append(
                [mode, str(seed), len(kept),
                 sum(1 for s in kept if s.fitness.ra > 0.0), ratio]
            )
            for s in kept:
                scatter_qual.append([mode, str(seed), s.fitness.qual, s.fitness.ra])
                scatter_sem.append([mode, str(seed), s.fitness.sem, s.fitness.ra])

    pooled_ratio = {}
    means = {}
    for mode in modes:
        kept = kept_by_mode[mode]
        pooled_ratio[mode] = reviewable_ratio(kept)
        ratio_rows.append(
            [mode, "all", len(kept),
             sum(1 for s in kept if s.fitness.ra > 0.0), pooled_ratio[mode]]
        )
        means[mode] = {
            obj: (statistics.fmean([getattr(s.fitness, obj) for s in kept])
                  if kept else None)
            for obj in ("qual", "sem", "ra")
        }

    relative = {}
    for obj in ("qual", "sem", "ra"):
        plus, minus = means["ra_plus"][obj], means["ra_minus"][obj]
        relative[obj] = (plus / minus) if plus is not None and minus else None

    write_csv(
        out / "scatter_qual_ra.csv",
        ["mode", "seed", "qual", "ra"],
        scatter_qual,
    )
    write_csv(
        out / "scatter_sem_ra.csv",
        ["mode", "seed", "sem", "ra"],
        scatter_sem,
    )
    write_csv(
        out / "reviewable_ratio.csv",
        ["label", "seed", "solutions", "reviewable", "ratio"],
        ratio_rows,
    )
    plots.render_ablation_scatter(
        [(m, q, r) for m, _, q, r in scatter_qual], "qual", out / "scatter_qual_ra.png"
    )
    plots.render_ablation_scatter(
        [(m, s, r) for m, _, s, r in scatter_sem], "sem", out / "scatter_sem_ra.png"
    )
    plots.render_ratio_bars(
        [(label, seed, ratio) for label, seed, _, _, ratio in ratio_rows],
        out / "reviewable_ratio.png",
    )

    report = {
        "mode": "ablation",
        "algorithm": algorithm,
        "repeats": plan.repeats,
        "base_seed": plan.base_seed,
        "qual_filter": plan.qual_filter,
        "max_evaluations": inputs.men,
        "cells": cells,
        "per_seed_ratio": {m: {str(k): v for k, v in d.items()}
                           for m, d in per_seed_ratio.items()},
        "pooled_ratio": pooled_ratio,
        "means": means,
        "relative_means": relative,
    }
    write_json(out / "report.json", report)
    return report
