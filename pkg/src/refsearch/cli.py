"""Command line interface.

Subcommands: ingest (validate inputs and cache reviewer profiles),
search (one seeded run writing a front), recommend (explain the reviewer
group of one front solution), compare (run an experiment plan), and
report (rank a front and render its figures).  Exit codes: 0 on
success, 2 for input errors, 3 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from .code_model import load_code_facts
from .errors import (
    EXIT_CONFIG_ERROR,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    ConfigError,
    InputError,
)
from .harness import (
    WINDOW_LENGTH_SECONDS,
    ablation_compare,
    load_plan,
    qual_filter_fn,
    run_experiment,
)
from .quality import compute_attributes, compute_metrics
from .refactoring import Solution, apply_sequence
from .reports import load_front, solution_row, write_csv, write_front_csv, write_front_json, write_json
from .review import ReviewParams, build_profiles, load_activities, load_aliases, load_commits, recommend_reviewers, touched_files
from .search import SearchConfig, default_max_evaluations, run
from .semantics import SemanticParams, coherence_score
from . import plots


def _parse_time(value: str) -> int:
    """Epoch seconds, given either an integer or an ISO 8601 date."""
    try:
        return int(value)
    except ValueError:
        pass
    try:
        parsed = datetime.fromisoformat(value)
    except ValueError as exc:
        raise ConfigError(f"cannot parse time value: {value}") from exc
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return int(parsed.timestamp())


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--facts", required=True, help="code facts JSON file")
    parser.add_argument("--commits", required=True, help="commit history JSON lines file")
    parser.add_argument("--activity", required=True, help="pull request / issue activity JSON file")
    parser.add_argument("--aliases", help="developer alias map JSON file (optional)")


def _add_review_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=0.8,
                        help="dependency weight in the coherence blend (default: 0.8)")
    parser.add_argument("--tc", type=int, default=10,
                        help="commit count cap in the expertise denominator (default: 10)")
    parser.add_argument("--tw", type=int, default=2,
                        help="workload cutoff for available reviewers (default: 2)")
    parser.add_argument("--window-start",
                        help="review window start, epoch seconds or ISO date "
                             "(default: window end minus 7 days)")
    parser.add_argument("--window-end",
                        help="review window end, epoch seconds or ISO date "
                             "(default: latest activity timestamp)")
    parser.add_argument("--max-reviewers", type=int, default=2,
                        help="largest reviewer group considered (default: 2)")
    parser.add_argument("--strict-coverage", action="store_true",
                        help="require every reviewer to know every touched file")


def _add_search_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pop", type=int, default=100,
                        help="population size (default: 100)")
    parser.add_argument("--pc", type=float, default=0.90,
                        help="crossover probability (default: 0.9)")
    parser.add_argument("--pm", type=float, default=0.05,
                        help="per-gene mutation probability (default: 0.05)")
    parser.add_argument("--max-len", type=int, default=5,
                        help="genes per solution (default: 5)")
    parser.add_argument("--men", type=int,
                        help="evaluation budget (default: 100 per class)")
    parser.add_argument("--seed", type=int, default=1,
                        help="random seed (default: 1)")
    parser.add_argument("--algorithm", default="nsga2",
                        help="nsga2, spea2, ibea, mocell, or random_search "
                             "(default: nsga2)")


def _load_common(args) -> dict:
    model, graph = load_code_facts(args.facts)
    aliases = load_aliases(args.aliases) if args.aliases else None
    commits = load_commits(args.commits, aliases)
    activities = load_activities(args.activity, aliases)

    window_end = None
    if args.window_end is not None:
        window_end = _parse_time(args.window_end)
    else:
        event_times = [e.timestamp for a in activities for e in a.events]
        if event_times:
            window_end = max(event_times)
        elif commits:
            window_end = max(c.timestamp for c in commits)
        else:
            window_end = WINDOW_LENGTH_SECONDS
    if args.window_start is not None:
        window_start = _parse_time(args.window_start)
    else:
        window_start = window_end - WINDOW_LENGTH_SECONDS

    review_params = ReviewParams(
        window_start=window_start,
        window_end=window_end,
        commit_cap=args.tc,
        workload_cutoff=args.tw,
        max_reviewers=args.max_reviewers,
        strict_coverage=getattr(args, "strict_coverage", False),
    )
    semantic_params = SemanticParams(alpha=args.alpha)
    semantic_params.validate()
    profiles = build_profiles(commits, activities, review_params)
    return {
        "model": model,
        "graph": graph,
        "commits": commits,
        "activities": activities,
        "review_params": review_params,
        "semantic_params": semantic_params,
        "profiles": profiles,
    }


def cmd_ingest(args) -> int:
    loaded = _load_common(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    profiles = loaded["profiles"]
    payload = {
        dev: {
            "workload": profile.workload,
            "expertise": {f: profile.expertise[f] for f in sorted(profile.expertise)},
        }
        for dev, profile in sorted(profiles.items())
    }
    write_json(out / "profiles.json", payload)
    model = loaded["model"]
    print(f"classes: {len(model.internal_ids())}")
    print(f"edges: {len(loaded['graph'].edges)}")
    print(f"commits: {len(loaded['commits'])}")
    print(f"developers: {len(profiles)}")
    rp = loaded["review_params"]
    print(f"window: {rp.window_start}..{rp.window_end}")
    print(f"wrote {out / 'profiles.json'}")
    return EXIT_OK


def cmd_search(args) -> int:
    loaded = _load_common(args)
    model = loaded["model"]
    men = args.men
    if men is None:
        men = default_max_evaluations(len(model.internal_ids()))
    config = SearchConfig(
        max_evaluations=men,
        population_size=args.pop,
        crossover_probability=args.pc,
        mutation_probability=args.pm,
        max_sequence_length=args.max_len,
        seed=args.seed,
        algorithm=args.algorithm,
    )
    front = run(
        model,
        loaded["graph"],
        loaded["profiles"],
        loaded["review_params"],
        loaded["semantic_params"],
        config,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_front_json(front, out / "front.json")
    write_front_csv(front, out / "front.csv")
    print(f"algorithm: {front.provenance.algorithm}")
    print(f"seed: {front.provenance.seed}")
    print(f"evaluations: {front.provenance.evaluations}")
    print(f"front size: {len(front.solutions)}")
    if front.solutions:
        for objective in ("qual", "sem", "ra"):
            values = [getattr(s.fitness, objective) for s in front.solutions]
            print(f"{objective}: {min(values):.6f}..{max(values):.6f}")
    print(f"wrote {out / 'front.json'}")
    return EXIT_OK


def cmd_recommend(args) -> int:
    front = load_front(args.front)
    if not 0 <= args.index < len(front.solutions):
        raise InputError(
            f"solution index {args.index} out of range (front has "
            f"{len(front.solutions)} solutions)"
        )
    loaded = _load_common(args)
    model, graph = loaded["model"], loaded["graph"]
    solution = front.solutions[args.index]
    _, _, effective = apply_sequence(solution, model, graph)
    ra, group = recommend_reviewers(
        effective, model, loaded["profiles"], loaded["review_params"]
    )
    loc = touched_files(effective, model)
    print(f"solution {args.index}: {len(effective)} applied operations")
    for op in effective:
        print(f"  {json.dumps(op.to_dict(), sort_keys=True)}")
    print("touched files:")
    for f in sorted(loc):
        print(f"  {f} x{loc[f]}")
    if not group:
        print("unreviewable: no qualifying reviewer group")
        return EXIT_OK
    print(f"review availability: {ra!r}")
    print("recommended reviewers:")
    profiles = loaded["profiles"]
    for dev in sorted(group):
        profile = profiles[dev]
        print(f"  {dev} (workload {profile.workload})")
        for f in sorted(loc):
            print(f"    {f}: expertise {profile.expertise.get(f, 0.0)!r}")
    return EXIT_OK


def cmd_compare(args) -> int:
    plan = load_plan(args.plan)
    if args.out is not None:
        plan.out_dir = args.out
    report = ablation_compare(plan) if plan.ablation else run_experiment(plan)
    out = Path(plan.out_dir)
    print(f"mode: {report['mode']}")
    print(f"wrote {out / 'report.json'}")
    for name in sorted(p.name for p in out.iterdir() if p.suffix in (".csv", ".png")):
        print(f"wrote {out / name}")
    return EXIT_OK


def cmd_report(args) -> int:
    front = load_front(args.front)
    loaded = _load_common(args)
    model, graph = loaded["model"], loaded["graph"]
    keep = qual_filter_fn(args.qual_filter)
    semantic_params = loaded["semantic_params"]

    base_attributes = compute_attributes(compute_metrics(model, graph))
    ranked = sorted(
        (s for s in front.solutions if keep(s)),
        key=lambda s: (-s.fitness.qual, -s.fitness.sem, -s.fitness.ra),
    )
    rows = []
    detailed = []
    for rank, solution in enumerate(ranked):
        after_model, after_graph, effective = apply_sequence(solution, model, graph)
        after_attributes = compute_attributes(compute_metrics(after_model, after_graph))
        per_op = [
            coherence_score(
                model.classes[op.class1], model.classes[op.class2], graph,
                semantic_params,
            )
            for op in effective
        ]
        entry = solution_row(solution, front.provenance)
        entry["rank"] = rank
        entry["qa_before"] = list(base_attributes.as_tuple())
        entry["qa_after"] = list(after_attributes.as_tuple())
        entry["per_op_scs"] = per_op
        detailed.append(entry)
        rows.append(
            [rank, solution.fitness.qual, solution.fitness.sem, solution.fitness.ra,
             len(effective), ";".join(sorted(solution.reviewers))]
        )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "report.json", detailed)
    write_csv(
        out / "report.csv",
        ["rank", "qual", "sem", "ra", "applied_ops", "reviewers"],
        rows,
    )
    points = [s.fitness.as_tuple() for s in ranked]
    plots.render_front_scatter(points, out / "front_report.png")
    print(f"solutions after {args.qual_filter} filter: {len(ranked)}")
    for row in rows[:10]:
        print(f"  rank {row[0]}: qual {row[1]:.6f} sem {row[2]:.6f} ra {row[3]:.6f}")
    print(f"wrote {out / 'report.json'}")
    print(f"wrote {out / 'report.csv'}")
    print(f"wrote {out / 'front_report.png'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refsearch",
        description="Search refactoring sequences that balance design quality, "
                    "semantic coherence, and reviewer availability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="validate inputs and cache reviewer profiles")
    _add_input_args(p_ingest)
    _add_review_args(p_ingest)
    p_ingest.add_argument("--out", default="out", help="output directory (default: out)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_search = sub.add_parser("search", help="run one seeded search and write the front")
    _add_input_args(p_search)
    _add_review_args(p_search)
    _add_search_args(p_search)
    p_search.add_argument("--out", default="out", help="output directory (default: out)")
    p_search.set_defaults(func=cmd_search)

    p_rec = sub.add_parser("recommend", help="explain the reviewer group of a front solution")
    _add_input_args(p_rec)
    _add_review_args(p_rec)
    p_rec.add_argument("--front", required=True, help="front JSON file from a search run")
    p_rec.add_argument("--index", type=int, default=0,
                       help="solution index within the front (default: 0)")
    p_rec.set_defaults(func=cmd_recommend)

    p_cmp = sub.add_parser("compare", help="run an experiment plan")
    p_cmp.add_argument("--plan", required=True, help="experiment plan JSON file")
    p_cmp.add_argument("--out", help="override the plan's output directory")
    p_cmp.set_defaults(func=cmd_compare)

    p_rep = sub.add_parser("report", help="rank a front and render its figures")
    _add_input_args(p_rep)
    _add_review_args(p_rep)
    p_rep.add_argument("--front", required=True, help="front JSON file from a search run")
    p_rep.add_argument("--qual-filter", choices=["nonneg", "positive"], default="nonneg",
                       help="quality-gain filter applied before ranking (default: nonneg)")
    p_rep.add_argument("--out", default="out", help="output directory (default: out)")
    p_rep.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
