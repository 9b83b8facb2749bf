from __future__ import annotations

import json

import pytest

from refsearch.cli import main
from refsearch.refactoring import NULL_OP
from refsearch.reports import load_front

from synth import write_inputs


def input_flags(tmp_path, n_classes=8):
    paths = write_inputs(tmp_path / "inputs", n_classes)
    return [
        "--facts", str(paths["facts"]),
        "--commits", str(paths["commits"]),
        "--activity", str(paths["activity"]),
    ]


def search_flags(out_dir, seed=1, algorithm="nsga2"):
    return [
        "--pop", "10", "--men", "40", "--seed", str(seed),
        "--algorithm", algorithm, "--out", str(out_dir),
    ]


def test_missing_input_exits_two(tmp_path, capsys):
    code = main([
        "ingest",
        "--facts", str(tmp_path / "nope.json"),
        "--commits", str(tmp_path / "nope.jsonl"),
        "--activity", str(tmp_path / "nope2.json"),
    ])
    assert code == 2
    err = capsys.readouterr().err
    assert "input error" in err
    assert "nope.json" in err


def test_bad_alpha_exits_three(tmp_path, capsys):
    code = main(["ingest", *input_flags(tmp_path), "--alpha", "1.5",
                 "--out", str(tmp_path / "out")])
    assert code == 3
    assert "config error" in capsys.readouterr().err


def test_ingest_writes_profiles(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["ingest", *input_flags(tmp_path), "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "classes: 8" in stdout
    assert "developers:" in stdout
    payload = json.loads((out / "profiles.json").read_text())
    for profile in payload.values():
        assert set(profile) == {"workload", "expertise"}
        assert profile["workload"] >= 0


def test_search_writes_front(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(["search", *input_flags(tmp_path), *search_flags(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "algorithm: nsga2" in stdout
    assert "evaluations: 40" in stdout
    front = load_front(out / "front.json")
    assert front.solutions
    assert front.provenance.evaluations == 40
    assert (out / "front.csv").exists()


def test_search_accepts_algorithm_alias(tmp_path):
    out = tmp_path / "run"
    code = main(["search", *input_flags(tmp_path),
                 *search_flags(out, algorithm="random")])
    assert code == 0
    assert load_front(out / "front.json").provenance.algorithm == "random_search"


def test_search_rerun_is_byte_identical(tmp_path):
    flags = input_flags(tmp_path)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["search", *flags, *search_flags(out_a, seed=6)]) == 0
    assert main(["search", *flags, *search_flags(out_b, seed=6)]) == 0
    for name in ("front.json", "front.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_recommend_explains_solution(tmp_path, capsys):
    flags = input_flags(tmp_path)
    out = tmp_path / "run"
    assert main(["search", *flags, *search_flags(out)]) == 0
    capsys.readouterr()
    code = main(["recommend", *flags, "--front", str(out / "front.json"),
                 "--index", "0"])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "solution 0:" in stdout
    assert "touched files:" in stdout
    assert "recommended reviewers:" in stdout or "unreviewable" in stdout


def test_recommend_reports_unreviewable(tmp_path, capsys):
    flags = input_flags(tmp_path)
    front = tmp_path / "front.json"
    front.write_text(json.dumps([
        {"genes": [NULL_OP.to_dict()], "qual": 0.0, "sem": 0.0, "ra": 0.0}
    ]))
    code = main(["recommend", *flags, "--front", str(front)])
    assert code == 0
    assert "unreviewable: no qualifying reviewer group" in capsys.readouterr().out


def test_recommend_bad_index_exits_two(tmp_path, capsys):
    flags = input_flags(tmp_path)
    front = tmp_path / "front.json"
    front.write_text("[]")
    code = main(["recommend", *flags, "--front", str(front), "--index", "3"])
    assert code == 2
    assert "out of range" in capsys.readouterr().err


def test_compare_runs_plan(tmp_path, capsys):
    paths = write_inputs(tmp_path / "inputs", 8)
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({
        "facts": str(paths["facts"]),
        "commits": str(paths["commits"]),
        "activity": str(paths["activity"]),
        "algorithms": ["nsga2"],
        "repeats": 1,
        "population_size": 10,
        "max_evaluations": 40,
        "out_dir": str(tmp_path / "cmp"),
    }))
    code = main(["compare", "--plan", str(plan)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "mode: compare" in stdout
    assert (tmp_path / "cmp" / "report.json").exists()


def test_compare_rejects_malformed_plan(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"facts": "f", "commits": "c",
                                "activity": "a", "budget": 1}))
    assert main(["compare", "--plan", str(plan)]) == 3
    assert "unknown plan keys" in capsys.readouterr().err


def test_report_ranks_and_renders(tmp_path, capsys):
    flags = input_flags(tmp_path)
    run_dir = tmp_path / "run"
    assert main(["search", *flags, *search_flags(run_dir)]) == 0
    capsys.readouterr()
    out = tmp_path / "rep"
    code = main(["report", *flags, "--front", str(run_dir / "front.json"),
                 "--qual-filter", "nonneg", "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "solutions after nonneg filter:" in stdout
    for name in ("report.json", "report.csv", "front_report.png"):
        assert (out / name).exists(), name
    detailed = json.loads((out / "report.json").read_text())
    if detailed:
        entry = detailed[0]
        assert entry["rank"] == 0
        assert len(entry["qa_before"]) == len(entry["qa_after"]) == 6
        assert len(entry["per_op_scs"]) <= 5


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["search", "--help"])
    assert exc.value.code == 0
    # collapse argparse line wrapping before matching
    text = " ".join(capsys.readouterr().out.split())
    for needle in ("default: 100", "default: 0.9", "default: 0.05",
                   "default: 5", "default: 2", "default: 10",
                   "default: 0.8", "default: nsga2"):
        assert needle in text, needle
