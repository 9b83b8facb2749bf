"""Readers and writers for front and report files.

All writers are deterministic: keys are sorted, rows are emitted in a
canonical order, and floats use their shortest round-trip form, so a
rerun with identical inputs and seed reproduces every file byte for
byte.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .errors import InputError
from .refactoring import RefactoringOp, Solution
from .search.core import FitnessVector, ParetoFront, Provenance


def write_json(path: str | Path, payload: object) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def solution_row(solution: Solution, provenance: Provenance | None) -> dict:
    row = {
        "genes": [op.to_dict() for op in solution.genes],
        "qual": solution.fitness.qual,
        "sem": solution.fitness.sem,
        "ra": solution.fitness.ra,
        "reviewers": sorted(solution.reviewers),
    }
    if provenance is not None:
        row["provenance"] = {
            "algorithm": provenance.algorithm,
            "seed": provenance.seed,
            "evaluations": provenance.evaluations,
        }
    return row


def write_front_json(front: ParetoFront, path: str | Path) -> None:
    rows = [solution_row(s, front.provenance) for s in front.solutions]
    write_json(path, rows)


def write_front_csv(front: ParetoFront, path: str | Path) -> None:
    prov = front.provenance
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["index", "algorithm", "seed", "evaluations", "qual", "sem", "ra",
             "reviewers", "genes"]
        )
        for i, s in enumerate(front.solutions):
            writer.writerow(
                [
                    i,
                    prov.algorithm if prov else "",
                    prov.seed if prov else "",
                    prov.evaluations if prov else "",
                    repr(s.fitness.qual),
                    repr(s.fitness.sem),
                    repr(s.fitness.ra),
                    ";".join(sorted(s.reviewers)),
                    json.dumps([op.to_dict() for op in s.genes], sort_keys=True),
                ]
            )


def load_front(path: str | Path) -> ParetoFront:
    """Read a front JSON file back into solutions with cached fitness."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"front file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"front file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(data, list):
        raise InputError(f"front file must be a JSON array: {path}")
    solutions = []
    provenance = None
    for raw in data:
        try:
            genes = tuple(RefactoringOp.from_dict(g) for g in raw["genes"])
            solution = Solution(genes=genes)
            solution.fitness = FitnessVector(
                float(raw["qual"]), float(raw["sem"]), float(raw["ra"])
            )
            solution.reviewers = frozenset(raw.get("reviewers", []))
            solutions.append(solution)
            if provenance is None and "provenance" in raw:
                p = raw["provenance"]
                provenance = Provenance(
                    str(p["algorithm"]), int(p["seed"]), int(p["evaluations"])
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad solution entry in {path}: {exc}") from exc
    return ParetoFront(solutions=solutions, provenance=provenance)


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(v) if isinstance(v, float) else v for v in row]
            )
