"""Reviewer expertise, workload, and review availability.

Expertise in a file is the recency-weighted share of its commit history
a developer authored, capped at 1.  Recency is normalized over the
repository's first and last commit times.  Workload counts the distinct
pull requests and issues a developer touched inside the review window.

The availability of a refactoring sequence is the best score of any
reviewer group of bounded size whose members jointly cover every file
the sequence touches and who are all under the workload cutoff.  A
strict coverage mode instead requires every member to know every file.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .code_model import CodeModel, class_file
from .errors import ConfigError, InputError
from .refactoring import RefactoringOp

ACTIVITY_KINDS = ("pull_request", "issue")


@dataclass(frozen=True)
class CommitRecord:
    sha: str
    author: str
    timestamp: int
    files: frozenset[str]


@dataclass(frozen=True)
class ActivityEvent:
    actor: str
    timestamp: int


@dataclass(frozen=True)
class ActivityRecord:
    id: str
    kind: str  # "pull_request" or "issue"
    events: tuple[ActivityEvent, ...]


@dataclass(frozen=True)
class ReviewParams:
    window_start: int
    window_end: int
    commit_cap: int = 10
    workload_cutoff: int = 2
    max_reviewers: int = 2
    strict_coverage: bool = False

    def validate(self) -> None:
        if self.window_end < self.window_start:
            raise ConfigError("review window ends before it starts")
        if self.commit_cap < 1:
            raise ConfigError(f"commit cap must be >= 1, got {self.commit_cap}")
        if self.workload_cutoff < 0:
            raise ConfigError(f"workload cutoff must be >= 0, got {self.workload_cutoff}")
        if self.max_reviewers < 1:
            raise ConfigError(f"max reviewers must be >= 1, got {self.max_reviewers}")


@dataclass
class DeveloperProfile:
    developer: str
    expertise: dict[str, float] = field(default_factory=dict)
    workload: int = 0


def load_aliases(path: str) -> dict[str, str]:
    """Read {canonical: [aliases]} into an alias-to-canonical map."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"alias file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"alias file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"alias file must be an object: {path}")
    mapping: dict[str, str] = {}
    for canonical, aliases in data.items():
        mapping[str(canonical)] = str(canonical)
        for alias in aliases:
            mapping[str(alias)] = str(canonical)
    return mapping


def _canon(name: str, aliases: dict[str, str] | None) -> str:
    if aliases is None:
        return name
    return aliases.get(name, name)


def load_commits(path: str, aliases: dict[str, str] | None = None) -> list[CommitRecord]:
    """Read a JSON-lines commit export, unifying author aliases."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise InputError(f"commits file not found: {path}") from exc
    commits = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
            commits.append(
                CommitRecord(
                    sha=str(raw["sha"]),
                    author=_canon(str(raw["author"]), aliases),
                    timestamp=int(raw["timestamp"]),
                    files=frozenset(str(f) for f in raw["files"]),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad commit record at {path}:{lineno}: {exc}") from exc
    return commits


def load_activities(path: str, aliases: dict[str, str] | None = None) -> list[ActivityRecord]:
    """Read a JSON array of pull request / issue activity records."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"activity file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"activity file is not valid JSON: {path}: {exc}") from exc
    if not isinstance(data, list):
        raise InputError(f"activity file must be a JSON array: {path}")
    records = []
    for raw in data:
        try:
            kind = str(raw["kind"])
            if kind not in ACTIVITY_KINDS:
                raise InputError(f"bad activity kind in {path}: {kind}")
            events = tuple(
                ActivityEvent(_canon(str(e["actor"]), aliases), int(e["timestamp"]))
                for e in raw["events"]
            )
            if not events:
                raise InputError(f"activity without events in {path}: {raw['id']}")
            records.append(ActivityRecord(id=str(raw["id"]), kind=kind, events=events))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad activity record in {path}: {exc}") from exc
    return records


def repo_time_span(commits: list[CommitRecord]) -> tuple[int, int]:
    if not commits:
        raise InputError("cannot derive a time span from an empty commit list")
    times = [c.timestamp for c in commits]
    return min(times), max(times)


def commit_recency(commit: CommitRecord, repo_first: int, repo_last: int) -> float:
    """Position of a commit inside the repository's lifetime, in [0, 1]."""
    if not repo_first <= commit.timestamp <= repo_last:
        raise InputError(
            f"commit timestamp out of range: {commit.sha} at {commit.timestamp}"
        )
    if repo_last == repo_first:
        return 1.0
    return (commit.timestamp - repo_first) / (repo_last - repo_first)


def file_expertise(
    developer: str, path: str, commits: list[CommitRecord], commit_cap: int = 10
) -> float:
    """Recency-weighted authorship share of one file, capped at 1."""
    touching = [c for c in commits if path in c.files]
    if not touching:
        return 0.0
    first, last = repo_time_span(commits)
    total = sum(
        commit_recency(c, first, last) for c in touching if c.author == developer
    )
    return min(1.0, total / min(len(touching), commit_cap))


def workload(
    developer: str,
    activities: list[ActivityRecord],
    window_start: int,
    window_end: int,
) -> int:
    """Distinct pull requests plus distinct issues touched in the window."""
    seen: set[str] = set()
    for record in activities:
        if record.id in seen:
            continue
        for event in record.events:
            if event.actor == developer and window_start <= event.timestamp <= window_end:
                seen.add(record.id)
                break
    return len(seen)


def build_profiles(
    commits: list[CommitRecord],
    activities: list[ActivityRecord],
    params: ReviewParams,
) -> dict[str, DeveloperProfile]:
    """Expertise map and workload for every developer seen in the history."""
    params.validate()
    developers = {c.author for c in commits}
    developers.update(e.actor for a in activities for e in a.events)

    profiles = {d: DeveloperProfile(developer=d) for d in sorted(developers)}
    if commits:
        first, last = repo_time_span(commits)
        per_file: dict[str, int] = Counter()
        per_dev_file: dict[tuple[str, str], float] = {}
        for c in commits:
            r = commit_recency(c, first, last)
            for f in c.files:
                per_file[f] += 1
                key = (c.author, f)
                per_dev_file[key] = per_dev_file.get(key, 0.0) + r
        for (dev, f), total in per_dev_file.items():
            score = min(1.0, total / min(per_file[f], params.commit_cap))
            if score > 0.0:
                profiles[dev].expertise[f] = score
    for dev, profile in profiles.items():
        profile.workload = workload(
            dev, activities, params.window_start, params.window_end
        )
    return profiles


def touched_files(effective: list[RefactoringOp], model: CodeModel) -> Counter:
    """Files a sequence touches, as a multiset.

    Each operation contributes the distinct files of its two parameter
    classes once; repeats across operations accumulate.  Evaluated
    against the pre-application model, where every class a later
    operation names still exists.
    """
    counts: Counter = Counter()
    for op in effective:
        files = {class_file(model, op.class1), class_file(model, op.class2)}
        counts.update(files)
    return counts


def _group_score(
    group: tuple[str, ...], loc: Counter, profiles: dict[str, DeveloperProfile]
) -> float:
    total = 0.0
    for dev in group:
        expertise = profiles[dev].expertise
        for f, multiplicity in loc.items():
            total += multiplicity * expertise.get(f, 0.0)
    return total


def best_review_group(
    loc: Counter,
    effective_count: int,
    profiles: dict[str, DeveloperProfile],
    params: ReviewParams,
) -> tuple[float, frozenset[str]]:
    """Highest-scoring available reviewer group for a file multiset.

    Candidates must be under the workload cutoff and know at least one
    touched file (coverage mode) or every touched file (strict mode).
    Groups up to max_reviewers are scored by their members' summed
    expertise over the file multiset, normalized by the number of
    applied operations.  Ties prefer smaller groups, then the
    lexicographically smallest member tuple.  Returns (0, empty) when no
    group covers the files.
    """
    if not loc or effective_count <= 0:
        return 0.0, frozenset()
    files = sorted(loc)
    pool = []
    for dev in sorted(profiles):
        profile = profiles[dev]
        if profile.workload > params.workload_cutoff:
            continue
        known = [f for f in files if profile.expertise.get(f, 0.0) > 0.0]
        if params.strict_coverage:
            if len(known) == len(files):
                pool.append(dev)
        elif known:
            pool.append(dev)

    best_score = 0.0
    best_group: tuple[str, ...] | None = None
    for size in range(1, params.max_reviewers + 1):
        for group in combinations(pool, size):
            if not params.strict_coverage:
                covered = all(
                    any(profiles[d].expertise.get(f, 0.0) > 0.0 for d in group)
                    for f in files
                )
                if not covered:
                    continue
            score = _group_score(group, loc, profiles) / effective_count
            if best_group is None or score > best_score:
                best_score, best_group = score, group
            elif score == best_score and (
                len(group) < len(best_group)
                or (len(group) == len(best_group) and group < best_group)
            ):
                best_group = group
    if best_group is None:
        return 0.0, frozenset()
    return best_score, frozenset(best_group)


def recommend_reviewers(
    effective: list[RefactoringOp],
    model: CodeModel,
    profiles: dict[str, DeveloperProfile],
    params: ReviewParams,
) -> tuple[float, frozenset[str]]:
    """Availability score and reviewer group for an applied sequence."""
    params.validate()
    if not effective:
        return 0.0, frozenset()
    loc = touched_files(effective, model)
    return best_review_group(loc, len(effective), profiles, params)
