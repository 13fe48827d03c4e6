"""Exhaustive agreement check between the classifier and the flow criteria.

Every transposition of arity-3 words over {1..n} is run through three
independent deciders: the letter-pattern classifier, the rank-1 equations,
and the trailing-identity search.  The search is one-sided, so an
inconclusive outcome counts as agreeing with an unstable classification.
Any genuine three-way disagreement is recorded as a mismatch.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .perm_core import DEFAULT_SUPPORT_BUDGET, Word, all_words
from .stability import DEFAULT_H_MAX, rank_one_check, stability_search
from .transposition3 import Branch, CaseTag, Transposition3, classify

__all__ = [
    "InstanceResult",
    "VerificationReport",
    "emit_report",
    "enumerate_transpositions",
    "verify_theorem",
]


@dataclass(frozen=True)
class InstanceResult:
    a: Word
    b: Word
    verdict: str
    tag: str
    rank1: bool
    search_h: int | None

    @property
    def consistent(self) -> bool:
        stable = self.verdict == "stable"
        return stable == self.rank1 == (self.search_h is not None)


@dataclass(frozen=True)
class VerificationReport:
    n: int
    h_max: int
    budget: int | None
    total: int
    stable_count: int
    branch_counts: dict[str, int]
    case_counts: dict[str, int]
    rows: tuple[InstanceResult, ...]
    mismatches: tuple[InstanceResult, ...]
    elapsed: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "stable_count": self.stable_count,
            "branch_counts": self.branch_counts,
            "case_counts": self.case_counts,
            "mismatches": [
                {
                    "a": list(row.a),
                    "b": list(row.b),
                    "classifier": row.verdict,
                    "rank1": row.rank1,
                    "search_h": row.search_h,
                }
                for row in self.mismatches
            ],
            "h_max": self.h_max,
            "search_semantics": "one_sided",
        }


def enumerate_transpositions(n: int):
    """All transpositions of arity-3 words over {1..n}, in lexicographic order."""
    if n < 2:
        raise ValueError("need at least two letters")
    words = list(all_words(n, 3))
    for a, b in itertools.combinations(words, 2):
        yield Transposition3(n, a, b)


def _verify_instance(t: Transposition3, h_max: int, budget: int | None) -> InstanceResult:
    c = classify(t)
    u = t.permutation()
    rank1 = rank_one_check(u, budget)
    verdict = stability_search(u, h_max, budget)
    tag = c.branch.value if c.stable else c.case.value
    return InstanceResult(t.a, t.b, c.verdict, tag, rank1, verdict.certificate_h)


def _verify_chunk(args: tuple[int, int, int | None, int, int]) -> list[InstanceResult]:
    n, h_max, budget, start, stop = args
    chunk = itertools.islice(enumerate_transpositions(n), start, stop)
    return [_verify_instance(t, h_max, budget) for t in chunk]


def verify_theorem(
    n: int,
    h_max: int = DEFAULT_H_MAX,
    budget: int | None = DEFAULT_SUPPORT_BUDGET,
    parallelism: int = 1,
) -> VerificationReport:
    """Run the three deciders over every transposition and tally agreement.

    ``parallelism`` splits the enumeration into contiguous chunks handled by
    worker processes; results are reassembled in enumeration order, so the
    report does not depend on the worker count.
    """
    started = time.perf_counter()
    total = (n**3) * (n**3 - 1) // 2
    if parallelism > 1:
        bounds = [
            (
                n,
                h_max,
                budget,
                i * total // parallelism,
                (i + 1) * total // parallelism,
            )
            for i in range(parallelism)
        ]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = [row for part in pool.map(_verify_chunk, bounds) for row in part]
    else:
        rows = [_verify_instance(t, h_max, budget) for t in enumerate_transpositions(n)]
    branch_counts = {branch.value: 0 for branch in Branch}
    case_counts = {case.value: 0 for case in CaseTag}
    for row in rows:
        if row.verdict == "stable":
            branch_counts[row.tag] += 1
        else:
            case_counts[row.tag] += 1
    mismatches = tuple(row for row in rows if not row.consistent)
    return VerificationReport(
        n=n,
        h_max=h_max,
        budget=budget,
        total=total,
        stable_count=sum(branch_counts.values()),
        branch_counts=branch_counts,
        case_counts=case_counts,
        rows=tuple(rows),
        mismatches=mismatches,
        elapsed=time.perf_counter() - started,
    )


def emit_report(report: VerificationReport, format: str = "json") -> bytes:
    """Serialize a report deterministically; timing never enters the bytes."""
    if format == "json":
        return (json.dumps(report.to_json_dict(), separators=(",", ":")) + "\n").encode()
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, delimiter=";", lineterminator="\n")
        writer.writerow(["a", "b", "verdict", "branch_or_case", "rank1", "search_h"])
        for row in report.rows:
            writer.writerow(
                [
                    ",".join(str(x) for x in row.a),
                    ",".join(str(x) for x in row.b),
                    row.verdict,
                    row.tag,
                    "true" if row.rank1 else "false",
                    "none" if row.search_h is None else str(row.search_h),
                ]
            )
        return out.getvalue().encode()
    raise ValueError(f"unknown report format {format!r}")
