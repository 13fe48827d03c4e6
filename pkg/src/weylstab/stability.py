"""Stability certificates for word permutations under the psi flow.

A permutation u of arity-t words is *stable* when some level k >= 1 satisfies
psi_{k+l}(u) = psi_{k-1}(u) (x) identity**(l+1) for every l >= 0; the least
such k is its rank.  Arity-1 permutations are always stable of rank 1.

The workhorse criterion: u is stable with rank at most h + 1 as soon as some
level h splits off t - 1 trailing identity letters, i.e.
``psi_materialize(u, h).tail_identity_split(t - 1)`` succeeds.  The search
below scans levels upward; running out of levels is *inconclusive*, never a
proof of instability.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .perm_core import DEFAULT_SUPPORT_BUDGET, TuplePerm
from .psi_flow import psi_materialize

__all__ = [
    "DEFAULT_H_MAX",
    "StabilityVerdict",
    "definitional_prefix_check",
    "exact_rank_for_stable",
    "rank_one_check",
    "search_with_exact_rank",
    "stability_search",
]

DEFAULT_H_MAX = 4


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a stability search.

    ``stable`` means certified stable; the converse direction is one-sided, so
    an unstable verdict is never issued.  ``method`` records which criterion
    fired: "tail-criterion", "rank1-equations", or "t1-trivial".
    """

    stable: bool
    method: str
    certificate_h: int | None = None
    rank_upper: int | None = None
    rank_exact: int | None = None
    h_max: int | None = None

    @property
    def status(self) -> str:
        return "stable" if self.stable else "inconclusive"

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.certificate_h is not None:
            out["certificate_h"] = self.certificate_h
        if self.rank_upper is not None:
            out["rank_upper"] = self.rank_upper
        if self.rank_exact is not None:
            out["rank_exact"] = self.rank_exact
        if self.h_max is not None:
            out["h_max"] = self.h_max
        out["method"] = self.method
        return out


def rank_one_check(u: TuplePerm, budget: int | None = DEFAULT_SUPPORT_BUDGET) -> bool:
    """Exact rank-1 test for arity-3 permutations.

    u has rank 1 if and only if level 1 equals level 0 with one identity
    letter appended and level 2 equals level 1 likewise.
    """
    if u.arity != 3:
        raise ValueError("the rank-1 equations are stated for arity-3 permutations")
    one = TuplePerm.identity(u.n, 1)
    level0 = psi_materialize(u, 0, budget)
    level1 = psi_materialize(u, 1, budget)
    if level1 != level0.tensor(one, budget):
        return False
    level2 = psi_materialize(u, 2, budget)
    return level2 == level1.tensor(one, budget)


def stability_search(
    u: TuplePerm,
    h_max: int = DEFAULT_H_MAX,
    budget: int | None = DEFAULT_SUPPORT_BUDGET,
) -> StabilityVerdict:
    """Scan levels 0..h_max for a trailing-identity certificate.

    An arity-1 permutation certifies immediately.  A certificate at level h
    bounds the rank by h + 1; exhausting the scan yields an inconclusive
    verdict, which carries no claim of instability.
    """
    if h_max < 0:
        raise ValueError("h_max must be non-negative")
    t = u.arity
    if t == 1:
        return StabilityVerdict(
            True, "t1-trivial", certificate_h=0, rank_upper=1, rank_exact=1
        )
    for h in range(h_max + 1):
        level = psi_materialize(u, h, budget)
        if level.tail_identity_split(t - 1) is not None:
            return StabilityVerdict(
                True, "tail-criterion", certificate_h=h, rank_upper=h + 1
            )
    return StabilityVerdict(False, "tail-criterion", h_max=h_max)


def definitional_prefix_check(
    u: TuplePerm,
    k: int,
    l_max: int,
    budget: int | None = DEFAULT_SUPPORT_BUDGET,
) -> bool:
    """Check psi_{k+l}(u) = psi_{k-1}(u) (x) identity**(l+1) for l = 0..l_max.

    This windows the defining property of rank k; it can only refute rank k,
    never prove it, since l ranges over a finite prefix.
    """
    if k < 1:
        raise ValueError("rank candidates start at 1")
    if l_max < 0:
        raise ValueError("l_max must be non-negative")
    base = psi_materialize(u, k - 1, budget)
    for l in range(l_max + 1):
        lhs = psi_materialize(u, k + l, budget)
        rhs = base.tensor(TuplePerm.identity(u.n, l + 1), budget)
        if lhs != rhs:
            return False
    return True


def exact_rank_for_stable(
    u: TuplePerm,
    verdict: StabilityVerdict,
    budget: int | None = DEFAULT_SUPPORT_BUDGET,
) -> int:
    """Least rank candidate consistent with a certified verdict.

    Scans k = 1..rank_upper with the windowed prefix check, window length
    certificate_h + arity - k.  For certified input some k always passes, but
    the window is finite, so outside the certified families treat the answer
    as a well-tested upper estimate rather than a proof.
    """
    if not verdict.stable or verdict.certificate_h is None or verdict.rank_upper is None:
        raise ValueError("exact rank needs a certified stable verdict")
    for k in range(1, verdict.rank_upper + 1):
        if definitional_prefix_check(u, k, verdict.certificate_h + u.arity - k, budget):
            return k
    raise RuntimeError("certified verdict admitted no rank candidate")


def search_with_exact_rank(
    u: TuplePerm,
    h_max: int = DEFAULT_H_MAX,
    budget: int | None = DEFAULT_SUPPORT_BUDGET,
) -> StabilityVerdict:
    """Stability search that also fills in ``rank_exact`` when certified."""
    verdict = stability_search(u, h_max, budget)
    if verdict.stable and verdict.rank_exact is None:
        return replace(verdict, rank_exact=exact_rank_for_stable(u, verdict, budget))
    return verdict
