"""The layered flow psi of a word permutation.

For a permutation u of arity-t words, level k of the flow acts on words of
arity t + k.  Level 0 is plainly the inverse of u.  For k >= 1 the level is a
left-to-right product of 2k + 1 identity-padded copies of u: first k + 1
inverse copies whose window slides from the far right to the far left, then
k direct copies sliding right again, stopping one short of where the inverse
sweep started.  Level 1, for instance, applies (1 (x) u^-1), then (u^-1 (x) 1),
then (1 (x) u).

Two evaluation strategies are provided.  ``psi_apply`` pushes a single word
through the factor list in O(k * t) window lookups without building anything.
``psi_materialize`` produces the product as a sparse ``TuplePerm``; its
support can reach (k+1) * |support(u)| * n**k entries, so the estimate is
checked against a budget before any storage happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm_core import (
    DEFAULT_SUPPORT_BUDGET,
    BudgetExceededError,
    TuplePerm,
    Word,
    all_words,
    check_word,
)

__all__ = ["PsiFactor", "PsiFactorization", "psi_factors", "psi_apply", "psi_materialize"]


@dataclass(frozen=True)
class PsiFactor:
    """One identity-padded copy of the base permutation or of its inverse."""

    pad_left: int
    use_inverse: bool
    pad_right: int


@dataclass(frozen=True)
class PsiFactorization:
    """The full factor list for one level, in application order."""

    base: TuplePerm
    k: int
    factors: tuple[PsiFactor, ...]


def psi_factors(u: TuplePerm, k: int) -> PsiFactorization:
    """Factor list for level ``k``, leftmost factor applied first.

    >>> from .perm_core import TuplePerm
    >>> u = TuplePerm.transposition(2, (1, 1, 1), (2, 2, 2))
    >>> [(f.pad_left, f.use_inverse, f.pad_right) for f in psi_factors(u, 1).factors]
    [(1, True, 0), (0, True, 1), (1, False, 0)]
    """
    if k < 0:
        raise ValueError("level must be non-negative")
    if k == 0:
        factors = (PsiFactor(0, True, 0),)
    else:
        inverse_sweep = tuple(PsiFactor(k - i, True, i) for i in range(k + 1))
        direct_sweep = tuple(PsiFactor(i, False, k - i) for i in range(1, k + 1))
        factors = inverse_sweep + direct_sweep
    return PsiFactorization(u, k, factors)


def _window_tables(u: TuplePerm, factors: Sequence[PsiFactor]):
    """Per-factor (offset, window map) pairs shared by both evaluators."""
    forward = dict(u.moved)
    backward = {image: w for w, image in forward.items()}
    return [(f.pad_left, backward if f.use_inverse else forward) for f in factors]


def psi_apply(u: TuplePerm, k: int, w: Sequence[int]) -> Word:
    """Image of one word under level ``k``, evaluated lazily."""
    word = check_word(w, u.n)
    if len(word) != u.arity + k:
        raise ValueError(f"level {k} of an arity-{u.arity} base acts on arity-{u.arity + k} words")
    tables = _window_tables(u, psi_factors(u, k).factors)
    t = u.arity
    for offset, table in tables:
        window = word[offset : offset + t]
        image = table.get(window)
        if image is not None:
            word = word[:offset] + image + word[offset + t :]
    return word


def psi_materialize(
    u: TuplePerm, k: int, budget: int | None = DEFAULT_SUPPORT_BUDGET
) -> TuplePerm:
    """Level ``k`` as a sparse permutation.

    Every moved point of the product carries a support word of ``u`` in some
    window, so the candidate set is the union over window offsets of
    prefix + support word + suffix.  Each candidate is pushed through the
    factor list; fixed points are discarded.
    """
    t, n = u.arity, u.n
    factors = psi_factors(u, k).factors
    offsets = sorted({f.pad_left for f in factors})
    estimate = len(offsets) * len(u.moved) * n**k
    if budget is not None and estimate > budget:
        raise BudgetExceededError(estimate, budget)
    tables = _window_tables(u, factors)
    moved: dict[Word, Word] = {}
    for j in offsets:
        for s in u.moved:
            for prefix in all_words(n, j):
                head = prefix + s
                for suffix in all_words(n, k - j):
                    w = head + suffix
                    x = w
                    for offset, table in tables:
                        window = x[offset : offset + t]
                        image = table.get(window)
                        if image is not None:
                            x = x[:offset] + image + x[offset + t :]
                    if x != w:
                        moved[w] = x
    return TuplePerm(n, t + k, moved, validate=False)
