"""Greedy maximization under a cardinality constraint, a lazy variant
with identical output, and a brute-force optimum for small instances.

All entry points take a plain set-function handle (tuple of indices ->
float) so they run unchanged on an original objective, a weighted
sparsifier, or anything else callable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Callable

from .core import BudgetExceededError

BRUTE_BUDGET = 1_000_000

SetFunction = Callable[[tuple[int, ...]], float]


@dataclass(frozen=True)
class GreedyTrace:
    """Result of a greedy run: elements in pick order, per-step gains,
    and the number of set-function evaluations spent."""

    chosen: tuple[int, ...]
    gains: tuple[float, ...]
    evals: int

    @property
    def value(self) -> float:
        return float(sum(self.gains))


def greedy_cardinality(eval_fn: SetFunction, n: int, k: int) -> GreedyTrace:
    """Plain greedy: k rounds of full argmax scans, ties to the lowest
    index. Spends at most k*n evaluations."""
    if k < 1:
        raise ValueError("k must be at least 1")
    chosen: list[int] = []
    gains: list[float] = []
    evals = 0
    current = 0.0
    remaining = list(range(n))
    for _ in range(min(k, n)):
        best_gain = -math.inf
        best_e = -1
        for e in remaining:
            gain = eval_fn(tuple(chosen + [e])) - current
            evals += 1
            if gain > best_gain:  # strict: first max wins, lowest index
                best_gain = gain
                best_e = e
        chosen.append(best_e)
        gains.append(best_gain)
        current += best_gain
        remaining.remove(best_e)
    return GreedyTrace(tuple(chosen), tuple(gains), evals)


def lazy_greedy(eval_fn: SetFunction, n: int, k: int) -> GreedyTrace:
    """Accelerated greedy with stale-bound pruning.

    Heap entries are (-gain, index, round the gain was computed in); an
    entry is trusted only when its round tag matches the current round,
    otherwise its gain is refreshed and it is pushed back. Under a
    monotone submodular objective gains only shrink as the solution
    grows, so the chosen set (and every tie-break) matches
    greedy_cardinality exactly, at no more evaluations.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    chosen: list[int] = []
    gains: list[float] = []
    current = 0.0
    evals = 0
    heap: list[tuple[float, int, int]] = []
    for e in range(n):
        heappush(heap, (-eval_fn((e,)), e, 0))
    evals = n
    for rnd in range(min(k, n)):
        while True:
            neg_gain, e, tag = heappop(heap)
            if tag == rnd:
                chosen.append(e)
                gains.append(-neg_gain)
                current += -neg_gain
                break
            gain = eval_fn(tuple(chosen + [e])) - current
            evals += 1
            heappush(heap, (-gain, e, rnd))
    return GreedyTrace(tuple(chosen), tuple(gains), evals)


def _lex_subsets(n: int, max_size: int):
    # depth-first yields subsets in lexicographic order of their sorted tuples
    if max_size < 1:
        return

    def rec(prefix: tuple[int, ...], start: int):
        for e in range(start, n):
            s = prefix + (e,)
            yield s
            if len(s) < max_size:
                yield from rec(s, e + 1)
    yield from rec((), 0)


def brute_opt(eval_fn: SetFunction, n: int, k: int,
              budget: int = BRUTE_BUDGET) -> tuple[tuple[int, ...], float]:
    """Exact maximum of eval_fn over subsets of size at most k.

    Ties go to the lexicographically first subset (the empty set counts
    as value 0 and comes first of all).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    max_size = min(k, n)
    total = sum(math.comb(n, j) for j in range(1, max_size + 1))
    if total > budget:
        raise BudgetExceededError(
            f"{total} candidate subsets exceed the budget of {budget}")
    best_set: tuple[int, ...] = ()
    best_val = 0.0
    for s in _lex_subsets(n, max_size):
        v = eval_fn(s)
        if v > best_val:
            best_val = v
            best_set = s
    return best_set, float(best_val)
