"""Matroid oracles: uniform and partition families, independence checks,
and bounded enumeration of independent sets.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .core import BudgetExceededError, GroundSet, Subset

ENUMERATION_BUDGET = 1_000_000


class MatroidOracle:
    """Base oracle: subclasses implement _independent on validated frozensets.

    rank is the maximum independent-set size; subclasses that know it in
    closed form override the property.
    """

    def __init__(self, ground: GroundSet):
        self.ground = ground

    @property
    def n(self) -> int:
        return self.ground.n

    def is_independent(self, subset: Subset) -> bool:
        return self._independent(self.ground.validate_subset(subset))

    def _independent(self, s: frozenset) -> bool:
        raise NotImplementedError

    @property
    def rank(self) -> int:
        # generic fallback: grow greedily, valid by the exchange property
        current: set[int] = set()
        grew = True
        while grew:
            grew = False
            for e in range(self.n):
                if e not in current and self._independent(frozenset(current | {e})):
                    current.add(e)
                    grew = True
        return len(current)


class UniformMatroid(MatroidOracle):
    """Independent sets are all subsets of size at most k."""

    def __init__(self, ground: GroundSet, k: int):
        if k < 0:
            raise ValueError("capacity must be nonnegative")
        super().__init__(ground)
        self.k = int(k)

    def _independent(self, s: frozenset) -> bool:
        return len(s) <= self.k

    @property
    def rank(self) -> int:
        return min(self.k, self.n)

    def __repr__(self) -> str:
        return f"UniformMatroid(n={self.n}, k={self.k})"


class PartitionMatroid(MatroidOracle):
    """Blocks partition the ground set; at most cap_b picks per block."""

    def __init__(self, ground: GroundSet, blocks, capacities):
        super().__init__(ground)
        blocks = tuple(tuple(sorted(set(int(e) for e in b))) for b in blocks)
        capacities = tuple(int(c) for c in capacities)
        if len(blocks) != len(capacities):
            raise ValueError("one capacity per block required")
        if any(c < 0 for c in capacities):
            raise ValueError("capacities must be nonnegative")
        seen: set[int] = set()
        for b in blocks:
            for e in b:
                if not 0 <= e < ground.n:
                    raise IndexError(f"block element {e} out of range")
                if e in seen:
                    raise ValueError(f"element {e} appears in two blocks")
                seen.add(e)
        if len(seen) != ground.n:
            raise ValueError("blocks must cover the ground set")
        self.blocks = blocks
        self.capacities = capacities
        self._block_of = {e: b for b, blk in enumerate(blocks) for e in blk}

    def _independent(self, s: frozenset) -> bool:
        counts = [0] * len(self.blocks)
        for e in s:
            b = self._block_of[e]
            counts[b] += 1
            if counts[b] > self.capacities[b]:
                return False
        return True

    @property
    def rank(self) -> int:
        return sum(min(c, len(b)) for b, c in zip(self.blocks, self.capacities))

    def __repr__(self) -> str:
        return f"PartitionMatroid(blocks={self.blocks}, capacities={self.capacities})"


def enumerate_independent(matroid: MatroidOracle,
                          budget: int = ENUMERATION_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield every nonempty independent set once, smaller sets first and
    lexicographic within a size. Downward closure lets whole size levels be
    skipped once they come up empty.

    Raises BudgetExceededError after `budget` yields.
    """
    n = matroid.n
    yielded = 0
    for size in range(1, n + 1):
        any_at_size = False
        for combo in itertools.combinations(range(n), size):
            if matroid.is_independent(combo):
                any_at_size = True
                yielded += 1
                if yielded > budget:
                    raise BudgetExceededError(
                        f"more than {budget} independent sets")
                yield combo
        if not any_at_size:
            break


def check_matroid_axioms(matroid: MatroidOracle) -> tuple[bool, str | None]:
    """Exhaustive check of the three axioms; intended for n <= 8.

    Returns (True, None) or (False, description of the violated axiom).
    """
    n = matroid.n
    if n > 8:
        raise BudgetExceededError("axiom check is exhaustive, needs n <= 8")
    subsets = [frozenset(s) for size in range(n + 1)
               for s in itertools.combinations(range(n), size)]
    indep = {s: matroid.is_independent(s) for s in subsets}
    if not indep[frozenset()]:
        return False, "empty set not independent"
    for s in subsets:
        if indep[s]:
            for e in s:
                if not indep[s - {e}]:
                    return False, f"downward closure fails: {sorted(s)} minus {e}"
    for a in subsets:
        if not indep[a]:
            continue
        for b in subsets:
            if indep[b] and len(b) > len(a):
                if not any(indep[a | {e}] for e in b - a):
                    return False, f"exchange fails: A={sorted(a)}, B={sorted(b)}"
    return True, None
