"""Ground-truth machinery for permutation groups given by generators.

Everything here is exact: orbits, block systems, a deterministic base and
strong generating set (BSGS), a brute-force closure oracle and a bounded
measurement of multiple transitivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .perm import Permutation, PermutationError, sign

DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_CLOSURE_CAP = 10**6


class GroupError(ValueError):
    pass


class NotTransitiveError(GroupError):
    pass


class ClosureOverflow(GroupError):
    """The closure passed its cap; use the BSGS order instead."""

    def __init__(self, cap):
        super().__init__(f"closure exceeds {cap} elements")
        self.cap = cap


@dataclass(frozen=True)
class GroupHandle:
    degree: int
    generators: tuple[Permutation, ...]

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = tuple(generators)
        if not gens:
            raise GroupError("at least one generator is required")
        n = gens[0].degree if degree is None else degree
        for g in gens:
            if g.degree != n:
                raise PermutationError(f"generator of degree {g.degree} in a group of degree {n}")
        object.__setattr__(self, "degree", n)
        object.__setattr__(self, "generators", gens)

    @property
    def arrays(self) -> list[tuple[int, ...]]:
        return [g.array_form for g in self.generators]

    def order_bound(self) -> int:
        """n!, or n!/2 when every generator is even."""
        full = math.factorial(self.degree)
        if self.degree >= 2 and all(sign(g) == 1 for g in self.generators):
            return full // 2
        return full


@dataclass(frozen=True)
class BlockSystem:
    block_size: int
    blocks: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class TransitivityDegree:
    t: int
    lower_bound: bool
    """True when the tuple budget stopped the measurement; ``t`` is then only
    a lower bound."""


@dataclass
class BSGS:
    degree: int
    base: list[int]
    strong_generators: list[Permutation]
    level_generators: list[list[int]]
    transversal_sizes: list[int]
    order: int
    _orbits: list[list[int]] = field(repr=False)
    _reps: list[list[Sequence[int]]] = field(repr=False)
    _index: list[dict[int, int]] = field(repr=False, default_factory=list)

    def __post_init__(self):
        self._index = [{x: r for r, x in enumerate(orb)} for orb in self._orbits]

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Strip ``p`` through the chain; returns the residue and the level
        where stripping stopped (``len(base)`` if it went all the way)."""
        if p.degree != self.degree:
            raise PermutationError("degree mismatch")
        h = list(p.array_form)
        for l, b in enumerate(self.base):
            r = self._index[l].get(h[b - 1])
            if r is None:
                return Permutation._from_zero_based(h), l
            u = self._reps[l][r]
            inv = [0] * self.degree
            for i, x in enumerate(u):
                inv[int(x)] = i
            h = [inv[x] for x in h]
        return Permutation._from_zero_based(h), len(self.base)

    def contains(self, p: Permutation) -> bool:
        h, level = self.sift(p)
        return level == len(self.base) and h.is_identity()


def _check_point(g: GroupHandle, point: int) -> None:
    if not 1 <= point <= g.degree:
        raise GroupError(f"point {point} outside 1..{g.degree}")


def orbit(g: GroupHandle, point: int) -> frozenset[int]:
    _check_point(g, point)
    return frozenset(x + 1 for x in kernels.orbit(g.arrays, g.degree, point - 1))


def is_transitive(g: GroupHandle) -> bool:
    return len(kernels.orbit(g.arrays, g.degree, 0)) == g.degree


def _require_transitive(g: GroupHandle) -> None:
    if not is_transitive(g):
        raise NotTransitiveError("group is not transitive")


def _blocks_from_labels(g: GroupHandle, labels: Sequence[int]) -> BlockSystem:
    cells: dict[int, list[int]] = {}
    for x, root in enumerate(labels):
        cells.setdefault(root, []).append(x + 1)
    blocks = tuple(frozenset(c) for _, c in sorted(cells.items()))
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise AssertionError(f"unequal block sizes {sorted(sizes)}")
    lookup = {x: b for b in blocks for x in b}
    for gen in g.generators:
        for blk in blocks:
            image = frozenset(gen(x) for x in blk)
            if lookup[next(iter(image))] != image:
                raise AssertionError("partition is not invariant under the generators")
    return BlockSystem(sizes.pop(), blocks)


def minimal_block(g: GroupHandle, seed_pair: tuple[int, int]) -> BlockSystem | None:
    """Finest block system with both seeds in one cell, or None when that
    system is the single block {1..n}."""
    alpha, beta = seed_pair
    _check_point(g, alpha)
    _check_point(g, beta)
    if alpha == beta:
        raise GroupError("seed points must be distinct")
    _require_transitive(g)
    labels = kernels.minimal_block(g.arrays, g.degree, alpha - 1, beta - 1)
    if all(x == 0 for x in labels):
        return None
    return _blocks_from_labels(g, labels)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def is_primitive(g: GroupHandle) -> bool:
    _require_transitive(g)
    n = g.degree
    if n < 2:
        raise GroupError("primitivity needs degree at least 2")
    if _is_prime(n):
        return True
    arrays = g.arrays
    for beta in range(1, n):
        labels = kernels.minimal_block(arrays, n, 0, beta)
        if any(labels):
            return False
    return True


def bsgs(g: GroupHandle) -> BSGS:
    n = g.degree
    base, strong, level_gens, orbits, reps = kernels.schreier_sims(
        g.arrays, n, g.order_bound()
    )
    sizes = [len(o) for o in orbits]
    return BSGS(
        degree=n,
        base=[b + 1 for b in base],
        strong_generators=[Permutation._from_zero_based([int(x) for x in s]) for s in strong],
        level_generators=[list(lg) for lg in level_gens],
        transversal_sizes=sizes,
        order=math.prod(sizes),
        _orbits=[list(o) for o in orbits],
        _reps=reps,
    )


def group_order(g: GroupHandle) -> int:
    return bsgs(g).order


def closure_order_oracle(g: GroupHandle, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    """Element count by brute-force closure; raises ClosureOverflow past cap."""
    size = kernels.closure_size(g.arrays, g.degree, cap)
    if size < 0:
        raise ClosureOverflow(cap)
    return size


def transitivity_degree(
    g: GroupHandle, max_t: int, budget: int = DEFAULT_TUPLE_BUDGET
) -> TransitivityDegree:
    """Largest t <= max_t such that the orbit of (1, ..., t) has all
    n!/(n-t)! ordered tuples. Stops with a flagged lower bound as soon as a
    full tuple orbit would exceed ``budget``."""
    _require_transitive(g)
    n = g.degree
    arrays = g.arrays
    best = 1
    for t in range(2, min(max_t, n) + 1):
        full = math.perm(n, t)
        if full > budget:
            return TransitivityDegree(best, True)
        if kernels.tuple_orbit_size(arrays, n, t, budget) != full:
            return TransitivityDegree(best, False)
        best = t
    return TransitivityDegree(best, False)


def is_t_transitive(g: GroupHandle, t: int, budget: int = DEFAULT_TUPLE_BUDGET) -> bool | None:
    """Whether the orbit of (1, ..., t) is every ordered t-tuple of distinct
    points; None when that orbit would exceed ``budget``."""
    n = g.degree
    if not 1 <= t <= n:
        raise GroupError(f"t={t} outside 1..{n}")
    full = math.perm(n, t)
    if full > budget:
        return None
    return kernels.tuple_orbit_size(g.arrays, n, t, budget) == full
