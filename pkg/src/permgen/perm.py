"""Exact permutation arithmetic on {1..n}.

Points are 1-based in every public function. Internally a permutation keeps a
0-based image tuple so the kernels can consume it without conversion.

Composition is the right action: ``compose(p, q)`` applies ``p`` first and then
``q``, so ``compose(p, q)(i) == q(p(i))``. ``p * q`` is the same product.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Raised on invalid permutation data or mismatched degrees."""


class CycleParseError(PermutationError):
    """Raised when cycle-notation text cannot be parsed."""


class Permutation:
    """Immutable bijection of {1..n}.

    ``Permutation([2, 3, 1])`` is the 3-cycle (1,2,3): position ``i`` of the
    sequence holds the image of point ``i + 1``.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if n < 1:
            raise PermutationError("degree must be at least 1")
        if sorted(img) != list(range(n)):
            raise PermutationError(f"not a bijection of 1..{n}: {[x + 1 for x in img]}")
        object.__setattr__(self, "_img", img)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def _from_zero_based(cls, img: Sequence[int]) -> "Permutation":
        # trusted path: caller guarantees a valid 0-based image tuple
        p = object.__new__(cls)
        object.__setattr__(p, "_img", tuple(img))
        object.__setattr__(p, "_hash", None)
        return p

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based images: ``images[i - 1]`` is the image of point ``i``."""
        return tuple(x + 1 for x in self._img)

    @property
    def array_form(self) -> tuple[int, ...]:
        """0-based image tuple, as handed to the kernels."""
        return self._img

    def __call__(self, point: int) -> int:
        if not 1 <= point <= len(self._img):
            raise PermutationError(f"point {point} outside 1..{len(self._img)}")
        return self._img[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._img))
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, m: int) -> "Permutation":
        return power(self, m)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self):
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))


@dataclass(frozen=True)
class CycleDecomposition:
    degree: int
    cycles: tuple[tuple[int, ...], ...]
    fixed_points: frozenset[int]

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def to_permutation(self) -> Permutation:
        return from_cycles(self.cycles, self.degree)


def identity(n: int) -> Permutation:
    if n < 1:
        raise PermutationError("degree must be at least 1")
    return Permutation._from_zero_based(range(n))


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    _check_degrees(p, q)
    qi = q._img
    return Permutation._from_zero_based([qi[x] for x in p._img])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation._from_zero_based(inv)


def power(p: Permutation, m: int) -> Permutation:
    if m < 0:
        return power(inverse(p), -m)
    result = identity(p.degree)
    base = p
    while m:
        if m & 1:
            result = compose(result, base)
        base = compose(base, base)
        m >>= 1
    return result


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    """Disjoint cycles in canonical form: each cycle starts at its minimum and
    cycles are sorted by first entry; fixed points are listed separately."""
    img = p._img
    seen = [False] * len(img)
    cycles = []
    fixed = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = [start + 1]
        seen[start] = True
        x = img[start]
        while x != start:
            cyc.append(x + 1)
            seen[x] = True
            x = img[x]
        if len(cyc) == 1:
            fixed.append(start + 1)
        else:
            cycles.append(tuple(cyc))
    # scanning starts in increasing order, so each cycle already begins at its minimum
    return CycleDecomposition(len(img), tuple(cycles), frozenset(fixed))


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Lengths of all orbits, fixed points included, in decreasing order."""
    d = cycle_decomposition(p)
    return tuple(sorted(d.cycle_lengths + (1,) * len(d.fixed_points), reverse=True))


def order(p: Permutation) -> int:
    return math.lcm(1, *cycle_decomposition(p).cycle_lengths)


def sign(p: Permutation) -> int:
    d = cycle_decomposition(p)
    n_orbits = len(d.cycles) + len(d.fixed_points)
    return -1 if (p.degree - n_orbits) % 2 else 1


def support(p: Permutation) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(p._img) if i != x)


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(p._img) if i == x)


def is_cycle(p: Permutation) -> bool:
    """True when ``p`` has exactly one cycle of length at least 2."""
    return len(cycle_decomposition(p).cycles) == 1


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    """Build a permutation of degree ``n`` from disjoint cycles (1-based)."""
    img = list(range(n))
    seen = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= n:
                raise PermutationError(f"point {x} outside 1..{n}")
            if x in seen:
                raise PermutationError(f"point {x} repeated")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._from_zero_based(img)


def _wrap(x: int, n: int) -> int:
    # residue 0 maps to n
    return (x - 1) % n + 1


def step_cycle(length: int, start: int, n: int) -> Permutation:
    """The cycle (start, start+1, ..., start+length-1) with entries mod n."""
    if not 1 <= length <= n:
        raise PermutationError(f"cycle length {length} not in 1..{n}")
    if not 1 <= start <= n:
        raise PermutationError(f"start point {start} not in 1..{n}")
    return from_cycles([[_wrap(start + r, n) for r in range(length)]], n)


def stacked_cycles(length: int, start: int, count: int, n: int) -> Permutation:
    """Product of ``count`` consecutive step cycles of the given length,
    starting at ``start``, ``start + length``, ... (entries mod n).

    The constituent cycles must be disjoint; overlapping supports raise.
    """
    if not 1 <= length <= n:
        raise PermutationError(f"cycle length {length} not in 1..{n}")
    if not 1 <= count <= n // length:
        raise PermutationError(f"count {count} not in 1..{n // length}")
    cycles = [
        [_wrap(start + length * c + r, n) for r in range(length)] for c in range(count)
    ]
    try:
        return from_cycles(cycles, n)
    except PermutationError as exc:
        raise PermutationError(f"stacked cycles overlap: {exc}") from None


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1,6,7)(2,5,8)"``.

    The degree is always supplied by the caller; ``"()"`` is the identity.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise CycleParseError("empty cycle text")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise CycleParseError(f"unexpected text at offset {pos}: {compact!r}")
        pos = m.end()
        body = m.group(1)
        if not body:
            continue
        parts = body.split(",")
        if any(not part.isdigit() for part in parts):
            raise CycleParseError(f"malformed cycle ({body})")
        cycles.append([int(part) for part in parts])
    if pos != len(compact):
        raise CycleParseError(f"unexpected text at offset {pos}: {compact!r}")
    try:
        return from_cycles(cycles, n)
    except CycleParseError:
        raise
    except PermutationError as exc:
        raise CycleParseError(str(exc)) from None


def format_cycles(p: Permutation) -> str:
    cycles = cycle_decomposition(p).cycles
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)
