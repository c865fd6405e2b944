"""Admissibility of (n, k, sign) triples and the explicit generating pairs.

Every admissible triple gets one deterministic pair ``(a, b)`` of elements of
order ``k`` and the requested sign. Pairs are assembled only from the product
definitions of step cycles; the closed forms for ``a^-1 b`` are left to tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .perm import (
    Permutation,
    compose,
    from_cycles,
    order,
    sign as perm_sign,
    stacked_cycles,
    step_cycle,
)


class InadmissibleTriple(ValueError):
    """The triple has no construction (it is outside the admissible set)."""

    def __init__(self, n, k, sign, reason):
        super().__init__(f"({n},{k},{sign:+d}) is not admissible: {reason}")
        self.reason = reason


class ExclusionReason(str, enum.Enum):
    K_ODD_REQUIRES_PLUS = "k_odd_requires_plus"
    POWER_OF_TWO_TOP = "power_of_two_top"
    SIX_SIX = "six_six"
    OUT_OF_RANGE = "out_of_range"


class CaseLabel(str, enum.Enum):
    SmallK_i = "SmallK_i"
    SmallK_ii = "SmallK_ii"
    SmallK_iii = "SmallK_iii"
    SmallK_iv = "SmallK_iv"
    SmallK_v = "SmallK_v"
    SmallK_vi = "SmallK_vi"
    Special_6_3 = "Special_6_3"
    Special_7_3 = "Special_7_3"
    Special_8_3 = "Special_8_3"
    A_kcycle = "A_kcycle"
    A_kcycle_6_4 = "A_kcycle_6_4"
    A_kcycle_k_eq_n = "A_kcycle_k_eq_n"
    A_even = "A_even"
    A_even_k_eq_n_minus_2 = "A_even_k_eq_n_minus_2"
    # the (6,4,+1) replacement b = (1,3,5,6)(2,4); name kept for record compatibility
    A_even_6_6sign_minus = "A_even_6_6sign_minus"
    B_general = "B_general"
    B_7_6 = "B_7_6"

    @property
    def is_small_k(self) -> bool:
        return self.value.startswith("SmallK")

    @property
    def is_special(self) -> bool:
        return self.value.startswith("Special")

    @property
    def is_a_even(self) -> bool:
        return self.value.startswith("A_even")

    @property
    def is_condition_b(self) -> bool:
        return self.value.startswith("B_")


SMALL_K_LABELS = tuple(c for c in CaseLabel if c.is_small_k)


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class OmegaTriple:
    n: int
    k: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def j(self) -> int:
        """Residue of n mod k in {0..k-1}."""
        return self.n % self.k

    @property
    def quotient(self) -> int:
        return self.n // self.k

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.sign)

    def __str__(self):
        return f"({self.n},{self.k},{self.sign:+d})"


@dataclass(frozen=True)
class Admissibility:
    member: bool
    exclusion_reason: ExclusionReason | None = None
    d_equals_one: bool = False

    def __post_init__(self):
        if self.member == (self.exclusion_reason is not None):
            raise ValueError("member XOR exclusion_reason must hold")


@dataclass(frozen=True)
class CycleShape:
    """Cycle layout for the case k in {n-1, n}, k even and not a power of two,
    before points are filled in."""

    n: int
    q: int
    m: int
    t: int
    l: int
    split_first: bool
    n_fixed: int
    split_second: bool = False

    @property
    def block(self) -> int:
        return 2**self.m

    @property
    def lengths(self) -> tuple[int, ...]:
        """Cycle lengths left to right, 1-cycles included."""
        out = [self.q]
        two_m = [self.block] * self.t
        half = self.block // 2
        if self.split_first:
            two_m = [half, half] + two_m[1:]
        elif self.split_second:
            two_m = two_m[:1] + [half, half] + two_m[2:]
        out += two_m
        out += [2] * self.l
        out += [1] * self.n_fixed
        return tuple(out)

    def fill(self) -> Permutation:
        """Place 1..n into the cycles from left to right."""
        cycles = []
        start = 1
        for length in self.lengths:
            cycles.append(list(range(start, start + length)))
            start += length
        assert start - 1 == self.n
        return from_cycles(cycles, self.n)


@dataclass(frozen=True)
class GeneratorPair:
    triple: OmegaTriple
    a: Permutation
    b: Permutation
    case: CaseLabel


def classify(n: int, k: int, sign: int) -> Admissibility:
    if not (n >= k >= 3) or sign not in (1, -1):
        return Admissibility(False, ExclusionReason.OUT_OF_RANGE)
    if k % 2 == 1 and sign != 1:
        return Admissibility(False, ExclusionReason.K_ODD_REQUIRES_PLUS)
    if k in (n - 1, n) and _is_power_of_two(k) and sign != -1:
        return Admissibility(False, ExclusionReason.POWER_OF_TWO_TOP)
    if (n, k, sign) == (6, 6, 1):
        return Admissibility(False, ExclusionReason.SIX_SIX)
    return Admissibility(True, d_equals_one=(n, k, sign) == (3, 3, 1))


def _require_member(triple: OmegaTriple) -> None:
    adm = classify(*triple.as_tuple())
    if not adm.member:
        raise InadmissibleTriple(triple.n, triple.k, triple.sign, adm.exclusion_reason.value)


def _uses_first_family(triple: OmegaTriple) -> bool:
    """Whether families (i)-(ii) carry the requested sign (else (iii)-(vi))."""
    k, f = triple.k, triple.quotient
    if triple.sign == 1:
        return k % 2 == 1 or (k % 2 == 0 and f % 2 == 0)
    return k % 2 == 0 and f % 2 == 1


_SPECIAL = {
    (6, 3, 1): CaseLabel.Special_6_3,
    (7, 3, 1): CaseLabel.Special_7_3,
    (8, 3, 1): CaseLabel.Special_8_3,
}


def select_case(triple: OmegaTriple) -> CaseLabel:
    _require_member(triple)
    n, k, s = triple.as_tuple()
    j = triple.j
    if 2 * k <= n:
        if (n, k, s) in _SPECIAL:
            return _SPECIAL[(n, k, s)]
        if _uses_first_family(triple):
            return CaseLabel.SmallK_i if j == k - 1 else CaseLabel.SmallK_ii
        if j == k - 1:
            return CaseLabel.SmallK_iii
        if j not in (0, 1):
            return CaseLabel.SmallK_iv
        if (k, j) == (4, 1):
            return CaseLabel.SmallK_vi
        return CaseLabel.SmallK_v
    if k % 2 == 0 and s == 1:
        if k >= n - 1:
            return CaseLabel.B_7_6 if (n, k) == (7, 6) else CaseLabel.B_general
        if k == n - 2:
            return CaseLabel.A_even_6_6sign_minus if n == 6 else CaseLabel.A_even_k_eq_n_minus_2
        return CaseLabel.A_even
    if k == n:
        return CaseLabel.A_kcycle_k_eq_n
    if (n, k) == (6, 4):
        return CaseLabel.A_kcycle_6_4
    return CaseLabel.A_kcycle


def build_shape(n: int, k: int) -> CycleShape:
    """Greedy cycle layout: one odd-part cycle, as many 2^m-cycles as fit, then
    as many 2-cycles as fit; one 2^m-cycle is halved if the result would be
    odd."""
    if k not in (n - 1, n) or k % 2 or _is_power_of_two(k):
        raise ValueError(f"no cycle shape for (n,k)=({n},{k})")
    m = (k & -k).bit_length() - 1
    q = k >> m
    block = 2**m
    t = (n - q) // block
    rest = n - q - block * t
    l = rest // 2 if m >= 2 else 0
    total = q + block * t + 2 * l
    assert n - 1 <= total <= n
    n_fixed = n - total
    # q-cycle is even; every 2^m-cycle and 2-cycle is odd
    split = (t + l) % 2 == 1
    # For m = 1 and k = n, halving the first 2-cycle leaves a point fixed by
    # both a and its translate, so the second 2-cycle is halved instead.
    second = split and m == 1 and k == n
    return CycleShape(n=n, q=q, m=m, t=t, l=l, split_first=split and not second,
                      n_fixed=n_fixed, split_second=second)


def translate(p: Permutation, shift: int) -> Permutation:
    """Conjugate-by-rotation: every point x in the cycles of p becomes x+shift mod n."""
    n = p.degree
    img = [0] * n
    for i, x in enumerate(p.array_form):
        img[(i + shift) % n] = (x + shift) % n
    return Permutation._from_zero_based(img)


def _small_k_pair(triple: OmegaTriple, case: CaseLabel) -> tuple[Permutation, Permutation]:
    n, k = triple.n, triple.k
    f = triple.quotient
    a0 = stacked_cycles(k, 1, f, n)
    b0 = stacked_cycles(k, k, f, n)
    swap = step_cycle(3, k, n)
    if case in (CaseLabel.SmallK_i, CaseLabel.Special_6_3, CaseLabel.Special_7_3,
                CaseLabel.Special_8_3):
        return a0, b0
    if case is CaseLabel.SmallK_ii:
        return a0, compose(b0, swap)
    if case in (CaseLabel.SmallK_iii, CaseLabel.SmallK_iv):
        a = compose(a0, step_cycle(2, f * k + 1, n))
        b = compose(b0, step_cycle(2, k - 2, n))
        if case is CaseLabel.SmallK_iv:
            b = compose(b, swap)
        return a, b
    half = k // 2
    # k <= n/2 gives f >= 2, so both stacked factors are nonempty
    a = compose(stacked_cycles(k, 1, f - 1, n), stacked_cycles(half, (f - 1) * k + 1, 2, n))
    b = compose(stacked_cycles(k, k, f - 1, n), stacked_cycles(half, f * k, 2, n))
    if case is CaseLabel.SmallK_v:
        b = compose(b, swap)
    return a, b


_SPECIAL_B = {
    CaseLabel.Special_6_3: [[3, 4, 5]],
    CaseLabel.Special_7_3: [[1, 2, 7], [3, 4, 5]],
    CaseLabel.Special_8_3: [[1, 6, 7], [2, 5, 8]],
}


def _kcycle_b(n: int, k: int) -> Permutation:
    # (1, 2, ..., 2k-n, k+1, ..., n)
    return from_cycles([list(range(1, 2 * k - n + 1)) + list(range(k + 1, n + 1))], n)


def build_pair(triple: OmegaTriple) -> GeneratorPair:
    case = select_case(triple)
    n, k = triple.n, triple.k
    if case.is_small_k or case.is_special:
        a, b = _small_k_pair(triple, case)
        if case.is_special:
            b = from_cycles(_SPECIAL_B[case], n)
    elif case is CaseLabel.A_kcycle:
        a = step_cycle(k, 1, n)
        b = _kcycle_b(n, k)
    elif case is CaseLabel.A_kcycle_6_4:
        a = step_cycle(4, 1, 6)
        b = from_cycles([[1, 3, 5, 6]], 6)
    elif case is CaseLabel.A_kcycle_k_eq_n:
        a = step_cycle(n, 1, n)
        b = compose(a, step_cycle(3, 1, n))
    elif case.is_a_even:
        a, b = even_pair_unmodified(n, k)
        if case is CaseLabel.A_even_k_eq_n_minus_2:
            b = compose(b, step_cycle(3, 1, n))
        elif case is CaseLabel.A_even_6_6sign_minus:
            b = from_cycles([[1, 3, 5, 6], [2, 4]], 6)
    elif case is CaseLabel.B_7_6:
        a = from_cycles([[1, 2, 3], [4, 5], [6, 7]], 7)
        b = from_cycles([[2, 3, 4], [5, 6], [7, 1]], 7)
    else:
        shape = build_shape(n, k)
        a = shape.fill()
        b = translate(a, shape.q - 2)
    pair = GeneratorPair(triple, a, b, case)
    _check_pair(pair)
    return pair


def even_pair_unmodified(n: int, k: int) -> tuple[Permutation, Permutation]:
    """a = (1..k)(k+1,k+2), b = (1..2k-n, k+1..n)(2k-n+1, 2k-n+2), before any
    k = n-2 adjustment. For k = n-2 this pair preserves the parity blocks."""
    if not (k % 2 == 0 and n / 2 < k <= n - 2):
        raise ValueError(f"no even-permutation pair for (n,k)=({n},{k})")
    a = from_cycles([list(range(1, k + 1)), [k + 1, k + 2]], n)
    c = 2 * k - n
    b = from_cycles([list(range(1, c + 1)) + list(range(k + 1, n + 1)), [c + 1, c + 2]], n)
    return a, b


def _check_pair(pair: GeneratorPair) -> None:
    k, s = pair.triple.k, pair.triple.sign
    for name, g in (("a", pair.a), ("b", pair.b)):
        if order(g) != k or perm_sign(g) != s:
            raise AssertionError(
                f"{pair.triple} {pair.case.value}: {name} has order {order(g)} "
                f"and sign {perm_sign(g):+d}"
            )


def admissible_triples(n: int, ks=None, signs=(-1, 1)):
    """Admissible triples of degree n in (k, sign) order."""
    for k in (range(3, n + 1) if ks is None else ks):
        for s in sorted(signs):
            if classify(n, k, s).member:
                yield OmegaTriple(n, k, s)


__all__ = [
    "Admissibility",
    "CaseLabel",
    "CycleShape",
    "ExclusionReason",
    "GeneratorPair",
    "InadmissibleTriple",
    "OmegaTriple",
    "SMALL_K_LABELS",
    "admissible_triples",
    "build_pair",
    "build_shape",
    "classify",
    "even_pair_unmodified",
    "select_case",
    "translate",
]
