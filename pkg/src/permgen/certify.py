"""Verification reports for generating pairs.

The BSGS order is the verdict. The classical sufficiency criteria (Bochert,
Manning, Wielandt, with Marggraff's theorem supplying multiple transitivity)
are evaluated from measured facts and recorded as evidence; if one of them
claims the group contains A_n while the order says otherwise, that is a bug
and raises :class:`CriterionContradictsGroundTruth`.

All thresholds are compared in integer arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

from . import groups
from .groups import GroupHandle
from .pairs import CaseLabel, GeneratorPair, OmegaTriple, build_shape
from .perm import (
    Permutation,
    compose,
    cycle_decomposition,
    format_cycles,
    inverse,
    order,
    parse_cycles,
    power,
    sign,
)

SCHEMA_VERSION = 1


class CriterionContradictsGroundTruth(AssertionError):
    """A criterion asserted that the group contains A_n but the BSGS order disagrees."""


class Verdict(str, enum.Enum):
    ALTERNATING = "Alternating"
    SYMMETRIC = "Symmetric"
    OTHER = "Other"


class Outcome(str, enum.Enum):
    APPLIES = "applies"
    NOT_APPLICABLE = "not_applicable"
    BUDGET_LIMITED = "budget_limited"


def bochert(n: int, support_size: int) -> bool:
    """support < n/3 - 2*sqrt(n)/3, i.e. n - 3s > 2*sqrt(n)."""
    gap = n - 3 * support_size
    return gap > 0 and gap * gap > 4 * n


def manning(six_transitive: bool, n: int, support_size: int) -> bool:
    return bool(six_transitive) and 5 * support_size < 3 * n


def wielandt(n: int, t: int) -> bool:
    """t >= 3 log2 n, i.e. 2^t >= n^3."""
    return t >= 0 and 2**t >= n**3


def wielandt_threshold(n: int) -> int:
    """Smallest t with 2^t >= n^3."""
    return max(0, (n**3 - 1).bit_length())


def marggraff_bound(fixed_points: int) -> int:
    """A primitive group containing a cycle that fixes m points is (m+1)-transitive."""
    return fixed_points + 1


def fixed_point_target(n: int) -> int:
    """ceil(3 log2 n - 1): the least m with 2^(m+1) >= n^3."""
    return wielandt_threshold(n) - 1


@dataclass(frozen=True)
class Witness:
    word: str
    element: str
    support_size: int
    cycle_length: int | None
    fixed_count: int


@dataclass
class CriteriaFacts:
    n: int
    primitive: bool
    two_transitive: bool
    six_transitive: bool
    measured_t: int
    measured_t_lower_bound: bool
    marggraff_t: int | None
    two_transitive_route: str
    six_transitive_route: str
    small_support_witness: Witness | None
    cycle_witness: Witness | None


@dataclass
class VerificationReport:
    triple: OmegaTriple
    case: CaseLabel
    a: str
    b: str
    order_a: int
    order_b: int
    sign_a: int
    sign_b: int
    a_inv_b_cycle_lengths: list[int]
    a_inv_b_fixed_count: int
    transitive: bool
    primitive: bool
    group_order: int
    verdict: Verdict
    criteria: dict[str, Outcome]
    d_k_value: int
    facts: CriteriaFacts
    oracle_order: int | None = None

    @property
    def expected_verdict(self) -> Verdict:
        return Verdict.ALTERNATING if self.triple.sign == 1 else Verdict.SYMMETRIC

    @property
    def ok(self) -> bool:
        return self.verdict == self.expected_verdict and (
            self.oracle_order is None or self.oracle_order == self.group_order
        )

    def to_dict(self) -> dict:
        facts = asdict(self.facts)
        return {
            "schema_version": SCHEMA_VERSION,
            "triple": {"n": self.triple.n, "k": self.triple.k, "sign": self.triple.sign},
            "case": self.case.value,
            "a": self.a,
            "b": self.b,
            "order_a": self.order_a,
            "order_b": self.order_b,
            "sign_a": self.sign_a,
            "sign_b": self.sign_b,
            "a_inv_b_cycle_lengths": list(self.a_inv_b_cycle_lengths),
            "a_inv_b_fixed_count": self.a_inv_b_fixed_count,
            "transitive": self.transitive,
            "primitive": self.primitive,
            # decimal string: orders overflow 64-bit integers in most JSON readers
            "group_order": str(self.group_order),
            "verdict": self.verdict.value,
            "criteria": {k: v.value for k, v in self.criteria.items()},
            "d_k_value": self.d_k_value,
            "facts": facts,
            "oracle_order": None if self.oracle_order is None else str(self.oracle_order),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')}")
        f = dict(d["facts"])
        for key in ("small_support_witness", "cycle_witness"):
            if f[key] is not None:
                f[key] = Witness(**f[key])
        t = d["triple"]
        return cls(
            triple=OmegaTriple(t["n"], t["k"], t["sign"]),
            case=CaseLabel(d["case"]),
            a=d["a"],
            b=d["b"],
            order_a=d["order_a"],
            order_b=d["order_b"],
            sign_a=d["sign_a"],
            sign_b=d["sign_b"],
            a_inv_b_cycle_lengths=list(d["a_inv_b_cycle_lengths"]),
            a_inv_b_fixed_count=d["a_inv_b_fixed_count"],
            transitive=d["transitive"],
            primitive=d["primitive"],
            group_order=int(d["group_order"]),
            verdict=Verdict(d["verdict"]),
            criteria={k: Outcome(v) for k, v in d["criteria"].items()},
            d_k_value=d["d_k_value"],
            facts=CriteriaFacts(**f),
            oracle_order=None if d.get("oracle_order") is None else int(d["oracle_order"]),
        )


def commutator_witness(a: Permutation, b: Permutation) -> Permutation:
    """a^-1 b a b^-1, composed left to right."""
    return compose(compose(compose(inverse(a), b), a), inverse(b))


def candidate_words(pair: GeneratorPair) -> list[tuple[str, Permutation]]:
    """Short words in a and b used as criterion witnesses, the case's own
    witness first."""
    a, b = pair.a, pair.b
    a_inv_b = compose(inverse(a), b)
    words = [("a^-1*b", a_inv_b), ("a^-1*b*a*b^-1", commutator_witness(a, b)),
             ("a", a), ("b", b)]
    case = pair.case
    if case.is_a_even:
        words.insert(0, words.pop(1))
    elif case.is_condition_b:
        n, k = pair.triple.n, pair.triple.k
        q = build_shape(n, k).q if case is CaseLabel.B_general else 3
        words.insert(0, (f"a^{k // q}", power(a, k // q)))
    return words


def _witness(word: str, p: Permutation) -> Witness:
    d = cycle_decomposition(p)
    supp = p.degree - len(d.fixed_points)
    return Witness(
        word=word,
        element=format_cycles(p),
        support_size=supp,
        cycle_length=len(d.cycles[0]) if len(d.cycles) == 1 else None,
        fixed_count=len(d.fixed_points),
    )


def _pick_witnesses(words, bsgs_obj):
    small = None
    cyc = None
    for word, p in words:
        if p.is_identity():
            continue
        if bsgs_obj is not None and not bsgs_obj.contains(p):
            raise AssertionError(f"witness {word} is not in the group")
        w = _witness(word, p)
        if small is None or w.support_size < small.support_size:
            small = w
        if w.cycle_length is not None and (cyc is None or w.fixed_count > cyc.fixed_count):
            cyc = w
    return small, cyc


def evaluate_criteria(
    g: GroupHandle,
    primitive: bool,
    words,
    *,
    tuple_budget: int = groups.DEFAULT_TUPLE_BUDGET,
    bsgs_obj=None,
) -> tuple[CriteriaFacts, dict[str, Outcome]]:
    """Measure transitivity and witnesses, then evaluate each criterion."""
    n = g.degree
    small, cyc = _pick_witnesses(words, bsgs_obj)
    marg = marggraff_bound(cyc.fixed_count) if (primitive and cyc is not None) else None
    marg_t = marg or 0
    w_t = wielandt_threshold(n)

    # one tuple-orbit probe at the deepest level a criterion still needs
    wanted = set()
    if small is not None and bochert(n, small.support_size) and marg_t < 2:
        wanted.add(2)
    if small is not None and manning(True, n, small.support_size) and marg_t < 6:
        wanted.add(6)
    if marg_t < w_t <= n:
        wanted.add(w_t)
    # an even group stops at (n-2)-transitivity; (n-1)- and n-transitivity coincide
    even = all(sign(x) == 1 for x in g.generators)
    impossible = {lv for lv in wanted if even and lv >= n - 1}
    wanted = {min(lv, n - 1) for lv in wanted - impossible}
    feasible = sorted(lv for lv in wanted if math.perm(n, lv) <= tuple_budget)
    skipped = len(feasible) < len(wanted)
    measured_t, exact = 1, False
    for level in reversed(feasible):
        if groups.is_t_transitive(g, level, tuple_budget):
            measured_t = n if level == n - 1 else level
            break
        exact = level == 2
    measured = groups.TransitivityDegree(measured_t, not exact)

    def route(level):
        if measured.t >= level:
            return "tuple_orbits"
        if marg_t >= level:
            return "marggraff"
        return "budget_limited" if skipped else "not_established"

    eff_t = max(measured.t, marg_t)
    two = primitive and eff_t >= 2
    six = primitive and eff_t >= 6

    def outcome(holds: bool, level_reached: bool, level: int) -> Outcome:
        if not primitive or not holds:
            return Outcome.NOT_APPLICABLE
        if level_reached:
            return Outcome.APPLIES
        if level <= n and math.perm(n, min(level, n - 1)) > tuple_budget:
            return Outcome.BUDGET_LIMITED
        return Outcome.NOT_APPLICABLE

    s = small.support_size if small is not None else n
    criteria = {
        "bochert": outcome(small is not None and bochert(n, s), two, 2),
        "manning": outcome(small is not None and manning(True, n, s), six, 6),
        "wielandt": outcome(w_t <= n, wielandt(n, eff_t), w_t),
        "marggraff": Outcome.APPLIES if marg is not None else Outcome.NOT_APPLICABLE,
    }
    facts = CriteriaFacts(
        n=n,
        primitive=primitive,
        two_transitive=two,
        six_transitive=six,
        measured_t=measured.t,
        measured_t_lower_bound=measured.lower_bound,
        marggraff_t=marg,
        two_transitive_route=route(2),
        six_transitive_route=route(6),
        small_support_witness=small,
        cycle_witness=cyc,
    )
    return facts, criteria


def verdict_for(order_value: int, gens, n: int) -> Verdict:
    full = math.factorial(n)
    if order_value == full // 2 and all(sign(x) == 1 for x in gens) and n >= 2:
        return Verdict.ALTERNATING
    if order_value == full:
        return Verdict.SYMMETRIC
    return Verdict.OTHER


SUFFICIENT = ("bochert", "manning", "wielandt")


def certify(
    pair: GeneratorPair,
    *,
    tuple_budget: int = groups.DEFAULT_TUPLE_BUDGET,
    oracle: bool = False,
    oracle_max_degree: int = 9,
) -> VerificationReport:
    a, b = pair.a, pair.b
    n = pair.triple.n
    g = GroupHandle([a, b])
    a_inv_b = compose(inverse(a), b)
    dec = cycle_decomposition(a_inv_b)
    transitive = groups.is_transitive(g)
    primitive = transitive and groups.is_primitive(g)
    chain = groups.bsgs(g)
    verdict = verdict_for(chain.order, (a, b), n)
    if transitive:
        facts, criteria = evaluate_criteria(
            g, primitive, candidate_words(pair), tuple_budget=tuple_budget, bsgs_obj=chain
        )
    else:
        facts = CriteriaFacts(n, False, False, False, 0, False, None,
                              "not_established", "not_established", None, None)
        criteria = {k: Outcome.NOT_APPLICABLE for k in SUFFICIENT + ("marggraff",)}
    for name in SUFFICIENT:
        if criteria[name] is Outcome.APPLIES and verdict is Verdict.OTHER:
            raise CriterionContradictsGroundTruth(
                f"{pair.triple}: {name} applies but the group order is {chain.order}"
            )
    oracle_order = None
    if oracle and n <= oracle_max_degree:
        oracle_order = groups.closure_order_oracle(g, cap=math.factorial(n))
    return VerificationReport(
        triple=pair.triple,
        case=pair.case,
        a=format_cycles(a),
        b=format_cycles(b),
        order_a=order(a),
        order_b=order(b),
        sign_a=sign(a),
        sign_b=sign(b),
        a_inv_b_cycle_lengths=list(dec.cycle_lengths),
        a_inv_b_fixed_count=len(dec.fixed_points),
        transitive=transitive,
        primitive=primitive,
        group_order=chain.order,
        verdict=verdict,
        criteria=criteria,
        d_k_value=1 if pair.triple.as_tuple() == (3, 3, 1) else 2,
        facts=facts,
        oracle_order=oracle_order,
    )


@dataclass
class ClaimsReport:
    """Structural facts that need no group order: transitivity, the shape of
    a^-1 b, fixed-point counts and witness supports."""

    triple: OmegaTriple
    case: CaseLabel
    a: str
    b: str
    transitive: bool
    a_inv_b_is_cycle: bool
    a_inv_b_fixed_count: int
    fixed_point_target: int | None
    commutator_support: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "triple": {"n": self.triple.n, "k": self.triple.k, "sign": self.triple.sign},
            "case": self.case.value,
            "a": self.a,
            "b": self.b,
            "transitive": self.transitive,
            "a_inv_b_is_cycle": self.a_inv_b_is_cycle,
            "a_inv_b_fixed_count": self.a_inv_b_fixed_count,
            "fixed_point_target": self.fixed_point_target,
            "commutator_support": self.commutator_support,
            "checks": dict(self.checks),
        }


def check_claims(pair: GeneratorPair) -> ClaimsReport:
    a, b = pair.a, pair.b
    n, k, s = pair.triple.as_tuple()
    a_inv_b = compose(inverse(a), b)
    dec = cycle_decomposition(a_inv_b)
    comm = commutator_witness(a, b)
    comm_supp = n - len(cycle_decomposition(comm).fixed_points)
    transitive = groups.is_transitive(GroupHandle([a, b]))
    target = fixed_point_target(n) if (pair.case.is_small_k and n >= 90) else None
    checks = {
        "order_a": order(a) == k,
        "order_b": order(b) == k,
        "sign_a": sign(a) == s,
        "sign_b": sign(b) == s,
        "transitive": transitive,
    }
    if pair.case.is_small_k:
        checks["a_inv_b_is_cycle"] = len(dec.cycles) == 1
        if target is not None:
            checks["fixed_point_bound"] = len(dec.fixed_points) >= target
    if pair.case.is_a_even:
        checks["commutator_support_le_8"] = comm_supp <= 8
    return ClaimsReport(
        triple=pair.triple,
        case=pair.case,
        a=format_cycles(a),
        b=format_cycles(b),
        transitive=transitive,
        a_inv_b_is_cycle=len(dec.cycles) == 1,
        a_inv_b_fixed_count=len(dec.fixed_points),
        fixed_point_target=target,
        commutator_support=comm_supp,
        checks=checks,
    )


def report_from_text(a_text: str, b_text: str, n: int) -> tuple[Permutation, Permutation]:
    """Parse the a/b cycle strings stored in a report back into permutations."""
    return parse_cycles(a_text, n), parse_cycles(b_text, n)
