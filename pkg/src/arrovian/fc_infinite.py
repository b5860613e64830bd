"""An infinite electorate, restricted to finite-or-cofinite coalitions.

Voters are the naturals.  Every coalition handled here is either finite
or cofinite and is written down with an explicit finite exception list,
so each set-algebra question (membership, union, intersection,
complement) has a total, exact decision procedure.  The
finite-or-cofinite subsets of an infinite ground set form a boolean
algebra, and the cofinite ones form a free filter on it, maximal within
the algebra: for every coalition exactly one of it and its complement
is cofinite, and no single voter lies in every cofinite set.

`frechet_stance` is the pairwise verdict rule this ultrafilter induces.
A valid tri-partition of the electorate has exactly one cofinite part,
and the verdict follows it.  The rule answers unanimous strict
preference correctly, reads nothing but the pair's own tri-partition
(so the independence requirement holds structurally), assembles into a
valid weak order on every measurable profile, and overrules any single
voter: `non_dictatorship_witness(v)` names a concrete tri-partition
where voter v says FIRST and the verdict says SECOND.  That is a fully
decidable possibility construction for an infinite electorate, in
deliberate contrast with the finite case, where the complete search in
`arrow_search` leaves only dictatorships standing.

The restriction to finite-or-cofinite coalitions is what buys the
decidability, and the boundary deserves stating plainly.  Over the full
algebra of computable coalitions, with coalitions handed over as opaque
program indices rather than explicit exception lists, no
non-dictatorial rule admits a total decision procedure for membership
in its decisive family: a classical diagonalisation would turn such a
procedure into a decider for the halting set.  The dictatorial rules
are the ones that stay decidable there, because decisiveness for a
dictator collapses to one membership query, namely whether the dictator
belongs to the coalition; `decisive_coalition_test` realises exactly
that collapse for `dictator_stance`.  Nothing in this module contradicts
the impossibility: explicit exception lists form a strict subalgebra
with decidable membership built in, while the impossibility needs the
opaque-index setting.  The converse direction (a decidable decisive
family forcing a dictator) lives entirely in that opaque-index world
and is out of scope here, since its content is a reduction from the
halting problem rather than an algorithm one could ship.

Text form for coalitions: "fin{1,2}" is the finite set {1, 2} and
"cof{3}" is everything except 3; elements print sorted ascending.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from random import Random

from .relations import (
    BinaryRelation,
    PairStance,
    WeakOrder,
    enumerate_weak_orders,
    pair_stance,
    to_canonical,
    unordered_pairs,
    validate_weak_order,
)

SAMPLE_BOUND = 200


class FcMode(Enum):
    FINITE = "fin"
    COFINITE = "cof"


@dataclass(frozen=True)
class FcSet:
    """A finite or cofinite set of naturals with explicit exceptions.

    For FINITE mode `exceptions` are the members; for COFINITE mode they
    are the non-members.
    """

    mode: FcMode
    exceptions: frozenset[int]

    def __post_init__(self) -> None:
        exc = frozenset(self.exceptions)
        object.__setattr__(self, "exceptions", exc)
        for v in exc:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"exception {v!r} is not a natural number")

    @classmethod
    def finite(cls, members: Iterable[int] = ()) -> "FcSet":
        return cls(FcMode.FINITE, frozenset(members))

    @classmethod
    def cofinite(cls, non_members: Iterable[int] = ()) -> "FcSet":
        return cls(FcMode.COFINITE, frozenset(non_members))

    def __str__(self) -> str:
        return format_fc(self)


EMPTY = FcSet.finite()
NATURALS = FcSet.cofinite()


def fc_member(a: FcSet, v: int) -> bool:
    if v < 0:
        raise ValueError(f"{v} is not a natural number")
    if a.mode is FcMode.FINITE:
        return v in a.exceptions
    return v not in a.exceptions


def fc_complement(a: FcSet) -> FcSet:
    mode = FcMode.COFINITE if a.mode is FcMode.FINITE else FcMode.FINITE
    return FcSet(mode, a.exceptions)


def fc_union(a: FcSet, b: FcSet) -> FcSet:
    if a.mode is FcMode.FINITE and b.mode is FcMode.FINITE:
        return FcSet.finite(a.exceptions | b.exceptions)
    if a.mode is FcMode.COFINITE and b.mode is FcMode.COFINITE:
        return FcSet.cofinite(a.exceptions & b.exceptions)
    fin, cof = (a, b) if a.mode is FcMode.FINITE else (b, a)
    return FcSet.cofinite(cof.exceptions - fin.exceptions)


def fc_intersect(a: FcSet, b: FcSet) -> FcSet:
    return fc_complement(fc_union(fc_complement(a), fc_complement(b)))


def fc_is_empty(a: FcSet) -> bool:
    return a.mode is FcMode.FINITE and not a.exceptions


def fc_any_member(a: FcSet) -> int:
    """Some element of a nonempty set; the least one, for determinism."""
    if fc_is_empty(a):
        raise ValueError("the empty set has no members")
    if a.mode is FcMode.FINITE:
        return min(a.exceptions)
    v = 0
    while v in a.exceptions:
        v += 1
    return v


_FC_RE = re.compile(r"^(fin|cof)\{(\d+(?:,\d+)*)?\}$")


def format_fc(a: FcSet) -> str:
    inner = ",".join(str(v) for v in sorted(a.exceptions))
    return f"{a.mode.value}{{{inner}}}"


def parse_fc(text: str) -> FcSet:
    match = _FC_RE.match(text.strip())
    if match is None:
        raise ValueError(f"bad coalition text {text!r}; expected e.g. 'fin{{1,2}}' or 'cof{{}}'")
    mode = FcMode.FINITE if match.group(1) == "fin" else FcMode.COFINITE
    inner = match.group(2)
    exceptions = frozenset(int(tok) for tok in inner.split(",")) if inner else frozenset()
    return FcSet(mode, exceptions)


# ------------------------------------------------------------- triples


@dataclass(frozen=True)
class FcTriple:
    """Tri-partition of the electorate on one pair: first/second/tie."""

    first: FcSet
    second: FcSet
    tie: FcSet

    def parts(self) -> tuple[tuple[str, FcSet], ...]:
        return (("first", self.first), ("second", self.second), ("tie", self.tie))

    def to_json_dict(self) -> dict:
        return {name: format_fc(part) for name, part in self.parts()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FcTriple":
        if not isinstance(data, dict) or set(data) != {"first", "second", "tie"}:
            raise ValueError("triple document needs exactly the keys first, second, tie")
        return cls(parse_fc(data["first"]), parse_fc(data["second"]), parse_fc(data["tie"]))


class InvalidTripleError(ValueError):
    """The three parts fail to partition the electorate; carries a witness."""

    def __init__(self, reason: str, witness: int):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason} (witness voter {witness})")


def check_fc_triple(t: FcTriple) -> None:
    """Raise InvalidTripleError unless the parts partition the naturals."""
    parts = t.parts()
    for i, (name_a, a) in enumerate(parts):
        for name_b, b in parts[i + 1 :]:
            overlap = fc_intersect(a, b)
            if not fc_is_empty(overlap):
                raise InvalidTripleError(
                    f"parts {name_a!r} and {name_b!r} overlap", fc_any_member(overlap)
                )
    union = fc_union(fc_union(t.first, t.second), t.tie)
    missing = fc_complement(union)
    if not fc_is_empty(missing):
        raise InvalidTripleError("parts do not cover the electorate", fc_any_member(missing))


def cofinite_part(t: FcTriple) -> tuple[str, FcSet]:
    """The unique cofinite part of a valid triple.

    Three disjoint finite sets cannot cover the naturals and two
    cofinite sets always intersect, so validity leaves exactly one.
    """
    check_fc_triple(t)
    cof = [(name, part) for name, part in t.parts() if part.mode is FcMode.COFINITE]
    if len(cof) != 1:
        raise RuntimeError("internal invariant violated: a valid triple has one cofinite part")
    return cof[0]


_STANCE_BY_PART = {
    "first": PairStance.FIRST_PREFERRED,
    "second": PairStance.SECOND_PREFERRED,
    "tie": PairStance.INDIFFERENT,
}

PairVerdictRule = Callable[[FcTriple], PairStance]


def frechet_stance(t: FcTriple) -> PairStance:
    """Follow the cofinite side: the verdict of the free ultrafilter."""
    name, _ = cofinite_part(t)
    return _STANCE_BY_PART[name]


def dictator_stance(v0: int, t: FcTriple) -> PairStance:
    """Echo whichever part contains voter v0."""
    check_fc_triple(t)
    for name, part in t.parts():
        if fc_member(part, v0):
            return _STANCE_BY_PART[name]
    raise RuntimeError("internal invariant violated: a valid triple covers every voter")


def dictator_rule(v0: int) -> PairVerdictRule:
    def rule(t: FcTriple) -> PairStance:
        return dictator_stance(v0, t)

    return rule


def decide_frechet_membership(a: FcSet) -> bool:
    """Total membership test for the rule's decisive family: cofinite or not."""
    return a.mode is FcMode.COFINITE


def decisive_coalition_test(rule: PairVerdictRule, a: FcSet) -> bool:
    """Is coalition `a` decisive for `rule`?  One canonical query decides.

    The probe triple puts a first, its complement second and nobody on
    the fence; a rule answers FIRST exactly when the coalition can force
    the verdict.  For `dictator_rule(v)` this agrees with membership of
    v in a, and for `frechet_stance` with `decide_frechet_membership`.
    """
    probe = FcTriple(first=a, second=fc_complement(a), tie=EMPTY)
    return rule(probe) is PairStance.FIRST_PREFERRED


def non_dictatorship_witness(v0: int) -> FcTriple:
    """A tri-partition where the whole rest of the world outvotes v0."""
    if v0 < 0:
        raise ValueError(f"{v0} is not a natural number")
    return FcTriple(
        first=FcSet.finite({v0}),
        second=FcSet.cofinite({v0}),
        tie=EMPTY,
    )


# ------------------------------------------------- randomized validation


def random_fc_set(rng: Random, bound: int = SAMPLE_BOUND, max_exceptions: int = 8) -> FcSet:
    mode = FcMode.COFINITE if rng.random() < 0.5 else FcMode.FINITE
    k = rng.randint(0, max_exceptions)
    exceptions = frozenset(rng.sample(range(bound + 1), k))
    return FcSet(mode, exceptions)


@dataclass
class FrechetAxiomReport:
    """Seeded spot-check that the cofinite coalitions behave like a free ultrafilter."""

    seed: int
    samples: int
    upward_closed_ok: bool
    intersection_closed_ok: bool
    proper_ok: bool
    complement_exclusive_ok: bool
    free_ok: bool
    failures: list[str]

    def all_ok(self) -> bool:
        return (
            self.upward_closed_ok
            and self.intersection_closed_ok
            and self.proper_ok
            and self.complement_exclusive_ok
            and self.free_ok
        )

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "upward_closed": self.upward_closed_ok,
            "intersection_closed": self.intersection_closed_ok,
            "proper": self.proper_ok,
            "complement_exclusive": self.complement_exclusive_ok,
            "free": self.free_ok,
            "failures": list(self.failures),
        }


def validate_fc_filter_axioms(seed: int = 0, samples: int = 500, bound: int = SAMPLE_BOUND) -> FrechetAxiomReport:
    rng = Random(seed)
    failures: list[str] = []

    upward = True
    for _ in range(samples):
        a = FcSet.cofinite(frozenset(rng.sample(range(bound + 1), rng.randint(0, 8))))
        b = fc_union(a, random_fc_set(rng, bound))
        if not decide_frechet_membership(b):
            upward = False
            failures.append(f"superset {format_fc(b)} of {format_fc(a)} not a member")

    inter = True
    for _ in range(samples):
        a = FcSet.cofinite(frozenset(rng.sample(range(bound + 1), rng.randint(0, 8))))
        b = FcSet.cofinite(frozenset(rng.sample(range(bound + 1), rng.randint(0, 8))))
        if not decide_frechet_membership(fc_intersect(a, b)):
            inter = False
            failures.append(f"intersection of {format_fc(a)} and {format_fc(b)} not a member")

    proper = not decide_frechet_membership(EMPTY)
    if not proper:
        failures.append("the empty coalition claims membership")

    exclusive = True
    for _ in range(samples):
        a = random_fc_set(rng, bound)
        if decide_frechet_membership(a) == decide_frechet_membership(fc_complement(a)):
            exclusive = False
            failures.append(f"{format_fc(a)} and its complement agree on membership")

    free = True
    for v in range(100):
        member = FcSet.cofinite({v})
        if not decide_frechet_membership(member) or fc_member(member, v):
            free = False
            failures.append(f"voter {v} survives in cof{{{v}}}")

    return FrechetAxiomReport(
        seed=seed,
        samples=samples,
        upward_closed_ok=upward,
        intersection_closed_ok=inter,
        proper_ok=proper,
        complement_exclusive_ok=exclusive,
        free_ok=free,
        failures=failures,
    )


# ------------------------------------------------- measurable profiles


@dataclass(frozen=True)
class EventuallyConstantProfile:
    """A profile where all but finitely many voters share a tail order.

    This is the measurable-profile model: each voter holds one of
    finitely many weak orders, so per pair each stance coalition is
    finite or cofinite and the tri-partition lands in the algebra.
    """

    tail: WeakOrder
    overrides: tuple[tuple[int, WeakOrder], ...]

    def __post_init__(self) -> None:
        overrides = tuple(sorted(self.overrides, key=lambda item: item[0]))
        object.__setattr__(self, "overrides", overrides)
        voters = [v for v, _ in overrides]
        if len(set(voters)) != len(voters):
            raise ValueError("override voters must be distinct")
        if any(v < 0 for v in voters):
            raise ValueError("override voters must be naturals")
        if any(w.m != self.tail.m for _, w in overrides):
            raise ValueError("override orders must rank the same alternatives as the tail")

    @property
    def m(self) -> int:
        return self.tail.m

    def order_of(self, v: int) -> WeakOrder:
        for voter, w in self.overrides:
            if voter == v:
                return w
        return self.tail

    def pair_triple(self, x: int, y: int) -> FcTriple:
        """The tri-partition of the electorate on (x, y), as FcSets."""
        tail_stance = pair_stance(self.tail, x, y)
        by_stance: dict[PairStance, set[int]] = {
            PairStance.FIRST_PREFERRED: set(),
            PairStance.SECOND_PREFERRED: set(),
            PairStance.INDIFFERENT: set(),
        }
        for voter, w in self.overrides:
            by_stance[pair_stance(w, x, y)].add(voter)
        parts = {}
        for stance, key in (
            (PairStance.FIRST_PREFERRED, "first"),
            (PairStance.SECOND_PREFERRED, "second"),
            (PairStance.INDIFFERENT, "tie"),
        ):
            if stance is tail_stance:
                off_message = {v for v, w in self.overrides if pair_stance(w, x, y) is not stance}
                parts[key] = FcSet.cofinite(off_message)
            else:
                parts[key] = FcSet.finite(by_stance[stance])
        return FcTriple(parts["first"], parts["second"], parts["tie"])


def random_measurable_profile(
    rng: Random, m: int = 3, bound: int = SAMPLE_BOUND, max_overrides: int = 6
) -> EventuallyConstantProfile:
    orders = enumerate_weak_orders(m)
    tail = rng.choice(orders)
    k = rng.randint(0, max_overrides)
    voters = rng.sample(range(bound + 1), k)
    overrides = tuple((v, rng.choice(orders)) for v in sorted(voters))
    return EventuallyConstantProfile(tail, overrides)


def frechet_verdict(p: EventuallyConstantProfile) -> WeakOrder:
    """Assemble the rule's stances on every pair into one weak order."""
    m = p.m
    grid = [[False] * m for _ in range(m)]
    for x, y in unordered_pairs(m):
        s = frechet_stance(p.pair_triple(x, y))
        if s is PairStance.FIRST_PREFERRED:
            grid[x][y] = True
        elif s is PairStance.SECOND_PREFERRED:
            grid[y][x] = True
    rel = BinaryRelation(tuple(tuple(row) for row in grid))
    res = validate_weak_order(rel)
    if not res.ok:
        raise RuntimeError(
            f"internal invariant violated: assembled verdict failed {res.axiom} at {res.witness}"
        )
    return to_canonical(rel)
