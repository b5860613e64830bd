"""Voter profiles over a shared alternative set.

Voters are plain indices 0..n-1.  A profile assigns each voter one weak
order; the restriction of a profile to a single pair of alternatives is
a `TriPartition`: who strictly prefers the first alternative, who
strictly prefers the second, who is indifferent.

Profile enumeration is odometer order over the chosen domain's order
enumeration (voter n-1 cycles fastest), capped by an explicit budget so
exhaustive scans stay at desk scale.

JSON profile format::

    {"m": 3, "n": 3, "labels": ["A", "B", "C"],
     "prefs": ["A>B>C", "C>A>B", "B>C>A"]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator

from .relations import (
    AlternativeSet,
    BinaryRelation,
    PairStance,
    WeakOrder,
    enumerate_linear_orders,
    enumerate_weak_orders,
    format_weak_order,
    pair_stance,
    parse_weak_order,
)

PROFILE_BUDGET_DEFAULT = 10_000_000


class Domain(Enum):
    """Which preference orders voters may hold."""

    WEAK = "weak"
    LINEAR = "linear"

    def orders(self, m: int) -> list[WeakOrder]:
        if self is Domain.WEAK:
            return enumerate_weak_orders(m)
        return enumerate_linear_orders(m)

    @classmethod
    def from_name(cls, name: str) -> "Domain":
        for dom in cls:
            if dom.value == name:
                return dom
        raise ValueError(f"unknown domain {name!r}; expected 'weak' or 'linear'")


class BudgetExceededError(ValueError):
    """An enumeration would exceed the configured profile budget."""


class ProfileFormatError(ValueError):
    """A profile file failed schema validation; `location` says where."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")


@dataclass(frozen=True)
class Profile:
    """One weak order per voter, all over the same alternatives."""

    prefs: tuple[WeakOrder, ...]

    def __post_init__(self) -> None:
        prefs = tuple(self.prefs)
        object.__setattr__(self, "prefs", prefs)
        if not prefs:
            raise ValueError("a profile needs at least one voter")
        m = prefs[0].m
        if any(w.m != m for w in prefs):
            raise ValueError("all voters must rank the same alternatives")

    @property
    def n(self) -> int:
        return len(self.prefs)

    @property
    def m(self) -> int:
        return self.prefs[0].m

    def order_of(self, v: int) -> WeakOrder:
        if not 0 <= v < self.n:
            raise ValueError(f"voter {v} out of range for n={self.n}")
        return self.prefs[v]

    def stance(self, v: int, x: int, y: int) -> PairStance:
        return pair_stance(self.order_of(v), x, y)


@dataclass(frozen=True)
class TriPartition:
    """Split of the voters on one pair: first / second / indifferent."""

    n: int
    first: frozenset[int]
    second: frozenset[int]
    tie: frozenset[int]

    def __post_init__(self) -> None:
        first = frozenset(self.first)
        second = frozenset(self.second)
        tie = frozenset(self.tie)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)
        object.__setattr__(self, "tie", tie)
        if len(first) + len(second) + len(tie) != self.n or (first | second | tie) != frozenset(range(self.n)):
            raise ValueError("parts must partition the voters 0..n-1")

    def code(self) -> int:
        """Base-3 encoding: voter v contributes digit 0/1/2 with weight 3**v."""
        total = 0
        for v in range(self.n):
            digit = 0 if v in self.first else 1 if v in self.second else 2
            total += digit * 3**v
        return total

    @classmethod
    def from_code(cls, n: int, code: int) -> "TriPartition":
        if not 0 <= code < 3**n:
            raise ValueError(f"code {code} out of range for n={n}")
        parts: tuple[list[int], list[int], list[int]] = ([], [], [])
        for v in range(n):
            parts[code % 3].append(v)
            code //= 3
        return cls(n, frozenset(parts[0]), frozenset(parts[1]), frozenset(parts[2]))

    def to_json_lists(self) -> list[list[int]]:
        return [sorted(self.first), sorted(self.second), sorted(self.tie)]

    @classmethod
    def from_json_lists(cls, n: int, lists: list[list[int]]) -> "TriPartition":
        if len(lists) != 3:
            raise ValueError("tri-partition JSON must have exactly three voter arrays")
        return cls(n, frozenset(lists[0]), frozenset(lists[1]), frozenset(lists[2]))


def pair_partition(f: Profile, x: int, y: int) -> TriPartition:
    """How the voters of f split on the ordered pair (x, y)."""
    first, second, tie = [], [], []
    for v in range(f.n):
        s = f.stance(v, x, y)
        if s is PairStance.FIRST_PREFERRED:
            first.append(v)
        elif s is PairStance.SECOND_PREFERRED:
            second.append(v)
        else:
            tie.append(v)
    return TriPartition(f.n, frozenset(first), frozenset(second), frozenset(tie))


def agrees_on_pair(f: Profile, g: Profile, x: int, y: int) -> bool:
    """True when every voter takes the same stance on (x, y) in f and g."""
    if f.n != g.n or f.m != g.m:
        raise ValueError("profiles must share voters and alternatives")
    return all(f.stance(v, x, y) is g.stance(v, x, y) for v in range(f.n))


def pairwise_majority(f: Profile) -> BinaryRelation:
    """Strict-majority relation: x P y when more voters prefer x than y."""
    m = f.m
    rows = []
    for x in range(m):
        row = []
        for y in range(m):
            if x == y:
                row.append(False)
                continue
            wins = losses = 0
            for v in range(f.n):
                s = f.stance(v, x, y)
                if s is PairStance.FIRST_PREFERRED:
                    wins += 1
                elif s is PairStance.SECOND_PREFERRED:
                    losses += 1
            row.append(wins > losses)
        rows.append(tuple(row))
    return BinaryRelation(tuple(rows))


def domain_size(m: int, n: int, domain: Domain) -> int:
    return len(domain.orders(m)) ** n


def enumerate_profiles(
    m: int, n: int, domain: Domain, budget: int = PROFILE_BUDGET_DEFAULT
) -> Iterator[Profile]:
    """All profiles of the domain in odometer order (voter n-1 fastest).

    Raises BudgetExceededError when the domain holds more than `budget`
    profiles; partial enumeration is never silently returned.
    """
    if n < 1:
        raise ValueError(f"need at least one voter, got n={n}")
    size = domain_size(m, n, domain)
    if size > budget:
        raise BudgetExceededError(
            f"domain holds {size} profiles, over the budget of {budget}"
        )
    orders = domain.orders(m)
    return (Profile(combo) for combo in product(orders, repeat=n))


def enumerate_tripartitions(n: int, domain: Domain) -> list[TriPartition]:
    """Tri-partitions reachable in the domain, ascending by code.

    Linear-order voters are never indifferent, so for Domain.LINEAR the
    tie part must be empty.
    """
    out = []
    for code in range(3**n):
        t = TriPartition.from_code(n, code)
        if domain is Domain.LINEAR and t.tie:
            continue
        out.append(t)
    return out


def profile_from_texts(texts: list[str] | tuple[str, ...], alts: AlternativeSet | None = None) -> Profile:
    return Profile(tuple(parse_weak_order(t, alts) for t in texts))


def condorcet_profile() -> Profile:
    """Three voters whose pairwise majority cycles: the classic paradox."""
    return profile_from_texts(["A>B>C", "C>A>B", "B>C>A"])


def profile_to_json_dict(f: Profile, alts: AlternativeSet | None = None) -> dict:
    if alts is None:
        alts = AlternativeSet(f.m)
    return {
        "m": f.m,
        "n": f.n,
        "labels": list(alts.all_labels()),
        "prefs": [format_weak_order(w, alts) for w in f.prefs],
    }


def parse_profile_json(data: str | dict) -> tuple[Profile, AlternativeSet]:
    """Parse and strictly validate the JSON profile format.

    Accepts raw text or an already-decoded dict.  Errors carry the
    offending location (JSON line/column, or a field path).
    """
    if isinstance(data, str):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ProfileFormatError(
                f"invalid JSON: {exc.msg}", location=f"line {exc.lineno}, column {exc.colno}"
            ) from None
    else:
        obj = data
    if not isinstance(obj, dict):
        raise ProfileFormatError("profile document must be a JSON object")
    allowed = {"m", "n", "labels", "prefs"}
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ProfileFormatError(f"unknown keys {unknown}")
    for key in ("m", "n", "prefs"):
        if key not in obj:
            raise ProfileFormatError("required key missing", location=key)
    m, n = obj["m"], obj["n"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise ProfileFormatError("must be an integer", location="m")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ProfileFormatError("must be an integer", location="n")
    if "labels" in obj:
        labels = obj["labels"]
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise ProfileFormatError("must be a list of strings", location="labels")
        try:
            alts = AlternativeSet(m, tuple(labels))
        except ValueError as exc:
            raise ProfileFormatError(str(exc), location="labels") from None
    else:
        try:
            alts = AlternativeSet(m)
        except ValueError as exc:
            raise ProfileFormatError(str(exc), location="m") from None
    prefs = obj["prefs"]
    if not isinstance(prefs, list):
        raise ProfileFormatError("must be a list of order strings", location="prefs")
    if len(prefs) != n:
        raise ProfileFormatError(f"expected {n} orders, found {len(prefs)}", location="prefs")
    orders = []
    for i, text in enumerate(prefs):
        if not isinstance(text, str):
            raise ProfileFormatError("must be an order string", location=f"prefs[{i}]")
        try:
            orders.append(parse_weak_order(text, alts))
        except ValueError as exc:
            raise ProfileFormatError(str(exc), location=f"prefs[{i}]") from None
    return Profile(tuple(orders)), alts
