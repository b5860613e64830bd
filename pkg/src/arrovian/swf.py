"""Social welfare functions on exhaustively enumerable domains.

Two representations are used side by side:

* `ExplicitSwf`: a verdict table, one weak order per domain profile.
* `PairwiseRuleSwf`: per pair of alternatives, a map from the voters'
  tri-partition on that pair to a verdict stance.  This is exactly the
  shape forced by the independence axiom, so independence holds for it
  by construction; whether the per-pair stances assemble into a valid
  weak order on every profile is a separate question, answered by
  `assemble` (a `CompositionFailure` is an answer, not a fault).

The five axioms checked by `full_report`:

  a1  at least three alternatives
  a2  totality: a valid weak-order verdict for every domain profile
  a3  unanimity: a strict consensus on a pair is echoed by the verdict
  a4  independence: the verdict on a pair depends on that pair alone
  a5  non-dictatorship: no voter's strict preference always prevails

JSON formats (owned here)::

    {"kind": "explicit", "m": 3, "n": 2, "domain": "linear",
     "labels": ["A", "B", "C"],
     "entries": [[["A>B>C", "A>B>C"], "A>B>C"], ...]}

    {"kind": "pairwise", "m": 3, "n": 2, "domain": "linear",
     "labels": ["A", "B", "C"],
     "rules": {"A,B": [[[[0, 1], [], []], "FIRST"], ...], ...}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .relations import (
    AlternativeSet,
    BinaryRelation,
    PairStance,
    ValidationResult,
    WeakOrder,
    default_labels,
    format_weak_order,
    ordered_pairs,
    pair_stance,
    parse_weak_order,
    to_canonical,
    unordered_pairs,
    validate_weak_order,
)
from .profiles import (
    Domain,
    Profile,
    TriPartition,
    enumerate_profiles,
    enumerate_tripartitions,
    pair_partition,
)


class SwfFormatError(ValueError):
    """An SWF file failed schema validation."""


@dataclass(frozen=True)
class CompositionFailure:
    """Per-pair stances that do not assemble into a weak order."""

    profile: Profile
    relation: BinaryRelation
    validation: ValidationResult


@dataclass(eq=False)
class ExplicitSwf:
    """A total verdict table over an enumerated profile domain."""

    m: int
    n: int
    domain: Domain
    verdicts: dict[Profile, WeakOrder]

    def domain_profiles(self) -> list[Profile]:
        return list(enumerate_profiles(self.m, self.n, self.domain))

    def verdict(self, f: Profile) -> WeakOrder:
        try:
            return self.verdicts[f]
        except KeyError:
            raise LookupError(f"profile outside the verdict table: {_profile_texts(f)}") from None

    def stance(self, f: Profile, x: int, y: int) -> PairStance:
        return pair_stance(self.verdict(f), x, y)

    def describe(self) -> str:
        return f"explicit swf, m={self.m}, n={self.n}, domain={self.domain.value}"


@dataclass(eq=False)
class PairwiseRuleSwf:
    """Per-pair verdict rules keyed by the voters' tri-partition.

    `rules` maps each canonical pair (x, y), x < y, to a map from
    TriPartition (whose `first` part holds the voters preferring x) to
    the verdict stance on (x, y).
    """

    m: int
    n: int
    domain: Domain
    rules: dict[tuple[int, int], dict[TriPartition, PairStance]]

    def domain_profiles(self) -> list[Profile]:
        return list(enumerate_profiles(self.m, self.n, self.domain))

    def rule_stance(self, pair: tuple[int, int], t: TriPartition) -> PairStance:
        x, y = pair
        if x >= y:
            raise ValueError(f"pair {pair} is not canonical (need x < y)")
        try:
            table = self.rules[pair]
        except KeyError:
            raise LookupError(f"no rule table for pair {pair}") from None
        try:
            return table[t]
        except KeyError:
            raise LookupError(f"no rule for pair {pair} at tri-partition code {t.code()}") from None

    def stance(self, f: Profile, x: int, y: int) -> PairStance:
        if x < y:
            return self.rule_stance((x, y), pair_partition(f, x, y))
        return self.rule_stance((y, x), pair_partition(f, y, x)).flipped()

    def assemble(self, f: Profile) -> Union[WeakOrder, CompositionFailure]:
        """Compose the per-pair stances on profile f into one relation.

        Returns the canonical weak order when the stances cohere, and a
        CompositionFailure carrying the offending relation otherwise.
        """
        m = self.m
        grid = [[False] * m for _ in range(m)]
        for x, y in unordered_pairs(m):
            s = self.rule_stance((x, y), pair_partition(f, x, y))
            if s is PairStance.FIRST_PREFERRED:
                grid[x][y] = True
            elif s is PairStance.SECOND_PREFERRED:
                grid[y][x] = True
        rel = BinaryRelation(tuple(tuple(row) for row in grid))
        res = validate_weak_order(rel)
        if not res.ok:
            return CompositionFailure(f, rel, res)
        return to_canonical(rel)

    def describe(self) -> str:
        return f"pairwise-rule swf, m={self.m}, n={self.n}, domain={self.domain.value}"


Swf = Union[ExplicitSwf, PairwiseRuleSwf]


# ---------------------------------------------------------------- checks


@dataclass(frozen=True)
class UnanimityCheck:
    ok: bool
    profile: Profile | None = None
    pair: tuple[int, int] | None = None


@dataclass(frozen=True)
class IndependenceCheck:
    ok: bool
    profile_a: Profile | None = None
    profile_b: Profile | None = None
    pair: tuple[int, int] | None = None
    by_construction: bool = False


def check_unanimity(swf: Swf) -> UnanimityCheck:
    """Whenever every voter strictly prefers a to b, so must the verdict.

    Pairs are scanned in lexicographic order, profiles in enumeration
    order, so a failing witness is deterministic.
    """
    profiles = swf.domain_profiles()
    for a, b in ordered_pairs(swf.m):
        for f in profiles:
            if all(f.stance(v, a, b) is PairStance.FIRST_PREFERRED for v in range(swf.n)):
                if swf.stance(f, a, b) is not PairStance.FIRST_PREFERRED:
                    return UnanimityCheck(False, f, (a, b))
    return UnanimityCheck(True)


def check_independence(swf: Swf) -> IndependenceCheck:
    """The verdict on a pair may depend only on the voters' stances there.

    Profiles are grouped by their stance signature per pair, one hash
    pass over the domain; any two groups members with different verdict
    stances are a counterexample.  Pairwise-rule SWFs satisfy this by
    construction and are accepted immediately.
    """
    if isinstance(swf, PairwiseRuleSwf):
        return IndependenceCheck(True, by_construction=True)
    profiles = swf.domain_profiles()
    for x, y in unordered_pairs(swf.m):
        seen: dict[tuple[PairStance, ...], tuple[Profile, PairStance]] = {}
        for f in profiles:
            sig = tuple(f.stance(v, x, y) for v in range(swf.n))
            verdict = swf.stance(f, x, y)
            if sig not in seen:
                seen[sig] = (f, verdict)
            elif seen[sig][1] is not verdict:
                return IndependenceCheck(False, seen[sig][0], f, (x, y))
    return IndependenceCheck(True)


def find_dictator(swf: Swf) -> int | None:
    """The least voter whose strict preferences the verdict always follows."""
    profiles = swf.domain_profiles()
    pairs = ordered_pairs(swf.m)
    for v in range(swf.n):
        if all(
            f.stance(v, a, b) is not PairStance.FIRST_PREFERRED
            or swf.stance(f, a, b) is PairStance.FIRST_PREFERRED
            for f in profiles
            for a, b in pairs
        ):
            return v
    return None


@dataclass
class AxiomReport:
    """Outcome of the five-axiom audit; True means the axiom holds."""

    a1: bool
    a2: bool
    a3: bool
    a4: bool
    a5: bool
    dictator: int | None
    witnesses: dict[str, dict] = field(default_factory=dict)

    def arrovian(self) -> bool:
        """a1 through a4 together; a5 is reported but not required here."""
        return self.a1 and self.a2 and self.a3 and self.a4

    def failed(self) -> list[str]:
        return [name for name in ("a1", "a2", "a3", "a4", "a5") if not getattr(self, name)]

    def to_json_dict(self, alts: AlternativeSet | None = None) -> dict:
        verdicts = {
            name: ("PASS" if getattr(self, name) else "FAIL")
            for name in ("a1", "a2", "a3", "a4", "a5")
        }
        witnesses = {}
        for name, data in self.witnesses.items():
            witnesses[name] = _witness_json(data, alts)
        return {"axioms": verdicts, "dictator": self.dictator, "witnesses": witnesses}


def _profile_texts(f: Profile, alts: AlternativeSet | None = None) -> list[str]:
    if alts is not None and alts.m != f.m:
        alts = None
    return [format_weak_order(w, alts) for w in f.prefs]


def _witness_json(data: dict, alts: AlternativeSet | None) -> dict:
    def lab(x: int) -> str:
        if alts is not None and x < alts.m:
            return alts.label(x)
        return default_labels(x + 1)[x]

    out = {}
    for key, value in data.items():
        if isinstance(value, Profile):
            out[key] = _profile_texts(value, alts)
        elif isinstance(value, WeakOrder):
            out[key] = format_weak_order(value, alts if alts and alts.m == value.m else None)
        elif key == "pair" and isinstance(value, tuple):
            out[key] = [lab(value[0]), lab(value[1])]
        elif isinstance(value, tuple):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def full_report(swf: Swf) -> AxiomReport:
    """Audit all five axioms, collecting a concrete witness per failure.

    On a partial rule (missing verdicts or rule cells) the quantified
    checks a3 through a5 cannot sweep the whole domain; they are then
    reported failed with an explanatory witness rather than raising.
    """
    witnesses: dict[str, dict] = {}

    a1 = swf.m >= 3
    if not a1:
        witnesses["a1"] = {"m": swf.m}

    a2 = True
    if isinstance(swf, PairwiseRuleSwf):
        for f in swf.domain_profiles():
            try:
                verdict = swf.assemble(f)
            except LookupError as exc:
                a2 = False
                witnesses["a2"] = {"profile": f, "error": str(exc)}
                break
            if isinstance(verdict, CompositionFailure):
                a2 = False
                witnesses["a2"] = {
                    "profile": f,
                    "axiom": verdict.validation.axiom,
                    "witness": verdict.validation.witness,
                }
                break
    else:
        for f in swf.domain_profiles():
            if f not in swf.verdicts:
                a2 = False
                witnesses["a2"] = {"profile": f, "error": "no verdict recorded"}
                break

    try:
        una = check_unanimity(swf)
        a3 = una.ok
        if not a3:
            witnesses["a3"] = {"profile": una.profile, "pair": una.pair}
    except LookupError as exc:
        a3 = False
        witnesses["a3"] = {"error": f"not evaluable: {exc}"}

    try:
        ind = check_independence(swf)
        a4 = ind.ok
        if not a4:
            witnesses["a4"] = {
                "profile_a": ind.profile_a,
                "profile_b": ind.profile_b,
                "pair": ind.pair,
            }
    except LookupError as exc:
        a4 = False
        witnesses["a4"] = {"error": f"not evaluable: {exc}"}

    try:
        dictator = find_dictator(swf)
        a5 = dictator is None
        if not a5:
            witnesses["a5"] = {"dictator": dictator}
    except LookupError as exc:
        dictator = None
        a5 = False
        witnesses["a5"] = {"error": f"not evaluable: {exc}"}

    return AxiomReport(a1, a2, a3, a4, a5, dictator, witnesses)


# ---------------------------------------------------------- constructors


def dictator_explicit(v: int, m: int, n: int, domain: Domain) -> ExplicitSwf:
    """The verdict is voter v's order, ties included."""
    if not 0 <= v < n:
        raise ValueError(f"dictator {v} out of range for n={n}")
    verdicts = {f: f.prefs[v] for f in enumerate_profiles(m, n, domain)}
    return ExplicitSwf(m, n, domain, verdicts)


def anti_dictator_explicit(v: int, m: int, n: int, domain: Domain) -> ExplicitSwf:
    """The verdict is voter v's order turned upside down."""
    if not 0 <= v < n:
        raise ValueError(f"anti-dictator {v} out of range for n={n}")
    verdicts = {f: f.prefs[v].flipped() for f in enumerate_profiles(m, n, domain)}
    return ExplicitSwf(m, n, domain, verdicts)


def constant_explicit(w: WeakOrder, n: int, domain: Domain) -> ExplicitSwf:
    """The same verdict regardless of the profile."""
    verdicts = {f: w for f in enumerate_profiles(w.m, n, domain)}
    return ExplicitSwf(w.m, n, domain, verdicts)


def borda_explicit(m: int, n: int, domain: Domain) -> ExplicitSwf:
    """Rank-sum scoring; equal totals become verdict indifference."""
    verdicts = {}
    for f in enumerate_profiles(m, n, domain):
        totals = [0] * m
        for w in f.prefs:
            for x in range(m):
                totals[x] += sum(1 for y in range(m) if y != x and w.rank(x) < w.rank(y))
        levels = sorted(set(totals), reverse=True)
        verdicts[f] = WeakOrder(tuple(tuple(x for x in range(m) if totals[x] == lv) for lv in levels))
    return ExplicitSwf(m, n, domain, verdicts)


def dictator_rules(v: int, m: int, n: int, domain: Domain) -> PairwiseRuleSwf:
    """Pairwise-rule form of the dictator: copy voter v's stance per pair."""
    if not 0 <= v < n:
        raise ValueError(f"dictator {v} out of range for n={n}")
    tris = enumerate_tripartitions(n, domain)
    rules = {}
    for pair in unordered_pairs(m):
        table = {}
        for t in tris:
            if v in t.first:
                table[t] = PairStance.FIRST_PREFERRED
            elif v in t.second:
                table[t] = PairStance.SECOND_PREFERRED
            else:
                table[t] = PairStance.INDIFFERENT
        rules[pair] = table
    return PairwiseRuleSwf(m, n, domain, rules)


def constant_rules(w: WeakOrder, n: int, domain: Domain) -> PairwiseRuleSwf:
    """Pairwise rules that ignore the voters and answer from a fixed order."""
    tris = enumerate_tripartitions(n, domain)
    rules = {}
    for pair in unordered_pairs(w.m):
        s = pair_stance(w, *pair)
        rules[pair] = {t: s for t in tris}
    return PairwiseRuleSwf(w.m, n, domain, rules)


def majority_rules(m: int, n: int, domain: Domain) -> PairwiseRuleSwf:
    """Strict pairwise majority as a rule table; ties give indifference."""
    tris = enumerate_tripartitions(n, domain)
    rules = {}
    for pair in unordered_pairs(m):
        table = {}
        for t in tris:
            if len(t.first) > len(t.second):
                table[t] = PairStance.FIRST_PREFERRED
            elif len(t.second) > len(t.first):
                table[t] = PairStance.SECOND_PREFERRED
            else:
                table[t] = PairStance.INDIFFERENT
        rules[pair] = table
    return PairwiseRuleSwf(m, n, domain, rules)


def expand_to_explicit(swf: PairwiseRuleSwf) -> ExplicitSwf:
    """Assemble every domain profile; raises if any composition fails."""
    verdicts = {}
    for f in swf.domain_profiles():
        verdict = swf.assemble(f)
        if isinstance(verdict, CompositionFailure):
            raise ValueError(
                f"rules do not assemble on profile {_profile_texts(f)}: "
                f"{verdict.validation.axiom} violated at {verdict.validation.witness}"
            )
        verdicts[f] = verdict
    return ExplicitSwf(swf.m, swf.n, swf.domain, verdicts)


def derive_rules(swf: ExplicitSwf) -> PairwiseRuleSwf:
    """Project an independent explicit SWF onto per-pair rule tables.

    Raises when two profiles sharing a pair's tri-partition disagree on
    the verdict stance, i.e. when independence fails.
    """
    rules: dict[tuple[int, int], dict[TriPartition, PairStance]] = {
        pair: {} for pair in unordered_pairs(swf.m)
    }
    for f in swf.domain_profiles():
        for pair in unordered_pairs(swf.m):
            t = pair_partition(f, *pair)
            s = swf.stance(f, *pair)
            prev = rules[pair].get(t)
            if prev is None:
                rules[pair][t] = s
            elif prev is not s:
                raise ValueError(
                    f"independence fails on pair {pair}: tri-partition code {t.code()} "
                    f"maps to both {prev.value} and {s.value}"
                )
    return PairwiseRuleSwf(swf.m, swf.n, swf.domain, rules)


# ------------------------------------------------------------------ JSON


def swf_to_json_dict(swf: Swf, alts: AlternativeSet | None = None) -> dict:
    if alts is None:
        alts = AlternativeSet(swf.m)
    base = {
        "m": swf.m,
        "n": swf.n,
        "domain": swf.domain.value,
        "labels": list(alts.all_labels()),
    }
    if isinstance(swf, ExplicitSwf):
        entries = sorted(
            swf.verdicts.items(), key=lambda kv: tuple(w.classes for w in kv[0].prefs)
        )
        return {
            "kind": "explicit",
            **base,
            "entries": [
                [_profile_texts(f, alts), format_weak_order(w, alts)] for f, w in entries
            ],
        }
    rules_json = {}
    for pair in sorted(swf.rules):
        key = f"{alts.label(pair[0])},{alts.label(pair[1])}"
        table = swf.rules[pair]
        rules_json[key] = [
            [t.to_json_lists(), table[t].value]
            for t in sorted(table, key=lambda t: t.code())
        ]
    return {"kind": "pairwise", **base, "rules": rules_json}


def parse_swf_json(data: str | dict) -> tuple[Swf, AlternativeSet]:
    if isinstance(data, str):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SwfFormatError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from None
    else:
        obj = data
    if not isinstance(obj, dict):
        raise SwfFormatError("swf document must be a JSON object")
    kind = obj.get("kind")
    if kind not in ("explicit", "pairwise"):
        raise SwfFormatError(f"kind must be 'explicit' or 'pairwise', got {kind!r}")
    for key in ("m", "n", "domain"):
        if key not in obj:
            raise SwfFormatError(f"required key {key!r} missing")
    m, n = obj["m"], obj["n"]
    if not isinstance(m, int) or not isinstance(n, int) or isinstance(m, bool) or isinstance(n, bool):
        raise SwfFormatError("m and n must be integers")
    try:
        domain = Domain.from_name(obj["domain"])
    except ValueError as exc:
        raise SwfFormatError(str(exc)) from None
    labels = obj.get("labels")
    try:
        alts = AlternativeSet(m, tuple(labels)) if labels is not None else AlternativeSet(m)
    except (ValueError, TypeError) as exc:
        raise SwfFormatError(f"labels: {exc}") from None

    if kind == "explicit":
        entries = obj.get("entries")
        if not isinstance(entries, list):
            raise SwfFormatError("entries must be a list")
        verdicts: dict[Profile, WeakOrder] = {}
        for i, entry in enumerate(entries):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise SwfFormatError(f"entries[{i}]: expected [profile, verdict]")
            prof_texts, verdict_text = entry
            if not (isinstance(prof_texts, list) and len(prof_texts) == n):
                raise SwfFormatError(f"entries[{i}]: profile must list {n} orders")
            try:
                f = Profile(tuple(parse_weak_order(t, alts) for t in prof_texts))
                w = parse_weak_order(verdict_text, alts)
            except ValueError as exc:
                raise SwfFormatError(f"entries[{i}]: {exc}") from None
            if f in verdicts:
                raise SwfFormatError(f"entries[{i}]: duplicate profile")
            verdicts[f] = w
        return ExplicitSwf(m, n, domain, verdicts), alts

    rules_json = obj.get("rules")
    if not isinstance(rules_json, dict):
        raise SwfFormatError("rules must be an object keyed by pair")
    rules: dict[tuple[int, int], dict[TriPartition, PairStance]] = {}
    for key, cells in rules_json.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise SwfFormatError(f"rules key {key!r}: expected 'X,Y'")
        try:
            x, y = alts.index(parts[0]), alts.index(parts[1])
        except ValueError as exc:
            raise SwfFormatError(f"rules key {key!r}: {exc}") from None
        if x >= y:
            raise SwfFormatError(f"rules key {key!r}: pair must be canonical (x before y)")
        if not isinstance(cells, list):
            raise SwfFormatError(f"rules[{key!r}] must be a list of [tri-partition, stance]")
        table: dict[TriPartition, PairStance] = {}
        for i, cell in enumerate(cells):
            if not (isinstance(cell, list) and len(cell) == 2):
                raise SwfFormatError(f"rules[{key!r}][{i}]: expected [tri-partition, stance]")
            tri_lists, stance_name = cell
            try:
                t = TriPartition.from_json_lists(n, tri_lists)
                s = PairStance.from_name(stance_name)
            except (ValueError, TypeError) as exc:
                raise SwfFormatError(f"rules[{key!r}][{i}]: {exc}") from None
            if t in table:
                raise SwfFormatError(f"rules[{key!r}][{i}]: duplicate tri-partition")
            table[t] = s
        rules[(x, y)] = table
    return PairwiseRuleSwf(m, n, domain, rules), alts
