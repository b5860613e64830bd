"""Filters and ultrafilters over a finite ground set, as explicit families.

Coalitions (subsets of the voters 0..n-1) are encoded as bitmasks and a
family of coalitions as a frozenset of masks, so the n = 4 full scan of
all 2**16 candidate families stays cheap.  The filter axioms checked:

  F1  upward closure: every superset of a member is a member
  F2  intersection closure: the meet of two members is a member
  F3  properness: the empty coalition is not a member

A family must also be nonempty to count as a filter here.  The empty
family satisfies F1-F3 vacuously but is excluded on purpose: with it,
the ground set would not belong to every filter and the small-n filter
counts (1 on one voter, 3 on two) would come out wrong.

Two ultrafilter tests are provided and are provably equivalent on this
finite ground: maximality (no strictly finer proper filter exists,
decided by one-set extensions) and the complement test (exactly one of
each coalition and its complement is a member).  Their agreement is
machine-checked across every filter for n <= 4 rather than assumed.

JSON family format::

    {"n": 3, "members": [[0], [0, 1], [0, 2], [0, 1, 2]]}
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

MAX_GROUND = 4


def set_to_mask(s: Iterable[int], n: int) -> int:
    mask = 0
    for v in s:
        if not 0 <= v < n:
            raise ValueError(f"voter {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(v for v in range(mask.bit_length()) if mask >> v & 1)


@dataclass(frozen=True)
class CoalitionFamily:
    """A family of voter coalitions over the ground set 0..n-1."""

    n: int
    masks: frozenset[int]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground set needs at least one voter, got n={self.n}")
        masks = frozenset(self.masks)
        object.__setattr__(self, "masks", masks)
        full = (1 << self.n) - 1
        for mask in masks:
            if not 0 <= mask <= full:
                raise ValueError(f"coalition mask {mask} out of range for n={self.n}")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "CoalitionFamily":
        return cls(n, frozenset(set_to_mask(s, n) for s in sets))

    @classmethod
    def principal(cls, n: int, v: int) -> "CoalitionFamily":
        """All coalitions containing voter v."""
        if not 0 <= v < n:
            raise ValueError(f"voter {v} out of range for n={n}")
        full = (1 << n) - 1
        return cls(n, frozenset(mask for mask in range(full + 1) if mask >> v & 1))

    def member_sets(self) -> list[frozenset[int]]:
        """Member coalitions as voter sets, ascending by mask encoding."""
        return [mask_to_set(mask) for mask in sorted(self.masks)]

    def contains(self, coalition: Iterable[int]) -> bool:
        return set_to_mask(coalition, self.n) in self.masks

    def to_json_dict(self) -> dict:
        return {"n": self.n, "members": [sorted(s) for s in self.member_sets()]}

    @classmethod
    def from_json_dict(cls, data: str | dict) -> "CoalitionFamily":
        if isinstance(data, str):
            try:
                obj = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ValueError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        else:
            obj = data
        if not isinstance(obj, dict) or set(obj) != {"n", "members"}:
            raise ValueError("family document must be an object with keys 'n' and 'members'")
        n, members = obj["n"], obj["members"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("n must be an integer")
        if not isinstance(members, list) or not all(isinstance(s, list) for s in members):
            raise ValueError("members must be a list of voter lists")
        return cls.from_sets(n, members)


@dataclass(frozen=True)
class FilterCheck:
    """PASS, or the first axiom violated plus witness coalitions."""

    ok: bool
    axiom: str | None = None
    witness: tuple[frozenset[int], ...] | None = None


def is_filter(fam: CoalitionFamily) -> FilterCheck:
    """Check nonemptiness, then F3, F1 and F2 in that order.

    Witnesses are deterministic: members are scanned ascending by mask.
    """
    if not fam.masks:
        return FilterCheck(False, "nonempty", ())
    full = (1 << fam.n) - 1
    members = sorted(fam.masks)
    if 0 in fam.masks:
        return FilterCheck(False, "F3", (frozenset(),))
    for a in members:
        comp = full & ~a
        sub = comp
        while True:
            sup = a | sub
            if sup not in fam.masks:
                return FilterCheck(False, "F1", (mask_to_set(a), mask_to_set(sup)))
            if sub == 0:
                break
            sub = (sub - 1) & comp
    for i, a in enumerate(members):
        for b in members[i:]:
            if a & b not in fam.masks:
                return FilterCheck(False, "F2", (mask_to_set(a), mask_to_set(b)))
    return FilterCheck(True)


def _closure_is_proper(n: int, masks: frozenset[int], extra: int) -> bool:
    """Close masks + {extra} under intersection and superset; test properness.

    The closure is itself a filter whenever it stays proper, so a proper
    closure around an absent coalition certifies a strictly finer filter.
    """
    full = (1 << n) - 1
    cur = set(masks)
    cur.add(extra)
    changed = True
    while changed:
        changed = False
        snapshot = list(cur)
        for a in snapshot:
            for b in snapshot:
                c = a & b
                if c not in cur:
                    cur.add(c)
                    changed = True
        for a in snapshot:
            comp = full & ~a
            sub = comp
            while True:
                sup = a | sub
                if sup not in cur:
                    cur.add(sup)
                    changed = True
                if sub == 0:
                    break
                sub = (sub - 1) & comp
    return 0 not in cur


def is_ultrafilter_maximal(fam: CoalitionFamily) -> bool:
    """No strictly finer proper filter exists.

    It suffices to try one-set extensions: any strictly finer filter
    contains some absent coalition A, and then also the closure of the
    family plus A, so properness of that closure is the whole question.
    This shortcut is validated against a brute-force scan in the tests.
    """
    check = is_filter(fam)
    if not check.ok:
        raise ValueError(f"precondition failed: not a filter ({check.axiom} violated)")
    full = (1 << fam.n) - 1
    for extra in range(full + 1):
        if extra in fam.masks:
            continue
        if _closure_is_proper(fam.n, fam.masks, extra):
            return False
    return True


def is_ultrafilter_complement(fam: CoalitionFamily) -> bool:
    """A filter holding exactly one of each coalition and its complement."""
    if not is_filter(fam).ok:
        return False
    full = (1 << fam.n) - 1
    return all((a in fam.masks) != ((full & ~a) in fam.masks) for a in range(full + 1))


@dataclass(frozen=True)
class FilterClassification:
    """is_filter outcome, ultrafilter status and fixedness in one record."""

    filter_check: FilterCheck
    is_ultrafilter: bool
    fixed: bool
    core: frozenset[int]

    def to_json_dict(self) -> dict:
        check = self.filter_check
        return {
            "is_filter": check.ok,
            "violated": check.axiom,
            "witness": [sorted(s) for s in check.witness] if check.witness is not None else None,
            "is_ultrafilter": self.is_ultrafilter,
            "fixedness": "FIXED" if self.fixed else "FREE",
            "core": sorted(self.core),
        }


def classify(fam: CoalitionFamily) -> FilterClassification:
    """Full classification of an arbitrary family.

    The core is the intersection of all members (the whole ground set
    when the family is empty, by the usual convention); a family is
    FIXED when that intersection is nonempty.  Every filter on a finite
    ground set is fixed, and its core is itself a member; both facts
    are exercised across all filters for n <= 4 in the tests.
    """
    check = is_filter(fam)
    full = (1 << fam.n) - 1
    core = full
    for mask in fam.masks:
        core &= mask
    ultra = check.ok and is_ultrafilter_complement(fam)
    return FilterClassification(check, ultra, core != 0, mask_to_set(core))


def _sup_table(n: int) -> list[int]:
    """For each coalition mask i, the family-bit mask of all supersets of i."""
    full = (1 << n) - 1
    table = []
    for i in range(full + 1):
        bits = 0
        comp = full & ~i
        sub = comp
        while True:
            bits |= 1 << (i | sub)
            if sub == 0:
                break
            sub = (sub - 1) & comp
        table.append(bits)
    return table


def _scan_codes(n: int, lo: int, hi: int) -> list[int]:
    """Family codes in [lo, hi) that encode filters.

    A family code has bit i set when coalition mask i belongs to the
    family; the scan applies the checks of `is_filter` in integer form.
    """
    sup = _sup_table(n)
    nsub = 1 << n
    found = []
    for code in range(lo, hi):
        if code == 0 or code & 1:
            continue
        members = [i for i in range(nsub) if code >> i & 1]
        ok = True
        for i in members:
            if code & sup[i] != sup[i]:
                ok = False
                break
        if not ok:
            continue
        for ai, a in enumerate(members):
            for b in members[ai:]:
                if not code >> (a & b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(code)
    return found


def family_from_code(n: int, code: int) -> CoalitionFamily:
    if not 0 <= code < 1 << (1 << n):
        raise ValueError(f"family code {code} out of range for n={n}")
    return CoalitionFamily(n, frozenset(i for i in range(1 << n) if code >> i & 1))


def family_to_code(fam: CoalitionFamily) -> int:
    code = 0
    for mask in fam.masks:
        code |= 1 << mask
    return code


def enumerate_filters(n: int, threads: int = 1) -> list[CoalitionFamily]:
    """All filters on 0..n-1 by full scan of the 2**(2**n) families.

    Results are ascending by family code, so the output is deterministic
    regardless of `threads`; worker processes each scan a contiguous
    chunk of the code space and the chunks are merged in order.
    """
    if not 1 <= n <= MAX_GROUND:
        raise ValueError(f"full family scan supports 1 <= n <= {MAX_GROUND}, got {n}")
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    space = 1 << (1 << n)
    if threads == 1 or space < 1 << 12:
        codes = _scan_codes(n, 0, space)
    else:
        chunk = (space + threads - 1) // threads
        bounds = [(n, lo, min(lo + chunk, space)) for lo in range(0, space, chunk)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_codes, *zip(*bounds)))
        codes = [code for part in parts for code in part]
    return [family_from_code(n, code) for code in codes]
