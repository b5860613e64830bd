"""Complete search for aggregation rules satisfying the first four axioms.

The search space is the independence quotient: one decision cell per
(pair of alternatives, reachable tri-partition of the voters), each
cell taking a stance FIRST, SECOND or INDIFFERENT.  A full assignment
is a `PairwiseRuleSwf`; it survives when

* unanimity holds (cells whose first part is every voter are FIRST,
  cells whose second part is every voter are SECOND; a unanimous tie
  imposes nothing), and
* every domain profile assembles into a valid weak order.

Each profile touches exactly three cells (m is fixed at 3), and the
triple of stances it sees must match one of the 13 stance triples that
weak orders on three alternatives realise.  Those ternary constraints
drive a depth-first search with generalized arc consistency; the
propagation only ever deletes stances with no support, so no surviving
rule can be missed, and the leaf-plus-pruned accounting proves that the
whole space was covered.

Determinism: cells are ordered by (pair, tri-partition code), stances
are tried FIRST < SECOND < INDIFFERENT, and certificates serialize with
sorted keys, so two runs produce byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Union

from ._util import canonical_json
from .profiles import Domain, Profile, TriPartition, enumerate_profiles, enumerate_tripartitions, pair_partition
from .relations import PairStance, enumerate_weak_orders, pair_stance, unordered_pairs
from .swf import PairwiseRuleSwf, find_dictator, full_report, swf_to_json_dict

STANCE_BY_INDEX = (
    PairStance.FIRST_PREFERRED,
    PairStance.SECOND_PREFERRED,
    PairStance.INDIFFERENT,
)

_PAIRS3 = ((0, 1), (0, 2), (1, 2))
_MASK_TO_STANCE = {1: 0, 2: 1, 4: 2}


class SearchIncompleteError(RuntimeError):
    """The node budget ran out before the space was covered."""


@dataclass(frozen=True)
class SearchCell:
    """One decision: the verdict stance for `pair` at tri-partition `code`."""

    pair: tuple[int, int]
    code: int


@dataclass
class SearchProblem:
    m: int
    n: int
    domain: Domain
    cells: tuple[SearchCell, ...]
    cell_index: dict[SearchCell, int]
    constraints: tuple[tuple[int, int, int], ...]
    profiles: tuple[Profile, ...]
    cell_constraints: tuple[tuple[int, ...], ...]
    forced: dict[int, int]
    allowed: tuple[tuple[int, int, int], ...]


@lru_cache(maxsize=None)
def _allowed_triples() -> tuple[tuple[int, int, int], ...]:
    triples = []
    for w in enumerate_weak_orders(3):
        triples.append(
            tuple(STANCE_BY_INDEX.index(pair_stance(w, x, y)) for x, y in _PAIRS3)
        )
    return tuple(sorted(triples))


def build_problem(m: int, n: int, domain: Domain) -> SearchProblem:
    if m != 3:
        raise ValueError(f"the base-case search is specific to m=3, got m={m}")
    if n < 1:
        raise ValueError(f"need at least one voter, got n={n}")
    tris = enumerate_tripartitions(n, domain)
    cells = tuple(SearchCell(pair, t.code()) for pair in _PAIRS3 for t in tris)
    cell_index = {cell: i for i, cell in enumerate(cells)}
    profiles = tuple(enumerate_profiles(m, n, domain))
    constraints = tuple(
        tuple(cell_index[SearchCell(pair, pair_partition(f, *pair).code())] for pair in _PAIRS3)
        for f in profiles
    )
    per_cell: list[list[int]] = [[] for _ in cells]
    for ci, cons in enumerate(constraints):
        for cell in cons:
            per_cell[cell].append(ci)
    unanimous_first = TriPartition(n, frozenset(range(n)), frozenset(), frozenset()).code()
    unanimous_second = TriPartition(n, frozenset(), frozenset(range(n)), frozenset()).code()
    forced = {}
    for pair in _PAIRS3:
        forced[cell_index[SearchCell(pair, unanimous_first)]] = 0
        forced[cell_index[SearchCell(pair, unanimous_second)]] = 1
    return SearchProblem(
        m=m,
        n=n,
        domain=domain,
        cells=cells,
        cell_index=cell_index,
        constraints=constraints,
        profiles=profiles,
        cell_constraints=tuple(tuple(v) for v in per_cell),
        forced=forced,
        allowed=_allowed_triples(),
    )


def _gac(
    problem: SearchProblem,
    domains: list[int],
    pending: list[int],
    trail: list[tuple[int, int]],
) -> bool:
    """Generalized arc consistency to fixpoint; False on a domain wipeout.

    Only unsupported stances are deleted, so every completion that was
    consistent stays reachable (pruning is sound).  Deletions are pushed
    onto `trail` so the caller can restore the exact previous state.
    """
    queued = set(pending)
    queue = list(pending)
    head = 0
    while head < len(queue):
        ci = queue[head]
        head += 1
        queued.discard(ci)
        c1, c2, c3 = problem.constraints[ci]
        d1, d2, d3 = domains[c1], domains[c2], domains[c3]
        s1 = s2 = s3 = 0
        for a, b, c in problem.allowed:
            if d1 >> a & 1 and d2 >> b & 1 and d3 >> c & 1:
                s1 |= 1 << a
                s2 |= 1 << b
                s3 |= 1 << c
        for cell, old, new in ((c1, d1, s1), (c2, d2, s2), (c3, d3, s3)):
            if new == old:
                continue
            if new == 0:
                return False
            domains[cell] = new
            trail.append((cell, old))
            for cj in problem.cell_constraints[cell]:
                if cj != ci and cj not in queued:
                    queue.append(cj)
                    queued.add(cj)
    return True


@dataclass
class PropagationResult:
    consistent: bool
    domains: dict[SearchCell, tuple[PairStance, ...]]
    conflict: str | None = None


def propagate(
    problem: SearchProblem, assignment: Mapping[SearchCell, PairStance]
) -> PropagationResult:
    """Run unanimity forcing plus arc consistency over a partial assignment."""
    domains = [7] * len(problem.cells)
    for idx, stance in problem.forced.items():
        domains[idx] = 1 << stance
    for cell, stance in assignment.items():
        idx = problem.cell_index.get(cell)
        if idx is None:
            raise ValueError(f"cell {cell} is not part of this problem")
        bit = 1 << STANCE_BY_INDEX.index(stance)
        if not domains[idx] & bit:
            return PropagationResult(
                False, {}, f"assignment {stance.value} conflicts with unanimity at {cell}"
            )
        domains[idx] = bit
    trail: list[tuple[int, int]] = []
    ok = _gac(problem, domains, list(range(len(problem.constraints))), trail)
    if not ok:
        return PropagationResult(False, {}, "a cell lost every stance during propagation")
    out = {
        cell: tuple(STANCE_BY_INDEX[s] for s in range(3) if domains[i] >> s & 1)
        for i, cell in enumerate(problem.cells)
    }
    return PropagationResult(True, out)


@dataclass
class SurvivorRecord:
    swf: PairwiseRuleSwf
    dictator: int | None
    stances: tuple[int, ...]


@dataclass
class SearchCertificate:
    """Reproducible record of one complete search run.

    `explored_leaves + pruned_total == 3 ** cell_count`: every complete
    assignment is either visited or accounted to a pruned subtree.
    """

    m: int
    n: int
    domain: Domain
    cell_count: int
    forced_cells: int
    space: int
    explored_leaves: int
    pruned_events: int
    pruned_total: int
    nodes: int
    survivors: list[SurvivorRecord]

    def to_json_dict(self) -> dict:
        return {
            "schema": "arrovian/certificate/v1",
            "parameters": {"m": self.m, "n": self.n, "domain": self.domain.value},
            "cells": self.cell_count,
            "forced_cells": self.forced_cells,
            "space": self.space,
            "explored_leaves": self.explored_leaves,
            "pruned_events": self.pruned_events,
            "pruned_total": self.pruned_total,
            "survivor_count": len(self.survivors),
            "survivors": [
                {"dictator": rec.dictator, "rules": swf_to_json_dict(rec.swf)}
                for rec in self.survivors
            ],
        }

    def to_json_text(self) -> str:
        return canonical_json(self.to_json_dict())


def _rules_from_stances(problem: SearchProblem, stances: list[int]) -> PairwiseRuleSwf:
    rules: dict[tuple[int, int], dict[TriPartition, PairStance]] = {
        pair: {} for pair in unordered_pairs(problem.m)
    }
    for cell, s in zip(problem.cells, stances):
        t = TriPartition.from_code(problem.n, cell.code)
        rules[cell.pair][t] = STANCE_BY_INDEX[s]
    return PairwiseRuleSwf(problem.m, problem.n, problem.domain, rules)


def search_arrovian(
    m: int,
    n: int,
    domain: Domain,
    allow_long: bool = False,
    max_nodes: int | None = None,
    progress: Callable[[dict], None] | None = None,
) -> SearchCertificate:
    """Exhaust the rule space and certify the survivors.

    Supported sizes: n <= 3 on the linear domain (n = 3 is the long
    mode and must be requested with allow_long), n <= 2 on the weak
    domain.  Running out of `max_nodes` raises SearchIncompleteError;
    a partial result is never returned.
    """
    if domain is Domain.LINEAR:
        if n > 3:
            raise ValueError(f"linear-domain search supports n <= 3, got n={n}")
        if n == 3 and not allow_long:
            raise ValueError("n=3 on the linear domain is the long mode; pass allow_long=True")
    else:
        if n > 2:
            raise ValueError(f"weak-domain search supports n <= 2, got n={n}")

    problem = build_problem(m, n, domain)
    cell_count = len(problem.cells)
    pow3 = [3**i for i in range(cell_count + 1)]
    space = pow3[cell_count]

    domains = [7] * cell_count
    for idx, stance in problem.forced.items():
        domains[idx] = 1 << stance

    counters = {"leaves": 0, "pruned_events": 0, "pruned_total": 0, "nodes": 0}
    survivors: list[SurvivorRecord] = []

    root_trail: list[tuple[int, int]] = []
    root_ok = _gac(problem, domains, list(range(len(problem.constraints))), root_trail)
    if not root_ok:
        counters["pruned_events"] = 1
        counters["pruned_total"] = space

    def dfs(depth: int) -> None:
        if depth == cell_count:
            counters["leaves"] += 1
            stances = [_MASK_TO_STANCE[mask] for mask in domains]
            swf = _rules_from_stances(problem, stances)
            survivors.append(SurvivorRecord(swf, None, tuple(stances)))
            return
        rest = cell_count - depth - 1
        current = domains[depth]
        for s in (0, 1, 2):
            counters["nodes"] += 1
            if max_nodes is not None and counters["nodes"] > max_nodes:
                raise SearchIncompleteError(
                    f"node budget {max_nodes} exhausted with the space not yet covered"
                )
            if progress is not None and counters["nodes"] % 100_000 == 0:
                progress(dict(counters))
            if not current >> s & 1:
                counters["pruned_events"] += 1
                counters["pruned_total"] += pow3[rest]
                continue
            trail: list[tuple[int, int]] = [(depth, domains[depth])]
            domains[depth] = 1 << s
            if _gac(problem, domains, list(problem.cell_constraints[depth]), trail):
                dfs(depth + 1)
            else:
                counters["pruned_events"] += 1
                counters["pruned_total"] += pow3[rest]
            for cell, old in reversed(trail):
                domains[cell] = old

    if root_ok:
        dfs(0)

    if counters["leaves"] + counters["pruned_total"] != space:
        raise RuntimeError(
            "accounting mismatch: leaves + pruned does not cover the space"
        )

    for rec in survivors:
        report = full_report(rec.swf)
        if not report.arrovian():
            raise RuntimeError(
                f"survivor failed the axiom cross-check: {report.failed()}"
            )
        rec.dictator = find_dictator(rec.swf)

    survivors.sort(key=lambda rec: rec.stances)
    return SearchCertificate(
        m=m,
        n=n,
        domain=domain,
        cell_count=cell_count,
        forced_cells=len(problem.forced),
        space=space,
        explored_leaves=counters["leaves"],
        pruned_events=counters["pruned_events"],
        pruned_total=counters["pruned_total"],
        nodes=counters["nodes"],
        survivors=survivors,
    )
