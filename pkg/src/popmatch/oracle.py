"""Brute-force certification by exhaustive matching enumeration.

Everything here is deliberately independent of the solver: popularity
and stability are checked straight from the vote and blocking-edge
definitions over every matching of the instance, so the results certify
the solver's guarantees rather than restating them.  Exhaustive means
exponential; all enumerating entry points refuse instances above an
edge-count limit instead of hanging.

Pairwise vote comparisons run on flat per-agent vote tables through a
small scan kernel (compiled when available, numpy otherwise); the tables
themselves are filled agent by agent from the vote definition.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from popmatch._kernels import first_negative
from popmatch.core import (
    Instance,
    Matching,
    StabilityNotion,
    VoteRule,
    _check_notion_mode,
    _check_rule_mode,
    blocking_edges,
    GAMMA_MODE,
    vote_on_edges,
)
from popmatch.errors import TooLargeError

DEFAULT_EDGE_LIMIT = 24


def _guard(inst: Instance, limit: int) -> None:
    if len(inst.edges) > limit:
        raise TooLargeError(
            f"instance has {len(inst.edges)} edges, enumeration limit is {limit}")


def _native_rule(inst: Instance) -> VoteRule:
    return VoteRule.GAMMA if inst.mode == GAMMA_MODE else VoteRule.WEAK


def enumerate_matchings(inst: Instance, *, limit: int = DEFAULT_EDGE_LIMIT
                        ) -> Iterator[Matching]:
    """All matchings, empty first; order is fixed by the edge listing."""
    _guard(inst, limit)
    edges = inst.edges
    used: set[str] = set()
    chosen: list[str] = []

    def rec(i: int) -> Iterator[Matching]:
        if i == len(edges):
            yield Matching(frozenset(chosen))
            return
        e = edges[i]
        yield from rec(i + 1)
        if e.u not in used and e.w not in used:
            used.add(e.u)
            used.add(e.w)
            chosen.append(e.id)
            yield from rec(i + 1)
            chosen.pop()
            used.discard(e.u)
            used.discard(e.w)

    return rec(0)


def build_vote_tables(inst: Instance, rule: VoteRule
                      ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flat int8 vote tables plus per-agent offsets and row sizes.

    Agent a's table is sizes[a] x sizes[a], row-major at offsets[a]:
    entry (i, j) is a's vote for holding local assignment i over j,
    where assignments follow incident listing order and the last index
    means unmatched.
    """
    agents = inst.agents
    sizes = np.array([len(inst.incident[a]) + 1 for a in agents], dtype=np.int64)
    table_sizes = sizes * sizes
    offsets = np.zeros(len(agents), dtype=np.int64)
    if len(agents) > 1:
        offsets[1:] = np.cumsum(table_sizes[:-1])
    flat = np.empty(int(table_sizes.sum()), dtype=np.int8)

    for ai, agent in enumerate(agents):
        options = list(inst.incident[agent]) + [None]  # local order, then unmatched
        size = sizes[ai]
        for i, m in enumerate(options):
            for j, n in enumerate(options):
                flat[offsets[ai] + i * size + j] = vote_on_edges(inst, agent, m, n, rule)
    return flat, offsets, sizes


def encode_matchings(inst: Instance, matchings: list[Matching]) -> np.ndarray:
    """int16 matrix of local assignments, one row per matching."""
    agents = inst.agents
    local = {a: {e.id: i for i, e in enumerate(inst.incident[a])} for a in agents}
    assign = np.empty((len(matchings), len(agents)), dtype=np.int16)
    for mi, m in enumerate(matchings):
        holder = inst.assignment(m)
        for ai, a in enumerate(agents):
            edge = holder.get(a)
            assign[mi, ai] = len(local[a]) if edge is None else local[a][edge.id]
    return assign


class _Tableau:
    """Enumeration plus encoded vote tables, built once per instance."""

    def __init__(self, inst: Instance, rule: VoteRule, limit: int):
        self.matchings = list(enumerate_matchings(inst, limit=limit))
        self.flat, self.offsets, self.sizes = build_vote_tables(inst, rule)
        self.assign = encode_matchings(inst, self.matchings)
        self.row_of = {m.edge_ids: i for i, m in enumerate(self.matchings)}

    def first_beating(self, row: int) -> int:
        return first_negative(self.flat, self.offsets, self.sizes, self.assign, row)


def certify_popular(inst: Instance, matching: Matching,
                    rule: VoteRule | None = None, *,
                    limit: int = DEFAULT_EDGE_LIMIT) -> Matching | None:
    """None if no matching wins the pairwise vote against `matching`.

    Otherwise the first winning matching in enumeration order, as a
    checkable counterexample.
    """
    rule = rule or _native_rule(inst)
    _check_rule_mode(inst, rule)
    inst.assignment(matching)  # reject foreign or conflicting edge ids
    tab = _Tableau(inst, rule, limit)
    hit = tab.first_beating(tab.row_of[matching.edge_ids])
    return None if hit < 0 else tab.matchings[hit]


def max_popular(inst: Instance, rule: VoteRule | None = None, *,
                limit: int = DEFAULT_EDGE_LIMIT) -> tuple[int, Matching] | None:
    """Largest popular matching as (size, witness), or None if none exists.

    Candidates of equal size are tried in enumeration order, so the
    witness is deterministic.
    """
    rule = rule or _native_rule(inst)
    _check_rule_mode(inst, rule)
    tab = _Tableau(inst, rule, limit)
    order = sorted(range(len(tab.matchings)),
                   key=lambda i: (-len(tab.matchings[i]), i))
    for row in order:
        if tab.first_beating(row) < 0:
            return len(tab.matchings[row]), tab.matchings[row]
    return None


def super_popular_exists(inst: Instance, *, limit: int = DEFAULT_EDGE_LIMIT
                         ) -> Matching | None:
    """First matching (enumeration order) popular under optimistic votes."""
    _check_rule_mode(inst, VoteRule.SUPER)
    tab = _Tableau(inst, VoteRule.SUPER, limit)
    for row in range(len(tab.matchings)):
        if tab.first_beating(row) < 0:
            return tab.matchings[row]
    return None


def max_stable(inst: Instance, notion: StabilityNotion, *,
               limit: int = DEFAULT_EDGE_LIMIT) -> tuple[int, Matching] | None:
    """Largest matching with no blocking edge, or None if none exists."""
    _check_notion_mode(inst, notion)
    best: Matching | None = None
    for m in enumerate_matchings(inst, limit=limit):
        if (best is None or len(m) > len(best)) and not blocking_edges(inst, m, notion):
            best = m
    return None if best is None else (len(best), best)


def max_matching(inst: Instance) -> int:
    """Maximum matching size via augmenting paths; no enumeration."""
    adj = {u: [e.w for e in inst.incident[u]] for u in inst.u_agents}
    match_w: dict[str, str] = {}

    def augment(u: str, seen: set[str]) -> bool:
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_w or augment(match_w[w], seen):
                match_w[w] = u
                return True
        return False

    return sum(1 for u in inst.u_agents if augment(u, set()))
