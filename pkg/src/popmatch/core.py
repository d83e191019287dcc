"""Bipartite matching-market instances, vote rules and stability predicates.

An instance is a bipartite multigraph whose agents value their incident
edges with exact rationals; in gamma mode every edge additionally carries a
positive improvement threshold per endpoint.  Agents compare two matchings
through one of four vote rules, and a matching is popular under a rule when
it never loses the aggregate vote against any other matching.

Being unmatched is strictly worse than holding any edge, by more than any
threshold: an agent that becomes matched always votes for the new matching,
an agent that becomes unmatched always votes for the old one.  All value
comparisons are exact (`fractions.Fraction` / int), never floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Union

from popmatch.errors import RuleModeMismatchError

Rational = Union[int, Fraction]

WEAK_MODE = "weak"
GAMMA_MODE = "gamma"


class VoteRule(enum.Enum):
    """How an agent votes when comparing its partners in two matchings."""

    CLASSIC = "classic"  # strictly better partner wins, equal value is a tie
    WEAK = "weak"        # equal value with a different partner favours the incumbent
    GAMMA = "gamma"      # challenger must improve by at least the new edge's threshold
    SUPER = "super"      # any weakly-better different partner favours the challenger


class StabilityNotion(enum.Enum):
    """Blocking-edge conditions for the stability predicates."""

    WEAK = "weak-stable"     # both endpoints strictly improve
    GAMMA_MIN = "gamma-min"  # both endpoints improve by the edge's thresholds
    SUPER = "super"          # both endpoints weakly improve


@dataclass(frozen=True)
class Edge:
    """One edge of the market with its per-endpoint valuations.

    ``gamma_u``/``gamma_w`` are present exactly when the owning instance is
    in gamma mode.
    """

    id: str
    u: str
    w: str
    p_u: Rational
    p_w: Rational
    gamma_u: Rational | None = None
    gamma_w: Rational | None = None


@dataclass(frozen=True)
class Matching:
    """A set of edge ids with at most one edge per agent."""

    edge_ids: frozenset[str]

    @classmethod
    def of(cls, *ids: str) -> "Matching":
        return cls(frozenset(ids))

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, edge_id: str) -> bool:
        return edge_id in self.edge_ids

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.edge_ids))


EMPTY_MATCHING = Matching(frozenset())


@dataclass(frozen=True)
class Instance:
    """A bipartite multigraph with valuations; the universe for everything else.

    Agent ids are unique across both sides and the edge listing order is
    significant: it drives every deterministic tie-break downstream.
    """

    u_agents: tuple[str, ...]
    w_agents: tuple[str, ...]
    edges: tuple[Edge, ...]
    mode: str = WEAK_MODE

    def __post_init__(self) -> None:
        if self.mode not in (WEAK_MODE, GAMMA_MODE):
            raise ValueError(f"unknown mode {self.mode!r}")
        seen: set[str] = set()
        for a in self.u_agents + self.w_agents:
            if a in seen:
                raise ValueError(f"duplicate agent id {a!r}")
            seen.add(a)
        u_set = set(self.u_agents)
        w_set = set(self.w_agents)
        ids: set[str] = set()
        for e in self.edges:
            if e.id in ids:
                raise ValueError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            if e.u not in u_set:
                raise ValueError(f"edge {e.id!r}: {e.u!r} is not a U-agent")
            if e.w not in w_set:
                raise ValueError(f"edge {e.id!r}: {e.w!r} is not a W-agent")
            for value, label in ((e.p_u, "p_u"), (e.p_w, "p_w")):
                if not isinstance(value, (int, Fraction)):
                    raise ValueError(f"edge {e.id!r}: {label} must be an exact rational")
                if value < 0:
                    raise ValueError(f"edge {e.id!r}: {label} must be >= 0")
            gammas = (e.gamma_u, e.gamma_w)
            if self.mode == GAMMA_MODE:
                for g, label in zip(gammas, ("gamma_u", "gamma_w")):
                    if not isinstance(g, (int, Fraction)):
                        raise ValueError(f"edge {e.id!r}: {label} required in gamma mode")
                    if g <= 0:
                        raise ValueError(f"edge {e.id!r}: {label} must be > 0")
            elif gammas != (None, None):
                raise ValueError(f"edge {e.id!r}: gamma values not allowed in weak mode")

    @cached_property
    def agents(self) -> tuple[str, ...]:
        return self.u_agents + self.w_agents

    @cached_property
    def by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def incident(self) -> dict[str, tuple[Edge, ...]]:
        """Incident edges per agent, in edge listing order."""
        out: dict[str, list[Edge]] = {a: [] for a in self.agents}
        for e in self.edges:
            out[e.u].append(e)
            out[e.w].append(e)
        return {a: tuple(es) for a, es in out.items()}

    def value(self, edge: Edge, agent: str) -> Rational:
        if agent == edge.u:
            return edge.p_u
        if agent == edge.w:
            return edge.p_w
        raise ValueError(f"{agent!r} is not an endpoint of edge {edge.id!r}")

    def gamma(self, edge: Edge, agent: str) -> Rational:
        g = edge.gamma_u if agent == edge.u else edge.gamma_w if agent == edge.w else None
        if g is None:
            raise ValueError(f"no gamma for agent {agent!r} on edge {edge.id!r}")
        return g

    def assignment(self, matching: Matching) -> dict[str, Edge]:
        """Map each matched agent to its edge; raises if not a valid matching."""
        out: dict[str, Edge] = {}
        for eid in matching:
            e = self.by_id.get(eid)
            if e is None:
                raise ValueError(f"unknown edge id {eid!r}")
            for v in (e.u, e.w):
                if v in out:
                    raise ValueError(f"agent {v!r} is matched twice")
                out[v] = e
        return out

    def matched_edge(self, matching: Matching, agent: str) -> Edge | None:
        for e in self.incident.get(agent, ()):
            if e.id in matching:
                return e
        return None


def _check_rule_mode(inst: Instance, rule: VoteRule) -> None:
    if rule is VoteRule.GAMMA and inst.mode != GAMMA_MODE:
        raise RuleModeMismatchError("gamma vote rule requires a gamma-mode instance")


def _check_notion_mode(inst: Instance, notion: StabilityNotion) -> None:
    if notion is StabilityNotion.GAMMA_MIN and inst.mode != GAMMA_MODE:
        raise RuleModeMismatchError("gamma-min stability requires a gamma-mode instance")


def vote_on_edges(inst: Instance, agent: str, m: Edge | None, n: Edge | None,
                  rule: VoteRule) -> int:
    """Vote of `agent` given its edge in M (`m`) and in N (`n`); None = unmatched.

    Returns +1 when the agent favours M, -1 when it favours N, 0 when
    indifferent under `rule`.
    """
    same = (m is None and n is None) or (m is not None and n is not None and m.id == n.id)
    if same:
        return 0
    if rule is VoteRule.CLASSIC:
        if m is None:
            return -1
        if n is None:
            return +1
        pm, pn = inst.value(m, agent), inst.value(n, agent)
        return 0 if pm == pn else (+1 if pm > pn else -1)
    if rule is VoteRule.WEAK:
        if m is None:
            return -1
        if n is None:
            return +1
        return -1 if inst.value(n, agent) > inst.value(m, agent) else +1
    if rule is VoteRule.GAMMA:
        if n is None:
            return +1
        if m is None:
            return -1
        improved = inst.value(n, agent) >= inst.value(m, agent) + inst.gamma(n, agent)
        return -1 if improved else +1
    if rule is VoteRule.SUPER:
        if m is None:
            return -1
        if n is None:
            return +1
        return +1 if inst.value(m, agent) > inst.value(n, agent) else -1
    raise ValueError(f"unknown vote rule {rule!r}")


def vote(inst: Instance, agent: str, m: Matching, n: Matching, rule: VoteRule) -> int:
    """Vote of one agent comparing matching `m` against matching `n`."""
    _check_rule_mode(inst, rule)
    if agent not in inst.incident:
        raise ValueError(f"unknown agent {agent!r}")
    return vote_on_edges(inst, agent, inst.matched_edge(m, agent),
                         inst.matched_edge(n, agent), rule)


def delta(inst: Instance, m: Matching, n: Matching, rule: VoteRule) -> int:
    """Aggregate vote over all agents; `m` is popular iff this is >= 0 for every `n`."""
    _check_rule_mode(inst, rule)
    am = inst.assignment(m)
    an = inst.assignment(n)
    return sum(vote_on_edges(inst, v, am.get(v), an.get(v), rule) for v in inst.agents)


def blocking_edges(inst: Instance, matching: Matching,
                   notion: StabilityNotion) -> list[str]:
    """Edge ids outside `matching` that block it under the given notion.

    Unmatched endpoints are always (strictly, and by any threshold) improved
    upon by an incident edge.
    """
    _check_notion_mode(inst, notion)
    assign = inst.assignment(matching)
    out = []
    for e in inst.edges:
        if e.id in matching:
            continue
        if _endpoint_blocks(inst, e, e.u, assign.get(e.u), notion) and \
                _endpoint_blocks(inst, e, e.w, assign.get(e.w), notion):
            out.append(e.id)
    return out


def _endpoint_blocks(inst: Instance, e: Edge, agent: str, held: Edge | None,
                     notion: StabilityNotion) -> bool:
    if held is None:
        return True
    p_new = inst.value(e, agent)
    p_old = inst.value(held, agent)
    if notion is StabilityNotion.WEAK:
        return p_new > p_old
    if notion is StabilityNotion.GAMMA_MIN:
        return p_new >= p_old + inst.gamma(e, agent)
    return p_new >= p_old


def is_stable(inst: Instance, matching: Matching, notion: StabilityNotion) -> bool:
    return not blocking_edges(inst, matching, notion)


def is_valid(inst: Instance, matching: Matching) -> bool:
    try:
        inst.assignment(matching)
    except ValueError:
        return False
    return True


def is_maximal(inst: Instance, matching: Matching) -> bool:
    assign = inst.assignment(matching)
    return all(e.u in assign or e.w in assign for e in inst.edges)
