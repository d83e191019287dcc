"""Deferred acceptance over edge copies, and projection back to edges.

The pipeline is: duplicate every edge into six strictly ranked copies,
run U-proposing deferred acceptance on the resulting strict instance,
then project the stable assignment back to the original edges.  The
projection is the matching the library returns; the copy-level
assignment is kept around as a certificate that can be re-checked
independently of how it was produced.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from popmatch.core import Instance, Matching
from popmatch.duplication import (
    COPY_ORDER,
    DuplicatedInstance,
    EdgeCopy,
    build_duplicated,
)
from popmatch.errors import InvalidAssignmentError


@dataclass(frozen=True)
class StrictMatching:
    """One edge copy per matched agent pair in a duplicated instance."""

    dup: DuplicatedInstance
    copies: frozenset[EdgeCopy]

    def __len__(self) -> int:
        return len(self.copies)

    def assignment(self) -> dict[str, EdgeCopy]:
        """Agent -> held copy.  Rejects copy sets that double-book an agent."""
        held: dict[str, EdgeCopy] = {}
        for k in self.copies:
            edge = self.dup.base.by_id.get(k.edge_id)
            if edge is None:
                raise InvalidAssignmentError(f"unknown edge {k.edge_id!r}")
            for agent in (edge.u, edge.w):
                if agent in held:
                    raise InvalidAssignmentError(f"{agent} holds two copies")
                held[agent] = k
        return held

    def project(self) -> Matching:
        return Matching(frozenset(k.edge_id for k in self.copies))


def gale_shapley(dup: DuplicatedInstance) -> StrictMatching:
    """U-proposing deferred acceptance; deterministic given listing order."""
    inst = dup.base
    rank = dup.rank
    next_idx = {u: 0 for u in inst.u_agents}
    holds: dict[str, EdgeCopy] = {}  # W-agent -> copy currently held
    queue = deque(inst.u_agents)

    while queue:
        u = queue.popleft()
        prefs = dup.pref[u]
        while next_idx[u] < len(prefs):
            k = prefs[next_idx[u]]
            w = inst.by_id[k.edge_id].w
            current = holds.get(w)
            if current is None:
                holds[w] = k
                break
            if rank[w][k] < rank[w][current]:
                holds[w] = k
                loser = inst.by_id[current.edge_id].u
                next_idx[loser] += 1
                queue.append(loser)
                break
            next_idx[u] += 1

    return StrictMatching(dup, frozenset(holds.values()))


def check_strict_stability(strict: StrictMatching) -> list[EdgeCopy]:
    """Copies both endpoints would take over what they hold now.

    Deferred acceptance guarantees an empty list; the check only trusts
    the preference lists, so it certifies any claimed assignment.
    """
    dup = strict.dup
    inst = dup.base
    rank = dup.rank
    held = strict.assignment()

    def improves(agent: str, k: EdgeCopy) -> bool:
        cur = held.get(agent)
        return cur is None or rank[agent][k] < rank[agent][cur]

    blocking: list[EdgeCopy] = []
    for edge in inst.edges:
        for copy in COPY_ORDER:
            k = EdgeCopy(edge.id, copy)
            if k == held.get(edge.u):
                continue
            if improves(edge.u, k) and improves(edge.w, k):
                blocking.append(k)
    return blocking


def solve(inst: Instance) -> Matching:
    return solve_with_certificate(inst)[0]


def solve_with_certificate(inst: Instance) -> tuple[Matching, StrictMatching]:
    strict = gale_shapley(build_duplicated(inst))
    return strict.project(), strict
