"""Edge duplication: six strictly ranked copies per edge.

Every edge e is replaced by copies a(e), b(e), c(e), x(e), y(e), z(e) and
each agent receives a strict total order over all copies of its incident
edges.  A U-agent ranks, best to worst, an A-block (a-copies by value, with
the b-copies threaded in), the c-copies, an X-block (x-copies with the
y-copies threaded in) and finally the z-copies.  A W-agent ranks the mirror
image: a Z-block (z-copies with y threaded in), the x-copies, a C-block
(c-copies with b threaded in) and finally the a-copies.

Threading rule: b(f) outranks a(e) exactly when f's value beats e's value
by at least f's threshold at that agent (in weak mode: strictly beats), and
likewise y(f) vs x(e) on the U side, y(f) vs z(e) and b(f) vs c(e) on the
W side.  All remaining ties are broken towards the earlier-listed edge, so
the construction is a pure function of the instance text.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple

from popmatch.core import Edge, GAMMA_MODE, Instance


class CopyType(enum.Enum):
    A = "a"
    B = "b"
    C = "c"
    X = "x"
    Y = "y"
    Z = "z"


COPY_ORDER = (CopyType.A, CopyType.B, CopyType.C, CopyType.X, CopyType.Y, CopyType.Z)


class EdgeCopy(NamedTuple):
    edge_id: str
    copy: CopyType

    @property
    def token(self) -> str:
        return f"{self.copy.value}({self.edge_id})"


@dataclass(frozen=True)
class DuplicatedInstance:
    """Strict preference lists over edge copies, per agent, best first."""

    base: Instance
    pref: dict[str, tuple[EdgeCopy, ...]]

    @cached_property
    def rank(self) -> dict[str, dict[EdgeCopy, int]]:
        """Position of each copy in each agent's list (0 = best)."""
        return {a: {k: i for i, k in enumerate(order)} for a, order in self.pref.items()}


def build_duplicated(inst: Instance) -> DuplicatedInstance:
    listing = {e.id: i for i, e in enumerate(inst.edges)}
    u_side = set(inst.u_agents)
    pref: dict[str, tuple[EdgeCopy, ...]] = {}

    for agent in inst.agents:
        incident = inst.incident[agent]
        # stable sort: equal values keep edge listing order
        by_value = sorted(incident, key=lambda e: inst.value(e, agent), reverse=True)
        beats = _beats_predicate(inst, agent)

        def plain(copy: CopyType) -> list[EdgeCopy]:
            return [EdgeCopy(e.id, copy) for e in by_value]

        def threaded(primary: CopyType, secondary: CopyType) -> list[EdgeCopy]:
            return _thread(by_value, listing, primary, secondary, beats)

        if agent in u_side:
            blocks = [threaded(CopyType.A, CopyType.B), plain(CopyType.C),
                      threaded(CopyType.X, CopyType.Y), plain(CopyType.Z)]
        else:
            blocks = [threaded(CopyType.Z, CopyType.Y), plain(CopyType.X),
                      threaded(CopyType.C, CopyType.B), plain(CopyType.A)]
        pref[agent] = tuple(k for block in blocks for k in block)

    return DuplicatedInstance(inst, pref)


def _beats_predicate(inst: Instance, agent: str) -> Callable[[Edge, Edge], bool]:
    """True when a threaded copy of `f` must outrank the primary copy of `e`."""
    if inst.mode == GAMMA_MODE:
        return lambda f, e: inst.value(f, agent) >= inst.value(e, agent) + inst.gamma(f, agent)
    return lambda f, e: inst.value(f, agent) > inst.value(e, agent)


def _thread(by_value: list[Edge], listing: dict[str, int], primary: CopyType,
            secondary: CopyType, beats: Callable[[Edge, Edge], bool]) -> list[EdgeCopy]:
    # slot of f = number of primary copies f fails to outrank; the beaten set
    # is a suffix of the value-sorted order, so one count pins the position
    slots: dict[str, int] = {}
    for f in by_value:
        slots[f.id] = sum(1 for e in by_value if not beats(f, e))
    in_listing = sorted(by_value, key=lambda e: listing[e.id])

    out: list[EdgeCopy] = []
    for i in range(len(by_value) + 1):
        out.extend(EdgeCopy(f.id, secondary) for f in in_listing if slots[f.id] == i)
        if i < len(by_value):
            out.append(EdgeCopy(by_value[i].id, primary))
    return out


def validate_duplicated(dup: DuplicatedInstance) -> list[str]:
    """Re-check every pairwise ordering condition; returns violation messages."""
    inst = dup.base
    u_side = set(inst.u_agents)
    violations: list[str] = []

    for agent in inst.agents:
        order = dup.pref.get(agent, ())
        incident = inst.incident[agent]
        expected = {EdgeCopy(e.id, t) for e in incident for t in CopyType}
        present = list(order)
        if len(present) != len(set(present)):
            violations.append(f"{agent}: duplicate copies in list")
            continue
        for k in expected - set(present):
            violations.append(f"{agent}: missing copy {k.token}")
        for k in set(present) - expected:
            violations.append(f"{agent}: unexpected copy {k.token}")
        if set(present) != expected:
            continue

        pos = {k: i for i, k in enumerate(order)}
        if agent in u_side:
            group = {CopyType.A: 0, CopyType.B: 0, CopyType.C: 1,
                     CopyType.X: 2, CopyType.Y: 2, CopyType.Z: 3}
            threaded_pairs = ((CopyType.B, CopyType.A), (CopyType.Y, CopyType.X))
        else:
            group = {CopyType.Z: 0, CopyType.Y: 0, CopyType.X: 1,
                     CopyType.C: 2, CopyType.B: 2, CopyType.A: 3}
            threaded_pairs = ((CopyType.Y, CopyType.Z), (CopyType.B, CopyType.C))

        for k1 in order:
            for k2 in order:
                if group[k1.copy] < group[k2.copy] and pos[k1] > pos[k2]:
                    violations.append(f"{agent}: {k1.token} must precede {k2.token}")

        beats = _beats_predicate(inst, agent)
        for f in incident:
            for e in incident:
                for sec, prim in threaded_pairs:
                    above = pos[EdgeCopy(f.id, sec)] < pos[EdgeCopy(e.id, prim)]
                    if above != beats(f, e):
                        violations.append(
                            f"{agent}: {sec.value}({f.id}) vs {prim.value}({e.id}) "
                            f"contradicts the threshold rule")

        # only the primary classes are value-sorted; threaded b/y copies may
        # leave value order when several share an insertion slot
        for copy in (CopyType.A, CopyType.C, CopyType.X, CopyType.Z):
            ordered = [k for k in order if k.copy is copy]
            values = [inst.value(inst.by_id[k.edge_id], agent) for k in ordered]
            if any(a < b for a, b in zip(values, values[1:])):
                violations.append(f"{agent}: {copy.value}-copies not sorted by value")

    return violations
