"""Shared builders for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

from popmatch.core import Edge, Instance, VoteRule, WEAK_MODE
from popmatch.gadgets import PmRestrictedInstance, random_instance
from popmatch.oracle import certify_popular, enumerate_matchings

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def build(us, ws, edges, mode=WEAK_MODE) -> Instance:
    """Instance from plain tuples (id, u, w, p_u, p_w[, gamma_u, gamma_w])."""
    return Instance(tuple(us), tuple(ws), tuple(Edge(*e) for e in edges), mode)


def single_edge(p_u=1, p_w=1) -> Instance:
    return build(["u1"], ["w1"], [("e", "u1", "w1", p_u, p_w)])


def path_instance(k: int) -> Instance:
    """A k-edge path with unit valuations; endpoints alternate sides."""
    names = [f"v{i}" for i in range(k + 1)]
    us = [n for i, n in enumerate(names) if i % 2 == 0]
    ws = [n for i, n in enumerate(names) if i % 2 == 1]
    edges = []
    for i in range(k):
        a, b = names[i], names[i + 1]
        u, w = (a, b) if i % 2 == 0 else (b, a)
        edges.append((f"p{i + 1}", u, w, 1, 1))
    return build(us, ws, edges)


def small_random_family(mode_gamma: bool, count: int, max_edges: int = 10):
    """Seeded markets with both sides <= 4 agents and a bounded edge count."""
    out = []
    seed = 0 if not mode_gamma else 10**6
    while len(out) < count:
        seed += 1
        rng = random.Random(seed)
        n_u, n_w = rng.randint(1, 4), rng.randint(1, 4)
        inst = random_instance(n_u, n_w, 0.6, [1, 2, 3],
                               [1, 2] if mode_gamma else None, seed=seed)
        if len(inst.edges) <= max_edges:
            out.append(inst)
    return out


def restricted_cases() -> dict[str, tuple[PmRestrictedInstance, bool]]:
    """Hand-built forbidden-edge/forced-agent problems with known answers.

    Every base shares the scaffold x - y - z required of the input: x is a
    leaf on the forbidden edge and y pairs mutually-first with z.  The
    remaining agents steer whether a popular matching can both avoid the
    forbidden edge and cover the forced agent.
    """
    cases = {
        # t reaches w1, z prefers y: {zy, tw1} is popular and qualifies
        "covered-forced-agent": (["x", "z", "t"], ["y", "w1"], [
            ("xy", "x", "y", 1, 1), ("zy", "z", "y", 2, 2),
            ("zw1", "z", "w1", 1, 2), ("tw1", "t", "w1", 1, 1)], "xy", "t", True),
        # t is isolated, so no matching can cover it
        "isolated-forced-agent": (["x", "z", "t"], ["y", "w1"], [
            ("xy", "x", "y", 1, 1), ("zy", "z", "y", 2, 2),
            ("zw1", "z", "w1", 1, 2)], "xy", "t", False),
        # a outranks t at w1, and every popular matching pairs them
        "forced-agent-outranked": (["x", "z", "t", "a"], ["y", "w1"], [
            ("xy", "x", "y", 1, 1), ("zy", "z", "y", 2, 2),
            ("aw1", "a", "w1", 1, 2), ("tw1", "t", "w1", 1, 1)], "xy", "t", False),
        # sides swapped: the leaf and the forced agent sit on the W side
        "swapped-sides": (["y", "u1"], ["x", "z"], [
            ("xy", "y", "x", 1, 1), ("yz", "y", "z", 2, 2),
            ("u1z", "u1", "z", 1, 1)], "xy", "z", True),
        # w1 prefers a, so popularity forces {aw1}, leaving t uncovered
        "rival-takes-the-slot": (["x", "z", "t", "a"], ["y", "w1"], [
            ("xy", "x", "y", 1, 1), ("zy", "z", "y", 2, 2),
            ("zw1", "z", "w1", 1, 2), ("tw1", "t", "w1", 1, 1),
            ("aw1", "a", "w1", 1, 3)], "xy", "t", False),
    }
    out = {}
    for name, (us, ws, edges, forbidden, forced, answer) in cases.items():
        prob = PmRestrictedInstance(build(us, ws, edges), forbidden, forced)
        out[name] = (prob, answer)
    return out


def restricted_ground_truth(prob: PmRestrictedInstance):
    """First popular matching avoiding the forbidden edge and covering the
    forced agent, by brute force over the base instance; None if none."""
    inst = prob.base
    for m in enumerate_matchings(inst):
        if prob.forbidden_edge in m.edge_ids:
            continue
        if all(prob.forced_vertex not in (inst.by_id[i].u, inst.by_id[i].w)
               for i in m):
            continue
        if certify_popular(inst, m, VoteRule.CLASSIC) is None:
            return m
    return None
