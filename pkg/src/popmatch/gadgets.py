"""Instance generators: tightness fixtures, hardness gadgets, random markets.

The three fixtures are small path markets on which the solver's 2/3,
3/4 and 4/5 size guarantees are attained with equality, so they pin the
analysis down exactly.  The gadget builders turn a source problem into a
market whose popular-matching landscape encodes the source's answer:

* ``gadget_smti``   - max stable matching with one-sided ties -> max
  weakly-popular matching (sizes differ by exactly |U|).
* ``gadget_inapprox`` - minimum maximal matching of a bare bipartite
  graph -> max weakly-popular matching (size (5/2)n - k).
* ``gadget_superpm`` - popular matching avoiding a forbidden edge and
  covering a forced agent -> existence of a super-popular matching.

All generators are pure and deterministic, and their outputs round-trip
through the instance file format.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from popmatch.core import Edge, GAMMA_MODE, Instance, Rational, WEAK_MODE
from popmatch.errors import PreconditionViolatedError


def _fresh(taken: set[str], base: str) -> str:
    """`base`, suffixed if needed to dodge collisions; records the pick."""
    name = base
    k = 2
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    taken.add(name)
    return name


def _strict_values(inst: Instance, agent: str) -> bool:
    vals = [inst.value(e, agent) for e in inst.incident[agent]]
    return len(vals) == len(set(vals))


def _path_fixture(m: int, u_vals: dict[str, Rational], w_vals: dict[str, Rational]
                  ) -> Instance:
    """Path market u1-w1 ... with rung edges e_i=(u_i,w_i), f_i=(u_i,w_{i+1}).

    f-edges are listed first so that equal-value ties at the w agents
    resolve towards the f-edge, which is the tie-break the worked
    ratio-tightness runs rely on.
    """
    u_agents = tuple(f"u{i}" for i in range(1, m + 1))
    w_agents = tuple(f"w{i}" for i in range(1, m + 1))
    edges = []
    for i in range(1, m):
        edges.append(Edge(f"f{i}", f"u{i}", f"w{i + 1}",
                          u_vals[f"f{i}"], w_vals[f"f{i}"]))
    for i in range(1, m + 1):
        edges.append(Edge(f"e{i}", f"u{i}", f"w{i}",
                          u_vals[f"e{i}"], w_vals[f"e{i}"]))
    return Instance(u_agents, w_agents, tuple(edges), WEAK_MODE)


def fixtures() -> dict[str, Instance]:
    """Three path markets where the size guarantees hold with equality.

    example1: the solver's output {f1,f2} is the unique popular matching
    (size 2) while the maximum matching {e1,e2,e3} has size 3.
    example2: output size 3; E = {e1..e4} is weakly popular, size 4.
    example3: output size 4; E = {e1..e5} is weakly stable, size 5.
    """
    ex1 = _path_fixture(
        3,
        u_vals={"f1": 2, "f2": 2, "e1": 1, "e2": 1, "e3": 1},
        w_vals={"f1": 2, "f2": 2, "e1": 1, "e2": 1, "e3": 1},
    )
    ex2 = _path_fixture(
        4,
        u_vals={"f1": 2, "f2": 2, "f3": 2, "e1": 1, "e2": 1, "e3": 1, "e4": 1},
        w_vals={"f1": 1, "f2": 1, "f3": 2, "e1": 1, "e2": 1, "e3": 1, "e4": 1},
    )
    ex3 = _path_fixture(
        5,
        u_vals={"f1": 2, "f2": 2, "f3": 2, "f4": 1,
                "e1": 1, "e2": 1, "e3": 1, "e4": 2, "e5": 1},
        w_vals={"f1": 1, "f2": 1, "f3": 1, "f4": 2,
                "e1": 1, "e2": 1, "e3": 1, "e4": 1, "e5": 1},
    )
    return {"example1": ex1, "example2": ex2, "example3": ex3}


def gadget_smti(inst: Instance) -> Instance:
    """Pad a one-sided-ties market so popularity encodes stability.

    Each u_i gains a private alternate partner z_i as its new unique top
    choice; z_i prefers u_i over its own leaf partner z_i'.  A maximum
    weakly-popular matching in the result is exactly |U| edges larger
    than a maximum weakly-stable matching in the input: matched u_i free
    their z_i for (z_i, z_i'), unmatched u_i take (u_i, z_i).
    """
    if inst.mode != WEAK_MODE:
        raise PreconditionViolatedError("gadget_smti needs a weak-mode instance")
    if len(inst.u_agents) != len(inst.w_agents):
        raise PreconditionViolatedError("gadget_smti needs equally sized sides")
    for u in inst.u_agents:
        if not _strict_values(inst, u):
            raise PreconditionViolatedError(f"gadget_smti needs strict values at {u}")

    taken_agents = set(inst.agents)
    taken_edges = set(inst.by_id)
    new_u = list(inst.u_agents)
    new_w = list(inst.w_agents)
    edges = list(inst.edges)
    for i, u in enumerate(inst.u_agents, 1):
        alt = _fresh(taken_agents, f"z{i}")    # W side, u's new top choice
        leaf = _fresh(taken_agents, f"z{i}p")  # U side, alt's fallback
        new_w.append(alt)
        new_u.append(leaf)
        top = max((Fraction(inst.value(e, u)) for e in inst.incident[u]),
                  default=Fraction(0)) + 1
        edges.append(Edge(_fresh(taken_edges, f"z{i}a"), u, alt, top, 2))
        edges.append(Edge(_fresh(taken_edges, f"z{i}b"), leaf, alt, 1, 1))
    return Instance(tuple(new_u), tuple(new_w), tuple(edges), WEAK_MODE)


def gadget_inapprox(graph: Instance) -> Instance:
    """Market whose max weakly-popular size tracks min maximal matchings.

    Only the adjacency of `graph` is used; its valuations and mode are
    ignored.  For side size n (even) the output adds a reserved partner
    w_i' per w_i, collector agents u_1'..u_{n/2}' adjacent to every u,
    and a chain z_j - z_j' behind each collector.  Whenever the graph
    has a maximal matching of size k >= n/2, the output has a maximum
    weakly-popular matching of size (5/2)n - k, so minimizing k
    maximizes popular size.
    """
    n = len(graph.u_agents)
    if len(graph.w_agents) != n:
        raise PreconditionViolatedError("gadget_inapprox needs equally sized sides")
    if n % 2:
        raise PreconditionViolatedError("gadget_inapprox needs an even side size")
    half = n // 2

    taken_agents = set(graph.agents)
    taken_edges = set(graph.by_id)
    reserved = [_fresh(taken_agents, f"{w}p") for w in graph.w_agents]  # U side
    collectors = [_fresh(taken_agents, f"up{j}") for j in range(1, half + 1)]
    chain = [_fresh(taken_agents, f"z{j}") for j in range(1, half + 1)]  # U side
    chain_leaf = [_fresh(taken_agents, f"zp{j}") for j in range(1, half + 1)]

    u_agents = tuple(graph.u_agents) + tuple(reserved) + tuple(chain)
    w_agents = tuple(graph.w_agents) + tuple(collectors) + tuple(chain_leaf)

    edges = [Edge(e.id, e.u, e.w, 2, 2) for e in graph.edges]
    for i, w in enumerate(graph.w_agents):
        edges.append(Edge(_fresh(taken_edges, f"wp{i + 1}"), reserved[i], w, 1, 1))
    for j in range(half):
        edges.append(Edge(_fresh(taken_edges, f"uz{j + 1}"),
                          chain[j], collectors[j], 2, 2))
        edges.append(Edge(_fresh(taken_edges, f"zz{j + 1}"),
                          chain[j], chain_leaf[j], 1, 1))
    for i, u in enumerate(graph.u_agents):
        for j in range(half):
            edges.append(Edge(_fresh(taken_edges, f"uu{i + 1}_{j + 1}"),
                              u, collectors[j], 1, 1))
    return Instance(u_agents, w_agents, tuple(edges), WEAK_MODE)


@dataclass(frozen=True)
class PmRestrictedInstance:
    """A strict market plus a forbidden edge and a forced agent.

    The question it encodes: does a popular matching exist that avoids
    the forbidden edge and covers the forced agent?  The forbidden
    edge's leaf endpoint is called x below, the other endpoint y.
    """

    base: Instance
    forbidden_edge: str
    forced_vertex: str


def _forbidden_endpoints(prob: PmRestrictedInstance) -> tuple[str, str]:
    """(x, y) with x the leaf endpoint of the forbidden edge."""
    inst = prob.base
    edge = inst.by_id.get(prob.forbidden_edge)
    if edge is None:
        raise PreconditionViolatedError(f"unknown forbidden edge {prob.forbidden_edge!r}")
    deg_u, deg_w = len(inst.incident[edge.u]), len(inst.incident[edge.w])
    if deg_u == 1 and deg_w > 1:
        return edge.u, edge.w
    if deg_w == 1 and deg_u > 1:
        return edge.w, edge.u
    raise PreconditionViolatedError(
        "forbidden edge needs one leaf endpoint and one endpoint of degree >= 2")


def gadget_superpm(prob: PmRestrictedInstance) -> Instance:
    """Market where a super-popular matching exists iff the restricted
    popular matching question answers yes.

    Adds an anchor d_t tied between the forced agent t and a fresh leaf
    t' (the tie forces every super-popular matching to cover t), and an
    anchor d_x that x values equally to its forbidden edge (steering x
    away from it).  Exactly two agents end up with ties, one tie of
    length two each.
    """
    inst = prob.base
    if inst.mode != WEAK_MODE:
        raise PreconditionViolatedError("gadget_superpm needs a weak-mode instance")
    for agent in inst.agents:
        if not _strict_values(inst, agent):
            raise PreconditionViolatedError(
                f"gadget_superpm needs strict values everywhere, {agent} has a tie")
    x, y = _forbidden_endpoints(prob)
    t = prob.forced_vertex
    if t not in set(inst.agents):
        raise PreconditionViolatedError(f"unknown forced agent {t!r}")
    if t in (x, y):
        raise PreconditionViolatedError("forced agent must differ from the forbidden edge")
    others = [e for e in inst.incident[y] if e.id != prob.forbidden_edge]
    if len(others) != 1:
        raise PreconditionViolatedError("the non-leaf forbidden endpoint needs exactly"
                                        " one other neighbor")
    bridge = others[0]
    z = bridge.u if bridge.w == y else bridge.w
    if inst.value(bridge, y) != max(inst.value(e, y) for e in inst.incident[y]) \
            or inst.value(bridge, z) != max(inst.value(e, z) for e in inst.incident[z]):
        raise PreconditionViolatedError("the forbidden endpoint and its other neighbor"
                                        " must rank each other first")

    u_side = set(inst.u_agents)
    taken_agents = set(inst.agents)
    taken_edges = set(inst.by_id)
    new_u = list(inst.u_agents)
    new_w = list(inst.w_agents)

    # rank t's current edges down to k+1..2, freeing value 1 for the anchor
    by_rank = sorted(inst.incident[t], key=lambda e: inst.value(e, t))
    new_t_value = {e.id: i for i, e in enumerate(by_rank, start=2)}
    edges = []
    for e in inst.edges:
        if t == e.u:
            e = replace(e, p_u=new_t_value[e.id])
        elif t == e.w:
            e = replace(e, p_w=new_t_value[e.id])
        edges.append(e)

    def add_agent(name: str, to_u_side: bool) -> str:
        name = _fresh(taken_agents, name)
        (new_u if to_u_side else new_w).append(name)
        return name

    def add_edge(eid: str, a: str, b: str, p_a: Rational, p_b: Rational) -> None:
        # a's side decides which endpoint slot it occupies
        if a in u_side or a in new_u:
            edges.append(Edge(_fresh(taken_edges, eid), a, b, p_a, p_b))
        else:
            edges.append(Edge(_fresh(taken_edges, eid), b, a, p_b, p_a))

    forbidden_value = inst.value(inst.by_id[prob.forbidden_edge], x)
    d_x = add_agent(f"d{x}", to_u_side=x not in u_side)
    x_alt = add_agent(f"{x}p", to_u_side=x in u_side)
    add_edge("dxa", x, d_x, forbidden_value, 2)  # ties x's forbidden value
    add_edge("dxb", x_alt, d_x, 1, 1)

    d_t = add_agent(f"d{t}", to_u_side=t not in u_side)
    t_alt = add_agent(f"{t}p", to_u_side=t in u_side)
    add_edge("dta", t, d_t, 1, 1)   # d_t values both neighbors at 1: the tie
    add_edge("dtb", t_alt, d_t, 1, 1)

    return Instance(tuple(new_u), tuple(new_w), tuple(edges), WEAK_MODE)


def random_instance(n_u: int, n_w: int, edge_prob: float,
                    value_levels: Sequence[Rational],
                    gamma_levels: Sequence[Rational] | None = None,
                    seed: int = 0, *, one_sided_ties: bool = False) -> Instance:
    """Seed-deterministic random market; small value alphabets force ties.

    gamma_levels present -> gamma mode with thresholds drawn from it,
    absent -> weak mode.  one_sided_ties replaces each U-agent's values
    with a shuffled strict ranking.
    """
    if n_u < 1 or n_w < 1:
        raise ValueError("need at least one agent per side")
    if not 0 <= edge_prob <= 1:
        raise ValueError("edge_prob must be within [0, 1]")
    if not value_levels:
        raise ValueError("value_levels must be non-empty")

    rng = random.Random(seed)
    u_agents = tuple(f"u{i}" for i in range(1, n_u + 1))
    w_agents = tuple(f"w{j}" for j in range(1, n_w + 1))
    levels = [Fraction(v) for v in value_levels]
    gammas = [Fraction(g) for g in gamma_levels] if gamma_levels else None

    edges = []
    for u in u_agents:
        for w in w_agents:
            if rng.random() >= edge_prob:
                continue
            eid = f"e{len(edges) + 1}"
            if gammas is None:
                edges.append(Edge(eid, u, w, rng.choice(levels), rng.choice(levels)))
            else:
                edges.append(Edge(eid, u, w, rng.choice(levels), rng.choice(levels),
                                  rng.choice(gammas), rng.choice(gammas)))

    if one_sided_ties:
        slots: dict[str, list[Edge]] = {u: [] for u in u_agents}
        for e in edges:
            slots[e.u].append(e)
        ranked = {}
        for u in u_agents:
            ranks = list(range(1, len(slots[u]) + 1))
            rng.shuffle(ranks)
            for e, r in zip(slots[u], ranks):
                ranked[e.id] = Fraction(r)
        edges = [replace(e, p_u=ranked[e.id]) for e in edges]

    mode = GAMMA_MODE if gammas else WEAK_MODE
    return Instance(u_agents, w_agents, tuple(edges), mode)
