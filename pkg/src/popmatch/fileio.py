"""Line-oriented text formats for instances and matchings.

Instance file::

    # comments start with '#', blank lines are ignored
    mode weak                   # or: mode gamma
    u u1 u2                     # U-side agents (repeatable)
    w w1 w2                     # W-side agents (repeatable)
    edge e1 u1 w1 2 1           # weak mode: edge <id> <u> <w> <p_u> <p_w>
    edge e2 u2 w2 1/2 2.5 1 1   # gamma mode appends <gamma_u> <gamma_w>

Numbers are decimals or fractions ``a/b`` and are kept exact.  Agents must
be declared before any edge that uses them.

Matching file: one edge id per line; a ``size <k>`` summary line is written
on output and ignored on input.
"""

from __future__ import annotations

from fractions import Fraction

from popmatch.core import Edge, GAMMA_MODE, Instance, Matching, WEAK_MODE
from popmatch.errors import ParseError


def parse_rational(token: str) -> Fraction:
    """Parse a decimal or a/b fraction token exactly."""
    return Fraction(token)


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_instance(text: str) -> Instance:
    mode: str | None = None
    u_agents: list[str] = []
    w_agents: list[str] = []
    u_set: set[str] = set()
    w_set: set[str] = set()
    edges: list[Edge] = []
    edge_ids: set[str] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if mode is None:
            if keyword != "mode" or len(tokens) != 2 or tokens[1] not in (WEAK_MODE, GAMMA_MODE):
                raise ParseError(line_no, "first directive must be 'mode weak' or 'mode gamma'")
            mode = tokens[1]
        elif keyword == "mode":
            raise ParseError(line_no, "duplicate mode directive")
        elif keyword in ("u", "w"):
            for a in tokens[1:]:
                if a in u_set or a in w_set:
                    raise ParseError(line_no, f"duplicate agent id {a!r}")
                if keyword == "u":
                    u_set.add(a)
                    u_agents.append(a)
                else:
                    w_set.add(a)
                    w_agents.append(a)
        elif keyword == "edge":
            arity = 7 if mode == GAMMA_MODE else 5
            if len(tokens) - 1 != arity:
                raise ParseError(line_no, f"edge line needs {arity} fields in {mode} mode")
            eid, u, w = tokens[1], tokens[2], tokens[3]
            if eid in edge_ids:
                raise ParseError(line_no, f"duplicate edge id {eid!r}")
            if u not in u_set:
                raise ParseError(line_no, f"unknown U-agent {u!r}")
            if w not in w_set:
                raise ParseError(line_no, f"unknown W-agent {w!r}")
            try:
                numbers = [parse_rational(t) for t in tokens[4:]]
            except (ValueError, ZeroDivisionError):
                raise ParseError(line_no, "malformed number") from None
            p_u, p_w = numbers[0], numbers[1]
            if p_u < 0 or p_w < 0:
                raise ParseError(line_no, "valuations must be >= 0")
            gamma_u = gamma_w = None
            if mode == GAMMA_MODE:
                gamma_u, gamma_w = numbers[2], numbers[3]
                if gamma_u <= 0 or gamma_w <= 0:
                    raise ParseError(line_no, "gamma values must be > 0")
            edge_ids.add(eid)
            edges.append(Edge(eid, u, w, p_u, p_w, gamma_u, gamma_w))
        else:
            raise ParseError(line_no, f"unknown directive {keyword!r}")

    if mode is None:
        raise ParseError(1, "missing mode directive")
    return Instance(tuple(u_agents), tuple(w_agents), tuple(edges), mode)


def format_instance(inst: Instance) -> str:
    lines = [f"mode {inst.mode}"]
    if inst.u_agents:
        lines.append("u " + " ".join(inst.u_agents))
    if inst.w_agents:
        lines.append("w " + " ".join(inst.w_agents))
    for e in inst.edges:
        fields = [e.id, e.u, e.w, str(Fraction(e.p_u)), str(Fraction(e.p_w))]
        if inst.mode == GAMMA_MODE:
            fields += [str(Fraction(e.gamma_u)), str(Fraction(e.gamma_w))]
        lines.append("edge " + " ".join(fields))
    return "\n".join(lines) + "\n"


def parse_matching(text: str, inst: Instance) -> Matching:
    ids: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "size":
            continue
        if len(tokens) != 1:
            raise ParseError(line_no, "expected one edge id per line")
        if tokens[0] not in inst.by_id:
            raise ParseError(line_no, f"unknown edge id {tokens[0]!r}")
        ids.add(tokens[0])
    return Matching(frozenset(ids))


def format_matching(inst: Instance, matching: Matching) -> str:
    lines = [e.id for e in inst.edges if e.id in matching]
    lines.append(f"size {len(matching)}")
    return "\n".join(lines) + "\n"
