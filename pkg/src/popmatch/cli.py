"""Command-line front end.

One subcommand per library entry point: solve and certificate dumping,
popularity and stability verification, brute-force oracle queries,
gadget and fixture generation, and the ratio report.  All numeric
output is printed as exact fractions so runs are byte-reproducible.

Exit codes: 0 on success, 1 when a checked property fails (a matching
is not popular, not stable, or no witness exists), 2 on usage, parse or
precondition errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from popmatch.core import (
    GAMMA_MODE,
    Instance,
    Matching,
    StabilityNotion,
    VoteRule,
    blocking_edges,
)
from popmatch.duplication import build_duplicated
from popmatch.errors import PopmatchError, PreconditionViolatedError
from popmatch.fileio import (
    format_instance,
    format_matching,
    parse_instance,
    parse_matching,
    parse_rational,
)
from popmatch.gadgets import (
    PmRestrictedInstance,
    fixtures,
    gadget_inapprox,
    gadget_smti,
    gadget_superpm,
    random_instance,
)
from popmatch.oracle import (
    DEFAULT_EDGE_LIMIT,
    certify_popular,
    max_matching,
    max_popular,
    max_stable,
    super_popular_exists,
)
from popmatch.solver import solve_with_certificate


def _load_instance(path: str) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _load_matching(path: str, inst: Instance) -> Matching:
    return parse_matching(Path(path).read_text(encoding="utf-8"), inst)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n",
                             encoding="utf-8")


def _native_notion(inst: Instance) -> StabilityNotion:
    return (StabilityNotion.GAMMA_MIN if inst.mode == GAMMA_MODE
            else StabilityNotion.WEAK)


def _ratio(num: int, den: int) -> str:
    return "1" if den == 0 else str(Fraction(num, den))


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    matching, strict = solve_with_certificate(inst)
    lines = []
    if args.emit_certificate:
        copies = sorted(k.token for k in strict.copies)
        lines.append("# certificate " + " ".join(copies))
    lines.append(format_matching(inst, matching))
    _emit("\n".join(lines), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    matching = _load_matching(args.matching, inst)
    rule = VoteRule(args.rule) if args.rule else None
    beaten_by = certify_popular(inst, matching, rule, limit=args.limit)
    if beaten_by is None:
        print("POPULAR")
        return 0
    print("NOT POPULAR")
    print("beaten_by " + " ".join(beaten_by))
    return 1


def _cmd_check_stable(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    matching = _load_matching(args.matching, inst)
    notion = (StabilityNotion(args.notion) if args.notion
              else _native_notion(inst))
    inst.assignment(matching)
    blockers = blocking_edges(inst, matching, notion)
    if not blockers:
        print("STABLE")
        return 0
    print("NOT STABLE")
    print("blocking " + " ".join(blockers))
    return 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    if args.max_popular:
        rule = VoteRule(args.rule) if args.rule else None
        found = max_popular(inst, rule, limit=args.limit)
        label = "max_popular"
    elif args.max_stable:
        notion = (StabilityNotion(args.notion) if args.notion
                  else _native_notion(inst))
        found = max_stable(inst, notion, limit=args.limit)
        label = "max_stable"
    else:
        witness = super_popular_exists(inst, limit=args.limit)
        if witness is None:
            print("none")
            return 1
        print("exists")
        print("witness " + " ".join(witness))
        return 0
    if found is None:
        print("none")
        return 1
    size, witness = found
    print(f"{label}={size}")
    print("witness " + " ".join(witness))
    return 0


def _cmd_ratio(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    matching, _ = solve_with_certificate(inst)
    alg = len(matching)
    mm = max_matching(inst)
    pop = max_popular(inst, limit=args.limit)
    stab = max_stable(inst, _native_notion(inst), limit=args.limit)
    if pop is None or stab is None:
        print("none")
        return 1
    print(f"alg={alg} max_matching={mm} max_popular={pop[0]} "
          f"max_stable={stab[0]} ratio_stable={_ratio(alg, stab[0])}")
    return 0


def _cmd_dump_duplicated(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    dup = build_duplicated(inst)
    for agent in inst.agents:
        print(f"{agent}: " + " ".join(k.token for k in dup.pref[agent]))
    return 0


def _cmd_gadget(args: argparse.Namespace) -> int:
    inst = _load_instance(args.input)
    if args.kind == "smti":
        out = gadget_smti(inst)
    elif args.kind == "inapprox":
        out = gadget_inapprox(inst)
    else:
        if not args.forbidden or not args.forced:
            raise PreconditionViolatedError(
                "gadget superpm needs --forbidden and --forced")
        out = gadget_superpm(PmRestrictedInstance(inst, args.forbidden, args.forced))
    _emit(format_instance(out), args.output)
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.what == "fixture":
        table = fixtures()
        if args.name not in table:
            raise PreconditionViolatedError(
                f"unknown fixture {args.name!r}; choose from {sorted(table)}")
        inst = table[args.name]
    else:
        value_levels = [parse_rational(tok) for tok in args.value_levels.split(",")]
        gamma_levels = ([parse_rational(tok) for tok in args.gamma_levels.split(",")]
                        if args.gamma_levels else None)
        inst = random_instance(args.n_u, args.n_w, args.edge_prob, value_levels,
                               gamma_levels, args.seed,
                               one_sided_ties=args.one_sided_ties)
    _emit(format_instance(inst), args.output)
    return 0


def _add_output(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-o", "--output", help="write to a file instead of stdout")


def _add_limit(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--limit", type=int, default=DEFAULT_EDGE_LIMIT,
                     help="refuse brute-force work above this edge count")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popmatch",
        description="near-maximum popular matchings in markets with ties")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="run the approximation pipeline")
    p.add_argument("instance")
    p.add_argument("--emit-certificate", action="store_true",
                   help="include the stable copy assignment as a comment")
    _add_output(p)
    p.set_defaults(func=_cmd_solve)

    p = subs.add_parser("verify", help="certify popularity of a matching")
    p.add_argument("instance")
    p.add_argument("--matching", required=True)
    p.add_argument("--rule", choices=[r.value for r in VoteRule])
    _add_limit(p)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("check-stable", help="scan a matching for blocking edges")
    p.add_argument("instance")
    p.add_argument("--matching", required=True)
    p.add_argument("--notion", choices=[n.value for n in StabilityNotion])
    p.set_defaults(func=_cmd_check_stable)

    p = subs.add_parser("oracle", help="brute-force optimum queries")
    p.add_argument("instance")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--max-popular", action="store_true")
    group.add_argument("--max-stable", action="store_true")
    group.add_argument("--super-exists", action="store_true")
    p.add_argument("--rule", choices=[r.value for r in VoteRule])
    p.add_argument("--notion", choices=[n.value for n in StabilityNotion])
    _add_limit(p)
    p.set_defaults(func=_cmd_oracle)

    p = subs.add_parser("ratio", help="solver size against the oracle optima")
    p.add_argument("instance")
    _add_limit(p)
    p.set_defaults(func=_cmd_ratio)

    p = subs.add_parser("dump-duplicated", help="print the strict copy orders")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_dump_duplicated)

    p = subs.add_parser("gadget", help="build a reduction instance")
    p.add_argument("kind", choices=["smti", "inapprox", "superpm"])
    p.add_argument("input")
    p.add_argument("--forbidden", help="forbidden edge id (superpm)")
    p.add_argument("--forced", help="forced agent id (superpm)")
    _add_output(p)
    p.set_defaults(func=_cmd_gadget)

    p = subs.add_parser("gen", help="emit a fixture or random instance")
    gen_subs = p.add_subparsers(dest="what", required=True)

    pf = gen_subs.add_parser("fixture", help="one of the ratio-tightness markets")
    pf.add_argument("name")
    _add_output(pf)
    pf.set_defaults(func=_cmd_gen)

    pr = gen_subs.add_parser("random", help="seeded random market")
    pr.add_argument("--n-u", type=int, required=True)
    pr.add_argument("--n-w", type=int, required=True)
    pr.add_argument("--edge-prob", type=float, default=0.5)
    pr.add_argument("--value-levels", default="1,2",
                    help="comma-separated valuation alphabet")
    pr.add_argument("--gamma-levels",
                    help="comma-separated threshold alphabet; enables gamma mode")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--one-sided-ties", action="store_true",
                    help="force strict values on the proposing side")
    _add_output(pr)
    pr.set_defaults(func=_cmd_gen)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors itself
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (PopmatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
