"""Command-line front end.

Subcommands:

* ``invariant`` -- evaluate one of the solid-torus invariants on a braid word.
* ``trace``     -- Markov trace of a braid word, symbolic or with bindings.
* ``solve``     -- enumerate or check trace-factorization solutions.
* ``verify``    -- run a named verification suite; exit 0 iff it passes.

Exit codes: 0 pass, 1 check failure, 2 usage or parse error.  Reports are
deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cyclic import (
    build_solution,
    compatible_branches,
    enumerate_profiles,
    parse_profile,
    verify_functional_system,
)
from .invariants import BraidSyntaxError, InvariantSpec, evaluate, parse_braid
from .scalars import ScalarError, Var, parse_scalar, render_scalar
from .suites import SUITES, run_suite
from .trace import trace_of_word
from .scalars import U, V, ZVAR, LVAR, xvar, yvar

__all__ = ["main"]


def _out(payload: dict, args) -> None:
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(payload["value"] if "value" in payload else payload)


def _parse_bindings(text: str, d: int) -> dict[Var, object]:
    """Parse 'z=-1/u;y0=v' style bindings into scalar values."""
    out = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, val = chunk.partition("=")
        name = name.strip()
        scalar = parse_scalar(val.strip())
        if name == "z":
            out[ZVAR] = scalar
        elif name == "u":
            out[U] = scalar
        elif name == "v":
            out[V] = scalar
        elif name == "l":
            out[LVAR] = scalar
        elif name.startswith("x"):
            out[xvar(int(name[1:]) % d)] = scalar
        elif name.startswith("y"):
            out[yvar(int(name[1:]) % d)] = scalar
        else:
            raise ValueError(f"unknown parameter {name!r}")
    return out


def _cmd_invariant(args) -> int:
    word = parse_braid(args.braid, args.n, args.d)
    support = None
    if args.support:
        support = frozenset(int(x) % args.d for x in args.support.split(",") if x.strip())
    profile = parse_profile(args.profile, args.d) if args.profile else None
    spec = InvariantSpec(
        kind=args.kind,
        d=args.d,
        support=support,
        profile=profile,
        branch=args.branch,
    )
    value = evaluate(word, spec)
    _out({"invariant": args.kind, "braid": args.braid, "value": render_scalar(value)}, args)
    return 0


def _cmd_trace(args) -> int:
    word = parse_braid(args.braid, args.n, args.d)
    letters = []
    for kind, idx, power in word.letters:
        if kind == "s":
            letters.append(("g", idx, power))
        elif kind == "r":
            letters.append(("b", 1, power))
        else:
            letters.append(("t", idx, power))
    value = trace_of_word(letters, args.n, args.d)
    if args.bind:
        bindings = _parse_bindings(args.bind, args.d)
        value = value.substitute(bindings)
    _out({"braid": args.braid, "value": render_scalar(value)}, args)
    return 0


def _cmd_solve(args) -> int:
    d = args.d
    entries = []
    if args.profile:
        profiles = [parse_profile(args.profile, d)]
    else:
        profiles = enumerate_profiles(d)
    exit_code = 0
    for prof in profiles:
        branches = [args.branch] if args.branch else compatible_branches(prof)
        for br in branches:
            x, y, z = build_solution(prof, br)
            report = verify_functional_system(x, y, z)
            ok = all(flag for _, flag in report)
            if not ok:
                exit_code = 1
            entries.append(
                {
                    "profile": str(prof),
                    "branch": br,
                    "z": render_scalar(z),
                    "x": [render_scalar(v) for v in x.values],
                    "y": [render_scalar(v) for v in y.values],
                    "certified": ok,
                }
            )
    if args.output == "json":
        print(json.dumps({"d": d, "solutions": entries}, sort_keys=True))
    else:
        for e in entries:
            status = "OK " if e["certified"] else "BAD"
            print(f"{status} {e['profile']} branch {e['branch']}")
            print(f"    z = {e['z']}")
            for k, (xv, yv) in enumerate(zip(e["x"], e["y"])):
                print(f"    x{k} = {xv}")
                print(f"    y{k} = {yv}")
    return exit_code


def _cmd_verify(args) -> int:
    checks = run_suite(args.suite, d=args.d, seed=args.seed)
    passed = all(c.passed for c in checks)
    if args.output == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "passed": passed,
                    "checks": [
                        {"name": c.name, "passed": c.passed, "detail": c.detail}
                        for c in checks
                    ],
                },
                sort_keys=True,
            )
        )
    else:
        for c in checks:
            print(c.line())
        n_pass = sum(1 for c in checks if c.passed)
        print(f"{'PASS' if passed else 'FAIL'} suite {args.suite}: {n_pass}/{len(checks)} checks")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torlink",
        description="Exact solid-torus link invariants from framed type-B knot algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariant", help="evaluate an invariant on a braid word")
    p_inv.add_argument("--kind", required=True, choices=["pb", "vb", "xb", "rhob"])
    p_inv.add_argument("--n", type=int, required=True, help="number of moving strands")
    p_inv.add_argument("--d", type=int, default=1, help="framing modulus")
    p_inv.add_argument("--braid", default="", help="braid word, e.g. 's1 s2^-1 r1'")
    p_inv.add_argument("--support", default="", help="support set, e.g. '0,1'")
    p_inv.add_argument("--profile", default="", help="support profile string")
    p_inv.add_argument("--branch", type=int, default=None)
    p_inv.add_argument("--output", choices=["text", "json"], default="text")
    p_inv.set_defaults(func=_cmd_invariant)

    p_tr = sub.add_parser("trace", help="Markov trace of a braid word")
    p_tr.add_argument("--n", type=int, required=True)
    p_tr.add_argument("--d", type=int, default=1)
    p_tr.add_argument("--braid", default="")
    p_tr.add_argument("--bind", default="", help="parameter bindings, e.g. 'z=(-1)/(u);y0=v'")
    p_tr.add_argument("--output", choices=["text", "json"], default="text")
    p_tr.set_defaults(func=_cmd_trace)

    p_sol = sub.add_parser("solve", help="emit certified trace-factorization solutions")
    p_sol.add_argument("--d", type=int, required=True)
    p_sol.add_argument("--profile", default="", help="one profile; otherwise enumerate all")
    p_sol.add_argument("--branch", type=int, default=0)
    p_sol.add_argument("--output", choices=["text", "json"], default="text")
    p_sol.set_defaults(func=_cmd_solve)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    p_ver.add_argument("--d", type=int, default=0)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--output", choices=["text", "json"], default="text")
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (BraidSyntaxError, ScalarError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
