"""Command-line surface.

    dld normalize  --config F "TERM"        canonical form of a linkage term
    dld eval       --config F --state F --actions "a1; a2"
    dld run        --config F --spec F --init F [--service V] [--max-steps N]
    dld check SUITE [bounds]                verification suites

The universe is always explicit, from a key=value config file and/or
flags; it is never inferred from input states.  Config keys: spots=,
fields=, atoms= (comma-separated names, or a count expanded to #0..),
modulus=, max_steps=, service=, output=.

run exits 0 on termination, 2 on deadlock, 3 on budget exhaustion;
check exits 1 when any case fails.
"""

from __future__ import annotations

import argparse
import sys

from .checks import SUITES
from .errors import DldError
from .linkage import normalize
from .parsing import parse_action_list, parse_linkage, parse_term
from .reclaim import effect_dldr, yield_dldr
from .scripts import parse_spec
from .threads import dlds, run
from .universe import Universe, small_universe


def _parse_names(value: str, prefix: str | None = None) -> tuple:
    value = value.strip()
    if value.isdigit() and prefix is not None:
        return tuple(f"{prefix}{i}" for i in range(int(value)))
    if value.isdigit():
        return int(value)
    return tuple(x.strip() for x in value.split(",") if x.strip())


_SPOT_NAMES = ("s", "t", "u", "v", "w", "x", "y", "z")
_FIELD_NAMES = ("f", "g", "h", "k", "l", "m", "n", "o")


def read_config(path: str | None) -> dict:
    config: dict = {}
    if path is None:
        return config
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DldError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            config[key.strip()] = value.strip()
    return config


def build_universe(config: dict, args) -> Universe:
    def pick(key, flag):
        return flag if flag is not None else config.get(key)

    spots = pick("spots", args.spots)
    fields = pick("fields", args.fields)
    atoms = pick("atoms", args.atoms)
    modulus = pick("modulus", args.modulus)
    if spots is None or fields is None or atoms is None or modulus is None:
        raise DldError("universe not fully declared: need spots, fields, "
                       "atoms and modulus (config file or flags)")

    def names(value, pool, label):
        if isinstance(value, int) or (isinstance(value, str) and value.isdigit()):
            count = int(value)
            if label == "atoms":
                return tuple(f"#{i}" for i in range(count))
            if count > len(pool):
                raise DldError(f"too many generated {label}; list names instead")
            return pool[:count]
        parsed = _parse_names(value, None)
        if isinstance(parsed, int):
            raise DldError(f"bad {label} declaration: {value!r}")
        return parsed

    return Universe(
        spots=names(spots, _SPOT_NAMES, "spots"),
        fields=names(fields, _FIELD_NAMES, "fields"),
        atoms=names(atoms, (), "atoms"),
        modulus=int(modulus),
    )


def _add_universe_flags(sub):
    sub.add_argument("--config", help="key=value config file")
    sub.add_argument("--spots", help="spot names or a count")
    sub.add_argument("--fields", help="field names or a count")
    sub.add_argument("--atoms", help="atom names or a count")
    sub.add_argument("--modulus", type=int, help="prime value modulus")


def cmd_normalize(args) -> int:
    u = build_universe(read_config(args.config), args)
    term = parse_term(args.term, u)
    print(normalize(term, u).canonical_text())
    return 0


def cmd_eval(args) -> int:
    u = build_universe(read_config(args.config), args)
    with open(args.state, encoding="utf-8") as fh:
        state = parse_linkage(fh.read().strip(), u)
    for act in parse_action_list(args.actions, u):
        reply = yield_dldr(act, state)
        state = effect_dldr(act, state)
        print(f"{act.text()} {'T' if reply else 'F'} {state.canonical_text()}")
    return 0


_EXIT_CODES = {"Stop": 0, "Deadlock": 2, "BudgetExhausted": 3}


def cmd_run(args) -> int:
    config = read_config(args.config)
    u = build_universe(config, args)
    with open(args.spec, encoding="utf-8") as fh:
        spec = parse_spec(fh.read(), u)
    with open(args.init, encoding="utf-8") as fh:
        initial = parse_linkage(fh.read().strip(), u)
    variant = args.service or config.get("service", "plain")
    budget = args.max_steps
    if budget is None:
        budget = int(config.get("max_steps", 1000))
    output = args.output or config.get("output", "trace")
    trace = run(spec, {"dld": dlds(initial, variant)}, budget)
    if output == "final":
        print(trace.steps[-1].state if trace.steps else trace.initial)
    elif output == "machine":
        for s in trace.steps:
            print(f"{s.action} {s.reply} {s.state}")
        print(trace.terminal.lower())
    else:
        print(trace.render())
    return _EXIT_CODES[trace.terminal]


def cmd_check(args) -> int:
    kwargs = {}
    if args.suite in ("axioms", "thm1", "thm2", "thm3", "gc-cross"):
        if any(v is not None for v in
               (args.spots, args.fields, args.atoms, args.modulus)):
            spots = int(args.spots or 2)
            fields = int(args.fields or 1)
            atoms = int(args.atoms or 2)
            modulus = int(args.modulus or 2)
            kwargs["u"] = small_universe(spots, fields, atoms, modulus)
    if args.suite in ("axioms", "tsu"):
        if args.cases is not None:
            kwargs["cases"] = args.cases
    if args.suite == "thm1" and args.cases is not None:
        kwargs["terms"] = args.cases
    if args.suite == "thm3":
        kwargs["include_nontight"] = args.include_nontight
    if args.suite in ("axioms", "thm1", "thm2", "gc-cross", "tsu"):
        kwargs["seed"] = args.seed
    summary = SUITES[args.suite](**kwargs)
    for detail in summary.failures:
        print(f"FAIL {detail}")
    print(summary.line())
    return 0 if summary.failed == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dld", description="data linkage dynamics toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("normalize", help="canonical form of a linkage term")
    _add_universe_flags(p)
    p.add_argument("term")
    p.set_defaults(func=cmd_normalize)

    p = subs.add_parser("eval", help="run actions against a state")
    _add_universe_flags(p)
    p.add_argument("--state", required=True, help="file with the initial state")
    p.add_argument("--actions", required=True,
                   help="semicolon-separated action list")
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("run", help="execute a thread script")
    _add_universe_flags(p)
    p.add_argument("--spec", required=True, help="thread script file")
    p.add_argument("--init", required=True, help="file with the initial state")
    p.add_argument("--service", choices=("plain", "dldr", "afgc"))
    p.add_argument("--max-steps", type=int)
    p.add_argument("--output", choices=("trace", "final", "machine"))
    p.set_defaults(func=cmd_run)

    p = subs.add_parser("check", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--spots")
    p.add_argument("--fields")
    p.add_argument("--atoms")
    p.add_argument("--modulus", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tight", action="store_true",
                   help="tight states only (default for thm3)")
    p.add_argument("--include-nontight", action="store_true",
                   help="also check states with invisible in-use atoms")
    p.set_defaults(func=cmd_check)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
