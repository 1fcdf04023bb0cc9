"""Command-line interface.

Exit codes: 0 success, 1 malformed input, 2 computational bound exceeded,
3 corpus mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from math import comb
from typing import Any

from .classify import burch_check, ci_criteria_crosscheck, classify
from .corpus import run_corpus
from .groebner import Ideal, NotGradedError, height
from .invariants import ModuleSpec, fitting_ideal, rank
from .parse import ParseError
from .poly import Field, PolyRing
from .rees import BoundExceeded, rees_kernel, rees_power
from .reductions import ReductionFailure, generic_minimal_reduction, reduction_certificate

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_CORPUS = 0, 1, 2, 3


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# input documents


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def parse_field(value: Any) -> Field:
    if value == "Q":
        return Field()
    if isinstance(value, dict) and set(value) == {"Fp"} and isinstance(value["Fp"], int) and not isinstance(value["Fp"], bool):
        return Field(value["Fp"])
    raise InputError('field must be "Q" or {"Fp": <prime>}')


def parse_ring(doc: Any) -> PolyRing:
    if not isinstance(doc, dict) or "variables" not in doc:
        raise InputError("ring must be an object with 'variables'")
    names = doc["variables"]
    if not isinstance(names, list) or not names or not all(isinstance(v, str) for v in names):
        raise InputError("ring.variables must be a nonempty list of strings")
    return PolyRing(tuple(names), parse_field(doc.get("field", "Q")))


def parse_module(ring: PolyRing, doc: Any) -> ModuleSpec:
    if not isinstance(doc, dict):
        raise InputError("module must be an object")
    e = doc.get("ambient_rank")
    gens = doc.get("generators")
    if not isinstance(e, int) or isinstance(e, bool) or e < 1:
        raise InputError("module.ambient_rank must be a positive integer")
    if not isinstance(gens, list) or not gens:
        raise InputError("module.generators must be a nonempty list of columns")
    cols = []
    for k, col in enumerate(gens):
        if not isinstance(col, list) or not all(isinstance(s, str) for s in col):
            raise InputError(f"generator {k} must be a list of polynomial strings")
        if len(col) != e:
            raise InputError(f"generator {k} has length {len(col)}, expected ambient_rank {e}")
        cols.append(tuple(ring(s) for s in col))
    return ModuleSpec(ring, e, tuple(cols))


def parse_primes(ring: PolyRing, doc: Any) -> list[Ideal]:
    if isinstance(doc, dict):
        doc = doc.get("primes")
    if not isinstance(doc, list) or not all(isinstance(p, list) and all(isinstance(s, str) for s in p) for p in doc):
        raise InputError("primes must be a list of generator lists")
    out = []
    for gens in doc:
        I = Ideal(ring, [ring(s) for s in gens])
        if I.is_unit():
            raise InputError("a supplied prime is the unit ideal")
        out.append(I)
    return out


def load_input(path: str) -> tuple[ModuleSpec, list[Ideal] | None]:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "ring" not in doc or "module" not in doc:
        raise InputError("input must be an object with 'ring' and 'module'")
    ring = parse_ring(doc["ring"])
    E = parse_module(ring, doc["module"])
    primes = parse_primes(ring, doc["primes"]) if doc.get("primes") is not None else None
    return E, primes


# --------------------------------------------------------------------------
# output


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def dump_text(obj: Any, indent: int = 0) -> str:
    """Aligned ``key  value`` lines; nested objects are indented."""
    pad = " " * indent
    if isinstance(obj, list) and all(isinstance(x, dict) for x in obj) and obj:
        return "".join(dump_text(x, indent) + ("\n" if i < len(obj) - 1 else "") for i, x in enumerate(obj))
    if not isinstance(obj, dict):
        return pad + _fmt(obj) + "\n"
    width = max((len(k) for k in obj), default=0)
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict) and v:
            lines.append(f"{pad}{k}:\n" + dump_text(v, indent + 2))
        else:
            lines.append(f"{pad}{k.ljust(width)}  {_fmt(v)}\n")
    return "".join(lines)


def _column_strings(cols):
    return [[str(c) for c in col] for col in cols]


def _num(x):
    return "inf" if x == float("inf") else x


# --------------------------------------------------------------------------
# commands


def cmd_report(args) -> tuple[Any, int]:
    E, primes = load_input(args.file)
    rep = classify(E, primes, seed=args.seed, trials=args.trials, rmax=args.rmax).to_dict()
    if E.is_graded and not rep["trivially_free"]:
        rep["burch"] = burch_check(E, 3)
    return rep, EXIT_OK


def cmd_fitting(args) -> tuple[Any, int]:
    E, _ = load_input(args.file)
    if args.index < 0:
        raise InputError("--index must be nonnegative")
    F = fitting_ideal(E, args.index)
    return {
        "index": args.index,
        "generators": [str(g) for g in F.groebner()],
        "height": _num(height(F)),
        "unit": F.is_unit(),
    }, EXIT_OK


def cmd_spread(args) -> tuple[Any, int]:
    E, _ = load_input(args.file)
    E.require_graded()
    data = rees_kernel(E)
    return {
        "analytic_spread": data.analytic_spread,
        "rees_kernel_generator_count": len(data.kernel.generators),
        "rees_kernel": [str(g) for g in data.kernel.groebner()],
        "fiber_ideal": [str(g) for g in data.fiber.groebner()],
        "presentation_variables": list(data.presentation_ring.variables),
    }, EXIT_OK


def cmd_rees(args) -> tuple[Any, int]:
    E, _ = load_input(args.file)
    if args.power < 1:
        raise InputError("--power must be at least 1")
    P = rees_power(E, args.power)
    expected = comb(args.power + E.ambient_rank - 1, E.ambient_rank - 1)
    r = rank(P)
    return {
        "power": args.power,
        "ambient_rank": P.ambient_rank,
        "generators": _column_strings(P.columns),
        "rank": r,
        "expected_rank": expected,
        "rank_check": r == expected if rank(E) == E.ambient_rank else None,
    }, EXIT_OK


def cmd_reduce(args) -> tuple[Any, int]:
    E, _ = load_input(args.file)
    U, _ = load_input(args.candidate)
    if U.ring.variables != E.ring.variables or U.ring.field != E.ring.field:
        raise InputError("candidate must be over the same ring as the module")
    U = ModuleSpec(E.ring, U.ambient_rank, U.columns)
    if U.ambient_rank != E.ambient_rank:
        raise InputError("candidate has a different ambient rank")
    cert = reduction_certificate(U, E, args.rmax)
    return cert.to_dict(), EXIT_OK


def cmd_genred(args) -> tuple[Any, int]:
    E, _ = load_input(args.file)
    E.require_graded()
    try:
        cert = generic_minimal_reduction(E, args.target, args.seed, args.trials, args.rmax)
    except ReductionFailure as exc:
        return {"verified": False, "seed": args.seed, "reason": str(exc)}, EXIT_OK
    d = cert.to_dict()
    d["seed"] = args.seed
    return d, EXIT_OK


def cmd_classify(args) -> tuple[Any, int]:
    E, primes = load_input(args.file)
    if args.primes:
        primes = parse_primes(E.ring, _load_json(args.primes))
    rep = classify(E, primes, seed=args.seed, trials=args.trials, rmax=args.rmax).to_dict()
    keys = (
        "ci",
        "equimultiple",
        "generically_ci",
        "generically_ci_basis",
        "linear_type",
        "ideal_module",
        "free_on_punctured_spectrum",
        "trivially_free",
        "deviation",
        "analytic_deviation",
        "provenance",
    )
    out = {k: rep[k] for k in keys}
    out["crosscheck"] = ci_criteria_crosscheck(E, primes)["checks"] if E.is_graded else None
    out["seed"] = args.seed
    return out, EXIT_OK


def cmd_corpus(args) -> tuple[Any, int]:
    results = run_corpus(args.seed)
    code = EXIT_OK if all(r["pass"] for r in results) else EXIT_CORPUS
    if args.format == "text":
        lines = []
        for r in results:
            lines.append(f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}  ({r['description']})")
            for c in r["checks"]:
                if not c["pass"]:
                    lines.append(f"      {c['key']}: expected {c['expected']!r}, got {c['actual']!r}")
        return "\n".join(lines) + "\n", code
    return {"seed": args.seed, "results": results, "all_pass": code == EXIT_OK}, code


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--rmax", type=int, default=10, help="reduction-number search bound")
    common.add_argument("--trials", type=int, default=5, help="attempts for generic reductions")

    p = argparse.ArgumentParser(prog="equimult", description="Invariants of embedded modules over polynomial rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file", help="input JSON document ('-' for stdin)")
        sp.set_defaults(func=fn)
        return sp

    add("report", cmd_report, "full invariant report")
    add("fitting", cmd_fitting, "generators of a Fitting ideal").add_argument("--index", type=int, required=True)
    add("spread", cmd_spread, "analytic spread and Rees kernel size")
    add("rees", cmd_rees, "generators of a Rees power").add_argument("--power", type=int, required=True)
    add("reduce", cmd_reduce, "verify a candidate reduction").add_argument("--candidate", required=True)
    add("genred", cmd_genred, "generic minimal reduction").add_argument("--target", type=int, default=None)
    add("classify", cmd_classify, "classification flags with provenance").add_argument("--primes", default=None)
    add("corpus", cmd_corpus, "run the built-in examples", file=False)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out, code = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except BoundExceeded as exc:
        print(f"error: bound exceeded: {exc.bound} ({exc})", file=sys.stderr)
        return EXIT_BOUND
    except (InputError, ParseError, NotGradedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(out, str):
        sys.stdout.write(out)
    elif args.format == "json":
        sys.stdout.write(dump_json(out))
    else:
        sys.stdout.write(dump_text(out))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
