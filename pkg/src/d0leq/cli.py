"""Command-line front end.

Exit codes: 0 equal / success, 1 not equal, 2 precondition failure,
3 resource limit, 4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import analysis, balance, oracle
from .core import Alphabet, Morphism
from .decide import DecisionConfig, build_f1_f2, decide_equality
from .engine import LayeredWordSpec, stream_prefix
from .errors import D0LError, InputError, PreconditionError

EXIT_EQUAL, EXIT_NOT_EQUAL = 0, 1

CONFIG_KEYS = ("overflow_cap", "a_multiplier", "materialization_budget")


@dataclass
class ProblemDocument:
    alphabet: Alphabet
    g: Morphism
    h: Optional[Morphism] = None
    letter: Optional[str] = None
    config: Dict[str, object] = field(default_factory=dict)

    def require(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise InputError(f"missing field {name!r}", "document")


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InputError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _rules(raw, alphabet: Alphabet, name: str) -> Morphism:
    if not isinstance(raw, dict):
        raise InputError("expected an object mapping letters to images", name)
    for letter, img in raw.items():
        where = f"{name}.{letter}"
        if letter not in alphabet:
            raise InputError(f"rule for undeclared symbol {letter!r}", where)
        if not isinstance(img, str):
            raise InputError("image must be a string", where)
        for s in img:
            if s not in alphabet:
                raise InputError(f"unknown symbol {s!r} in image {img!r}", where)
    for s in alphabet:
        if s not in raw:
            raise InputError(f"no rule for symbol {s!r}", name)
    return Morphism.from_dict(raw, alphabet)


def parse_document(text: str) -> ProblemDocument:
    """Parse and validate the JSON problem document."""
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    unknown = set(data) - {"alphabet", "g", "h", "letter", "config"}
    if unknown:
        raise InputError(f"unknown fields: {', '.join(sorted(unknown))}", "document")
    for name in ("alphabet", "g"):
        if name not in data:
            raise InputError(f"missing field {name!r}", "document")
    symbols = data["alphabet"]
    if not isinstance(symbols, list) or not all(isinstance(s, str) and len(s) == 1 for s in symbols):
        raise InputError("must be an array of single-character strings", "alphabet")
    try:
        alphabet = Alphabet(tuple(symbols))
    except InputError as exc:
        raise InputError(str(exc), "alphabet") from None
    g = _rules(data["g"], alphabet, "g")
    h = _rules(data["h"], alphabet, "h") if "h" in data else None
    letter = data.get("letter")
    if letter is not None and (not isinstance(letter, str) or letter not in alphabet):
        raise InputError(f"seed {letter!r} is not a declared symbol", "letter")
    config = data.get("config") or {}
    if not isinstance(config, dict):
        raise InputError("must be an object", "config")
    for key, value in config.items():
        if key not in CONFIG_KEYS:
            raise InputError(f"unknown config key {key!r}", "config")
        if key == "a_multiplier":
            try:
                config[key] = Fraction(str(value))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"not a number: {value!r}", "config.a_multiplier") from None
        elif not isinstance(value, int) or isinstance(value, bool):
            raise InputError("must be an integer", f"config.{key}")
    return ProblemDocument(alphabet, g, h, letter, config)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), path) from None


def load_problem(args) -> ProblemDocument:
    if args.doc:
        if args.g or args.h:
            raise InputError("use either --doc or --g/--h, not both")
        doc = parse_document(_read(args.doc))
        if args.letter:
            if args.letter not in doc.alphabet:
                raise InputError(f"seed {args.letter!r} is not a declared symbol", "--letter")
            doc.letter = args.letter
        return doc
    if not args.g:
        raise InputError("no input: give --doc FILE or --g FILE")
    try:
        g = Morphism.parse(_read(args.g))
    except InputError as exc:
        raise InputError(str(exc), args.g) from None
    h = None
    if args.h:
        try:
            h = Morphism.parse(_read(args.h), g.alphabet)
        except InputError as exc:
            raise InputError(str(exc), args.h) from None
    letter = args.letter
    if letter is not None and letter not in g.alphabet:
        raise InputError(f"seed {letter!r} is not a declared symbol", "--letter")
    return ProblemDocument(g.alphabet, g, h, letter)


def _config(doc: ProblemDocument, args) -> DecisionConfig:
    opts = dict(doc.config)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    if getattr(args, "unity_multiplier", None) is not None:
        opts["unity_bound_multiplier"] = args.unity_multiplier
    if getattr(args, "locate_mismatch", False):
        opts["locate_mismatch"] = True
        opts["locate_budget"] = args.locate_budget
    return DecisionConfig(**opts)


def _emit(args, payload: dict, text: List[str]):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text))


# -- subcommands ---------------------------------------------------------------

def cmd_decide(args) -> int:
    doc = load_problem(args)
    doc.require("h", "letter")
    verdict = decide_equality(doc.g, doc.h, doc.letter, _config(doc, args))
    payload = verdict.to_dict()
    if verdict.equal:
        lines = [f"EQUAL: g^ω({doc.letter}) = h^ω({doc.letter})"]
    elif verdict.reason.value == "balance_infinite":
        lines = ["NOT EQUAL: balance of f1, f2 is infinite"]
        if verdict.position is not None:
            lines.append(f"first mismatch at position {verdict.position}: "
                         f"{verdict.left!r} vs {verdict.right!r}")
    else:
        lines = [f"NOT EQUAL: first mismatch at position {verdict.position}: "
                 f"{verdict.left!r} vs {verdict.right!r}"]
    lines += [f"  {k}: {v}" for k, v in verdict.diagnostics.items()]
    _emit(args, payload, lines)
    return EXIT_EQUAL if verdict.equal else EXIT_NOT_EQUAL


def cmd_balance(args) -> int:
    doc = load_problem(args)
    doc.require("h")
    if args.direct:
        first, second = doc.g, doc.h
    else:
        first, second = build_f1_f2(doc.g, doc.h)
    inst = balance.BalanceInstance(first, second)
    report = balance.balance_report(inst, Fraction(args.unity_multiplier or 1))
    payload = {
        "finite": report.finite,
        "p_bound": report.p_bound,
        "delta": [str(x) for x in inst.delta],
        "letters": [
            {
                "letter": lb.letter,
                "annihilator": [str(c) for c in lb.annihilator.coeffs],
                "transient": lb.transient,
                "period": lb.period,
            }
            for lb in report.letters
        ],
    }
    lines = [f"p bound: {report.p_bound}"]
    for lb in report.letters:
        found = f"p = {lb.period}" if lb.period else "no p"
        lines.append(f"  {lb.letter}: {lb.annihilator}  ({found})")
    lines.append(f"balance {'finite' if report.finite else 'infinite'}")
    _emit(args, payload, lines)
    return 0


def _profile_dict(m: Morphism, letter):
    p = analysis.profile(m)
    d = {
        "primitive": p.primitive,
        "growing": p.growing,
        "cyclic_letters": sorted(p.cyclic_letters),
        "max_image_len": p.max_image_len,
    }
    if letter is not None:
        d["omega_exists"] = analysis.omega_exists(m, letter)
    return d


def cmd_analyze(args) -> int:
    doc = load_problem(args)
    payload = {"g": _profile_dict(doc.g, doc.letter)}
    if doc.h is not None:
        payload["h"] = _profile_dict(doc.h, doc.letter)
    lines = []
    for name, d in payload.items():
        lines.append(f"{name}:")
        lines += [f"  {k}: {v}" for k, v in d.items()]
    _emit(args, payload, lines)
    return 0


def cmd_period(args) -> int:
    p = analysis.period(args.word)
    _emit(args, {"word": args.word, "period": p}, [str(p)])
    return 0


def cmd_stream(args) -> int:
    doc = load_problem(args)
    doc.require("letter")
    if args.length < 0:
        raise InputError("length must be nonnegative", "--length")
    m = doc.h if args.use_h else doc.g
    if m is None:
        raise InputError("missing field 'h'", "document")
    if not analysis.omega_exists(m, doc.letter):
        raise PreconditionError(f"fixed point from {doc.letter!r} does not exist")
    k, size = 0, 1
    lengths = m.matrix
    v = doc.alphabet.parikh(doc.letter)
    while size < args.length:
        v = tuple(sum(r * x for r, x in zip(row, v)) for row in lengths)
        size = sum(v)
        k += 1
    word = stream_prefix(LayeredWordSpec.power(m, k, doc.letter), args.length)
    if args.format == "json":
        print(json.dumps({"prefix": word}))
    else:
        sys.stdout.write(word + "\n")
    return 0


def cmd_oracle(args) -> int:
    doc = load_problem(args)
    op = args.op
    if op == "equal":
        doc.require("h", "letter")
        r = oracle.naive_equal_up_to(doc.g, doc.h, doc.letter, args.length)
        payload = {"examined": r.examined, "mismatch": r.mismatch,
                   "position": None if r.position is None else str(r.position),
                   "left": r.left, "right": r.right}
        line = (f"mismatch at {r.position}: {r.left!r} vs {r.right!r}" if r.mismatch
                else f"no mismatch within {r.examined}")
        _emit(args, payload, [line])
        return EXIT_NOT_EQUAL if r.mismatch else EXIT_EQUAL
    if op == "bal":
        doc.require("h")
        value = oracle.naive_bal(doc.g, doc.h, args.k_max)
        _emit(args, {"k_max": args.k_max, "bal": str(value)}, [str(value)])
        return 0
    if op == "comp":
        doc.require("h")
        word = doc.alphabet.check_word(args.word or "")
        member = oracle.naive_comp_member(doc.g, doc.h, word)
        _emit(args, {"word": word, "comparable": member}, [str(member).lower()])
        return 0
    doc.require("h", "letter")
    try:
        seq = [int(s) for s in args.seq.split(",") if s.strip()] if args.seq else []
    except ValueError:
        raise InputError(f"bad sequence {args.seq!r}", "--seq") from None
    word = oracle.mixed_composition(seq, doc.g, doc.h, doc.letter)
    _emit(args, {"seq": seq, "word": word}, [word])
    return 0


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--doc", help="JSON problem document ('-' for stdin)")
    inputs.add_argument("--g", help="rule file for g ('a -> ab' per line)")
    inputs.add_argument("--h", help="rule file for h")
    inputs.add_argument("--letter", help="seed letter")

    parser = argparse.ArgumentParser(
        prog="d0leq", description="Equality of infinite words generated by primitive morphisms."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common, inputs], help="decide g^ω(x) = h^ω(x)")
    p.add_argument("--overflow-cap", dest="overflow_cap", type=int)
    p.add_argument("--a-multiplier", dest="a_multiplier", type=_fraction)
    p.add_argument("--materialization-budget", dest="materialization_budget", type=int)
    p.add_argument("--unity-multiplier", dest="unity_multiplier", type=_fraction)
    p.add_argument("--locate-mismatch", action="store_true",
                   help="search for a mismatch when the balance test fails")
    p.add_argument("--locate-budget", type=int, default=10**5)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("balance", parents=[common, inputs], help="balance test for f1, f2")
    p.add_argument("--direct", action="store_true", help="test g against h instead of f1, f2")
    p.add_argument("--unity-multiplier", dest="unity_multiplier", type=_fraction)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("analyze", parents=[common, inputs], help="structural profile")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("period", parents=[common], help="smallest period of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("stream", parents=[common, inputs], help="prefix of g^ω(x)")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--use-h", action="store_true", help="stream h^ω(x) instead")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("oracle", parents=[common, inputs], help="brute-force cross-checks")
    p.add_argument("op", choices=("equal", "bal", "comp", "mixed"))
    p.add_argument("--length", type=int, default=10**5)
    p.add_argument("--k-max", dest="k_max", type=int, default=20)
    p.add_argument("--word")
    p.add_argument("--seq", help="comma-separated 1/2 sequence, e.g. 1,2,1")
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 4 if exc.code else 0
    try:
        return args.func(args)
    except D0LError as exc:
        failures = list(getattr(exc, "failures", ()))
        if args.format == "json":
            print(json.dumps({"error": type(exc).__name__, "message": str(exc),
                              "failures": failures}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
