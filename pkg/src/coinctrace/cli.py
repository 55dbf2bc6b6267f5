"""Command-line front end.

Input files declare an alphabet and the two induced endomorphisms:

    generators: a b c
    phi: a -> a c b^-1
    phi: b -> a b
    phi: c -> b
    psi: a -> a^-1 c b^-1
    psi: b -> c
    psi: c -> b^-1 a

`psi` may be omitted entirely, in which case it defaults to the identity
and `trace` computes the fixed-point Reidemeister trace.

Exit codes: 0 success, 1 compare mismatch, 2 parse error, 3 integer
overflow (reserved; arithmetic here is arbitrary precision).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .conjugacy import DecideConfig, decide
from .fox import delta_derivative, fox_derivative
from .oracle import build_regular_pair, dump_intervals, enumerate_coincidences, geometric_trace
from .trace import match_traces, nielsen_bound, raw_trace, reduce_trace
from .words import Alphabet, Endomorphism, GroupRingElement, Word, WordSyntaxError, parse_word

SCHEMA_VERSION = 1


class SpecError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ProblemSpec:
    alphabet: Alphabet
    phi: Endomorphism
    psi: Endomorphism


def parse_spec(text: str) -> ProblemSpec:
    """Parse the spec format; whitespace-insensitive within lines."""
    alphabet: Alphabet | None = None
    images: dict[str, dict[int, Word]] = {"phi": {}, "psi": {}}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = raw_line.partition(":")
        if not sep:
            raise SpecError("expected 'generators:', 'phi:' or 'psi:'", lineno, 0)
        key = head.strip()
        col = len(head) + 1
        if key == "generators":
            if alphabet is not None:
                raise SpecError("duplicate generators line", lineno, 0)
            names = rest.split()
            if not names:
                raise SpecError("no generators listed", lineno, col)
            seen = set()
            for name in names:
                if name in seen:
                    raise SpecError(f"duplicate generator {name!r}", lineno, col)
                seen.add(name)
            try:
                alphabet = Alphabet(names)
            except ValueError as exc:
                raise SpecError(str(exc), lineno, col) from None
        elif key in ("phi", "psi"):
            if alphabet is None:
                raise SpecError("generators must be declared first", lineno, 0)
            name_part, arrow, word_part = rest.partition("->")
            if not arrow:
                raise SpecError("expected 'name -> word'", lineno, col)
            name = name_part.strip()
            if name not in alphabet.names:
                raise SpecError(f"unknown generator {name!r}", lineno, col)
            gen = alphabet.index(name)
            if gen in images[key]:
                raise SpecError(f"duplicate image for {key}({name})", lineno, col)
            word_col = len(head) + 1 + len(name_part) + 2
            try:
                images[key][gen] = parse_word(alphabet, word_part, word_col)
            except WordSyntaxError as exc:
                raise SpecError(str(exc), lineno, exc.column) from None
        else:
            raise SpecError(f"unknown directive {key!r}", lineno, 0)

    if alphabet is None:
        raise SpecError("missing generators line", 1, 0)
    n = len(alphabet)
    for gen in range(n):
        if gen not in images["phi"]:
            raise SpecError(f"missing phi image for {alphabet.names[gen]}", 1, 0)
    phi = Endomorphism(alphabet, [images["phi"][g] for g in range(n)])
    if images["psi"]:
        for gen in range(n):
            if gen not in images["psi"]:
                raise SpecError(f"missing psi image for {alphabet.names[gen]}", 1, 0)
        psi = Endomorphism(alphabet, [images["psi"][g] for g in range(n)])
    else:
        psi = Endomorphism.identity(alphabet)
    return ProblemSpec(alphabet, phi, psi)


def format_spec(spec: ProblemSpec) -> str:
    lines = ["generators: " + " ".join(spec.alphabet.names)]
    for kind, endo in (("phi", spec.phi), ("psi", spec.psi)):
        for name, img in zip(spec.alphabet.names, endo.images):
            lines.append(f"{kind}: {name} -> {img}")
    return "\n".join(lines)


def _ring_json(x: GroupRingElement) -> list[list]:
    return [[c, str(w)] for c, w in x.sorted_terms()]


def _trace_json(t) -> dict:
    return {
        "terms": [[c, str(w)] for c, w in t.terms],
        "merge_status": t.merge_status,
        "unknown_pairs": [list(p) for p in t.unknown_pairs],
    }


def _spec_json(spec: ProblemSpec) -> dict:
    return {
        "generators": list(spec.alphabet.names),
        "phi": {n: str(w) for n, w in zip(spec.alphabet.names, spec.phi.images)},
        "psi": {n: str(w) for n, w in zip(spec.alphabet.names, spec.psi.images)},
    }


def run(command: str, spec: ProblemSpec, flags) -> tuple[int, dict, str]:
    """Execute one command; returns (exit status, json result, text report)."""
    cfg = DecideConfig(
        max_witness_len=flags.max_witness_len, nilpotent_level=flags.nilpotent_level
    )
    phi, psi, alphabet = spec.phi, spec.psi, spec.alphabet
    status = "ok"

    if command == "trace":
        t = reduce_trace(raw_trace(phi, psi), phi, psi, cfg)
        return 0, {"trace": _trace_json(t)}, str(t)

    if command == "nielsen":
        t = reduce_trace(raw_trace(phi, psi), phi, psi, cfg)
        lower, upper = nielsen_bound(t)
        text = f"N = {lower}" if lower == upper else f"N in [{lower}, {upper}]"
        return 0, {"lower": lower, "upper": upper}, text

    if command in ("fox", "delta"):
        deriv = fox_derivative if command == "fox" else delta_derivative
        symbol = "d/d" if command == "fox" else "D/D"
        table = {}
        lines = []
        for kind, endo in (("phi", phi), ("psi", psi)):
            table[kind] = {}
            for b, img in zip(alphabet.names, endo.images):
                table[kind][b] = {}
                for a_idx, a in enumerate(alphabet.names):
                    val = deriv(a_idx, img)
                    table[kind][b][a] = _ring_json(val)
                    lines.append(f"{symbol}{a} {kind}({b}) = {val}")
        return 0, {"table": table}, "\n".join(lines)

    if command == "check":
        alpha = parse_word(alphabet, flags.alpha)
        beta = parse_word(alphabet, flags.beta)
        out = decide(alpha, beta, phi, psi, cfg)
        result = {
            "status": out.status,
            "witness": str(out.witness) if out.witness is not None else None,
            "level": out.level,
        }
        if out.is_equivalent:
            text = f"equivalent  witness = {out.witness}"
        elif out.is_distinct:
            text = f"distinct  level = {out.level}"
        else:
            text = "unknown"
        return 0, result, text

    if command == "oracle":
        pair = build_regular_pair(phi, psi, flags.epsilon)
        points = enumerate_coincidences(pair)
        geo = geometric_trace(pair)
        lines = [dump_intervals(pair), ""]
        for pt in points:
            lines.append(
                f"coincidence {alphabet.names[pt.circle]} {pt.coordinate} "
                f"index {pt.index:+d} class {pt.class_word}"
            )
        lines.append("")
        lines.append(f"geometric trace: {geo}")
        result = {
            "epsilon": str(pair.epsilon),
            "coincidences": [
                {
                    "circle": alphabet.names[pt.circle],
                    "coordinate": str(pt.coordinate),
                    "index": pt.index,
                    "class": str(pt.class_word),
                }
                for pt in points
            ],
            "geometric_trace": _ring_json(geo),
        }
        return 0, result, "\n".join(lines)

    if command == "compare":
        alg = reduce_trace(raw_trace(phi, psi), phi, psi, cfg)
        pair = build_regular_pair(phi, psi, flags.epsilon)
        geo = reduce_trace(geometric_trace(pair), phi, psi, cfg)
        verdict = match_traces(alg, geo, phi, psi, cfg)
        if verdict != "match" and (not alg.resolved or not geo.resolved):
            if verdict != "mismatch":
                verdict = "inconclusive"
        text = "\n".join(
            [f"algebraic: {alg}", f"geometric: {geo}", f"verdict: {verdict}"]
        )
        result = {
            "algebraic": _trace_json(alg),
            "geometric": _trace_json(geo),
            "verdict": verdict,
        }
        code = 1 if verdict == "mismatch" else 0
        status = verdict if verdict != "match" else "ok"
        return code, {"compare": result}, text

    raise ValueError(f"unknown command {command!r}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinctrace",
        description="Coincidence Reidemeister traces on bouquets of circles.",
    )
    parser.add_argument(
        "command",
        choices=["trace", "nielsen", "fox", "delta", "check", "oracle", "compare"],
    )
    parser.add_argument("specfile", help="spec file path, or - for stdin")
    parser.add_argument("words", nargs="*", help="for check: the two words to compare")
    parser.add_argument("--max-witness-len", type=int, default=6)
    parser.add_argument("--nilpotent-level", type=int, choices=[1, 2], default=2)
    parser.add_argument("--epsilon", type=_parse_fraction, default=None, metavar="p/q")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--quiet", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "check":
        if len(args.words) != 2:
            parser.error("check needs exactly two word arguments")
        args.alpha, args.beta = args.words
    elif args.words:
        parser.error(f"{args.command} takes no word arguments")

    try:
        if args.specfile == "-":
            text = sys.stdin.read()
        else:
            with open(args.specfile) as fh:
                text = fh.read()
        spec = parse_spec(text)
        code, result, report = run(args.command, spec, args)
    except (SpecError, WordSyntaxError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return 3

    if not args.quiet:
        if args.format == "json":
            doc = {
                "schema_version": SCHEMA_VERSION,
                "command": args.command,
                "spec": _spec_json(spec),
                "result": result,
                "status": "ok" if code == 0 else "mismatch",
            }
            if args.command == "compare":
                doc["status"] = result["compare"]["verdict"]
                if doc["status"] == "match":
                    doc["status"] = "ok"
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
