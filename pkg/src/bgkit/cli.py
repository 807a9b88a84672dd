"""Command-line front end.

Exit codes: 0 for any answer (including "no" answers), 2 for malformed
input, 3 when the bit budget is exceeded, 4 on an internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .automorphisms import (
    Aut,
    AutImages,
    Degenerate,
    InternalContradiction,
    NotVerified,
    apply_aut,
    classify_endo,
    compose_out,
    invert_out,
    std_aut,
)
from .britton import DEFAULT_MAX_BITS, Budget, BudgetExceeded, britton_reduce, cyclic_reduce_g
from .conjugacy import DEFAULT_MAX_DEPTH, ChainCertificate, conj_zero_g, format_certificate
from .h_arith import Dyadic, HasStableLetter, NotInCentralizer, eval_h, h_normal_form, psi
from .words import WordSyntaxError, parse_word

ENV_BUDGET = "BGKIT_BIT_BUDGET"

EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

OUTPUT_SCHEMA = {
    "type": "object",
    "required": ["command", "result", "budget_bits"],
    "properties": {
        "command": {"type": "string"},
        "result": {},
        "t_length": {"type": "integer", "minimum": 0},
        "out_class": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        "certificate": {"type": "string"},
        "witness": {"type": "string"},
        "budget_bits": {"type": "integer", "minimum": 64},
        "conjugator": {"type": "string"},
        "relation": {"type": "string"},
        "normal_form": {"type": "string"},
        "obstruction": {
            "type": "object",
            "properties": {
                "t_lengths": {"type": "array", "items": {"type": "integer"}},
                "possible": {"type": "boolean"},
            },
        },
        "images": {
            "type": "object",
            "properties": {k: {"type": "string"} for k in "xyt"},
        },
    },
    "additionalProperties": False,
}


@dataclass
class CliConfig:
    bit_budget: int = DEFAULT_MAX_BITS
    max_depth: int = DEFAULT_MAX_DEPTH
    output_mode: str = "text"

    def __post_init__(self):
        if self.bit_budget < 64:
            raise ValueError("--bit-budget must be at least 64")
        if self.max_depth < 1:
            raise ValueError("--max-depth must be positive")


def _flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--bit-budget", type=int, default=default, metavar="N")
    parser.add_argument("--max-depth", type=int, default=default, metavar="N")
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgkit",
        description="Word problems, conjugacy and automorphisms in the Baumslag-Gersten group.",
    )
    _flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="Britton-reduced form and t-length")
    p.add_argument("word")
    p = sub.add_parser("is-id", parents=[common], help="is the word the identity of G")
    p.add_argument("word")
    p = sub.add_parser("eval-h", parents=[common], help="affine pair and normal form in H")
    p.add_argument("word")
    p = sub.add_parser("psi", parents=[common], help="dyadic value of a centralizer element")
    p.add_argument("word")
    p = sub.add_parser("conj", parents=[common], help="conjugacy of two elements")
    p.add_argument("u")
    p.add_argument("v")
    p = sub.add_parser("classify", parents=[common], help="classify an endomorphism")
    p.add_argument("--x", required=True, dest="wx")
    p.add_argument("--y", required=True, dest="wy")
    p.add_argument("--t", required=True, dest="wt")

    aut = sub.add_parser("aut", parents=[common], help="Out(G) arithmetic")
    aut_sub = aut.add_subparsers(dest="aut_command", required=True)
    p = aut_sub.add_parser("std", parents=[common])
    p.add_argument("d")
    p = aut_sub.add_parser("apply", parents=[common])
    p.add_argument("d")
    p.add_argument("word")
    p = aut_sub.add_parser("compose", parents=[common])
    p.add_argument("d1")
    p.add_argument("d2")
    p = aut_sub.add_parser("invert", parents=[common])
    p.add_argument("d")
    return parser


def _config(args: argparse.Namespace, environ) -> CliConfig:
    budget = args.bit_budget
    if budget is None:
        env = environ.get(ENV_BUDGET)
        budget = int(env) if env else DEFAULT_MAX_BITS
    depth = args.max_depth if args.max_depth is not None else DEFAULT_MAX_DEPTH
    return CliConfig(budget, depth, "json" if args.json else "text")


def _dyadic(text: str) -> Dyadic:
    try:
        return Dyadic.parse(text)
    except ValueError as exc:
        raise _InputError(str(exc)) from None


class _InputError(ValueError):
    pass


def _execute(args: argparse.Namespace, cfg: CliConfig) -> tuple[dict, list[str]]:
    """Return the structured record and the text-mode lines."""
    budget = Budget(cfg.bit_budget)
    cmd = args.command
    rec: dict = {"command": cmd if cmd != "aut" else f"aut {args.aut_command}"}

    if cmd == "reduce":
        g = britton_reduce(parse_word(args.word), budget)
        rec.update(result=str(g), t_length=g.t_length())
        return rec, [f"{g} (t-length {g.t_length()})"]

    if cmd == "is-id":
        ok = britton_reduce(parse_word(args.word), budget).is_identity()
        rec["result"] = ok
        return rec, ["true" if ok else "false"]

    if cmd == "eval-h":
        a = eval_h(parse_word(args.word))
        nf = str(h_normal_form(a))
        rec.update(result=str(a), normal_form=nf)
        return rec, [f"{a} = {nf}"]

    if cmd == "psi":
        a = eval_h(parse_word(args.word))
        try:
            d = psi(a)
        except NotInCentralizer:
            rec["result"] = "NotInCentralizer"
            return rec, ["NotInCentralizer"]
        rec.update(result=str(d), out_class=str(d))
        return rec, [str(d)]

    if cmd == "conj":
        return _conj(args, cfg, budget, rec)

    if cmd == "classify":
        F = AutImages(parse_word(args.wx), parse_word(args.wy), parse_word(args.wt))
        try:
            c = classify_endo(F, budget)
        except NotVerified as exc:
            w = exc.witness
            rec.update(result="not_hom", relation=w.relation, witness=str(w.residue))
            return rec, ["kind: not_hom", f"relation: {w.relation}", f"witness: {w.residue}"]
        if isinstance(c, Degenerate):
            rec.update(result="degenerate", witness=str(c.t_image))
            return rec, ["kind: degenerate", f"t_image: {c.t_image}"]
        assert isinstance(c, Aut)
        rec.update(result="aut", out_class=str(c.out), conjugator=str(c.conjugator))
        return rec, ["kind: aut", f"out_class: {c.out}", f"conjugator: {c.conjugator}"]

    sub = args.aut_command
    if sub == "std":
        F = std_aut(_dyadic(args.d))
        images = {"x": str(F.wx), "y": str(F.wy), "t": str(F.wt)}
        rec.update(result=str(F.wt), images=images, out_class=str(_dyadic(args.d)))
        return rec, [f"{k} -> {v}" for k, v in images.items()]
    if sub == "apply":
        g = apply_aut(std_aut(_dyadic(args.d)), parse_word(args.word), budget)
        rec.update(result=str(g), t_length=g.t_length())
        return rec, [f"{g} (t-length {g.t_length()})"]
    if sub == "compose":
        d = compose_out(_dyadic(args.d1), _dyadic(args.d2))
    else:
        d = invert_out(_dyadic(args.d))
    rec.update(result=str(d), out_class=str(d))
    return rec, [str(d)]


def _conj(args, cfg: CliConfig, budget: Budget, rec: dict) -> tuple[dict, list[str]]:
    u, v = parse_word(args.u), parse_word(args.v)
    lu = cyclic_reduce_g(u, budget)[1].t_length()
    lv = cyclic_reduce_g(v, budget)[1].t_length()
    possible = lu == lv
    rec["obstruction"] = {"t_lengths": [lu, lv], "possible": possible}
    if not possible:
        rec["result"] = "not_conjugate"
        return rec, [f"obstruction: cores have t-length {lu} and {lv}", "conjugate: false"]
    lines = [f"obstruction: none (cores have t-length {lu} and {lv})"]
    ru = britton_reduce(u, budget).t_length()
    rv = britton_reduce(v, budget).t_length()
    if ru or rv:
        rec["result"] = "undecided"
        return rec, lines + ["conjugate: undecided (inputs have t-letters)"]
    found = conj_zero_g(u, v, budget, cfg.max_depth)
    if isinstance(found, ChainCertificate):
        text = format_certificate(found)
        rec.update(result="conjugate", certificate=text, conjugator=str(found.conjugator()))
        return rec, lines + ["conjugate: true", text, f"conjugator: {found.conjugator()}"]
    if found.exhausted:
        rec["result"] = "not_conjugate"
        return rec, lines + ["conjugate: false", str(found)]
    rec["result"] = "no_chain"
    return rec, lines + ["conjugate: unknown", str(found)]


def run(argv: Optional[Sequence[str]] = None, out: TextIO | None = None, environ=None) -> int:
    out = out if out is not None else sys.stdout
    environ = os.environ if environ is None else environ
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args, environ)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    try:
        rec, lines = _execute(args, cfg)
    except (WordSyntaxError, HasStableLetter, _InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except BudgetExceeded as exc:
        print(f"error: bit budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalContradiction as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    rec["budget_bits"] = cfg.bit_budget
    if cfg.output_mode == "json":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
