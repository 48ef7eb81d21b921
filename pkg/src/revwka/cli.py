"""Command-line interface.

Exit codes: 0 success / equal / accept, 1 semantic negative (reject, not
equal), 2 input error, 3 reversibility failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analyze, construct, documents
from .model import MachineError, Nfa, RevWka, UnknownSymbolError, tape_token
from .reversibility import validate_reversible
from .simulate import (REJECT_LOOP, CapExceeded, StrandError, accepts, nfa_accepts, run_fixed,
                       upper_read)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_REVERSIBILITY = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_word(text: str, alphabet) -> tuple:
    """Split ``text`` into alphabet tokens.

    Whitespace or commas separate tokens explicitly; otherwise the longest
    matching token is taken at each position.  The empty string is the empty word.
    """
    if any(ch.isspace() or ch == "," for ch in text):
        return tuple(t for t in text.replace(",", " ").split())
    tokens = sorted(alphabet, key=len, reverse=True)
    word, i = [], 0
    while i < len(text):
        match = next((t for t in tokens if text.startswith(t, i)), None)
        if match is None:
            raise InputError(f"cannot read {text[i:]!r} as symbols of {sorted(alphabet)}")
        word.append(match)
        i += len(match)
    return tuple(word)


def input_alphabet(machine) -> frozenset:
    """Symbols an upper strand is drawn from when comparing languages.

    For a Rev-WKA this drops symbols that only ever appear as lower reads
    (decorations and transition tokens).
    """
    if isinstance(machine, Nfa):
        return machine.alphabet
    upper = {e.upper for e in machine.entries()}
    lower_only = {e.lower for e in machine.entries()} - upper
    return frozenset(machine.alphabet - lower_only)


def show(word) -> str:
    if not word:
        return "λ"
    tokens = [tape_token(x) for x in word]
    return " ".join(tokens) if any(len(t) > 1 for t in tokens) else "".join(tokens)


def _load(path):
    try:
        return documents.load(path)
    except MachineError as exc:
        raise InputError(_problem_report(path, exc)) from exc


def _problem_report(path, exc: MachineError) -> str:
    lines = [f"{path}: {len(exc.problems)} problem(s)"]
    lines += [f"  {p}" for p in exc.problems]
    return "\n".join(lines)


def _write(machine, out):
    text = documents.dumps(machine)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _info(args, message):
    # Keep stdout clean when the document itself goes there.
    stream = sys.stderr if getattr(args, "out", None) is None else sys.stdout
    print(message, file=stream)


def cmd_validate(args) -> int:
    try:
        machine = documents.load(args.path)
    except MachineError as exc:
        print(_problem_report(args.path, exc))
        return EXIT_INPUT
    if isinstance(machine, Nfa):
        print(f"{args.path}: well-formed nfa with {len(machine.states)} states")
        return EXIT_OK
    report = validate_reversible(machine)
    print(f"{args.path}: well-formed revwka with {len(machine.states)} states")
    print(report.render())
    return EXIT_OK if report.passed else EXIT_REVERSIBILITY


def cmd_run(args) -> int:
    machine = _load(args.path)
    word = parse_word(args.word, machine.alphabet)
    if isinstance(machine, Nfa):
        if args.w2 is not None:
            raise InputError("--w2 needs a revwka document")
        try:
            ok = nfa_accepts(machine, word)
        except UnknownSymbolError as exc:
            raise InputError(str(exc)) from exc
        print("accept" if ok else "reject")
        return EXIT_OK if ok else EXIT_NEGATIVE

    try:
        if args.w2 is not None:
            w2 = parse_word(args.w2, machine.alphabet)
            outcome = run_fixed(machine, word, w2)
            for step, cfg in enumerate(outcome.trace):
                reads = f"{tape_token(upper_read(word, cfg.p1))},{tape_token(cfg.c2)}"
                print(f"{step:4d}  {cfg.state}  p1={cfg.p1} p2={cfg.p2}  reads ({reads})")
            print(outcome.result)
            if outcome.result == REJECT_LOOP:
                print("configuration repeated with stationary heads")
            return EXIT_OK if outcome.accepted else EXIT_NEGATIVE

        outcome = accepts(machine, word)
    except (UnknownSymbolError, StrandError, CapExceeded) as exc:
        raise InputError(str(exc)) from exc
    if not outcome.accepted:
        print(f"reject: {outcome.reason}")
        return EXIT_NEGATIVE
    print("accept")
    if not outcome.consumed:
        print("note: accepted with unconsumed input")
    if args.witness:
        print(f"w2 = {show(outcome.w2)}")
    if args.trace:
        for step, cfg in enumerate(outcome.path):
            reads = f"{tape_token(upper_read(word, cfg.p1))},{tape_token(cfg.c2)}"
            print(f"{step:4d}  {cfg.state}  p1={cfg.p1} p2={cfg.p2}  reads ({reads})")
    return EXIT_OK


def _report_machine(args, machine: RevWka, counts: str) -> int:
    report = validate_reversible(machine)
    _info(args, counts)
    _info(args, report.render())
    if not report.passed:
        print("warning: the written machine violates the reversibility conditions", file=sys.stderr)
        return EXIT_REVERSIBILITY
    return EXIT_OK


def cmd_convert(args) -> int:
    nfa = _load(args.path)
    if not isinstance(nfa, Nfa):
        raise InputError(f"{args.path}: expected an nfa document")
    convert = construct.nfa_to_wka_verbatim if args.mode == "verbatim" else construct.nfa_to_wka_repaired
    machine = convert(nfa)
    _write(machine, args.out)
    n = len(nfa.states)
    expected = f"n+2 = {n + 2}" if args.mode == "verbatim" else f"n+1+|F| = {n + 1 + len(nfa.finals)}"
    return _report_machine(args, machine, f"nfa states: {n}; revwka states: {len(machine.states)} ({expected})")


def cmd_gen_lk(args) -> int:
    if args.k < 1:
        raise InputError("k must be at least 1")
    machine = construct.gen_lk(args.k, args.mode)
    _write(machine, args.out)
    return _report_machine(args, machine, f"L_{args.k} ({args.mode}): {len(machine.states)} states")


def cmd_equiv(args) -> int:
    a = _load(args.a)
    if args.lk is not None:
        if args.lk < 1:
            raise InputError("--lk needs k >= 1")
        k = args.lk
        b, b_alphabet, b_name = (lambda w: construct.lk_member(k, w)), frozenset(construct.LK_LETTERS), f"L_{k}"
    elif args.b is not None:
        b = _load(args.b)
        b_alphabet, b_name = input_alphabet(b), args.b
    else:
        raise InputError("give a second document or --lk k")
    if args.alphabet:
        alphabet = frozenset(args.alphabet.replace(",", " ").split())
    else:
        alphabet = input_alphabet(a)
        if alphabet != b_alphabet:
            raise InputError(f"alphabet mismatch: {sorted(alphabet)} vs {sorted(b_alphabet)}")
    try:
        report = analyze.bounded_equiv(a, b, alphabet, args.max_len)
    except analyze.AcceptorError as exc:
        raise InputError(str(exc)) from exc
    print(f"A = {args.a}; B = {b_name}; alphabet {sorted(alphabet)}")
    print(report.render())
    return EXIT_OK if report.equal else EXIT_NEGATIVE


def cmd_report(args) -> int:
    if args.kmax < 1:
        raise InputError("--kmax must be at least 1")
    rows = analyze.complexity_table(args.kmax)
    print(analyze.format_table(rows))
    csv_text = analyze.table_csv(rows)
    if args.csv:
        Path(args.csv).write_text(csv_text, encoding="utf-8")
    else:
        print()
        sys.stdout.write(csv_text)
    if args.figure:
        from .plotting import plot_complexity
        plot_complexity(rows, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    machine = _load(args.path)
    text = documents.to_dot(machine)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revwka", description="Reversible Watson-Crick automata toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check well-formedness and reversibility")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="decide acceptance of a word")
    p.add_argument("path")
    p.add_argument("word", help="upper strand; tokens may be space separated ('' is the empty word)")
    p.add_argument("--w2", help="fix the lower strand and print the deterministic trace")
    p.add_argument("--trace", action="store_true", help="print the accepting path")
    p.add_argument("--witness", action="store_true", help="print one accepting lower strand")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("convert", help="compile an NFA document into a Rev-WKA")
    p.add_argument("path")
    p.add_argument("--mode", choices=("verbatim", "repaired"), default="verbatim")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("gen-lk", help="generate the L_k machine")
    p.add_argument("k", type=int)
    p.add_argument("--mode", choices=("verbatim", "corrected"), default="corrected")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_lk)

    p = sub.add_parser("equiv", help="compare two acceptors on all words up to a length")
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.add_argument("--lk", type=int, help="compare against L_k membership instead of a document")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--alphabet", help="comma separated symbols to enumerate words over")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("report", help="state-complexity table for L_k")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--csv", help="write the CSV rows here instead of stdout")
    p.add_argument("--figure", help="render the table as a figure (png, pdf, svg)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export-dot", help="Graphviz rendering of a machine document")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
