"""Command-line surface.

One subcommand per operation; words and automorphisms cross the
boundary as text, certificates as JSON. Exit codes: 0 success,
1 verification failure (or a negative complement verdict), 2 input or
validation error, 3 search-budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import factorization, stallings, whitehead
from .automorphisms import (
    apply,
    aut_to_obj,
    compose,
    fixes_prefix,
    format_aut,
    invert,
    parse_aut,
    random_aut,
)
from .errors import NotAPartialBasisError, ParseError, SearchBudgetExceeded
from .words import Word, format_word, parse_word

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_words_file(text: str) -> list:
    tuple_words = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            tuple_words.append(parse_word(stripped))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return tuple_words


def _maybe_dot(args, graph) -> None:
    if getattr(args, "dot", None):
        _write_text(args.dot, stallings.to_dot(graph))


def cmd_apply(args) -> int:
    phi = parse_aut(_read_text(args.aut))
    word = parse_word(args.word)
    result = apply(phi, word)
    if args.json:
        print(json.dumps({"word": result.to_pairs()}))
    else:
        print(format_word(result))
    return EXIT_OK


def cmd_compose(args) -> int:
    auts = [parse_aut(_read_text(path)) for path in args.auts]
    result = compose(*auts)
    if args.json:
        print(json.dumps(aut_to_obj(result)))
    else:
        print(format_aut(result))
    return EXIT_OK


def cmd_invert(args) -> int:
    phi = parse_aut(_read_text(args.aut))
    result = invert(phi)
    if args.json:
        print(json.dumps(aut_to_obj(result)))
    else:
        print(format_aut(result))
    return EXIT_OK


def cmd_check_basis(args) -> int:
    from .nielsen import is_basis_of

    entries = _parse_words_file(_read_text(args.words))
    verdict = is_basis_of(entries, args.m)
    if entries:
        _maybe_dot(args, stallings.build_graph(entries))
    if args.json:
        print(json.dumps({"basis": verdict}))
    else:
        print("true" if verdict else "false")
    return EXIT_OK


def cmd_member(args) -> int:
    entries = _parse_words_file(_read_text(args.words))
    word = parse_word(args.word)
    graph = stallings.build_graph(entries)
    verdict = stallings.contains(graph, word)
    _maybe_dot(args, graph)
    if args.json:
        print(json.dumps({"member": verdict}))
    else:
        print("true" if verdict else "false")
    return EXIT_OK


def cmd_complement(args) -> int:
    entries = _parse_words_file(_read_text(args.words))
    try:
        comp = whitehead.complement_basis(entries, args.m, budget=args.budget)
    except NotAPartialBasisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.json:
        print(json.dumps({"complement": [w.to_pairs() for w in comp]}))
    else:
        for w in comp:
            print(format_word(w))
    return EXIT_OK


def cmd_factorize(args) -> int:
    phi = parse_aut(_read_text(args.aut))
    cert = factorization.factorize(
        phi, args.n, strategy=args.strategy, budget=args.budget
    )
    payload = factorization.certificate_to_json(cert)
    if args.out:
        _write_text(args.out, payload)
    if args.json:
        sys.stdout.write(payload)
    print(f"target width={cert.phi.support} n={cert.n} strategy={args.strategy}")
    print(f"m={cert.m} mprime={cert.mprime}")
    for k, (f_slot, u_slot) in enumerate(cert.pairs, start=1):
        f_name = "id" if f_slot.is_identity else f"swap_f({cert.n})"
        mark = "yes" if fixes_prefix(u_slot, cert.n) else "NO"
        print(f"pair {k}: F={f_name:<10} U width={u_slot.support:<3} U in U_n: {mark}")
    print("verification: PASS")
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = factorization.certificate_from_json(_read_text(args.certificate))
    report = factorization.verify_certificate(cert)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_random(args) -> int:
    failures = 0
    max_width = 0
    for index in range(args.count):
        phi = random_aut(args.seed + index, args.width_bound, args.moves)
        cert = factorization.factorize(
            phi, args.n, strategy=args.strategy, budget=args.budget
        )
        report = factorization.verify_certificate(cert)
        for f_slot, u_slot in cert.pairs:
            max_width = max(max_width, f_slot.support, u_slot.support)
        if not report.passed:
            failures += 1
            print(f"FAIL index={index}")
            print(report.summary())
    passed = args.count - failures
    print(
        f"corpus seed={args.seed} count={args.count} width-bound={args.width_bound} "
        f"moves={args.moves} n={args.n} strategy={args.strategy}"
    )
    print(f"pass {passed}/{args.count}, max factor width {max_width}")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def cmd_dot(args) -> int:
    entries = _parse_words_file(_read_text(args.words))
    graph = stallings.build_graph(entries)
    _write_text(args.out, stallings.to_dot(graph))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbfree",
        description=(
            "Finitely supported automorphisms of the infinite-rank free group: "
            "apply, compose, invert, test bases and membership, build Whitehead "
            "complements, and produce/verify three-pair bounded factorization "
            "certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("apply", help="apply an automorphism to a word")
    p.add_argument("aut", nargs="?", default="-", help="automorphism file or - for stdin")
    p.add_argument("--word", required=True, help="word in token syntax, e.g. 'a1 a2^-1'")
    add_json(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("compose", help="compose automorphisms (leftmost applied last)")
    p.add_argument("auts", nargs="+", help="automorphism files")
    add_json(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invert", help="invert an automorphism")
    p.add_argument("aut", nargs="?", default="-")
    add_json(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("check-basis", help="does the word tuple freely generate A_m?")
    p.add_argument("words", nargs="?", default="-", help="file with one word per line")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dot", metavar="PATH", help="also write the folded graph as DOT")
    add_json(p)
    p.set_defaults(func=cmd_check_basis)

    p = sub.add_parser("member", help="is the word in the subgroup the tuple generates?")
    p.add_argument("words", nargs="?", default="-")
    p.add_argument("--word", required=True)
    p.add_argument("--dot", metavar="PATH")
    add_json(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("complement", help="extend a partial basis to a basis of A_m")
    p.add_argument("words", nargs="?", default="-")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=whitehead.DEFAULT_PEAK_BUDGET)
    add_json(p)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("factorize", help="build a three-pair factorization certificate")
    p.add_argument("aut", nargs="?", default="-")
    p.add_argument("--n", type=int, required=True, help="stabilised prefix length")
    p.add_argument("--strategy", choices=("width", "minimal"), default="width")
    p.add_argument("--budget", type=int, default=whitehead.DEFAULT_PEAK_BUDGET)
    p.add_argument("--out", metavar="PATH", help="write the certificate JSON here")
    add_json(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("certificate", nargs="?", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="factorize and verify a seeded random corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--width-bound", type=int, default=6)
    p.add_argument("--moves", type=int, default=12)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--strategy", choices=("width", "minimal"), default="width")
    p.add_argument("--budget", type=int, default=whitehead.DEFAULT_PEAK_BUDGET)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("dot", help="emit the folded core graph of a word tuple as DOT")
    p.add_argument("words", nargs="?", default="-")
    p.add_argument("--out", metavar="PATH", default="-")
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
