"""Command-line front end.

Exit codes: 0 success, 1 bound violation or failed check, 2 usage or parse
error, 3 state cap exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import automata, bounds, regex, verify, witnesses
from .analysis import profile, profile_dict
from .automata import CapExceeded, DfaFormatError, ExplorationConfig
from .regex import Alphabet, RegexError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, data, lines):
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


def _cfg(args) -> ExplorationConfig:
    return ExplorationConfig(args.max_states)


def _resolve_alphabet(args, texts, extra_letters=""):
    """The declared alphabet, or the letters used when no complement appears."""
    if args.alphabet:
        try:
            return Alphabet(args.alphabet)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    trees = [regex.parse(t) for t in texts]
    if any(t.has_complement() for t in trees):
        raise UsageError("--alphabet is required for expressions with complement")
    letters = set(extra_letters)
    for t in trees:
        letters |= t.letters()
    return Alphabet(sorted(letters) or ["a"])


def _load_operand(text, args, alphabet):
    """Parse a regex, or read a DFA file given as ``@file:<path>``."""
    if text.startswith("@file:"):
        path = Path(text[len("@file:"):])
        try:
            d = automata.loads(path.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        if alphabet is not None and d.alphabet != alphabet:
            raise UsageError(f"{path} uses alphabet {d.alphabet.text!r}, not {alphabet.text!r}")
        return d
    return regex.parse(text, alphabet)


def _operand_alphabet(args, texts):
    files = [t for t in texts if t.startswith("@file:")]
    if files:
        d = automata.loads(Path(files[0][len("@file:"):]).read_text())
        if args.alphabet and Alphabet(args.alphabet) != d.alphabet:
            raise UsageError(f"--alphabet differs from the alphabet of {files[0]}")
        return d.alphabet
    return _resolve_alphabet(args, texts)


def _profile_lines(p):
    d = profile_dict(p)
    return [f"  {k}: {v}" for k, v in d.items()]


# -- commands --------------------------------------------------------------------------


def cmd_kappa(args) -> int:
    alphabet = _operand_alphabet(args, [args.regex])
    operand = _load_operand(args.regex, args, alphabet)
    if isinstance(operand, automata.Dfa):
        d = automata.minimize(operand)
        shown = args.regex
    else:
        d = automata.minimize(automata.build_dfa(operand, alphabet, _cfg(args)))
        shown = regex.to_text(operand)
    p = profile(d)
    data = {"regex": shown, "alphabet": alphabet.text, "kappa": p.kappa, "profile": profile_dict(p)}
    lines = [f"regex: {shown}", f"alphabet: {alphabet.text}", f"kappa = {p.kappa}", "profile:"]
    _emit(args, data, lines + _profile_lines(p))
    return EXIT_OK


def cmd_derive(args) -> int:
    alphabet = _resolve_alphabet(args, [args.regex], args.word)
    r = regex.parse(args.regex, alphabet)
    bad = [c for c in args.word if c not in alphabet]
    if bad:
        raise UsageError(f"word letters {bad} not in alphabet {alphabet.text!r}")
    out = regex.to_text(regex.derive_word(r, args.word))
    _emit(args, {"regex": regex.to_text(r), "word": args.word, "derivative": out}, [out])
    return EXIT_OK


def cmd_bound(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected name=value, got {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {value!r}") from None
    value = bounds.evaluate_named(args.name, **params)
    _emit(args, {"bound_name": args.name, "params": params, "value": value}, [str(value)])
    return EXIT_OK


def _witness_lines(case, result=None):
    lines = [
        f"family: {case.family} {' '.join(map(str, case.params))}".rstrip(),
        f"alphabet: {case.alphabet.text}",
        f"operation: {case.operation}",
    ]
    for i, (o, k) in enumerate(zip(case.operands, case.expected_operand_kappas)):
        measured = f", measured {result.measured_operand_kappas[i]}" if result else ""
        lines.append(f"operand {i + 1}: {regex.to_text(o)}  (kappa expected {k}{measured})")
    lines.append(f"expected: {case.expected_result_kappa}")
    if result:
        verdict = "TIGHT" if result.ok else "NOT TIGHT"
        lines.append(f"measured: {result.measured_kappa}  {verdict}")
    return lines


def cmd_witness(args) -> int:
    case = witnesses.witness(args.family, args.params)
    if not args.check:
        data = {
            "family": case.family,
            "params": list(case.params),
            "alphabet": case.alphabet.text,
            "operation": case.operation,
            "operands": [regex.to_text(o) for o in case.operands],
            "expected_operand_kappas": list(case.expected_operand_kappas),
            "expected_result_kappa": case.expected_result_kappa,
        }
        _emit(args, data, _witness_lines(case))
        return EXIT_OK
    result = verify.check_witness(case, _cfg(args))
    _emit(args, result.to_dict(), _witness_lines(case, result))
    return EXIT_OK if result.ok else EXIT_FAIL


def _report_lines(rep: verify.VerifyReport):
    lines = [f"operation: {rep.operation}", f"alphabet: {rep.alphabet}"]
    for i, (o, p) in enumerate(zip(rep.operands, rep.operand_profiles)):
        lines.append(f"operand {i + 1}: {o}  (kappa {p.kappa}, accepting {p.accepting_count})")
    lines.append(f"measured kappa: {rep.measured_kappa}")
    if rep.second_path_kappa is not None:
        lines.append(f"automaton path: {rep.second_path_kappa}")
    if rep.result_quotients is not None:
        lines.append(f"reversal quotients: {rep.result_quotients}")
    lines.append(f"{'bound':32} {'value':>8}  status")
    for b in rep.bound_reports:
        if not b.applicable:
            lines.append(f"{b.bound_name:32} {'-':>8}  not applicable")
            continue
        status = "TIGHT" if b.tight else ("ok" if b.satisfied else "VIOLATED")
        lines.append(f"{b.bound_name:32} {b.value:>8}  {status}")
    lines += [f"note: {n}" for n in rep.notes]
    return lines


def cmd_verify(args) -> int:
    binary = args.op in verify.BINARY_OPS
    if binary and args.regex_l is None:
        raise UsageError(f"{args.op} needs two operands")
    if not binary and args.regex_l is not None:
        raise UsageError(f"{args.op} takes one operand")
    texts = [args.regex_k] + ([args.regex_l] if binary else [])
    alphabet = _operand_alphabet(args, texts)
    ops = [_load_operand(t, args, alphabet) for t in texts]
    rep = verify.verify_operation(ops[0], ops[1] if binary else None, args.op, alphabet, _cfg(args))
    _emit(args, rep.to_dict(), _report_lines(rep))
    return EXIT_FAIL if rep.violations or not rep.paths_agree else EXIT_OK


def _parse_range(spec: str):
    name, sep, body = spec.partition("=")
    if not sep:
        raise UsageError(f"expected name=lo..hi or name=v, got {spec!r}")
    lo, dots, hi = body.partition("..")
    try:
        values = range(int(lo), int(hi) + 1) if dots else [int(lo)]
    except ValueError:
        raise UsageError(f"bad range {spec!r}") from None
    return name, list(values)


def cmd_table(args) -> int:
    if args.family not in witnesses.FAMILIES:
        raise UsageError(f"unknown witness family {args.family!r}")
    names = witnesses.FAMILY_PARAMS[args.family]
    ranges = dict(_parse_range(s) for s in args.ranges)
    unknown = set(ranges) - set(names)
    missing = set(names) - set(ranges)
    if unknown or missing:
        raise UsageError(f"{args.family} takes parameters {list(names)}")
    rows = []
    failed = False
    for params in itertools.product(*(ranges[n] for n in names)):
        try:
            case = witnesses.witness(args.family, params)
        except witnesses.WitnessParamError:
            continue
        row = {"params": list(params), "expected": case.expected_result_kappa}
        if args.check:
            result = verify.check_witness(case, _cfg(args))
            row["measured"] = result.measured_kappa
            row["tight"] = result.ok
            failed |= not result.ok
        rows.append(row)
    header = f"{','.join(names):>10} {'expected':>9} {'measured':>9}  tight"
    lines = [f"{args.family}", header]
    for row in rows:
        ps = ",".join(map(str, row["params"]))
        measured = row.get("measured", "-")
        tight = {True: "yes", False: "NO"}.get(row.get("tight"), "-")
        lines.append(f"{ps:>10} {row['expected']:>9} {measured:>9}  {tight}")
    _emit(args, {"family": args.family, "parameters": list(names), "rows": rows}, lines)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_campaign(args) -> int:
    try:
        alphabet = Alphabet(args.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = verify.CampaignConfig(
        seed=args.seed,
        samples=args.samples,
        max_regex_size=args.size,
        alphabet=alphabet,
        cap=_cfg(args),
        inject_failure=args.self_test_fail,
    )
    try:
        summary = verify.campaign(cfg)
    except verify.CampaignFailure as exc:
        summary = exc.summary
    data = summary.to_dict()
    lines = [
        f"seed {summary.seed}, {summary.samples} samples, alphabet {alphabet.text}, size <= {args.size}",
        f"checks run: {sum(summary.checks.values())}",
        f"failures: {summary.failure_count}",
    ]
    lines += [f"  {f}" for f in summary.failures]
    lines.append(f"{'bound':32} {'applicable':>10} {'tight':>7}")
    for name, stats in data["bounds"].items():
        lines.append(f"{name:32} {stats['applicable']:>10} {stats['tight']:>7}")
    _emit(args, data, lines)
    return EXIT_FAIL if summary.failure_count else EXIT_OK


# -- wiring ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotcomp", description="Quotient complexity of regular languages."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, alphabet=True):
        if alphabet:
            p.add_argument("--alphabet", help="letters of the alphabet, e.g. ab")
        p.add_argument("--max-states", type=int, default=automata.DEFAULT_MAX_STATES)
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("kappa", help="quotient complexity and profile of a language")
    p.add_argument("regex", help="expression, or @file:<path> for a DFA file")
    common(p)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("derive", help="derivative of an expression by a word")
    p.add_argument("regex")
    p.add_argument("word")
    common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("bound", help="evaluate a named bound, e.g. thm3.boolean m=7 n=5 ...")
    p.add_argument("name", choices=sorted(bounds.NAMED_BOUNDS), metavar="name")
    p.add_argument("params", nargs="*", help="name=value pairs")
    common(p, alphabet=False)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("witness", help="a witness case, optionally measured")
    p.add_argument("family", choices=sorted(witnesses.FAMILIES), metavar="family")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--check", action="store_true", help="measure and compare with the claim")
    common(p, alphabet=False)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="measure an operation and check all applicable bounds")
    p.add_argument("op", choices=verify.OPERATIONS)
    p.add_argument("regex_k", metavar="K")
    p.add_argument("regex_l", metavar="L", nargs="?")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="sweep a witness family over parameter ranges")
    p.add_argument("family")
    p.add_argument("ranges", nargs="*", help="name=lo..hi or name=v")
    p.add_argument("--check", action="store_true")
    common(p, alphabet=False)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("campaign", help="seeded randomized property campaign")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--alphabet", default="ab")
    p.add_argument(
        "--self-test-fail", action="store_true", help="plant one failure to test the exit path"
    )
    common(p, alphabet=False)
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RegexError, DfaFormatError, bounds.BoundDomainError,
            witnesses.WitnessParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
