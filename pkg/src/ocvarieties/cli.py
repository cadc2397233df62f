"""Command-line entry point.

Exit codes: 0 success or Holds, 1 expected negative result (counterexample,
violation, NotFound), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import deduction, lattice_terms, partitions, variety_bridge, words

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, doc: dict, lines: List[str]) -> None:
    if args.output == "structured":
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


def _bounds(args) -> Optional[deduction.SearchBounds]:
    if args.max_word_len is None and args.max_depth is None and args.max_visited is None:
        return None
    kwargs = {"max_word_length": args.max_word_len}
    if args.max_depth is not None:
        kwargs["max_depth"] = args.max_depth
    if args.max_visited is not None:
        kwargs["max_visited"] = args.max_visited
    return deduction.SearchBounds(**kwargs)


def _context(n: int) -> variety_bridge.AntichainContext:
    if n < 1:
        raise UsageError(f"--n must be a positive integer, got {n}")
    return variety_bridge.AntichainContext.standard(n)


def cmd_antichain(args) -> int:
    if args.words is not None:
        ws = [words.parse_word(s) for s in args.words.split(",")]
    else:
        if args.n is None:
            raise UsageError("give --n or --words")
        if args.n < 1:
            raise UsageError(f"--n must be a positive integer, got {args.n}")
        ws = words.generate_an(args.n)
    violation = words.check_antichain(ws)
    hyp = words.check_hypothesis(ws)
    doc = {
        "words": [str(w) for w in ws],
        "antichain": violation is None,
        "hypothesis": hyp is None,
    }
    lines = ["words: " + ", ".join(str(w) for w in ws)]
    if violation is None:
        lines.append("anti-chain: ok")
    else:
        e = violation.witness
        doc["violating_pair"] = {
            "u": str(violation.u),
            "v": str(violation.v),
            "a": str(e.prefix),
            "xi": [[words.letter_name(x), str(w)] for x, w in e.xi.images],
            "b": str(e.suffix),
        }
        lines.append(
            f"anti-chain: FAIL {violation.u} <= {violation.v} "
            f"(a={e.prefix}, xi={e.xi}, b={e.suffix})"
        )
    if hyp is None:
        lines.append("hypothesis: ok")
    else:
        deleted = None if hyp.deleted is None else sorted(words.letter_name(a) for a in hyp.deleted)
        doc["hypothesis_violation"] = {"u": str(hyp.u), "v": str(hyp.v), "deleted": deleted}
        why = "contents differ" if deleted is None else "deleting {" + ",".join(deleted) + "}"
        lines.append(f"hypothesis: FAIL {hyp.u} vs {hyp.v} ({why})")
    _emit(args, doc, lines)
    return EXIT_OK if violation is None and hyp is None else EXIT_NEGATIVE


def cmd_deduce(args) -> int:
    system = deduction.IdentitySystem.load(args.sigma_file)
    u, v = words.parse_word(args.source), words.parse_word(args.target)
    result = deduction.derive(u, v, system, _bounds(args))
    if isinstance(result, deduction.Certificate):
        if not deduction.check_certificate(result, system):
            raise RuntimeError("derived certificate failed replay")
        doc = {"status": "derived", "certificate": result.to_dict()}
        lines = [f"derived {u} = {v} in {len(result)} step(s)"]
        for i, step in enumerate(result.steps):
            ident = system[step.identity_index]
            lines.append(
                f"  {result.words[i]} -> {result.words[i + 1]}  "
                f"[#{step.identity_index} {ident} {step.direction.value}, "
                f"a={step.a}, b={step.b}, xi={step.xi}]"
            )
        lines.append("certificate replayed: ok")
        _emit(args, doc, lines)
        return EXIT_OK
    status = "complete" if result.complete else "incomplete"
    doc = {
        "status": "not_found",
        "complete": result.complete,
        "reason": result.reason,
        "visited": result.visited,
    }
    _emit(args, doc, [f"not found ({status}: {result.reason}, visited {result.visited})"])
    return EXIT_NEGATIVE


def _lattice_from_spec(spec: str, cap: int) -> lattice_terms.FiniteLattice:
    kind, _, size = spec.partition(":")
    if kind != "part" or not size.isdigit():
        raise UsageError(f"lattice spec must look like part:N, got {spec!r}")
    n = int(size)
    if not 1 <= n <= cap:
        raise UsageError(f"part:{n} outside 1..{cap}")
    return lattice_terms.partition_lattice("abcdefgh"[:n] if n <= 8 else [f"e{i}" for i in range(n)], cap)


def cmd_lattice_check(args) -> int:
    lattice = _lattice_from_spec(args.lattice, args.cap)
    identity = lattice_terms.parse_identity(args.identity)
    try:
        cx = lattice_terms.check_identity(identity, lattice, args.budget)
    except lattice_terms.BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    if cx is None:
        _emit(args, {"identity": str(identity), "lattice": args.lattice, "holds": True},
              [f"{identity} holds in {args.lattice}"])
        return EXIT_OK
    doc = {
        "identity": str(identity),
        "lattice": args.lattice,
        "holds": False,
        "assignment": {k: str(p) for k, p in cx.assignment.items()},
        "lhs_value": str(cx.lhs_value),
        "rhs_value": str(cx.rhs_value),
    }
    lines = [f"{identity} fails in {args.lattice}"]
    lines += [f"  {k} = {p}" for k, p in cx.assignment.items()]
    lines += [f"  lhs = {cx.lhs_value}", f"  rhs = {cx.rhs_value}"]
    _emit(args, doc, lines)
    return EXIT_NEGATIVE


def _report_lines(report: variety_bridge.VerificationReport, what: str) -> List[str]:
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"{what}: {report.n_passed}/{report.n_cases} {verdict}"]
    for f in report.failures:
        lines.append(f"  {f.label}: expected {f.expected}, got {f.got}")
    return lines


def cmd_verify(args) -> int:
    if args.which == "ideals":
        if args.size is None or args.split is None:
            raise UsageError("verify ideals needs --size and --split")
        if not 1 <= args.split < args.size:
            raise UsageError("--split must lie strictly between 0 and --size")
        labels = [f"e{i}" for i in range(args.size)] if args.size > 8 else list("abcdefgh"[: args.size])
        alpha = partitions.Partition.from_blocks(labels, [labels[: args.split], labels[args.split:]])
        start = time.perf_counter()
        failures = partitions.verify_ideal_isomorphism(alpha, cap=max(args.cap, args.size))
        size = len(partitions.ideal_split(alpha).ideal(cap=max(args.cap, args.size)))
        report = variety_bridge.VerificationReport(
            "ideals", size, [variety_bridge.CaseFailure("ideal", "isomorphism", f) for f in failures],
            time.perf_counter() - start)
        doc = report.to_dict()
        doc.update({"alpha": str(alpha), "ideal_size": size})
        lines = [f"alpha = {alpha}: {size}-element ideal"] + _report_lines(report, "ideal isomorphism")
    else:
        if args.n is None:
            raise UsageError(f"verify {args.which} needs --n")
        if args.which == "antihom" and args.n > 3 and not args.force:
            raise UsageError("antihom beyond --n 3 needs --force")
        context = _context(args.n)
        if args.which == "surjectivity":
            report = variety_bridge.verify_surjectivity(context, _bounds(args))
        else:
            report = variety_bridge.verify_antihomomorphism(context, _bounds(args))
        doc = report.to_dict()
        doc["antichain"] = [str(w) for w in context.words]
        lines = ["A = " + ", ".join(str(w) for w in context.words)]
        lines += _report_lines(report, args.which)
    _emit(args, doc, lines)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_falsify(args) -> int:
    identity = lattice_terms.parse_identity(args.identity)
    try:
        result = variety_bridge.falsify_in_oc(
            identity, args.max_n, _bounds(args), args.budget, args.verify_antihom)
    except variety_bridge.TrivialIdentityError as exc:
        print(f"rejected: {exc} (free-lattice equality by Whitman's condition)", file=sys.stderr)
        return EXIT_USAGE
    except lattice_terms.BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(result, variety_bridge.NotFoundUpTo):
        _emit(args, {"identity": str(identity), "status": "not_found", "max_n": result.max_n},
              [f"no counterexample in Part(A_n) for n <= {result.max_n}"])
        return EXIT_NEGATIVE
    doc = result.to_dict(include_timings=args.timings)
    lines = [
        f"identity: {result.identity}",
        f"dual:     {result.dual_identity}",
        f"n = {result.n}, A_n = " + ", ".join(str(w) for w in result.context.words),
    ]
    for name, beta in result.assignment.items():
        system = result.presentations[name].system
        listing = "; ".join(str(i) for i in system) or "(no identities)"
        oc = variety_bridge.verify_overcommutative(result.presentations[name])
        lines.append(f"  {name} -> {beta}")
        lines.append(f"     V_{name}: {listing}  [overcommutative: {oc}, "
                     f"round trip: {result.round_trips[name]}]")
    lines.append(f"dual lhs = {result.lhs_value}")
    lines.append(f"dual rhs = {result.rhs_value}")
    n_certs = sum(len(c) for c in result.generator_certificates.values())
    lines.append(f"generator certificates: {n_certs}, replay ok: {result.certificates_replay()}")
    lines.append(f"verification level: {result.verification_level.value}")
    if args.timings:
        lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in result.timings.items()))
    _emit(args, doc, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("human", "structured"), default="human")
    common.add_argument("--max-word-len", type=int)
    common.add_argument("--max-depth", type=int)
    common.add_argument("--max-visited", type=int)
    common.add_argument("--budget", type=int, default=lattice_terms.DEFAULT_BUDGET,
                        help="maximum number of assignments for exhaustive identity checks")
    common.add_argument("--cap", type=int, default=partitions.DEFAULT_ENUMERATION_CAP,
                        help="largest universe whose partitions may be enumerated")

    parser = argparse.ArgumentParser(prog="ocvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antichain", parents=[common], help="check a word list (or A_n)")
    p.add_argument("--n", type=int)
    p.add_argument("--words", help="comma-separated words, e.g. 'xy,x^2y^2'")
    p.set_defaults(func=cmd_antichain)

    p = sub.add_parser("deduce", parents=[common], help="derive an identity from a system file")
    p.add_argument("sigma_file")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_deduce)

    p = sub.add_parser("lattice-check", parents=[common], help="check a lattice identity in part:N")
    p.add_argument("lattice")
    p.add_argument("identity")
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("verify", parents=[common], help="exhaustive lemma verification")
    p.add_argument("which", choices=("surjectivity", "antihom", "ideals"))
    p.add_argument("--n", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--split", type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("falsify", parents=[common], help="refute a lattice identity in OC")
    p.add_argument("identity")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--verify-antihom", action="store_true",
                   help="also run the depth-1 anti-homomorphism check for the witness n")
    p.add_argument("--timings", action="store_true", help="include wall-clock diagnostics")
    p.set_defaults(func=cmd_falsify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("max_word_len", "max_depth", "max_visited", "budget", "cap"):
        value = getattr(args, flag)
        if value is not None and value < 1:
            parser.error(f"--{flag.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
