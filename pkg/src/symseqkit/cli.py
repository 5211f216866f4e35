"""Command-line interface: ``symseq <command> ...``.

Exit status is 0 on success, 1 on usage or validation errors and 2 when a
check fails; failing checks print a witness and a command reproducing it.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path
from typing import Sequence

from . import species as sp
from .arithprod import boxtimes
from .compose import kleisli_compose
from .interchange import Interchange, Report, check_normality, check_oplax_axioms
from .seqfile import SeqFileError, colour_name, read_seq, write_seq
from .symseq import PointTooLarge, SymSeq, SymSeqError, cardinality_table, check_morphism

NAMED_SPECIES = ("E", "L", "X", "E2")


class UsageError(Exception):
    """Bad arguments or unreadable input; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# operands


def named_species(name: str, truncate: int) -> SymSeq:
    if name == "E":
        return sp.species_E(truncate)
    if name == "L":
        return sp.species_L(truncate)
    if name == "X":
        return sp.species_X()
    if name == "E2":
        return sp.species_E2()
    raise UsageError(f"unknown species {name!r}")


def load(token: str, truncate: int = 4) -> SymSeq:
    """A sequence file path, or one of the named species ``E L X E2``."""
    if token in NAMED_SPECIES and not Path(token).exists():
        return named_species(token, truncate)
    try:
        return read_seq(token)
    except OSError as exc:
        raise UsageError(f"cannot read {token}: {exc.strerror}") from None
    except SeqFileError as exc:
        raise UsageError(f"{token}: {exc}") from None


def _species(token: str, truncate: int) -> sp.Species:
    try:
        return sp.as_species(load(token, truncate))
    except ValueError as exc:
        raise UsageError(f"{token}: {exc}") from None


# ---------------------------------------------------------------------------
# output


def _emit(args, reports: Sequence[Report]) -> int:
    """Print reports; the exit status is 2 if any failed."""
    failed = [r for r in reports if r.status == "fail"]
    for r in reports:
        if args.json:
            rec = r.as_dict()
            if r.status == "fail":
                rec["reproduce"] = args.command_line
            print(json.dumps(rec, sort_keys=True))
        else:
            print(r.line())
    if failed and not args.json:
        print(f"reproduce: {args.command_line}")
    return 2 if failed else 0


def _emit_value(args, check: str, instance: str, value) -> int:
    if args.json:
        print(json.dumps({"check": check, "instance": instance, "status": "pass",
                          "witness": "", "detail": "", "value": value}, sort_keys=True))
    else:
        print(value)
    return 0


def _fmt_key(key) -> str:
    w, x = key
    return "[" + " ".join(colour_name(c) for c in w) + "] -> " + colour_name(x)


def _write(M: SymSeq, path: str, max_arity: int | None) -> None:
    try:
        write_seq(M, path, max_arity)
    except PointTooLarge as exc:
        raise UsageError(f"cannot compute the output: {exc}; lower --max-arity") from None
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    M = load(args.file)
    n = sum(len(g) for g in M.support.values())
    print(f"ok: {len(M.support)} points, {n} elements")
    return 0


def cmd_table(args) -> int:
    M = load(args.file)
    table = cardinality_table(M, args.max_arity)
    for key, (n, orbits) in table.items():
        if args.json:
            print(json.dumps({"point": _fmt_key(key), "elements": n, "orbits": orbits}, sort_keys=True))
        else:
            print(f"{_fmt_key(key)}\t{n}\t{orbits}")
    return 0


def cmd_compose(args) -> int:
    N, M = load(args.N), load(args.M)
    try:
        C = kleisli_compose(N, M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(C, args.output, args.max_arity)
    return 0


def cmd_boxtimes(args) -> int:
    _write(boxtimes(load(args.M1), load(args.M2)), args.output, args.max_arity)
    return 0


def cmd_tau(args) -> int:
    seqs = [load(t) for t in (args.M1, args.N1, args.M2, args.N2)]
    try:
        T = Interchange(*seqs, args.max_arity)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inst = " ".join((args.M1, args.N1, args.M2, args.N2))
    keys, skipped = T.keys()
    reports = []
    bad = check_morphism(T.morphism, keys)
    reports.append(Report("tau equivariant", inst, "fail" if bad else "pass", bad[0] if bad else ""))
    nonbij, skipped2 = T.non_bijective_points()
    detail = f"arity <= {args.max_arity}, {len(set(skipped) | set(skipped2))} points skipped"
    if nonbij:
        key, dn, cn = nonbij[0]
        witness = f"{_fmt_key(key)} domain {dn} codomain {cn}"
        status = "pass" if args.expect_noninvertible else "fail"
        reports.append(Report("tau non-invertible" if args.expect_noninvertible else "tau invertible",
                              inst, status, witness, detail))
    elif args.expect_noninvertible:
        reports.append(Report("tau non-invertible", inst, "fail",
                              "every checked point is a bijection", detail))
    else:
        reports.append(Report("tau invertible", inst, "pass", "", detail))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            for r in reports:
                fh.write((json.dumps(r.as_dict(), sort_keys=True) if args.json else r.line()) + "\n")
    return _emit(args, reports)


def cmd_check_coherence(args) -> int:
    files = sorted(Path(args.seeds).glob("*.seq"))
    if not files:
        raise UsageError(f"no .seq files in {args.seeds}")
    sample = [(f.stem, load(str(f))) for f in files]
    colours = {(tuple(M.outputs), tuple(M.inputs)) for _, M in sample}
    if len(colours) != 1:
        raise UsageError("coherence seeds must share their colour sets")
    outs, ins = colours.pop()
    if len(outs) != 1 or outs != ins:
        raise UsageError("coherence seeds must use one colour for inputs and outputs")
    reports = check_oplax_axioms(sample, args.max_arity, triples=args.triples, seed=args.seed)
    return _emit(args, reports)


def cmd_check_normality(args) -> int:
    M, N = load(args.M), load(args.N)
    try:
        r = check_normality(M, N, args.side, args.max_arity, colours=list(M.outputs))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r.instance = f"{args.M} {args.N} ({r.instance})"
    return _emit(args, [r])


def cmd_species(args) -> int:
    if args.truncate < 0:
        raise UsageError("--truncate must be non-negative")
    _write(named_species(args.name, args.truncate), args.output, None)
    return 0


def cmd_oracle_rectangles(args) -> int:
    F, G = _species(args.F, args.truncate), _species(args.G, args.truncate)
    return _emit_value(args, "rectangles", f"{args.F} {args.G} {args.n}",
                       sp.rectangle_oracle(F, G, args.n))


def cmd_oracle_dh(args) -> int:
    F, G = _species(args.F, args.truncate), _species(args.G, args.truncate)
    return _emit_value(args, "dwyer-hess", f"{args.F} {args.G} {args.n}",
                       sp.dwyer_hess_count(F, G, args.n))


def cmd_oracle_analytic(args) -> int:
    F = _species(args.F, args.truncate)
    return _emit_value(args, "analytic", f"{args.F} {args.k}", sp.analytic_eval(F, args.k))


def cmd_oracle_plethysm(args) -> int:
    G, F = _species(args.G, args.truncate), _species(args.F, args.truncate)
    res = sp.composite_analytic_check(G, F, args.k, args.max_arity)
    witness = "" if res.status != "fail" else f"(G o F)({args.k}) = {res.composite}, G(F({args.k})) = {res.nested}"
    detail = res.detail or f"value {res.composite}"
    return _emit(args, [Report("plethysm", f"{args.G} {args.F} {args.k}", res.status, witness, detail)])


# ---------------------------------------------------------------------------
# parser


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    # subcommands repeat --json; SUPPRESS keeps them from resetting a global flag
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="one JSON record per line")
    p = _Parser(prog="symseq", description="Exact computations with coloured symmetric sequences.")
    p.add_argument("--json", action="store_true", help="one JSON record per line")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="parse and validate a sequence file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("table", parents=[common], help="element and orbit counts per point")
    s.add_argument("file")
    s.add_argument("--max-arity", type=_nonneg)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("compose", parents=[common], help="substitution product N o M")
    s.add_argument("N")
    s.add_argument("M")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--max-arity", type=_nonneg)
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("boxtimes", parents=[common], help="arithmetic product M1 [x] M2")
    s.add_argument("M1")
    s.add_argument("M2")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--max-arity", type=_nonneg)
    s.set_defaults(func=cmd_boxtimes)

    s = sub.add_parser("tau", parents=[common], help="check the interchange map")
    for name in ("M1", "N1", "M2", "N2"):
        s.add_argument(name)
    s.add_argument("--report")
    s.add_argument("--expect-noninvertible", action="store_true")
    s.add_argument("--max-arity", type=_nonneg, default=4)
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("check", help="axiom checks")
    chk = s.add_subparsers(dest="check", required=True, parser_class=_Parser)
    c = chk.add_parser("coherence", parents=[common], help="oplax axioms over a seed sample")
    c.add_argument("--seeds", required=True)
    c.add_argument("--max-arity", type=_nonneg, default=4)
    c.add_argument("--triples", type=_nonneg, help="sample this many triple pairs for associativity")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check_coherence)
    c = chk.add_parser("normality", parents=[common], help="tau with identities in one slot")
    c.add_argument("M")
    c.add_argument("N")
    c.add_argument("--side", choices=("left", "right"), required=True)
    c.add_argument("--max-arity", type=_nonneg, default=4)
    c.set_defaults(func=cmd_check_normality)

    s = sub.add_parser("species", parents=[common], help="write a named species")
    s.add_argument("name", choices=("E", "L", "X"))
    s.add_argument("--truncate", type=int, required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_species)

    s = sub.add_parser("oracle", help="independent counting oracles")
    orc = s.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    for name, func, params in (("rectangles", cmd_oracle_rectangles, ("F", "G", "n")),
                               ("dh", cmd_oracle_dh, ("F", "G", "n")),
                               ("analytic", cmd_oracle_analytic, ("F", "k")),
                               ("plethysm", cmd_oracle_plethysm, ("G", "F", "k"))):
        o = orc.add_parser(name, parents=[common])
        for prm in params:
            o.add_argument(prm, type=_nonneg if prm in ("n", "k") else str)
        o.add_argument("--truncate", type=_nonneg, default=4,
                       help="truncation for the named species E and L")
        if name == "plethysm":
            o.add_argument("--max-arity", type=_nonneg, default=9)
        o.set_defaults(func=func)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.command_line = "symseq " + " ".join(shlex.quote(a) for a in argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"symseq: error: {exc}", file=sys.stderr)
        return 1
    except (SymSeqError, SeqFileError) as exc:
        print(f"symseq: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
