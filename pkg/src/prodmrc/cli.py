"""Command-line interface: ``mrc check|match|build|encode|recover|verify``.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input
error, 3 data inconsistency (received word is not a codeword restriction).
The default seed is taken from ``MRC_SEED`` when set, else 0.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import gfield, oracle
from .codegen import proof_decomposition, sample_code, sample_code_a2, sample_generic_code
from .errors import (
    BadPartition,
    BadRow,
    InvalidField,
    MRCError,
    NotACodeword,
    NotIrreducible,
    NotRecoverable,
    PatternFormatError,
    TooLarge,
    TooManySubsets,
    UnluckyField,
)
from .formats import CodeFile, format_code_file, format_codeword, format_received, parse_code_file, parse_received
from .gfield import Field
from .matchgraph import (
    HallWitness,
    build_erasure_nonerasure_graph,
    build_rowcol_graph,
    complete_matching,
    default_right_rows,
    neighborhood_check,
)
from .patterns import (
    ErasurePattern,
    Topology,
    enclosing_grid,
    find_extension,
    is_col_irreducible,
    is_regular,
    is_row_irreducible,
    parse_pattern,
    reduce_rowwise,
    row_profiles,
)
from .recovery import decode, encode, erase

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


class InputError(Exception):
    """Bad arguments or unreadable input; mapped to exit code 2."""


def _default_seed() -> int:
    raw = os.environ.get("MRC_SEED")
    if raw is None or not raw.strip():
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"MRC_SEED must be an integer, got {raw!r}") from None


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def _load_pattern(path: str) -> ErasurePattern:
    try:
        return parse_pattern(_read(path))
    except PatternFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _field(q: int) -> Field:
    try:
        return Field(q)
    except InvalidField as exc:
        raise InputError(str(exc)) from None


def _rows_arg(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated row numbers, got {text!r}") from None


def _span(labels) -> str:
    xs = sorted(labels)
    if not xs:
        return "{}"
    if xs == list(range(xs[0], xs[-1] + 1)):
        return f"[{xs[0]}:{xs[-1]}]"
    return "{" + ",".join(map(str, xs)) + "}"


def _set(labels) -> str:
    return "{" + ",".join(map(str, sorted(labels))) + "}"


def _cell(v) -> str:
    return "(" + ",".join(map(str, v)) + ")" if isinstance(v, tuple) else str(v)


def _pattern_line(E: ErasurePattern) -> str:
    t = E.topology
    return f"pattern: {t.m}x{t.n}, a={t.a}, b={t.b}, {len(E)} erasures"


# check

def cmd_check(args, out) -> int:
    E = _load_pattern(args.pattern)
    print(_pattern_line(E), file=out)
    reg = is_regular(E)
    if E.is_empty():
        print("regular (empty)", file=out)
        return EXIT_OK
    if not reg:
        w = reg.witness
        print(f"not regular; witness U={_set(w.rows)} V={_set(w.cols)} "
              f"({reg.erased_in_witness} erasures > bound {reg.bound})", file=out)
        return EXIT_NEGATIVE
    parts = ["regular"]
    R = E
    if is_row_irreducible(E):
        parts.append("row-irreducible")
    else:
        R = reduce_rowwise(E)
        parts.append(f"not row-irreducible (reduces to {len(R)} erasures)")
    if R.is_empty():
        print("; ".join(parts + ["reduces to the empty pattern"]), file=out)
        return EXIT_OK
    g = enclosing_grid(R)
    profiles = row_profiles(R)
    parts.append(f"grid {_span(g.rows)}x{_span(g.cols)}")
    parts.append("r = " + ",".join(str(p.excess) for p in profiles))
    print("; ".join(parts), file=out)
    print(f"column-irreducible: {'yes' if is_col_irreducible(E) else 'no'}", file=out)
    for p in profiles:
        print(f"  row {p.row}: erased {_set(p.support)}, excess {p.excess}", file=out)
    return EXIT_OK


# match

def cmd_match(args, out) -> int:
    E = _load_pattern(args.pattern)
    if not is_row_irreducible(E):
        E = reduce_rowwise(E)
        print(f"note: using the row-wise reduction ({len(E)} erasures)", file=sys.stderr)
    if E.is_empty():
        raise InputError("pattern has no erasures after reduction")
    try:
        if args.ell is not None:
            return _match_rowcol(E, args.ell, args.format, out)
        rows = args.ur if args.ur is not None else list(default_right_rows(E))
        G = build_erasure_nonerasure_graph(E, rows)
    except (BadPartition, BadRow) as exc:
        raise InputError(str(exc)) from None
    if args.format == "dot":
        out.write(G.to_dot("erasures"))
        return EXIT_OK
    print(f"right rows U_R = {_set(rows)}; {len(G.left)} left, {len(G.right)} right, {len(G.edges)} edges", file=out)
    if not G.left:
        print("trivially matched (empty left side)", file=out)
        return EXIT_OK
    result = complete_matching(G)
    if isinstance(result, HallWitness):
        print(f"no complete matching; Hall witness A={_set(_cell(u) for u in result.subset)} "
              f"N(A)={_set(_cell(w) for w in result.neighborhood)}", file=out)
        return EXIT_NEGATIVE
    for u, w in result.pairs.items():
        print(f"  e{_cell(u)} -> {_cell(w)}", file=out)
    print(f"complete matching; V_M = {_set(w[1] for w in result.pairs.values())}", file=out)
    return EXIT_OK


def _match_rowcol(E: ErasurePattern, ell: int, fmt: str, out) -> int:
    if E.topology.a != 1:
        raise InputError("--ell needs a pattern with a=1")
    G = build_rowcol_graph(E, ell)
    if fmt == "dot":
        out.write(G.to_dot("rowcol"))
        return EXIT_OK
    print(f"row {ell}: left {_set(G.left)}, right {_set(G.right)}, {len(G.edges)} edges", file=out)
    for u in G.left:
        print(f"  {u} -- {_set(G.neighbors(u))}", file=out)
    excess = {p.row: p.excess for p in row_profiles(E)}
    try:
        ok = neighborhood_check(G, excess)
    except TooManySubsets as exc:
        raise InputError(str(exc)) from None
    print(f"neighbourhood condition {'holds' if ok else 'fails'}", file=out)
    return EXIT_OK if ok else EXIT_NEGATIVE


# build

def _build_code(E: ErasurePattern, field: Field, seed: int):
    t = E.topology
    if t.a == 1:
        return sample_code(E, field, seed)
    if t.a == 2:
        X = find_extension(E)
        if X is not None:
            return sample_code_a2(X, field, seed)
    return sample_generic_code(E, field, seed)


def cmd_build(args, out) -> int:
    E = _load_pattern(args.pattern)
    field = _field(args.q)
    seed = _default_seed() if args.seed is None else args.seed
    reg = is_regular(E)
    if not reg:
        print(f"not regular; witness {reg.witness}; no code written", file=sys.stderr)
        return EXIT_NEGATIVE
    try:
        code = _build_code(E, field, seed)
    except UnluckyField as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    info = sys.stderr if args.output in (None, "-") else out
    _write(args.output, format_code_file(CodeFile.from_code(code)), out)
    t = E.topology
    print(f"construction {code.construction}; Grow {code.grow.rows}x{code.grow.cols}, "
          f"Gcol {code.gcol.rows}x{code.gcol.cols}; attempts {code.attempts}", file=info)
    print(f"punctured rank {code.punctured_rank} = k = {t.k}", file=info)
    if t.a == 1 and code.plan is not None:
        report = proof_decomposition(code.target, code.plan, field=field, seed=seed, strict=False)
        print(report.summary(), file=info)
    return EXIT_OK


# encode / recover

def _load_code(path: str) -> CodeFile:
    try:
        return parse_code_file(_read(path))
    except PatternFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_encode(args, out) -> int:
    cf = _load_code(args.code)
    t = cf.topology
    seed = _default_seed() if args.seed is None else args.seed
    rng = random.Random(f"message:{seed}")
    msg = [rng.randrange(cf.field.q) for _ in range(t.k)]
    c = encode(cf.G, msg, t)
    if args.pattern is None:
        _write(args.output, format_codeword(c), out)
        return EXIT_OK
    E = _load_pattern(args.pattern)
    if E.topology != t:
        raise InputError(f"pattern topology {E.topology} does not match code topology {t}")
    _write(args.output, format_received(erase(c, E)), out)
    return EXIT_OK


def cmd_recover(args, out) -> int:
    cf = _load_code(args.code)
    try:
        received = parse_received(_read(args.received), cf.field)
    except PatternFormatError as exc:
        raise InputError(f"{args.received}: {exc}") from None
    if received.topology != cf.topology:
        raise InputError(f"received word topology {received.topology} does not match code topology {cf.topology}")
    try:
        c = decode(cf.G, received)
    except NotRecoverable as exc:
        print(f"not recoverable: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except NotACodeword as exc:
        i, j = exc.cell
        index = cf.topology.cell_index(i, j)
        print(f"not a codeword: constraint {index} (cell ({i},{j})) is inconsistent", file=sys.stderr)
        return EXIT_INCONSISTENT
    _write(args.output, format_codeword(c), out)
    return EXIT_OK


# verify

def cmd_verify(args, out) -> int:
    m, n, a, b = args.topology
    try:
        t = Topology(m, n, a, b)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    field = _field(args.q)
    seed = _default_seed() if args.seed is None else args.seed
    try:
        if args.mode == "equivalence":
            report = oracle.verify_equivalence_a1(t, field, seed, jobs=args.jobs, strict=False)
        elif args.mode == "extended":
            report = oracle.verify_extended_a2(t, field, seed, budget=args.budget, jobs=args.jobs, strict=False)
        elif args.mode == "conjecture":
            report = oracle.explore_conjecture_a2(t, field, seed, jobs=args.jobs)
        else:
            report = oracle.verify_mds_consequences(t, field, seed, strict=False)
    except TooLarge as exc:
        raise InputError(f"{exc}; choose a smaller grid") from None
    except (NotIrreducible, ValueError) as exc:
        raise InputError(str(exc)) from None
    if args.out:
        Path(args.out).write_text(report.to_jsonl())
    if args.mode == "conjecture":
        for rec in report.candidates:
            print(f"candidate {rec['pattern']} (reverified: {rec.get('reverified')})", file=out)
    print(report.summary_line(), file=out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrc", description="Maximally recoverable product codes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="regularity and irreducibility of a pattern file")
    c.add_argument("pattern")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("match", help="matching certificates for a pattern")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--ur", type=_rows_arg, help="right rows U_R (comma-separated, a of them)")
    g.add_argument("--ell", type=int, help="row removed in the rows-vs-columns graph (a=1)")
    c.add_argument("--format", choices=("text", "dot"), default="text")
    c.add_argument("pattern")
    c.set_defaults(func=cmd_match)

    c = sub.add_parser("build", help="construct a code recovering a regular pattern")
    c.add_argument("pattern")
    c.add_argument("--q", type=int, default=gfield.DEFAULT_Q, help="field size (prime)")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("-o", "--output", help="code file (default stdout)")
    c.set_defaults(func=cmd_build)

    c = sub.add_parser("encode", help="encode a seeded random message, optionally erasing a pattern")
    c.add_argument("code")
    c.add_argument("--pattern", help="pattern file of cells to erase")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_encode)

    c = sub.add_parser("recover", help="fill in the erased cells of a received word")
    c.add_argument("code")
    c.add_argument("received")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_recover)

    c = sub.add_parser("verify", help="exhaustive oracle runs")
    c.add_argument("--topology", type=int, nargs=4, metavar=("M", "N", "A", "B"), required=True)
    c.add_argument("--mode", choices=("equivalence", "extended", "conjecture", "mds"), required=True)
    c.add_argument("--q", type=int, default=gfield.DEFAULT_Q)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--budget", type=int, default=None, help="extended mode: sample this many base patterns")
    c.add_argument("--out", help="JSON-lines report file")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"mrc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MRCError as exc:
        print(f"mrc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
