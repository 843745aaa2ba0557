"""Text formats for code files and received / recovered words.

Code file::

    # prodmrc code file
    m n a b q seed
    construction <name>
    grow <rows> <cols>
    <rows of decimals>
    gcol <rows> <cols>
    <rows of decimals>
    symbolic grow
    <rows of entries: 0, 1 or var*var...>
    symbolic gcol
    <rows of entries>
    assignment <count>
    <name> <value>
    ...

Word file: the pattern header ``m n a b`` then m lines of n
whitespace-separated tokens, each a decimal field element or ``?`` for an
erased cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codegen import Assignment, SampledCode, SymbolicMatrix
from .errors import PatternFormatError
from .gfield import Field, FieldMatrix
from .patterns import ErasurePattern, Topology, parse_header
from .recovery import Codeword, ReceivedWord

CODE_MAGIC = "# prodmrc code file"


@dataclass(frozen=True)
class CodeFile:
    topology: Topology
    field: Field
    seed: int
    construction: str
    grow: FieldMatrix
    gcol: FieldMatrix
    grow_symbolic: SymbolicMatrix
    gcol_symbolic: SymbolicMatrix
    assignment: Assignment

    @property
    def G(self) -> FieldMatrix:
        return self.gcol.kron(self.grow)

    @classmethod
    def from_code(cls, code: SampledCode) -> "CodeFile":
        return cls(code.topology, code.field, code.seed, code.construction, code.grow, code.gcol,
                   code.grow_symbolic, code.gcol_symbolic, code.assignment)


def _entry_token(x) -> str:
    if x is None:
        return "0"
    if x == ():
        return "1"
    return "*".join(x)


def _token_entry(tok: str, line: int, col: int):
    if tok == "0":
        return None
    if tok == "1":
        return ()
    parts = tok.split("*")
    if not all(parts):
        raise PatternFormatError(f"bad symbolic entry {tok!r}", line, col)
    return tuple(parts)


def format_code_file(cf: CodeFile) -> str:
    t = cf.topology
    out = [CODE_MAGIC, f"{t.m} {t.n} {t.a} {t.b} {cf.field.q} {cf.seed}", f"construction {cf.construction}"]
    for name, M in (("grow", cf.grow), ("gcol", cf.gcol)):
        out.append(f"{name} {M.rows} {M.cols}")
        out += [" ".join(str(v) for v in row) for row in M.tolist()]
    for name, S in (("grow", cf.grow_symbolic), ("gcol", cf.gcol_symbolic)):
        out.append(f"symbolic {name}")
        out += [" ".join(_entry_token(x) for x in S.row(i)) for i in range(S.rows)]
    names = cf.grow_symbolic.variables() + [v for v in cf.gcol_symbolic.variables()
                                            if v not in set(cf.grow_symbolic.variables())]
    out.append(f"assignment {len(names)}")
    out += [f"{v} {cf.assignment.values[v]}" for v in names]
    return "\n".join(out) + "\n"


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, what: str) -> tuple[str, int]:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        if self.pos >= len(self.lines):
            raise PatternFormatError(f"unexpected end of file, expected {what}", self.pos + 1)
        self.pos += 1
        return self.lines[self.pos - 1].strip(), self.pos


def _ints(line: str, lineno: int, count: int | None = None) -> list[int]:
    toks = line.split()
    if count is not None and len(toks) != count:
        raise PatternFormatError(f"expected {count} integers, found {len(toks)}", lineno)
    try:
        return [int(x) for x in toks]
    except ValueError:
        raise PatternFormatError("expected decimal integers", lineno) from None


def parse_code_file(text: str) -> CodeFile:
    src = _Lines(text)
    line, no = src.next("header")
    if line != CODE_MAGIC:
        raise PatternFormatError("not a code file (missing magic line)", no)
    line, no = src.next("parameters")
    m, n, a, b, q, seed = _ints(line, no, 6)
    try:
        t = Topology(m, n, a, b)
        field = Field(q)
    except ValueError as exc:
        raise PatternFormatError(str(exc), no) from None
    line, no = src.next("construction")
    if not line.startswith("construction "):
        raise PatternFormatError("expected 'construction <name>'", no)
    construction = line.split(None, 1)[1]
    numeric = {}
    for name in ("grow", "gcol"):
        line, no = src.next(name)
        head = line.split()
        if len(head) != 3 or head[0] != name:
            raise PatternFormatError(f"expected '{name} <rows> <cols>'", no)
        r, c = int(head[1]), int(head[2])
        rows = [_ints(src.next(f"{name} row")[0], src.pos, c) for _ in range(r)]
        numeric[name] = field.matrix(rows, shape=(r, c))
    symbolic = {}
    for name in ("grow", "gcol"):
        line, no = src.next(f"symbolic {name}")
        if line != f"symbolic {name}":
            raise PatternFormatError(f"expected 'symbolic {name}'", no)
        r, c = numeric[name].shape
        rows = []
        for _ in range(r):
            row_line, row_no = src.next(f"symbolic {name} row")
            toks = row_line.split()
            if len(toks) != c:
                raise PatternFormatError(f"expected {c} entries", row_no)
            rows.append([_token_entry(tk, row_no, k + 1) for k, tk in enumerate(toks)])
        symbolic[name] = SymbolicMatrix(rows, c)
    line, no = src.next("assignment")
    head = line.split()
    if len(head) != 2 or head[0] != "assignment":
        raise PatternFormatError("expected 'assignment <count>'", no)
    values = {}
    for _ in range(int(head[1])):
        row_line, row_no = src.next("assignment entry")
        parts = row_line.split()
        if len(parts) != 2:
            raise PatternFormatError("expected '<name> <value>'", row_no)
        values[parts[0]] = int(parts[1]) % field.q
    assignment = Assignment(values, field, seed)
    for name in ("grow", "gcol"):
        try:
            evaluated = symbolic[name].evaluate(field, values)
        except KeyError as exc:
            raise PatternFormatError(f"variable {exc.args[0]} has no assigned value") from None
        if evaluated != numeric[name]:
            raise PatternFormatError(f"numeric {name} disagrees with its symbolic form under the assignment")
    if numeric["grow"].cols != n or numeric["gcol"].cols != m:
        raise PatternFormatError("generator sizes do not match the grid")
    return CodeFile(t, field, seed, construction, numeric["grow"], numeric["gcol"],
                    symbolic["grow"], symbolic["gcol"], assignment)


def format_word(topology: Topology, values: np.ndarray, erased: ErasurePattern | None = None) -> str:
    t = topology
    lines = [f"{t.m} {t.n} {t.a} {t.b}"]
    for i in range(t.m):
        toks = []
        for j in range(t.n):
            if erased is not None and (i + 1, j + 1) in erased.erased:
                toks.append("?")
            else:
                toks.append(str(int(values[i, j])))
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def format_received(r: ReceivedWord) -> str:
    return format_word(r.topology, r.values, r.erasures)


def format_codeword(c: Codeword) -> str:
    return format_word(c.topology, c.values)


def parse_received(text: str, field: Field | None = None) -> ReceivedWord:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PatternFormatError("empty input", 1)
    t = parse_header(lines[0])
    if len(lines) - 1 != t.m:
        raise PatternFormatError(f"expected {t.m} rows of values, found {len(lines) - 1}", len(lines))
    vals = np.zeros((t.m, t.n), dtype=object)
    erased = []
    for i, raw in enumerate(lines[1:], start=1):
        toks = raw.split()
        if len(toks) != t.n:
            raise PatternFormatError(f"expected {t.n} entries, found {len(toks)}", i + 1)
        for j, tok in enumerate(toks, start=1):
            if tok == "?":
                erased.append((i, j))
                continue
            try:
                v = int(tok)
            except ValueError:
                raise PatternFormatError(f"bad entry {tok!r}", i + 1, j) from None
            if v < 0 or (field is not None and v >= field.q):
                raise PatternFormatError(f"entry {v} is not a field element", i + 1, j)
            vals[i - 1, j - 1] = v
    if field is not None:
        vals = field.array(vals)
    return ReceivedWord(t, vals, ErasurePattern(t, frozenset(erased)))


def parse_codeword(text: str, field: Field | None = None) -> Codeword:
    r = parse_received(text, field)
    if not r.erasures.is_empty():
        raise PatternFormatError("codeword file contains erased cells")
    return Codeword(r.topology, r.values)
