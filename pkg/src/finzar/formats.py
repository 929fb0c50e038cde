"""Text formats: the presentation DSL, lattice blocks, support files, presheaf files.

Presentation grammar::

    gens x, y;
    rel x * y = 0;        # '*' binds tighter than '+'
    rel S(x) <= x + y;

Lattice block (labels are shell-quoted when they contain spaces)::

    lattice
    element 0
    element 'x + y'
    cover 0 'x + y'
    end

Support file: presentation statements, a ``carrier`` lattice block, then
``d <expr> => <label>`` and ``triangle <expr> -> <expr> -> <expr>`` lines.

Presheaf file: ``presheaf set|lattice``, a ``frame`` lattice block, one
``sections`` entry per frame element and one ``restrict <a> <b>`` table per
cover pair a < b listing ``<section over b> <section over a>`` lines.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass

from .dlattice import DistLattice, build_lattice
from .errors import DSLSyntaxError, DuplicateGenerator, UnknownSymbol
from .sheaf import FinitePresheaf, carrier, from_cover_tables
from .support import SupportDatum
from .ttlattice import ONE, ZERO, Gen, ObjExpr, Rel, Shift, Sum, Tensor, TTPresentation

# ------------------------------------------------------------------ tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # ident, num, op, eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>\d+)
  | (?P<op><=|[*+(),;=])
""", re.VERBOSE)


def tokenize(text: str, line: int = 1, col: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "newline":
            line, col = line + 1, 1
        else:
            if kind not in ("space", "comment"):
                out.append(Token(kind, m.group(), line, col))
            col += len(m.group())
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, tokens, generators=None):
        self.toks = tokens
        self.i = 0
        self.generators = generators

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DSLSyntaxError(f"{message}, found {found}", tok.line, tok.col)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def end_statement(self):
        if not self.accept(";") and self.tok.kind != "eof":
            self.error("expected ';'")

    def expr(self) -> ObjExpr:
        e = self.term()
        while self.accept("+"):
            e = Sum(e, self.term())
        return e

    def term(self) -> ObjExpr:
        e = self.atom()
        while self.accept("*"):
            e = Tensor(e, self.atom())
        return e

    def atom(self) -> ObjExpr:
        tok = self.tok
        if tok.kind == "num":
            if tok.text not in ("0", "1"):
                self.error("only the constants 0 and 1 are allowed")
            self.i += 1
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "S" and self.tok.text == "(":
                self.i += 1
                e = self.expr()
                self.expect(")")
                return Shift(e)
            if self.generators is not None and tok.text not in self.generators:
                raise UnknownSymbol(tok.text, tok.line, tok.col)
            return Gen(tok.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected an expression")

    def presentation(self) -> TTPresentation:
        tok = self.tok
        if tok.text != "gens" or tok.kind != "ident":
            self.error("expected 'gens'")
        self.i += 1
        gens: list[str] = []
        if self.tok.kind == "ident":
            while True:
                g = self.tok
                if g.kind != "ident" or g.text in ("gens", "rel"):
                    self.error("expected a generator name")
                if g.text in gens:
                    raise DuplicateGenerator(
                        f"generator {g.text!r} declared twice (line {g.line}, column {g.col})")
                gens.append(g.text)
                self.i += 1
                if not self.accept(","):
                    break
        self.end_statement()
        self.generators = set(gens)
        rels = []
        while self.tok.kind != "eof":
            start = self.tok
            if start.text != "rel":
                self.error("expected 'rel'")
            self.i += 1
            lhs = self.expr()
            op = self.tok
            if op.text not in ("=", "<="):
                self.error("expected '=' or '<='")
            self.i += 1
            rhs = self.expr()
            rels.append(Rel(lhs, rhs, op.text, (start.line, start.col)))
            self.end_statement()
        return TTPresentation(tuple(gens), tuple(rels))


def parse_presentation(text: str, line: int = 1) -> TTPresentation:
    """Parse the presentation DSL; errors carry 1-based line and column."""
    return _Parser(tokenize(text, line)).presentation()


def parse_expression(text: str, generators=None, line: int = 1, col: int = 1) -> ObjExpr:
    p = _Parser(tokenize(text, line, col), set(generators) if generators is not None else None)
    e = p.expr()
    if p.tok.kind != "eof":
        p.error("unexpected input after expression")
    return e


def serialize_presentation(P: TTPresentation) -> str:
    return str(P) + "\n"


# -------------------------------------------------------------- lattice blocks

def _split(line: str, lineno: int) -> list[str]:
    try:
        return shlex.split(line, comments=True)
    except ValueError as exc:
        raise DSLSyntaxError(str(exc), lineno, 1) from None


def _q(label: str) -> str:
    return shlex.quote(label)


def _lattice_block(lines, k, opener="lattice"):
    """Read a lattice block starting after the opener line; returns (L, next index)."""
    elements, covers = [], []
    while k < len(lines):
        lineno, words = lines[k]
        k += 1
        if not words:
            continue
        head = words[0]
        if head == "end":
            return build_lattice(elements, covers, closure=True), k
        if head == "element" and len(words) == 2:
            if words[1] in elements:
                raise DSLSyntaxError(f"element {words[1]!r} listed twice", lineno, 1)
            elements.append(words[1])
        elif head == "cover" and len(words) == 3:
            for w in words[1:]:
                if w not in elements:
                    raise UnknownSymbol(w, lineno, 1)
            covers.append((words[1], words[2]))
        else:
            raise DSLSyntaxError(f"unexpected line in {opener} block: {' '.join(words)!r}",
                                 lineno, 1)
    raise DSLSyntaxError(f"{opener} block is not closed with 'end'", lines[-1][0] if lines else 1, 1)


def _numbered(text: str):
    return [(n, _split(raw, n)) for n, raw in enumerate(text.splitlines(), start=1)]


def parse_lattice(text: str) -> DistLattice:
    lines = _numbered(text)
    k = 0
    while k < len(lines) and not lines[k][1]:
        k += 1
    if k == len(lines) or lines[k][1] != ["lattice"]:
        raise DSLSyntaxError("expected 'lattice'", lines[k][0] if k < len(lines) else 1, 1)
    L, k = _lattice_block(lines, k + 1)
    for n, words in lines[k:]:
        if words:
            raise DSLSyntaxError("unexpected input after lattice block", n, 1)
    return L


def serialize_lattice(L: DistLattice, opener="lattice", indent="") -> str:
    out = [opener]
    out += [f"{indent}element {_q(x)}" for x in L.elements]
    out += [f"{indent}cover {_q(a)} {_q(b)}" for a, b in L.covers()]
    out.append("end")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------- support files

_PRES_HEAD = re.compile(r"^\s*(gens|rel)\b")


def parse_support(text: str) -> SupportDatum:
    raw = text.splitlines()
    pres_lines = [""] * len(raw)
    rest = []
    in_statement = False
    for n, line in enumerate(raw):
        stripped = line.split("#", 1)[0]
        if in_statement or _PRES_HEAD.match(line):
            pres_lines[n] = line
            in_statement = not stripped.rstrip().endswith(";") and bool(stripped.strip())
        else:
            rest.append((n + 1, line))
    P = parse_presentation("\n".join(pres_lines))
    lines = [(n, _split(line, n)) for n, line in rest]
    carrier_lattice = None
    d: dict[ObjExpr, str] = {}
    triangles = []
    k = 0
    while k < len(lines):
        n, words = lines[k]
        if not words:
            k += 1
            continue
        line = dict(rest)[n].split("#", 1)[0]
        if words == ["carrier"]:
            carrier_lattice, k = _lattice_block(lines, k + 1, "carrier")
            continue
        k += 1
        if words[0] == "d":
            body = line.split("d", 1)[1]
            if "=>" not in body:
                raise DSLSyntaxError("expected 'd <expression> => <label>'", n, 1)
            lhs, rhs = body.rsplit("=>", 1)
            e = parse_expression(lhs, P.generators, n, line.index("d") + 2)
            label = _split(rhs, n)
            if len(label) != 1:
                raise DSLSyntaxError("expected a single carrier label after '=>'", n, 1)
            if e in d:
                raise DSLSyntaxError(f"d({e}) assigned twice", n, 1)
            d[e] = label[0]
        elif words[0] == "triangle":
            parts = line.split("triangle", 1)[1].split("->")
            if len(parts) != 3:
                raise DSLSyntaxError("expected 'triangle a -> b -> c'", n, 1)
            triangles.append(tuple(parse_expression(p, P.generators, n, 1) for p in parts))
        else:
            raise DSLSyntaxError(f"unexpected line {words[0]!r} in support file", n, 1)
    if carrier_lattice is None:
        raise DSLSyntaxError("support file has no carrier block", len(raw) or 1, 1)
    return SupportDatum(P, carrier_lattice, d, tuple(triangles))


def serialize_support(s: SupportDatum) -> str:
    out = [str(s.presentation), serialize_lattice(s.carrier, "carrier", "  ").rstrip("\n")]
    out += [f"d {e} => {_q(v)}" for e, v in s.d.items()]
    out += [f"triangle {a} -> {b} -> {c}" for a, b, c in s.triangles]
    return "\n".join(out) + "\n"


# -------------------------------------------------------------- presheaf files

def parse_presheaf(text: str) -> FinitePresheaf:
    lines = _numbered(text)
    k = 0
    while k < len(lines) and not lines[k][1]:
        k += 1
    if k == len(lines) or len(lines[k][1]) != 2 or lines[k][1][0] != "presheaf":
        raise DSLSyntaxError("expected 'presheaf set' or 'presheaf lattice'",
                             lines[k][0] if k < len(lines) else 1, 1)
    kind = lines[k][1][1]
    if kind not in ("set", "lattice"):
        raise DSLSyntaxError(f"unknown value kind {kind!r}", lines[k][0], 10)
    k += 1
    frame = None
    sections: dict[str, object] = {}
    tables: dict[tuple[str, str], dict[str, str]] = {}
    while k < len(lines):
        n, words = lines[k]
        if not words:
            k += 1
            continue
        head = words[0]
        if words == ["frame"]:
            frame, k = _lattice_block(lines, k + 1, "frame")
            continue
        if frame is None:
            raise DSLSyntaxError("the frame block must come first", n, 1)
        if head == "sections" and len(words) >= 2:
            label = words[1]
            if label not in frame:
                raise UnknownSymbol(label, n, 1)
            if label in sections:
                raise DSLSyntaxError(f"sections over {label!r} given twice", n, 1)
            if kind == "set":
                sections[label] = frozenset(words[2:])
                k += 1
            else:
                if len(words) != 2:
                    raise DSLSyntaxError("lattice sections are given as a block", n, 1)
                sections[label], k = _lattice_block(lines, k + 1, "sections")
            continue
        if head == "restrict" and len(words) == 3:
            a, b = words[1], words[2]
            for w in (a, b):
                if w not in frame:
                    raise UnknownSymbol(w, n, 1)
            if (a, b) not in set(frame.covers()):
                raise DSLSyntaxError(f"{a!r} < {b!r} is not a cover pair of the frame", n, 1)
            table = {}
            k += 1
            while True:
                if k >= len(lines):
                    raise DSLSyntaxError("restrict table is not closed with 'end'", n, 1)
                m, row = lines[k]
                k += 1
                if not row:
                    continue
                if row == ["end"]:
                    break
                if len(row) != 2:
                    raise DSLSyntaxError("expected '<section over b> <section over a>'", m, 1)
                if row[0] in table:
                    raise DSLSyntaxError(f"section {row[0]!r} mapped twice", m, 1)
                table[row[0]] = row[1]
            tables[(a, b)] = table
            continue
        raise DSLSyntaxError(f"unexpected line {head!r} in presheaf file", n, 1)
    if frame is None:
        raise DSLSyntaxError("presheaf file has no frame block", len(lines) or 1, 1)
    for x in frame:
        if x not in sections:
            raise DSLSyntaxError(f"no sections given over {x!r}", len(lines) or 1, 1)
    for a, b in frame.covers():
        if (a, b) not in tables:
            raise DSLSyntaxError(f"no restriction table for the cover {a!r} < {b!r}",
                                 len(lines) or 1, 1)
        # entries must mention existing sections; totality is a functoriality question
        for s, t in tables[(a, b)].items():
            if s not in set(carrier(sections[b])) or t not in set(carrier(sections[a])):
                raise DSLSyntaxError(
                    f"restrict {a} {b}: {s!r} -> {t!r} mentions an unknown section",
                    len(lines) or 1, 1)
    return from_cover_tables(frame, kind, sections, tables)


def serialize_presheaf(F: FinitePresheaf) -> str:
    out = [f"presheaf {F.kind}", serialize_lattice(F.frame, "frame", "  ").rstrip("\n")]
    for x in F.frame:
        S = F.sections[x]
        if F.kind == "set":
            out.append(" ".join(["sections", _q(x)] + [_q(v) for v in sorted(S)]))
        else:
            out.append(serialize_lattice(S, f"sections {_q(x)}", "  ").rstrip("\n"))
    for (a, b), table in F.cover_tables().items():
        out.append(f"restrict {_q(a)} {_q(b)}")
        src = carrier(F.sections[b])
        out += [f"  {_q(s)} {_q(table[s])}" for s in src if s in table]
        out.append("end")
    return "\n".join(out) + "\n"
