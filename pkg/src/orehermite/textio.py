"""Text syntax for rational functions, Ore polynomials and matrix files.

Expressions use integer literals, ``z``, ``D``, ``+ - * / ^`` and
parentheses. Products follow the ring's commutation rule, so ``D*z`` and
``z*D`` differ. Division is only allowed by expressions free of ``D``.

A matrix file holds one or more blocks::

    ring differential
    rows 2 cols 2
    D; z
    0; (z + 1)/(2*z) + D

``#`` starts a comment line. Later blocks may omit the ``ring`` line and
inherit the previous one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .matrix import OreMatrix
from .ore import OrePoly
from .scalar import RatFun, RingSpec


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    kind: str    # INT, Z, D, OP, LPAR, RPAR, END
    text: str
    col: int     # 1-based


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([-+*/^])|(\()|(\))|(\S))")


def tokenize(text: str, line: int | None = None, col0: int = 1) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:      # only trailing whitespace left
            break
        pos = m.end()
        col = m.start(m.lastindex) + col0
        kind = ("INT", "NAME", "OP", "LPAR", "RPAR", "BAD")[m.lastindex - 1]
        text_ = m.group(m.lastindex)
        if kind == "NAME":
            if text_ not in ("z", "D"):
                raise ParseError(f"unknown symbol {text_!r}", line, col)
            kind = "Z" if text_ == "z" else "D"
        elif kind == "BAD":
            raise ParseError(f"unexpected character {text_!r}", line, col)
        tok = Token(kind, text_, col)
        toks.append(tok)
    toks.append(Token("END", "", len(text) + col0))
    return toks


class _Parser:
    """Recursive descent:

    expr  := term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := ('-'|'+') unary | power
    power := atom ('^' INT)?
    atom  := INT | 'z' | 'D' | '(' expr ')'
    """

    def __init__(self, text: str, ring: RingSpec, line: int | None, col0: int):
        self.toks = tokenize(text, line, col0)
        self.i = 0
        self.ring = ring
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: Token, what: str):
        shown = "end of input" if tok.kind == "END" else repr(tok.text)
        raise ParseError(f"unexpected {shown}; expected {what}", self.line, tok.col)

    def parse(self) -> OrePoly:
        v = self.expr()
        if self.peek().kind != "END":
            self.fail(self.peek(), "an operator or end of entry")
        return v

    def expr(self) -> OrePoly:
        v = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.take().text
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> OrePoly:
        v = self.unary()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            tok = self.take()
            w = self.unary()
            if tok.text == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ParseError("division by zero", self.line, tok.col)
                if w.degree > 0:
                    raise ParseError("division by an expression containing D", self.line, tok.col)
                v = v.scale_right(w.lc().inv())
        return v

    def unary(self) -> OrePoly:
        t = self.peek()
        if t.kind == "OP" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> OrePoly:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "INT":
                self.fail(t, "a non-negative integer exponent")
            return base ** int(t.text)
        return base

    def atom(self) -> OrePoly:
        t = self.take()
        ring = self.ring
        if t.kind == "INT":
            return OrePoly.const(int(t.text), ring)
        if t.kind == "Z":
            return OrePoly.const(RatFun.z(), ring)
        if t.kind == "D":
            return OrePoly.gen(ring)
        if t.kind == "LPAR":
            v = self.expr()
            close = self.take()
            if close.kind != "RPAR":
                self.fail(close, "')'")
            return v
        self.fail(t, "a number, 'z', 'D' or '('")


def parse_orepoly(text: str, ring: RingSpec, line: int | None = None, col0: int = 1) -> OrePoly:
    if not text.strip():
        raise ParseError("empty entry", line, col0)
    return _Parser(text, ring, line, col0).parse()


def parse_ratfun(text: str, line: int | None = None, col0: int = 1) -> RatFun:
    p = parse_orepoly(text, RingSpec.differential(), line, col0)
    if p.degree > 0:
        raise ParseError("D is not allowed in a rational function", line, col0)
    return p.coeff(0)


# ring header -------------------------------------------------------------

_CUSTOM_RE = re.compile(r"sigma=(.+?)\s+delta=(.+)$")


def parse_ring(line_text: str, line: int | None = None) -> RingSpec:
    body = line_text.strip()
    if not body.startswith("ring"):
        raise ParseError("expected a 'ring' header", line, 1)
    rest = body[4:].strip()
    kind, _, args = rest.partition(" ")
    args = args.strip()
    if kind in ("differential", "shift"):
        if args:
            raise ParseError(f"ring {kind} takes no parameters", line)
        return RingSpec.differential() if kind == "differential" else RingSpec.shift()
    if kind == "qshift":
        m = re.fullmatch(r"q=(-?\d+(?:/\d+)?)", args)
        if m is None:
            raise ParseError("qshift needs q=<rational>", line)
        try:
            return RingSpec.qshift(Fraction(m.group(1)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), line) from None
    if kind == "custom":
        m = _CUSTOM_RE.match(args)
        if m is None:
            raise ParseError("custom ring needs sigma=<ratfun> delta=<ratfun>", line)
        offset = len(line_text) - len(line_text.lstrip()) + 1 + body.index(args)
        sigma = parse_ratfun(m.group(1), line, offset + m.start(1))
        delta = parse_ratfun(m.group(2), line, offset + m.start(2))
        try:
            return RingSpec.custom(sigma, delta)
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
    raise ParseError(f"unknown ring kind {kind!r}", line, 1 + line_text.index(kind) if kind else 1)


# files -------------------------------------------------------------------

_DIMS_RE = re.compile(r"rows\s+(\d+)\s+cols\s+(\d+)$")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, raw


def _split_entries(raw: str):
    """Yield (entry_text, 1-based start column) for a ';'-separated row."""
    start = 0
    for k, ch in enumerate(raw + ";"):
        if ch == ";":
            yield raw[start:k], start + 1
            start = k + 1


def parse_matrices(text: str, ring: RingSpec | None = None) -> list:
    """All matrix blocks of a file, in order."""
    lines = list(_content_lines(text))
    out = []
    k = 0
    while k < len(lines):
        no, raw = lines[k]
        if raw.strip().startswith("ring"):
            ring = parse_ring(raw, no)
            k += 1
            if k == len(lines):
                raise ParseError("missing 'rows <m> cols <n>' after ring header", no)
            no, raw = lines[k]
        if ring is None:
            raise ParseError("missing 'ring' header", no, 1)
        m = _DIMS_RE.fullmatch(raw.strip())
        if m is None:
            raise ParseError("expected 'rows <m> cols <n>'", no, 1)
        nr, nc = int(m.group(1)), int(m.group(2))
        k += 1
        rows = []
        for _ in range(nr):
            if k == len(lines):
                raise ParseError(f"expected {nr} rows, found {len(rows)}", no)
            rno, rraw = lines[k]
            entries = list(_split_entries(rraw))
            if len(entries) != nc:
                raise ParseError(f"expected {nc} entries, found {len(entries)}", rno, 1)
            rows.append([parse_orepoly(t, ring, rno, c) for t, c in entries])
            k += 1
        out.append(OreMatrix(rows, ring, nc))
    return out


def parse_matrix(text: str, ring: RingSpec | None = None) -> OreMatrix:
    mats = parse_matrices(text, ring)
    if len(mats) != 1:
        raise ParseError(f"expected exactly one matrix block, found {len(mats)}")
    return mats[0]


def parse_poly_list(text: str, ring: RingSpec | None = None) -> tuple:
    """A ring header (unless ``ring`` is given) followed by one polynomial per line."""
    polys = []
    for no, raw in _content_lines(text):
        if raw.strip().startswith("ring"):
            ring = parse_ring(raw, no)
            continue
        if ring is None:
            raise ParseError("missing 'ring' header", no, 1)
        polys.append(parse_orepoly(raw, ring, no))
    if ring is None:
        raise ParseError("missing 'ring' header")
    return ring, polys


def format_matrix(A: OreMatrix, header: bool = True) -> str:
    lines = [A.ring.header()] if header else []
    lines.append(f"rows {A.nrows} cols {A.ncols}")
    lines += ["; ".join(str(e) for e in row) for row in A.rows]
    return "\n".join(lines) + "\n"
