"""Lexer and recursive-descent parser for ``.qds`` expressions and scripts.

Expression grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := ["-"] atom ["^" ["-"] INT]
    atom   := INT | "q" | "f" INT | NAME | "(" expr ")"

Script statements, one per line (``#`` starts a comment; newlines inside
parentheses are ignored)::

    order INT
    ring exact | ring mod INT
    let NAME = expr
    let NAME = extract(NAME, INT, INT)
    let NAME = reduce(NAME, INT)
    assert expr (== | =mod= INT) expr [upto INT]
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ast as A

KEYWORDS = frozenset(
    {"order", "ring", "exact", "mod", "let", "extract", "reduce", "assert", "upto"}
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<int>\d+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<modeq>=mod=)
  | (?P<eqeq>==)
  | (?P<op>[-+*/^(),=])
    """,
    re.VERBOSE,
)
_ETA_RE = re.compile(r"f(\d+)\Z")


class DslError(Exception):
    """Base for parse and evaluation errors; carries a byte span."""

    def __init__(self, message: str, span=(0, 0), line: int | None = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.line = line

    @property
    def offset(self) -> int:
        return self.span[0]

    def format(self, source: str) -> str:
        """Message plus the offending line with a caret under the span."""
        raw = source.encode("utf-8")
        start = min(self.span[0], len(raw))
        line_start = raw.rfind(b"\n", 0, start) + 1
        line_end = raw.find(b"\n", start)
        if line_end < 0:
            line_end = len(raw)
        text = raw[line_start:line_end].decode("utf-8", "replace")
        col = len(raw[line_start:start].decode("utf-8", "replace"))
        width = max(1, min(self.span[1], line_end) - start)
        lineno = raw.count(b"\n", 0, start) + 1
        where = f"line {lineno}, offset {self.span[0]}"
        return f"error: {self.message} ({where})\n  {text}\n  {' ' * col}{'^' * width}"

    def __str__(self):
        where = f" at line {self.line}" if self.line else ""
        return f"{self.message}{where} (offset {self.span[0]})"


class ParseError(DslError):
    def __init__(self, message, span=(0, 0), expected=(), line=None):
        if expected:
            message = f"{message}; expected {', '.join(sorted(expected))}"
        super().__init__(message, span, line)
        self.expected = frozenset(expected)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, eta, q, kw, op, eqeq, modeq, newline, eof
    text: str
    start: int
    end: int
    line: int

    @property
    def span(self):
        return (self.start, self.end)


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens; offsets are UTF-8 byte positions."""
    tokens = []
    pos = 0
    bpos = 0
    line = 1
    depth = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            ch = source[pos]
            width = len(ch.encode("utf-8"))
            raise ParseError(f"unexpected character {ch!r}", (bpos, bpos + width), line=line)
        kind = m.lastgroup
        text = m.group()
        nbytes = len(text.encode("utf-8"))
        start, end = bpos, bpos + nbytes
        if kind == "newline":
            if depth == 0:
                tokens.append(Token("newline", text, start, end, line))
            line += 1
        elif kind == "word":
            if text == "q":
                kind = "q"
            elif _ETA_RE.match(text):
                kind = "eta"
            elif text in KEYWORDS:
                kind = "kw"
            else:
                kind = "name"
            tokens.append(Token(kind, text, start, end, line))
        elif kind not in ("ws", "comment"):
            if text == "(":
                depth += 1
            elif text == ")":
                depth = max(0, depth - 1)
            tokens.append(Token(kind, text, start, end, line))
        pos = m.end()
        bpos = end
    tokens.append(Token("eof", "", bpos, bpos, line))
    return tokens


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "newline":
        return "end of line"
    return repr(tok.text)


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def error(self, expected) -> ParseError:
        t = self.tok
        return ParseError(
            f"unexpected {_describe(t)}", (t.start, max(t.end, t.start + 1)),
            expected, line=t.line,
        )

    def expect(self, kind: str, text: str | None = None, label: str | None = None) -> Token:
        if not self.at(kind, text):
            raise self.error({label or (repr(text) if text else kind)})
        return self.advance()

    def integer(self) -> int:
        return int(self.expect("int", label="integer").text)

    # expressions -----------------------------------------------------------

    def expr(self):
        node = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.advance()
            right = self.term()
            cls = A.Add if op.text == "+" else A.Sub
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def term(self):
        node = self.factor()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.advance()
            right = self.factor()
            cls = A.Mul if op.text == "*" else A.Div
            node = cls(node, right, span=(node.span[0], right.span[1]))
        return node

    def factor(self):
        neg = self.advance() if self.at("op", "-") else None
        node = self.atom()
        if self.at("op", "^"):
            self.advance()
            sign = 1
            if self.at("op", "-"):
                self.advance()
                sign = -1
            tok = self.expect("int", label="integer exponent")
            e = sign * int(tok.text)
            span = (node.span[0], tok.end)
            if isinstance(node, A.EtaSym):
                node = A.EtaSym(node.k, e, span=span)
            elif isinstance(node, A.QPower):
                node = A.QPower(e, span=span)
            else:
                node = A.Pow(node, e, span=span)
        if neg is not None:
            node = A.Neg(node, span=(neg.start, node.span[1]))
        return node

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return A.IntLit(int(t.text), span=t.span)
        if t.kind == "q":
            self.advance()
            return A.QPower(1, span=t.span)
        if t.kind == "eta":
            self.advance()
            k = int(t.text[1:])
            if k < 1:
                raise ParseError("eta subscript must be >= 1", t.span, line=t.line)
            return A.EtaSym(k, 1, span=t.span)
        if t.kind == "name":
            self.advance()
            return A.Name(t.text, span=t.span)
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            close = self.expect("op", ")", label="')'")
            return A.Paren(inner, span=(t.start, close.end))
        raise self.error({"integer", "'q'", "f<k>", "name", "'('"})

    # scripts ---------------------------------------------------------------

    def script(self) -> A.Script:
        stmts = []
        while not self.at("eof"):
            if self.at("newline"):
                self.advance()
                continue
            stmts.append(self.statement())
            if not self.at("eof"):
                self.expect("newline", label="end of line")
        return A.Script(tuple(stmts), self.source)

    def statement(self):
        t = self.tok
        line = t.line
        if self.at("kw", "order"):
            self.advance()
            return A.SetOrder(self.integer(), line)
        if self.at("kw", "ring"):
            self.advance()
            if self.at("kw", "exact"):
                self.advance()
                return A.SetRing(None, line)
            self.expect("kw", "mod", label="'exact' or 'mod'")
            m = self.integer()
            if m < 2:
                raise ParseError("modulus must be >= 2", self.tokens[self.i - 1].span, line=line)
            return A.SetRing(m, line)
        if self.at("kw", "let"):
            self.advance()
            name = self.expect("name", label="name").text
            self.expect("op", "=", label="'='")
            if self.at("kw", "extract"):
                self.advance()
                self.expect("op", "(", label="'('")
                src = self.expect("name", label="name").text
                self.expect("op", ",", label="','")
                r = self.integer()
                self.expect("op", ",", label="','")
                m = self.integer()
                self.expect("op", ")", label="')'")
                return A.Extract(name, src, r, m, line)
            if self.at("kw", "reduce"):
                self.advance()
                self.expect("op", "(", label="'('")
                src = self.expect("name", label="name").text
                self.expect("op", ",", label="','")
                m = self.integer()
                self.expect("op", ")", label="')'")
                return A.Reduce(name, src, m, line)
            return A.Let(name, self.expr(), line)
        if self.at("kw", "assert"):
            start = self.advance().start
            lhs = self.expr()
            modulus = None
            if self.at("eqeq"):
                self.advance()
            elif self.at("modeq"):
                self.advance()
                modulus = self.integer()
            else:
                raise self.error({"'=='", "'=mod='"})
            rhs = self.expr()
            upto = None
            if self.at("kw", "upto"):
                self.advance()
                upto = self.integer()
            end = self.tokens[self.i - 1].end
            text = self.source.encode("utf-8")[start:end].decode("utf-8")
            text = " ".join(text.split())
            if modulus is None:
                return A.AssertEqual(lhs, rhs, upto, line, text)
            return A.AssertCongruent(lhs, rhs, modulus, upto, line, text)
        raise self.error({"'order'", "'ring'", "'let'", "'assert'"})


def parse_expr(text: str):
    p = Parser(text)
    node = p.expr()
    if not p.at("eof"):
        raise p.error({"operator", "end of input"})
    return node


def parse_script(text: str) -> A.Script:
    return Parser(text).script()
