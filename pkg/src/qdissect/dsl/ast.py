"""Syntax tree for eta-quotient expressions and proof scripts."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, is_dataclass, replace

Span = tuple  # (start, end) byte offsets into the source


def _span():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    span: Span = _span()


@dataclass(frozen=True)
class QPower:
    exp: int
    span: Span = _span()


@dataclass(frozen=True)
class EtaSym:
    k: int
    exp: int = 1
    span: Span = _span()


@dataclass(frozen=True)
class Name:
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Div:
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: Span = _span()


@dataclass(frozen=True)
class Paren:
    inner: object
    span: Span = _span()


Expr = IntLit | QPower | EtaSym | Name | Neg | Add | Sub | Mul | Div | Pow | Paren

_BINOPS = {Add: " + ", Sub: " - ", Mul: "*", Div: "/"}
_ATOMS = (IntLit, Name, Paren)


def strip_parens(node):
    """Drop :class:`Paren` wrappers, keeping everything else."""
    if isinstance(node, Paren):
        return strip_parens(node.inner)
    if not is_dataclass(node):
        return node
    changes = {
        f.name: strip_parens(getattr(node, f.name))
        for f in fields(node)
        if is_dataclass(getattr(node, f.name))
    }
    return replace(node, **changes) if changes else node


def to_text(node) -> str:
    """Print ``node`` so that parsing the text gives the same tree back
    (up to parentheses inserted where precedence demands them)."""
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, QPower):
        return "q" if node.exp == 1 else f"q^{node.exp}"
    if isinstance(node, EtaSym):
        return f"f{node.k}" if node.exp == 1 else f"f{node.k}^{node.exp}"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Paren):
        return f"({to_text(node.inner)})"
    if isinstance(node, Neg):
        inner = node.operand
        ok = isinstance(inner, _ATOMS + (QPower, EtaSym, Pow))
        return "-" + (to_text(inner) if ok else f"({to_text(inner)})")
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, _ATOMS):
            base = f"({base})"
        return f"{base}^{node.exp}"
    op = _BINOPS.get(type(node))
    if op is None:
        raise TypeError(f"not an expression node: {node!r}")
    left, right = to_text(node.left), to_text(node.right)
    if isinstance(node, (Add, Sub)):
        if isinstance(node.right, (Add, Sub)):
            right = f"({right})"
    else:
        if isinstance(node.left, (Add, Sub)):
            left = f"({left})"
        if isinstance(node.right, (Add, Sub, Mul, Div)):
            right = f"({right})"
    return left + op + right


# ---------------------------------------------------------------------------
# script statements


@dataclass(frozen=True)
class SetOrder:
    n: int
    line: int = 0


@dataclass(frozen=True)
class SetRing:
    modulus: int | None
    line: int = 0


@dataclass(frozen=True)
class Let:
    name: str
    expr: object
    line: int = 0


@dataclass(frozen=True)
class Extract:
    name: str
    source: str
    r: int
    m: int
    line: int = 0


@dataclass(frozen=True)
class Reduce:
    name: str
    source: str
    modulus: int
    line: int = 0


@dataclass(frozen=True)
class AssertEqual:
    lhs: object
    rhs: object
    upto: int | None = None
    line: int = 0
    text: str = ""


@dataclass(frozen=True)
class AssertCongruent:
    lhs: object
    rhs: object
    modulus: int
    upto: int | None = None
    line: int = 0
    text: str = ""


@dataclass(frozen=True)
class Script:
    statements: tuple
    source: str = field(default="", compare=False, repr=False)
