"""Evaluate expression trees to series and replay proof scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Mapping

from .. import eta as E
from .. import series as S
from ..series import CoefficientRing, Series
from . import ast as A
from .parser import DslError, parse_expr, parse_script

DEFAULT_ORDER = 500


class EvalError(DslError):
    pass


class ScriptError(DslError):
    pass


def _monomial(node):
    """``(coeff, qpow, {k: e})`` if ``node`` is a product/quotient of eta
    symbols, powers of q and integers (integers only as factors)."""
    if isinstance(node, A.Paren):
        return _monomial(node.inner)
    if isinstance(node, A.EtaSym):
        return 1, 0, {node.k: node.exp}
    if isinstance(node, A.QPower) and node.exp >= 0:
        return 1, node.exp, {}
    if isinstance(node, A.IntLit):
        return node.value, 0, {}
    if isinstance(node, A.Neg):
        inner = _monomial(node.operand)
        return None if inner is None else (-inner[0], inner[1], inner[2])
    if isinstance(node, (A.Mul, A.Div)):
        left, right = _monomial(node.left), _monomial(node.right)
        if left is None or right is None:
            return None
        c, a, ex = left
        c2, a2, ex2 = right
        ex = dict(ex)
        if isinstance(node, A.Div):
            # only pure eta quotients divide without changing the q-power
            if c2 != 1 or a2:
                return None
            for k, e in ex2.items():
                ex[k] = ex.get(k, 0) - e
            return c, a, ex
        for k, e in ex2.items():
            ex[k] = ex.get(k, 0) + e
        return c * c2, a + a2, ex
    return None


def eval_expr(node, ring=S.EXACT, n: int = DEFAULT_ORDER,
              env: Mapping[str, Series] | None = None) -> Series:
    """Evaluate ``node`` (a tree or source text) to a series of order ``n``."""
    ring = S._as_ring(ring)
    if isinstance(node, str):
        node = parse_expr(node)
    env = env or {}

    def ev(nd) -> Series:
        mono = _monomial(nd)
        if mono is not None:
            c, a, ex = mono
            if a > n:
                return S.zeros(ring, n)
            body = E.expand_eta_quotient(E.EtaQuotient(ex), ring, n - a)
            if a:
                body = S.make([0] * a + body.tolist(), ring)
            return S.scale(body, c)
        if isinstance(nd, A.QPower):
            raise EvalError(f"q^{nd.exp}: negative powers of q are not series", nd.span)
        if isinstance(nd, A.Name):
            if nd.name not in env:
                raise EvalError(f"undefined name {nd.name!r}", nd.span)
            val = env[nd.name]
            if val.ring != ring:
                raise EvalError(
                    f"ring mismatch: {nd.name} is over {val.ring}, expression over {ring}",
                    nd.span,
                )
            if val.order < n:
                raise EvalError(
                    f"order exceeded: {nd.name} is known to order {val.order}, need {n}",
                    nd.span,
                )
            return val.truncate(n)
        if isinstance(nd, A.Paren):
            return ev(nd.inner)
        if isinstance(nd, A.Neg):
            return S.scale(ev(nd.operand), -1)
        if isinstance(nd, A.Add):
            return S.add(ev(nd.left), ev(nd.right))
        if isinstance(nd, A.Sub):
            return S.sub(ev(nd.left), ev(nd.right))
        if isinstance(nd, A.Mul):
            return S.mul(ev(nd.left), ev(nd.right))
        if isinstance(nd, A.Div):
            den = ev(nd.right)
            try:
                inv = S.invert(den)
            except S.NotInvertible as exc:
                raise EvalError(f"cannot divide: {exc}", nd.right.span) from None
            return S.mul(ev(nd.left), inv)
        if isinstance(nd, A.Pow):
            base = ev(nd.base)
            if nd.exp < 0:
                try:
                    base = S.invert(base)
                except S.NotInvertible as exc:
                    raise EvalError(f"cannot invert: {exc}", nd.base.span) from None
            return S.pow_(base, abs(nd.exp))
        raise EvalError(f"cannot evaluate {nd!r}", getattr(nd, "span", (0, 0)))

    return ev(node)


# ---------------------------------------------------------------------------
# scripts


@dataclass
class AssertionResult:
    line: int
    text: str
    passed: bool
    order: int
    modulus: int | None
    exponent: int | None = None
    lhs: str | None = None
    rhs: str | None = None


@dataclass
class ScriptReport:
    name: str
    results: list[AssertionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "script": self.name,
            "status": "verified" if self.passed else "failed",
            "assertions": [asdict(r) for r in self.results],
        }


def run_script(script: A.Script | str, name: str = "<script>") -> ScriptReport:
    """Execute statements in order; errors raise :class:`ScriptError` with
    the statement's line number."""
    if isinstance(script, str):
        script = parse_script(script)
    ring: CoefficientRing = S.EXACT
    order = DEFAULT_ORDER
    env: dict[str, Series] = {}
    report = ScriptReport(name)

    def lookup(nm: str, line: int) -> Series:
        if nm not in env:
            raise ScriptError(f"undefined name {nm!r}", line=line)
        return env[nm]

    def evaluate(node, line: int, r=None) -> Series:
        try:
            return eval_expr(node, r or ring, order, env)
        except DslError as exc:
            raise ScriptError(exc.message, exc.span, line) from None

    for st in script.statements:
        if isinstance(st, A.SetOrder):
            order = st.n
        elif isinstance(st, A.SetRing):
            ring = S.EXACT if st.modulus is None else S.mod(st.modulus)
        elif isinstance(st, A.Let):
            env[st.name] = evaluate(st.expr, st.line)
        elif isinstance(st, A.Extract):
            src = lookup(st.source, st.line)
            try:
                env[st.name] = S.extract_ap(src, st.r, st.m)
            except ValueError as exc:
                raise ScriptError(str(exc), line=st.line) from None
        elif isinstance(st, A.Reduce):
            src = lookup(st.source, st.line)
            try:
                env[st.name] = S.reduce_mod(src, st.modulus)
            except ValueError as exc:
                raise ScriptError(f"ring mismatch: {exc}", line=st.line) from None
        elif isinstance(st, (A.AssertEqual, A.AssertCongruent)):
            upto = order if st.upto is None else st.upto
            if upto > order:
                raise ScriptError(
                    f"order exceeded: upto {upto} beyond current order {order}",
                    line=st.line,
                )
            m = getattr(st, "modulus", None)
            if m is not None and ring.modulus is not None and ring.modulus % m:
                raise ScriptError(
                    f"ring mismatch: cannot compare mod {m} in ring {ring}", line=st.line
                )
            lhs = evaluate(st.lhs, st.line)
            rhs = evaluate(st.rhs, st.line)
            i = S.first_difference(lhs, rhs, m, upto)
            res = AssertionResult(st.line, st.text, i is None, upto, m)
            if i is not None:
                res.exponent, res.lhs, res.rhs = i, str(lhs[i]), str(rhs[i])
            report.results.append(res)
        else:  # pragma: no cover
            raise ScriptError(f"unknown statement {st!r}", line=getattr(st, "line", None))
    return report
