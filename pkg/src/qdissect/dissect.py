"""Catalog of dissection identities and the polynomial reductions used
alongside them, with checkers for both.

Identities are data: each record pairs two :class:`EtaExpr` sides so the
table can be printed, re-parsed, mutated in tests and exported as a replay
script.  Checks certify agreement up to a truncation order only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import eta as E
from . import series as S
from .eta import EtaExpr, expr, term

JACOBI_BUILTIN = "builtin:jacobi_theta3"

# (p, k, l) instances of f_l^{p^k} == f_{lp}^{p^{k-1}} (mod p^k) checked by
# default; these are the ones the proofs lean on.
BINOMIAL_INSTANCES = ((2, 7, 1), (2, 6, 1), (2, 1, 1), (3, 1, 1), (3, 1, 2), (2, 3, 1))


@dataclass(frozen=True)
class IdentityRecord:
    name: str
    lhs: EtaExpr | None
    rhs: EtaExpr | str | None
    kind: str = "exact"  # "exact", "congruence" or "family"
    modulus: int | None = None
    label: str = ""

    @property
    def is_family(self) -> bool:
        return self.kind == "family"


@dataclass(frozen=True)
class VerifyResult:
    name: str
    passed: bool
    order: int
    exponent: int | None = None
    lhs_coeff: int | None = None
    rhs_coeff: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "verified" if self.passed else "failed",
            "order": self.order,
            "exponent": self.exponent,
            "lhs_coeff": None if self.lhs_coeff is None else str(self.lhs_coeff),
            "rhs_coeff": None if self.rhs_coeff is None else str(self.rhs_coeff),
            "detail": self.detail,
        }


_CATALOG = (
    IdentityRecord(
        "jacobi-cube",
        expr(term(1, 0, f1=3)),
        JACOBI_BUILTIN,
        label="Jacobi: f1^3 as a signed sum over triangular exponents",
    ),
    IdentityRecord(
        "f1-over-f3cubed",
        expr(term(1, 0, f1=1, f3=-3)),
        expr(
            term(1, 0, f2=1, f4=2, f12=2, f6=-7),
            term(-1, 1, f2=3, f12=6, f4=-2, f6=-9),
        ),
        label="2-dissection of f1/f3^3",
    ),
    IdentityRecord(
        "f1cubed-over-f3",
        expr(term(1, 0, f1=3, f3=-1)),
        expr(
            term(1, 0, f4=3, f12=-1),
            term(-3, 1, f2=2, f12=3, f4=-1, f6=-2),
        ),
        label="2-dissection of f1^3/f3",
    ),
    IdentityRecord(
        "f1sq-over-f2",
        expr(term(1, 0, f1=2, f2=-1)),
        expr(
            term(1, 0, f9=2, f18=-1),
            term(-2, 1, f3=1, f18=2, f6=-1, f9=-1),
        ),
        label="3-dissection of f1^2/f2",
    ),
    IdentityRecord(
        "f2sq-over-f1",
        expr(term(1, 0, f2=2, f1=-1)),
        expr(
            term(1, 0, f6=1, f9=2, f3=-1, f18=-1),
            term(1, 1, f18=2, f9=-1),
        ),
        label="3-dissection of f2^2/f1",
    ),
    IdentityRecord(
        "f2-over-f1sq",
        expr(term(1, 0, f2=1, f1=-2)),
        expr(
            term(1, 0, f6=4, f9=6, f3=-8, f18=-3),
            term(2, 1, f6=3, f9=3, f3=-7),
            term(4, 2, f6=2, f18=3, f3=-6),
        ),
        label="3-dissection of f2/f1^2",
    ),
    IdentityRecord(
        "f1-times-f2",
        expr(term(1, 0, f1=1, f2=1)),
        expr(
            term(1, 0, f6=1, f9=4, f3=-1, f18=-2),
            term(-1, 1, f9=1, f18=1),
            term(-2, 2, f3=1, f18=4, f6=-1, f9=-2),
        ),
        label="3-dissection of f1*f2",
    ),
    IdentityRecord(
        "f1cubed",
        expr(term(1, 0, f1=3)),
        expr(
            term(1, 0, f6=1, f9=6, f3=-1, f18=-3),
            term(-3, 1, f9=3),
            term(4, 3, f3=2, f18=6, f6=-2, f9=-3),
        ),
        label="3-dissection of f1^3",
    ),
    IdentityRecord(
        "one-over-f1cubed",
        expr(term(1, 0, f1=-3)),
        expr(
            term(1, 0, f6=2, f9=15, f3=-14, f18=-6),
            term(3, 1, f6=1, f9=12, f3=-13, f18=-3),
            term(9, 2, f9=9, f3=-12),
            term(8, 3, f9=6, f18=3, f3=-11, f6=-1),
            term(12, 4, f9=3, f18=6, f3=-10, f6=-2),
            term(16, 6, f18=12, f3=-8, f6=-4, f9=-3),
        ),
        label="3-dissection of 1/f1^3",
    ),
    IdentityRecord(
        "binomial-lemma",
        None,
        None,
        kind="family",
        label="f_l^(p^k) == f_(lp)^(p^(k-1)) mod p^k, p prime",
    ),
)


def catalog() -> tuple[IdentityRecord, ...]:
    return _CATALOG


def identity(name: str) -> IdentityRecord:
    for r in _CATALOG:
        if r.name == name:
            return r
    raise KeyError(name)


def _expand_side(side, ring, n):
    if side == JACOBI_BUILTIN:
        s = E.jacobi_theta3(n)
        return s if ring.is_exact else S.reduce_mod(s, ring.modulus)
    return E.expand_expr(side, ring, n)


def verify_identity(r: IdentityRecord, n: int) -> VerifyResult:
    """Compare both sides of ``r`` coefficientwise up to ``q^n``."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if r.is_family:
        bad = [
            inst for inst in BINOMIAL_INSTANCES
            if not E.check_binomial_congruence(*inst, n)
        ]
        detail = "instances (p,k,l): " + ", ".join(map(str, BINOMIAL_INSTANCES))
        if bad:
            detail = f"failing instances: {bad}"
        return VerifyResult(r.name, not bad, n, detail=detail)
    ring = S.EXACT if r.kind == "exact" else S.mod(r.modulus)
    lhs = _expand_side(r.lhs, ring, n)
    rhs = _expand_side(r.rhs, ring, n)
    i = S.first_difference(lhs, rhs, None, n)
    if i is None:
        return VerifyResult(r.name, True, n)
    return VerifyResult(r.name, False, n, i, lhs[i], rhs[i])


def catalog_script(n: int = 500) -> str:
    """Every identity as a replayable ``.qds`` assertion, one per line."""
    lines = [f"# dissection catalog, checked to order {n}", f"order {n}", "ring exact"]
    for r in _CATALOG:
        if r.is_family:
            for p, k, l in BINOMIAL_INSTANCES:
                lines.append(
                    f"assert f{l}^{p ** k} =mod= {p ** k} f{l * p}^{p ** (k - 1)}"
                    f"  # {r.name}"
                )
            continue
        if r.rhs == JACOBI_BUILTIN:
            rhs = str(_theta_poly(n))
        else:
            rhs = str(r.rhs)
        lines.append(f"assert {r.lhs} == {rhs}  # {r.name}")
    return "\n".join(lines) + "\n"


def _theta_poly(n: int) -> EtaExpr:
    s = E.jacobi_theta3(n)
    return EtaExpr(tuple(E.EtaMonomial(c, i) for i, c in enumerate(s) if c))


# ---------------------------------------------------------------------------
# multivariate integer polynomials


class Poly:
    """Sparse integer polynomial: ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, c: int, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(int(other), self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(1, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def reduce(self, m: int) -> "Poly":
        return Poly(self.nvars, {e: c % m for e, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms})"


@dataclass(frozen=True)
class PolyReduction:
    name: str
    variables: tuple[str, ...]
    lhs_fn: Callable = field(repr=False)
    rhs_fn: Callable = field(repr=False)
    modulus: int
    text: str = ""

    def _expand(self, fn) -> Poly:
        n = len(self.variables)
        return fn(*(Poly.var(i, n) for i in range(n)))

    @property
    def lhs(self) -> Poly:
        return self._expand(self.lhs_fn)

    @property
    def rhs(self) -> Poly:
        return self._expand(self.rhs_fn)


_POLY = (
    PolyReduction(
        "P1", ("a", "b"),
        lambda a, b: 4 * (a - 2 * b) ** 13,
        lambda a, b: 4 * a**13 + 24 * a**12 * b + 96 * a**11 * b**2
        + 64 * a**10 * b**3 + 64 * a**9 * b**4,
        128,
        "4(a-2b)^13 == 4a^13+24a^12b+96a^11b^2+64a^10b^3+64a^9b^4",
    ),
    PolyReduction(
        "P2", ("x", "y"),
        lambda x, y: 12 * (x - 2 * y) ** 9,
        lambda x, y: 12 * (x**9 - 18 * x**8 * y + 16 * x**7 * y**2),
        128,
        "12(x-2y)^9 == 12(x^9-18x^8y+16x^7y^2)",
    ),
    PolyReduction(
        "P3", ("a", "b", "c"),
        lambda a, b, c: 64 * (a - b - 2 * c) ** 3,
        lambda a, b, c: 64 * (a**3 + a**2 * b + a * b**2 + b**3),
        128,
        "64(a-b-2c)^3 == 64(a^3+a^2b+ab^2+b^3)",
    ),
    PolyReduction(
        "P4", ("a", "b"),
        lambda a, b: 4 * (a - 2 * b) ** 5,
        lambda a, b: 4 * (a**5 + 6 * a**4 * b + 8 * a**3 * b**2),
        64,
        "4(a-2b)^5 == 4(a^5+6a^4b+8a^3b^2)",
    ),
    PolyReduction(
        "P5", ("a",),
        lambda a: 21 * (16 * a + 12) + 32,
        lambda a: 16 * (5 * a + 1) + 12,
        128,
        "21(16a+12)+32 == 16(5a+1)+12",
    ),
    PolyReduction(
        "P6", ("a",),
        lambda a: 21 * (16 * a + 12) - 32,
        lambda a: 16 * (5 * a + 5) + 12,
        128,
        "21(16a+12)-32 == 16(5a+5)+12",
    ),
)


def poly_catalog() -> tuple[PolyReduction, ...]:
    return _POLY


def verify_poly_reduction(p: PolyReduction) -> bool:
    """Expand both sides exactly and compare every coefficient mod p.modulus."""
    return (p.lhs - p.rhs).reduce(p.modulus) == Poly(len(p.variables))


def verify_poly_by_substitution(
    p: PolyReduction, samples: int = 10_000, seed: int = 0
) -> bool:
    """Evaluate both sides on integers: every point of ``[0, m)^v`` when
    ``v <= 2``, otherwise ``samples`` random points."""
    m = p.modulus
    v = len(p.variables)
    if v <= 2:
        points = itertools.product(range(m), repeat=v)
    else:
        rng = random.Random(seed)
        points = (tuple(rng.randrange(m) for _ in range(v)) for _ in range(samples))
    return all((p.lhs_fn(*pt) - p.rhs_fn(*pt)) % m == 0 for pt in points)
