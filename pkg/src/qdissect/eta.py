"""Eta quotients ``prod_k f_k^{e_k}`` with ``f_k = prod_{m>=1} (1 - q^{km})``.

Expansions are memoised per ``(k, order, ring)``; series are immutable, so
the cache is invisible to callers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import series as S
from .series import EXACT, CoefficientRing, Series


@dataclass(frozen=True)
class EtaQuotient:
    """Normalised exponent map ``{k: e_k}``; zero exponents are dropped."""

    exps: tuple[tuple[int, int], ...] = ()

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[int, int] = {}
        for k, e in items:
            k, e = int(k), int(e)
            if k < 1:
                raise ValueError(f"eta subscript must be >= 1, got {k}")
            acc[k] = acc.get(k, 0) + e
        object.__setattr__(
            self, "exps", tuple(sorted((k, e) for k, e in acc.items() if e))
        )

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.exps + other.exps)

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient((k, x * e) for k, x in self.exps)

    def inverse(self) -> "EtaQuotient":
        return self ** -1

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(f"f{k}" if e == 1 else f"f{k}^{e}" for k, e in self.exps)


def eta(text_or_map=None, **kw) -> EtaQuotient:
    """Shorthand: ``eta({1: -2, 2: 1})`` or ``eta(f1=-2, f2=1)``."""
    if text_or_map is not None:
        return EtaQuotient(text_or_map)
    return EtaQuotient((int(name[1:]), e) for name, e in kw.items())


@dataclass(frozen=True)
class EtaMonomial:
    coeff: int
    qpow: int
    quotient: EtaQuotient = field(default_factory=EtaQuotient)

    def __post_init__(self):
        if self.qpow < 0:
            raise ValueError("q-power must be nonnegative")

    def __str__(self):
        parts = []
        if self.coeff != 1 or (self.qpow == 0 and not self.quotient.exps):
            parts.append(str(self.coeff))
        if self.qpow == 1:
            parts.append("q")
        elif self.qpow > 1:
            parts.append(f"q^{self.qpow}")
        if self.quotient.exps:
            parts.append(str(self.quotient))
        text = "*".join(parts)
        # "-1*x" reads better as "-x"
        if text.startswith("-1*"):
            text = "-" + text[3:]
        return text


@dataclass(frozen=True)
class EtaExpr:
    """Formal sum of :class:`EtaMonomial` terms."""

    terms: tuple[EtaMonomial, ...] = ()

    def __str__(self):
        if not self.terms:
            return "0"
        out = str(self.terms[0])
        for t in self.terms[1:]:
            s = str(t)
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out


def term(coeff: int, qpow: int = 0, **exps: int) -> EtaMonomial:
    return EtaMonomial(coeff, qpow, eta(**exps))


def expr(*terms: EtaMonomial) -> EtaExpr:
    return EtaExpr(tuple(terms))


@functools.lru_cache(maxsize=512)
def expand_f(k: int, n: int, ring: CoefficientRing = EXACT) -> Series:
    """``f_k`` to order ``n`` by the finite product over ``m <= n // k``."""
    if k < 1:
        raise ValueError(f"eta subscript must be >= 1, got {k}")
    if ring.word_sized:
        c = np.zeros(n + 1, dtype=np.int64)
        c[0] = 1
        for j in range(k, n + 1, k):
            c[j:] = (c[j:] - c[: n + 1 - j]) % ring.modulus
        return Series(ring, c)
    c = np.empty(n + 1, dtype=object)
    c[:] = 0
    c[0] = 1
    for j in range(k, n + 1, k):
        c[j:] = c[j:] - c[: n + 1 - j]
    if ring.modulus is not None:
        c = c % ring.modulus
    return Series(ring, c)


@functools.lru_cache(maxsize=512)
def _inverse_f(k: int, n: int, ring: CoefficientRing) -> Series:
    return S.invert(expand_f(k, n, ring))


def pentagonal_f1(n: int) -> Series:
    """``f_1`` from Euler's pentagonal number theorem (test cross-check)."""
    c = [0] * (n + 1)
    j = 0
    while True:
        hit = False
        for g in {j * (3 * j - 1) // 2, j * (3 * j + 1) // 2}:
            if g <= n:
                c[g] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return S.make(c)


def expand_eta_quotient(eq: EtaQuotient, ring=EXACT, n: int = 0) -> Series:
    """``prod_k f_k^{e_k}`` to order ``n``; negative powers invert the base
    first and then raise to ``|e|``."""
    ring = S._as_ring(ring)
    if not isinstance(eq, EtaQuotient):
        eq = EtaQuotient(eq)
    result = S.one(ring, n)
    for k, e in eq.exps:
        base = expand_f(k, n, ring) if e > 0 else _inverse_f(k, n, ring)
        result = S.mul(result, S.pow_(base, abs(e)))
    return result


def expand_expr(e: EtaExpr, ring=EXACT, n: int = 0) -> Series:
    ring = S._as_ring(ring)
    total = S.zeros(ring, n)
    for t in e.terms:
        if t.qpow > n or t.coeff == 0:
            continue
        body = expand_eta_quotient(t.quotient, ring, n - t.qpow)
        part = S.make([0] * t.qpow + body.tolist(), ring) if t.qpow else body
        total = S.add(total, S.scale(part, t.coeff))
    return total


def jacobi_theta3(n: int) -> Series:
    """``sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}`` to order ``n``."""
    c = [0] * (n + 1)
    m = 0
    while m * (m + 1) // 2 <= n:
        c[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return S.make(c)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_binomial_congruence(
    p: int, k: int, l: int, n: int, modulus: int | None = None
) -> bool:
    """``f_l^{p^k} == f_{lp}^{p^{k-1}}`` mod ``p^k`` (or ``modulus``) to order n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    m = p**k if modulus is None else modulus
    ring = CoefficientRing(m)
    lhs = S.pow_(expand_f(l, n, ring), p**k)
    rhs = S.pow_(expand_f(l * p, n, ring), p ** (k - 1))
    return lhs == rhs


def overpartition_quotient(l: int) -> EtaQuotient:
    if l < 1:
        raise ValueError("l must be >= 1")
    return EtaQuotient([(1, -2), (2, 1), (l, 1)])


def overpartition_gf(l: int, ring=EXACT, n: int = 0) -> Series:
    """``f_2 f_l / f_1^2``, the generating function of overpartitions whose
    non-overlined parts avoid multiples of ``l``."""
    return expand_eta_quotient(overpartition_quotient(l), ring, n)
