"""Truncated formal power series over Z or Z/m.

A :class:`Series` stores the dense coefficients ``c_0 .. c_N`` of
``sum c_i q^i + O(q^(N+1))``.  Exact series keep Python integers (numpy
object arrays); modular series keep int64 residues in ``[0, m)`` and route
products and reciprocals through :mod:`qdissect.kernels`.

Every binary operation truncates to the smaller operand order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class RingMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


@dataclass(frozen=True)
class CoefficientRing:
    """``modulus=None`` is the ring of integers, otherwise Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        m = self.modulus
        if m is not None:
            if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
                raise TypeError(f"modulus must be an int, got {m!r}")
            if m < 2:
                raise ValueError(f"modulus must be >= 2, got {m}")
            if m >= 2**63:
                raise ValueError(f"modulus {m} does not fit a machine word")
            object.__setattr__(self, "modulus", int(m))

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    @property
    def word_sized(self) -> bool:
        return self.modulus is not None and self.modulus <= kernels.WORD_MODULUS_LIMIT

    def __str__(self):
        return "exact" if self.modulus is None else f"mod {self.modulus}"

    def to_json(self):
        return "exact" if self.modulus is None else {"mod": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "CoefficientRing":
        if obj == "exact":
            return EXACT
        if isinstance(obj, dict) and set(obj) == {"mod"}:
            return cls(int(obj["mod"]))
        raise ValueError(f"bad ring description: {obj!r}")


EXACT = CoefficientRing()


def mod(m: int) -> CoefficientRing:
    return CoefficientRing(m)


def _as_ring(ring) -> CoefficientRing:
    if isinstance(ring, CoefficientRing):
        return ring
    if ring is None or ring == "exact":
        return EXACT
    return CoefficientRing(int(ring))


def _canonical(values, ring: CoefficientRing) -> np.ndarray:
    """Copy ``values`` into the storage dtype of ``ring``, reduced."""
    if ring.word_sized:
        arr = np.asarray(values)
        if arr.dtype == object or arr.dtype.kind not in "iu":
            arr = np.array([int(v) % ring.modulus for v in arr], dtype=np.int64)
        else:
            arr = (arr.astype(np.int64, copy=False) % ring.modulus).astype(np.int64)
        return arr
    out = np.empty(len(values), dtype=object)
    if ring.modulus is None:
        out[:] = [int(v) for v in values]
    else:
        out[:] = [int(v) % ring.modulus for v in values]
    return out


class Series:
    """Immutable truncated power series; use :func:`make` to build one."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs: np.ndarray):
        # trusted constructor: coeffs must already be canonical for ring
        if len(coeffs) == 0:
            raise ValueError("a series needs at least one coefficient")
        coeffs.flags.writeable = False
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [int(c) for c in self.coeffs[i]]
        return int(self.coeffs[i])

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return (int(c) for c in self.coeffs)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.tolist()[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"Series([{head}{more}], ring={self.ring}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and all(int(x) == int(y) for x, y in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def __add__(self, other):
        return add(self, _promote(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _promote(other, self))

    def __rsub__(self, other):
        return sub(_promote(other, self), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return pow_(invert(self), -e)
        return pow_(self, e)

    def __truediv__(self, other):
        return mul(self, invert(_promote(other, self)))

    def truncate(self, n: int) -> "Series":
        if n > self.order:
            raise ValueError(f"cannot extend order {self.order} series to {n}")
        return Series(self.ring, self.coeffs[: n + 1].copy())


def _promote(x, like: Series) -> Series:
    if isinstance(x, Series):
        return x
    return constant(x, like.ring, like.order)


def make(coeffs: Sequence[int] | Iterable[int], ring=EXACT) -> Series:
    """Series with coefficients ``coeffs`` (``coeffs[i]`` multiplies ``q^i``)."""
    ring = _as_ring(ring)
    if not isinstance(coeffs, np.ndarray):
        coeffs = list(coeffs)
    if len(coeffs) == 0:
        raise ValueError("make() needs a nonempty coefficient sequence")
    return Series(ring, _canonical(coeffs, ring))


def zeros(ring, n: int) -> Series:
    ring = _as_ring(ring)
    if ring.word_sized:
        return Series(ring, np.zeros(n + 1, dtype=np.int64))
    arr = np.empty(n + 1, dtype=object)
    arr[:] = 0
    return Series(ring, arr)


def constant(c: int, ring, n: int) -> Series:
    ring = _as_ring(ring)
    vals = [0] * (n + 1)
    vals[0] = c
    return make(vals, ring)


def one(ring, n: int) -> Series:
    return constant(1, ring, n)


def monomial(c: int, a: int, ring, n: int) -> Series:
    """``c q^a`` truncated at order ``n`` (zero if ``a > n``)."""
    if a < 0:
        raise ValueError("negative q-exponents are not supported")
    vals = [0] * (n + 1)
    if a <= n:
        vals[a] = c
    return make(vals, _as_ring(ring))


def _check_ring(s: Series, t: Series) -> None:
    if s.ring != t.ring:
        raise RingMismatch(f"ring mismatch: {s.ring} vs {t.ring}")


def _finish(ring: CoefficientRing, arr: np.ndarray) -> Series:
    if ring.modulus is not None:
        arr = arr % ring.modulus
    return Series(ring, arr)


def add(s: Series, t: Series) -> Series:
    _check_ring(s, t)
    n = min(s.order, t.order)
    return _finish(s.ring, s.coeffs[: n + 1] + t.coeffs[: n + 1])


def sub(s: Series, t: Series) -> Series:
    _check_ring(s, t)
    n = min(s.order, t.order)
    return _finish(s.ring, s.coeffs[: n + 1] - t.coeffs[: n + 1])


def scale(s: Series, c: int) -> Series:
    c = int(c)
    if s.ring.word_sized:
        c %= s.ring.modulus
    return _finish(s.ring, s.coeffs * c)


def shift(s: Series, a: int) -> Series:
    """Multiply by ``q^a``; the order is unchanged, top terms fall off."""
    if a < 0:
        raise ValueError("negative q-exponents are not supported")
    out = zeros(s.ring, s.order).coeffs.copy()
    if a <= s.order:
        out[a:] = s.coeffs[: s.order + 1 - a]
    return Series(s.ring, out)


def _mul_object(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=object)
    out[:] = 0
    bb = b[: n + 1]
    # iterate over the sparser operand
    if np.count_nonzero(a[: n + 1]) > np.count_nonzero(bb):
        a, bb = bb, a[: n + 1]
    for i in range(n + 1):
        ai = a[i]
        if ai:
            out[i:] += ai * bb[: n + 1 - i]
    return out


def mul(s: Series, t: Series) -> Series:
    """Truncated Cauchy product; order is ``min(s.order, t.order)``."""
    _check_ring(s, t)
    n = min(s.order, t.order)
    if s.ring.word_sized:
        return Series(s.ring, kernels.mul_mod(s.coeffs, t.coeffs, n, s.ring.modulus))
    return _finish(s.ring, _mul_object(s.coeffs, t.coeffs, n))


def pow_(s: Series, e: int) -> Series:
    """``s**e`` by repeated squaring; ``e = 0`` gives the constant 1."""
    if e < 0:
        raise ValueError("pow_ needs a nonnegative exponent; invert first")
    result = one(s.ring, s.order)
    base = s
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def _unit_inverse(c0: int, ring: CoefficientRing) -> int:
    if ring.modulus is None:
        if c0 not in (1, -1):
            raise NotInvertible(f"constant term {c0} is not a unit in Z")
        return c0
    try:
        return pow(c0, -1, ring.modulus)
    except ValueError:
        raise NotInvertible(
            f"constant term {c0} is not a unit mod {ring.modulus}"
        ) from None


def invert(s: Series) -> Series:
    """Reciprocal power series; the constant term must be a unit."""
    ring = s.ring
    n = s.order
    inv0 = _unit_inverse(int(s.coeffs[0]), ring)
    if ring.word_sized:
        return Series(ring, kernels.inv_mod(s.coeffs, n, ring.modulus, inv0))
    a = s.coeffs
    nz = np.flatnonzero(a[1:]) + 1
    anz = a[nz]
    t = np.empty(n + 1, dtype=object)
    t[:] = 0
    t[0] = inv0
    cnt = 0
    for k in range(1, n + 1):
        while cnt < len(nz) and nz[cnt] <= k:
            cnt += 1
        if cnt:
            acc = np.dot(anz[:cnt], t[k - nz[:cnt]])
            t[k] = -inv0 * acc
    return _finish(ring, t)


def extract_ap(s: Series, r: int, m: int) -> Series:
    """``sum_n c_{m n + r} q^n``: pick exponents ``= r (mod m)``, divide by
    ``q^r`` and substitute ``q^m -> q``."""
    if m < 1:
        raise ValueError("step must be >= 1")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} not in [0, {m})")
    if r > s.order:
        raise ValueError(f"residue {r} exceeds series order {s.order}")
    return Series(s.ring, s.coeffs[r::m].copy())


def interleave(parts: Sequence[Series], n: int) -> Series:
    """Inverse of extraction: rebuild ``sum_r q^r parts[r](q^m)`` to order n."""
    m = len(parts)
    ring = parts[0].ring
    out = zeros(ring, n).coeffs.copy()
    for r, p in enumerate(parts):
        _check_ring(parts[0], p)
        idx = np.arange(r, n + 1, m)
        if len(idx) > p.order + 1:
            raise ValueError("component order too small for requested order")
        out[idx] = p.coeffs[: len(idx)]
    return Series(ring, out)


def dilate(s: Series, k: int, n: int | None = None) -> Series:
    """Substitute ``q -> q^k``; the default order is ``k * s.order``."""
    if k < 1:
        raise ValueError("dilation factor must be >= 1")
    if n is None:
        n = k * s.order
    if n > k * s.order + k - 1:
        raise ValueError(f"order {n} exceeds what dilation by {k} determines")
    out = zeros(s.ring, n).coeffs.copy()
    src = s.coeffs[: n // k + 1]
    out[: k * len(src) : k] = src
    return Series(s.ring, out)


def reduce_mod(s: Series, m: int) -> Series:
    """Coefficientwise reduction into Z/m."""
    ring = CoefficientRing(m)
    if s.ring.modulus is not None and s.ring.modulus % m:
        raise RingMismatch(f"cannot reduce a {s.ring} series mod {m}")
    return Series(ring, _canonical(s.coeffs, ring))


def congruent_upto(s: Series, t: Series, m: int, n: int) -> bool:
    """Do ``s`` and ``t`` agree mod ``m`` on coefficients ``0..n``?"""
    return first_difference(s, t, m, n) is None


def first_difference(s: Series, t: Series, m: int | None, n: int) -> int | None:
    """Smallest exponent ``<= n`` where ``s`` and ``t`` differ (mod ``m``)."""
    if n > s.order or n > t.order:
        raise ValueError(
            f"order {n} exceeds operand orders ({s.order}, {t.order})"
        )
    for i in range(n + 1):
        d = int(s.coeffs[i]) - int(t.coeffs[i])
        if (d % m if m is not None else d) != 0:
            return i
    return None


def to_json(s: Series) -> str:
    return json.dumps({"ring": s.ring.to_json(), "coeffs": [str(c) for c in s]})


def from_json(text: str) -> Series:
    obj = json.loads(text)
    ring = CoefficientRing.from_json(obj["ring"])
    return make([int(c) for c in obj["coeffs"]], ring)
