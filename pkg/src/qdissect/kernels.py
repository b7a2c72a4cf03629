"""Hot loops for series arithmetic over Z/m.

Two interchangeable backends operate on int64 arrays holding canonical
residues in ``[0, m)``:

* numba-compiled loops (default when numba imports), and
* a pure-numpy path (``np.convolve`` and Newton inversion).

Both require ``m <= WORD_MODULUS_LIMIT`` so a single product of residues fits
in 62 bits.  Larger moduli and the exact ring never reach this module.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit

WORD_MODULUS_LIMIT = 2**31
_ACC_LIMIT = 2**62


def _rows_per_reduction(m: int) -> int:
    """How many residue products can pile up in an int64 before reducing."""
    return max(1, (_ACC_LIMIT - m) // ((m - 1) ** 2))


# ---------------------------------------------------------------------------
# pure numpy


def numpy_mul_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    a = a[: n + 1]
    b = b[: n + 1]
    step = _rows_per_reduction(m)
    if step >= n + 1:
        return np.convolve(a, b)[: n + 1] % m
    # wide modulus: accumulate row by row, reducing before int64 overflow
    out = np.zeros(n + 1, dtype=np.int64)
    pending = 0
    for i in np.flatnonzero(a):
        out[i:] += a[i] * b[: n + 1 - i]
        pending += 1
        if pending >= step:
            out %= m
            pending = 0
    return out % m


def numpy_inv_mod(a: np.ndarray, n: int, m: int, inv0: int) -> np.ndarray:
    # Newton iteration t <- t (2 - a t), doubling the precision each pass
    t = np.array([inv0 % m], dtype=np.int64)
    prec = 0
    while prec < n:
        prec = min(2 * prec + 1, n)
        tt = np.zeros(prec + 1, dtype=np.int64)
        tt[: t.shape[0]] = t
        at = numpy_mul_mod(a, tt, prec, m)
        corr = (-at) % m
        corr[0] = (corr[0] + 2) % m
        t = numpy_mul_mod(tt, corr, prec, m)
    return t[: n + 1]


# ---------------------------------------------------------------------------
# numba

if HAVE_NUMBA:

    @njit
    def numba_mul_mod(a, b, n, m):
        out = np.zeros(n + 1, dtype=np.int64)
        step = max(1, (2**62 - m) // ((m - 1) * (m - 1)))
        pending = 0
        for i in range(n + 1):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += ai * b[j]
            pending += 1
            if pending >= step:
                for j in range(n + 1):
                    out[j] %= m
                pending = 0
        for j in range(n + 1):
            out[j] %= m
        return out

    @njit
    def numba_inv_mod(a, n, m, inv0):
        t = np.zeros(n + 1, dtype=np.int64)
        t[0] = inv0 % m
        step = max(1, (2**62 - m) // ((m - 1) * (m - 1)))
        for k in range(1, n + 1):
            acc = 0
            pending = 0
            for i in range(1, k + 1):
                ai = a[i]
                if ai == 0:
                    continue
                acc += ai * t[k - i]
                pending += 1
                if pending >= step:
                    acc %= m
                    pending = 0
            acc %= m
            t[k] = (m - (inv0 * acc) % m) % m
        return t

else:  # pragma: no cover - exercised only without numba
    numba_mul_mod = None
    numba_inv_mod = None


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def mul_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    """Truncated product of two residue arrays, coefficients ``0..n``."""
    if HAVE_NUMBA:
        return numba_mul_mod(a, b, n, m)
    return numpy_mul_mod(a, b, n, m)


def inv_mod(a: np.ndarray, n: int, m: int, inv0: int) -> np.ndarray:
    """Reciprocal of ``a`` mod ``m`` to order ``n``; ``inv0`` inverts ``a[0]``."""
    if HAVE_NUMBA:
        return numba_inv_mod(a, n, m, inv0)
    return numpy_inv_mod(a, n, m, inv0)
