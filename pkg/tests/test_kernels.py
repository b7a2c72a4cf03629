import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdissect import kernels as K

needs_numba = pytest.mark.skipif(K.numba_mul_mod is None, reason="numba unavailable")
MODS = st.sampled_from([2, 3, 128, 1009, 2**31 - 1])


def reference_mul(a, b, n, m):
    out = [0] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += int(a[i]) * int(b[j])
    return [x % m for x in out]


@st.composite
def residues(draw, count):
    m = draw(MODS)
    n = draw(st.integers(0, 60))
    arrs = [np.array(draw(st.lists(st.integers(0, m - 1), min_size=n + 1, max_size=n + 1)),
                     dtype=np.int64) for _ in range(count)]
    return m, n, arrs


@settings(max_examples=200)
@given(residues(2))
def test_numpy_mul_matches_reference(case):
    m, n, (a, b) = case
    assert K.numpy_mul_mod(a, b, n, m).tolist() == reference_mul(a, b, n, m)


@needs_numba
@settings(max_examples=200)
@given(residues(2))
def test_backends_agree_on_products(case):
    m, n, (a, b) = case
    assert np.array_equal(K.numba_mul_mod(a, b, n, m), K.numpy_mul_mod(a, b, n, m))


@needs_numba
@settings(max_examples=200)
@given(residues(1))
def test_backends_agree_on_inverses(case):
    m, n, (a,) = case
    a = a.copy()
    a[0] = 1
    t1 = K.numba_inv_mod(a, n, m, 1)
    t2 = K.numpy_inv_mod(a, n, m, 1)
    assert np.array_equal(t1, t2)
    one = K.numpy_mul_mod(a, t1, n, m)
    assert one[0] == 1 % m and not one[1:].any()


def test_largest_word_modulus_does_not_overflow():
    m = K.WORD_MODULUS_LIMIT
    n = 300
    a = np.full(n + 1, m - 1, dtype=np.int64)
    # (m-1)^2 summed 301 times exceeds int64 without periodic reduction
    expected = [((m - 1) ** 2 * (k + 1)) % m for k in range(n + 1)]
    assert K.mul_mod(a, a, n, m).tolist() == expected
    assert K.numpy_mul_mod(a, a, n, m).tolist() == expected


def test_env_flag_selects_numpy():
    code = "from qdissect import kernels; print(kernels.backend())"
    env = dict(os.environ, QDISSECT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_fallback_gives_same_series():
    code = ("from qdissect import eta, series as S; "
            "print(eta.overpartition_gf(6, S.mod(128), 300).tolist())")
    env = dict(os.environ, QDISSECT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    from qdissect import eta, series as S
    assert out.stdout.strip() == str(eta.overpartition_gf(6, S.mod(128), 300).tolist())
