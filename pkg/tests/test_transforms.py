"""Multi-dimensional orthonormal DCT: oracle equivalence and isometry."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slrtc.tensor import frob_norm, inner
from slrtc.transforms import dct_nd, idct_nd


def dct2_oracle_1d(v: np.ndarray) -> np.ndarray:
    """Direct O(n^2) orthonormal type-II DCT of a vector."""
    n = len(v)
    out = np.zeros(n)
    for k in range(n):
        scale = math.sqrt(1.0 / n) if k == 0 else math.sqrt(2.0 / n)
        acc = 0.0
        for j in range(n):
            acc += v[j] * math.cos(math.pi * (2 * j + 1) * k / (2 * n))
        out[k] = scale * acc
    return out


def dct_oracle_nd(t: np.ndarray) -> np.ndarray:
    """Apply the 1-D oracle along every mode in turn."""
    out = t.astype(float)
    for axis in range(t.ndim):
        out = np.apply_along_axis(dct2_oracle_1d, axis, out)
    return out


def rand(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


class TestForward:
    def test_impulse_hand_values(self):
        got = dct_nd(np.array([1.0, 0.0, 0.0, 0.0]))
        expected = [0.5] + [math.sqrt(0.5) * math.cos(math.pi * k / 8) for k in (1, 2, 3)]
        assert np.allclose(got, expected, atol=1e-15)

    def test_constant_concentrates_in_dc(self):
        c = 0.7
        got = dct_nd(np.full(9, c))
        assert got[0] == pytest.approx(c * math.sqrt(9), rel=1e-14)
        assert np.max(np.abs(got[1:])) < 1e-14

    @pytest.mark.parametrize("shape", [(7,), (5, 6), (3, 4, 5)])
    def test_matches_direct_oracle(self, shape):
        t = rand(shape, seed=sum(shape))
        assert np.allclose(dct_nd(t), dct_oracle_nd(t), atol=1e-12)

    def test_linear(self):
        a, b = rand((4, 5), 1), rand((4, 5), 2)
        lhs = dct_nd(2.5 * a - 0.5 * b)
        rhs = 2.5 * dct_nd(a) - 0.5 * dct_nd(b)
        assert np.allclose(lhs, rhs, atol=1e-13)


class TestInverse:
    @pytest.mark.parametrize("shape", [(8,), (6, 7), (4, 5, 6), (32, 32, 8)])
    def test_round_trip(self, shape):
        t = rand(shape, seed=len(shape))
        back = idct_nd(dct_nd(t))
        assert frob_norm(back - t) <= 1e-10 * frob_norm(t)

    def test_parseval(self):
        t = rand((16, 16, 4), seed=3)
        assert abs(frob_norm(dct_nd(t)) - frob_norm(t)) <= 1e-10 * frob_norm(t)

    def test_adjoint_identity(self):
        # <D(a), b> = <a, Dinv(b)>: the inverse is the adjoint, which the
        # solver's closed-form x-update relies on.
        a, b = rand((5, 4, 3), 4), rand((5, 4, 3), 5)
        assert inner(dct_nd(a), b) == pytest.approx(inner(a, idct_nd(b)), rel=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=4),
        st.integers(min_value=0, max_value=10**6),
    )
    def test_round_trip_and_parseval_property(self, shape, seed):
        t = np.random.default_rng(seed).standard_normal(tuple(shape))
        nt = frob_norm(t)
        assert frob_norm(idct_nd(dct_nd(t)) - t) <= 1e-10 * max(nt, 1.0)
        assert abs(frob_norm(dct_nd(t)) - nt) <= 1e-10 * max(nt, 1.0)
