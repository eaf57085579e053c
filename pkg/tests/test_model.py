import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zicr.model import (
    ChannelRealization,
    GdofExponents,
    HermitianCov,
    InputConfig,
    SnrSextet,
    WiCertificate,
    sample_channel,
    snr_from_exponents,
)

snr_values = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)


def test_snr_sextet_rejects_negative_and_nonfinite():
    with pytest.raises(ValueError):
        SnrSextet(1.0, -0.1, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        SnrSextet(1.0, float("nan"), 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        SnrSextet(1.0, 1.0, 1.0, 1.0, 1.0, float("inf"))


@given(snr_values, snr_values, snr_values, snr_values, snr_values, snr_values)
def test_snr_sextet_accepts_nonnegative(a, b, c, d, e, f):
    snr = SnrSextet(a, b, c, d, e, f)
    assert snr.snr11 == a and snr.snr13 == f


def test_input_config_bounds():
    InputConfig(p1=0.0, p2=1.0, p3=0.5, upsilon=0.3 + 0.4j)
    with pytest.raises(ValueError):
        InputConfig(p1=1.5)
    with pytest.raises(ValueError):
        InputConfig(p2=-0.01)
    with pytest.raises(ValueError):
        InputConfig(upsilon=1.2)


def test_certificate_bounds_and_coercion():
    cert = WiCertificate(beta1=np.float64(0.25), beta2=np.float64(1.0))
    assert isinstance(cert.beta1, float) and isinstance(cert.beta2, float)
    with pytest.raises(ValueError):
        WiCertificate(beta1=-0.1, beta2=0.5)
    with pytest.raises(ValueError):
        WiCertificate(beta1=0.5, beta2=1.01)


def test_channel_realization_range():
    ChannelRealization(0.0, 1.0, 2.0, 3.0, 4.0, 6.28)
    with pytest.raises(ValueError):
        ChannelRealization(0.0, 1.0, 2.0, 3.0, 4.0, 2.0 * math.pi)
    with pytest.raises(ValueError):
        ChannelRealization(-0.1, 1.0, 2.0, 3.0, 4.0, 5.0)


def test_sample_channel_deterministic_for_integer_seed():
    assert sample_channel(7) == sample_channel(7)
    assert sample_channel(7) != sample_channel(8)


def test_sample_channel_advances_generator():
    rng = np.random.default_rng(0)
    first = sample_channel(rng)
    second = sample_channel(rng)
    assert first != second


def test_snr_from_exponents_values():
    exp = GdofExponents(alpha=0.5, beta=2.0, gamma=3.0, lam=0.25)
    snr = snr_from_exponents(exp, 16.0)
    assert snr.snr11 == 16.0 and snr.snr22 == 16.0
    assert snr.snr21 == pytest.approx(4.0)
    assert snr.snr31 == pytest.approx(256.0)
    assert snr.snr13 == pytest.approx(4096.0)
    assert snr.snr32 == pytest.approx(2.0)
    with pytest.raises(ValueError):
        snr_from_exponents(exp, 0.0)


@settings(max_examples=50)
@given(
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_hermitian_cov_accepts_gram_matrices(dim, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    cov = HermitianCov.from_gram(a)
    assert cov.dim == dim
    eigs = np.linalg.eigvalsh(cov.entries)
    assert eigs[0] >= -1e-10 * max(eigs[-1], 0.0) - 1e-300


def test_hermitian_cov_rejects_bad_matrices():
    with pytest.raises(ValueError):
        HermitianCov(np.array([[1.0, 2.0], [0.0, 1.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        HermitianCov(np.array([[-1.0 + 0j]]))  # negative definite
    with pytest.raises(ValueError):
        HermitianCov(np.zeros((0, 0), dtype=complex))
    with pytest.raises(ValueError):
        HermitianCov(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_cov_is_read_only():
    cov = HermitianCov(np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        cov.entries[0, 0] = 5.0


def test_hermitian_cov_submatrix():
    mat = np.diag([1.0, 2.0, 3.0]).astype(complex)
    cov = HermitianCov(mat)
    sub = cov.submatrix([2, 0])
    assert sub.shape == (2, 2)
    assert sub[0, 0] == 3.0 and sub[1, 1] == 1.0
