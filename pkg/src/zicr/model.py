"""Core domain types shared by every analysis module.

Conventions used throughout the package:

* SNRs are linear power ratios (never dB inside the library).
* Channel coefficients are sqrt(SNR) * exp(j * theta) with theta uniform on
  [0, 2pi); magnitudes are deterministic, only phases fade.
* Covariance matrices follow M[i, j] = E{v_i * conj(v_j)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Relative floor for the smallest admissible eigenvalue of a covariance
# matrix; problems here are <= 8x8 doubles, so anything below this is noise.
PSD_REL_TOL = 1e-10


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


def _require_nonnegative(name: str, value: float) -> None:
    _require_finite(name, value)
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class SnrSextet:
    """Linear SNRs of the six links.

    snr11: tx1 -> rx1 (direct), snr21: tx2 -> rx1 (interference),
    snr31: relay -> rx1, snr22: tx2 -> rx2 (direct),
    snr32: relay -> rx2 (interference), snr13: tx1 -> relay.
    """

    snr11: float
    snr21: float
    snr31: float
    snr22: float
    snr32: float
    snr13: float

    def __post_init__(self) -> None:
        for name in ("snr11", "snr21", "snr31", "snr22", "snr32", "snr13"):
            _require_nonnegative(name, getattr(self, name))


@dataclass(frozen=True)
class GdofExponents:
    """SNR scaling exponents: snr21 ~ SNR^alpha, snr31 ~ SNR^beta,
    snr13 ~ SNR^gamma, snr32 ~ SNR^lam; both direct links scale as SNR."""

    alpha: float
    beta: float
    gamma: float
    lam: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "lam"):
            _require_nonnegative(name, getattr(self, name))


@dataclass(frozen=True)
class InputConfig:
    """Input powers in [0, 1] and the complex correlation between X1 and X3.

    X2 is always independent of (X1, X3); upsilon only couples the pair that
    the relay path creates.
    """

    p1: float = 1.0
    p2: float = 1.0
    p3: float = 1.0
    upsilon: complex = 0j

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p3"):
            value = getattr(self, name)
            _require_finite(name, value)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value!r}")
        mag = abs(self.upsilon)
        _require_finite("abs(upsilon)", mag)
        if mag > 1.0 + 1e-12:
            raise ValueError(f"|upsilon| must be <= 1, got {mag!r}")


@dataclass(frozen=True)
class GenieParams:
    """Side-information parameters: S1 = H11 X1 + H31 X3 + eta1 W1 and
    S2 = H22 X2 + eta2 W2, with E{W_k conj(Z_k)} = vtilde_k and unit W, Z."""

    eta1: complex
    eta2: complex
    vtilde1: complex
    vtilde2: complex

    def __post_init__(self) -> None:
        for name in ("vtilde1", "vtilde2"):
            mag = abs(getattr(self, name))
            _require_finite(f"abs({name})", mag)
            if mag > 1.0 + 1e-12:
                raise ValueError(f"|{name}| must be <= 1, got {mag!r}")
        for name in ("eta1", "eta2"):
            _require_finite(f"abs({name})", abs(getattr(self, name)))


@dataclass(frozen=True)
class WiCertificate:
    """A (beta1, beta2) pair witnessing the weak-interference feasibility
    system; beta_k doubles as |vtilde_k|^2 in the genie construction."""

    beta1: float
    beta2: float

    def __post_init__(self) -> None:
        for name in ("beta1", "beta2"):
            value = float(getattr(self, name))
            _require_finite(name, value)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the six link phases, each in [0, 2pi)."""

    theta11: float
    theta21: float
    theta31: float
    theta22: float
    theta32: float
    theta13: float

    def __post_init__(self) -> None:
        for name in (
            "theta11",
            "theta21",
            "theta31",
            "theta22",
            "theta32",
            "theta13",
        ):
            value = getattr(self, name)
            _require_finite(name, value)
            if not 0.0 <= value < TWO_PI:
                raise ValueError(f"{name} must be in [0, 2pi), got {value!r}")


class HermitianCov:
    """Small dense Hermitian PSD covariance matrix.

    Construction symmetrizes the input and rejects matrices whose smallest
    eigenvalue is below -PSD_REL_TOL relative to the largest one.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: np.ndarray) -> None:
        mat = np.asarray(entries, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"covariance must be square, got shape {mat.shape}")
        if mat.shape[0] == 0:
            raise ValueError("covariance must be non-empty")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("covariance entries must be finite")
        herm_gap = np.max(np.abs(mat - mat.conj().T))
        scale = max(np.max(np.abs(mat)), 1.0)
        if herm_gap > 1e-9 * scale:
            raise ValueError(f"matrix is not Hermitian (gap {herm_gap:.3e})")
        mat = 0.5 * (mat + mat.conj().T)
        eigs = np.linalg.eigvalsh(mat)
        floor = -PSD_REL_TOL * max(float(eigs[-1]), 0.0) - 1e-300
        if eigs[0] < floor:
            raise ValueError(
                f"matrix is not PSD (min eig {eigs[0]:.3e}, max eig {eigs[-1]:.3e})"
            )
        self.entries = mat
        self.entries.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_gram(cls, a: np.ndarray) -> "HermitianCov":
        """Build A . A^H, PSD by construction for any complex A."""
        a = np.asarray(a, dtype=np.complex128)
        return cls(a @ a.conj().T)

    def submatrix(self, idx: list[int]) -> np.ndarray:
        ix = np.asarray(idx, dtype=int)
        return self.entries[np.ix_(ix, ix)]

    def __repr__(self) -> str:  # pragma: no cover
        return f"HermitianCov(dim={self.dim})"


def snr_from_exponents(exp: GdofExponents, snr: float) -> SnrSextet:
    """Map scaling exponents to concrete link SNRs at a given base SNR.

    Returns (SNR, SNR^alpha, SNR^beta, SNR, SNR^lam, SNR^gamma) in the
    (snr11, snr21, snr31, snr22, snr32, snr13) slots.
    """
    _require_finite("snr", snr)
    if snr <= 0:
        raise ValueError(f"snr must be > 0, got {snr!r}")
    return SnrSextet(
        snr11=snr,
        snr21=snr**exp.alpha,
        snr31=snr**exp.beta,
        snr22=snr,
        snr32=snr**exp.lam,
        snr13=snr**exp.gamma,
    )


def sample_channel(seed) -> ChannelRealization:
    """Draw one channel realization: six i.i.d. phases uniform on [0, 2pi).

    Accepts an integer seed (deterministic) or a numpy Generator (advances
    its state).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    phases = rng.uniform(0.0, TWO_PI, size=6)
    phases = np.minimum(phases, np.nextafter(TWO_PI, 0.0))
    return ChannelRealization(*[float(t) for t in phases])
