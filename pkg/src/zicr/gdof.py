"""Generalized-degrees-of-freedom analysis.

Link SNRs scale as snr11 = snr22 = SNR, snr21 = SNR^alpha, snr31 = SNR^beta,
snr32 = SNR^lam, snr13 = SNR^gamma.  The bounds below are piecewise-linear
functions of the exponents; the sweep couples lam = alpha (symmetric
interference), which is the regime where the maximal GDoF is certified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import GdofExponents


@dataclass(frozen=True)
class GdofReport:
    lower: float
    upper: float | None
    upper_valid: bool
    max_certified: float | None
    conditions_hold: bool


@dataclass(frozen=True)
class AlphaSweepRow:
    alpha: float
    lower: float
    upper: float
    upper_valid: bool
    zic_bound: float
    max_certified: float | None


def _pos(x):
    return np.maximum(x, 0.0)


def gdof_lower_arrays(alpha, beta, gamma, lam):
    """Achievable GDoF, vectorized over exponent arrays."""
    relay_leg = np.minimum(gamma, np.maximum(_pos(1.0 - alpha), _pos(beta - alpha)))
    return relay_leg + _pos(1.0 - lam)


def gdof_upper_arrays(alpha, beta, gamma, lam):
    """Upper bound value and validity, vectorized.

    The cut-set leg max{2, 1 + min(beta, gamma)} holds for any exponents;
    the genie leg max{alpha + lam, beta, 1 + beta - alpha - lam} needs
    beta > 2 lam + 1.  Where the genie leg is invalid the cut-set leg is
    returned with valid = False.
    """
    alpha, beta, gamma, lam = np.broadcast_arrays(
        np.asarray(alpha, dtype=float),
        np.asarray(beta, dtype=float),
        np.asarray(gamma, dtype=float),
        np.asarray(lam, dtype=float),
    )
    cutset = np.maximum(2.0, 1.0 + np.minimum(beta, gamma))
    genie = np.maximum(np.maximum(alpha + lam, beta), 1.0 + beta - alpha - lam)
    valid = beta > 2.0 * lam + 1.0
    value = np.where(valid, np.minimum(cutset, genie), cutset)
    return value, valid


def gdof_lower(exp: GdofExponents) -> float:
    return float(gdof_lower_arrays(exp.alpha, exp.beta, exp.gamma, exp.lam))


def gdof_upper(exp: GdofExponents) -> tuple[float, bool]:
    value, valid = gdof_upper_arrays(exp.alpha, exp.beta, exp.gamma, exp.lam)
    return float(value), bool(valid)


def gdof_max_conditions(exp: GdofExponents) -> bool:
    """Symmetric weak interference with a strong relay path:
    lam = alpha <= 1/2 and 1 + 2 alpha < beta <= gamma + alpha."""
    return bool(
        exp.lam == exp.alpha
        and exp.alpha <= 0.5
        and 1.0 + 2.0 * exp.alpha < exp.beta
        and exp.beta <= exp.gamma + exp.alpha
    )


def gdof_max(exp: GdofExponents) -> float | None:
    """Certified maximal GDoF 1 + beta - 2 alpha, or None when the
    certifying conditions fail (the first inequality on beta is strict)."""
    if not gdof_max_conditions(exp):
        return None
    return 1.0 + exp.beta - 2.0 * exp.alpha


def gdof_zic_upper() -> float:
    """GDoF cap of the relay-free channel: two interference-free links."""
    return 2.0


def gdof_report(exp: GdofExponents) -> GdofReport:
    upper, valid = gdof_upper(exp)
    return GdofReport(
        lower=gdof_lower(exp),
        upper=upper,
        upper_valid=valid,
        max_certified=gdof_max(exp),
        conditions_hold=gdof_max_conditions(exp),
    )


def sweep_alpha(beta: float, gamma: float, n_points: int) -> list[AlphaSweepRow]:
    """Sweep alpha = lam over [0, 1] at fixed (beta, gamma)."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    rows = []
    for alpha in np.linspace(0.0, 1.0, n_points):
        exp = GdofExponents(alpha=float(alpha), beta=beta, gamma=gamma, lam=float(alpha))
        upper, valid = gdof_upper(exp)
        rows.append(
            AlphaSweepRow(
                alpha=float(alpha),
                lower=gdof_lower(exp),
                upper=upper,
                upper_valid=valid,
                zic_bound=gdof_zic_upper(),
                max_certified=gdof_max(exp),
            )
        )
    return rows
