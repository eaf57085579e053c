"""Finite-SNR formulas for the Z-interference channel with a relay.

Sum-rate capacity in the weak-interference regime, the feasibility
certificate search, the relay-decoding condition, achievable rates with
arbitrary powers, the relay-free baseline, and the genie-aided and cut-set
sum-rate upper bounds.  All rates are bits per channel use, logs base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import InputConfig, SnrSextet, WiCertificate

WI_GRID_POINTS = 4096
_REFINE_ITERS = 80
# Bump factors applied to the tight beta2 before the exact re-check, to
# absorb one rounding step in the division that produced it.
_BETA2_BUMPS = (1.0, 1.0 + 8 * 2.0**-52, 1.0 + 1e-12)


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self) -> None:
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("rates must be nonnegative")

    @property
    def total(self) -> float:
        return self.r1 + self.r2


@dataclass(frozen=True)
class CapacityValue:
    """A sum-rate formula value plus whether it is certified as capacity."""

    value: float
    certified: bool
    certificate: WiCertificate | None = None
    relay_ok: bool | None = None


@dataclass(frozen=True)
class CutsetBounds:
    r1_tx_side: float
    r1_rx_side: float
    r2_bound: float

    @property
    def sum_bound(self) -> float:
        return min(self.r1_tx_side, self.r1_rx_side) + self.r2_bound


def relay_condition_holds(snr: SnrSextet) -> bool:
    """True iff the relay can decode tx1 at the rate rx1 will be served:
    (snr11 + snr31) / (1 + snr21) <= snr13, boundary included."""
    return (snr.snr11 + snr.snr31) / (1.0 + snr.snr21) <= snr.snr13


def _wi_verify(snr: SnrSextet, beta1: float, beta2: float) -> bool:
    """Exact check of the two feasibility inequalities, no tolerance."""
    if not (0.0 <= beta1 <= 1.0 and 0.0 <= beta2 <= 1.0):
        return False
    lhs_a = snr.snr32 * (1.0 + snr.snr21) ** 2
    lhs_b = snr.snr21 * (1.0 + snr.snr32) ** 2
    ok_a = lhs_a <= beta1 * (snr.snr31 * (1.0 - beta2) - 2.0 * snr.snr32 * snr.snr11)
    ok_b = lhs_b <= beta2 * snr.snr22 * (1.0 - beta1)
    return bool(ok_a and ok_b)


def _certificate_from_beta1(snr: SnrSextet, beta1: float) -> WiCertificate | None:
    """Tight beta2 for a given beta1, bumped until the exact check passes."""
    lhs_b = snr.snr21 * (1.0 + snr.snr32) ** 2
    den = float(snr.snr22) * (1.0 - float(beta1))  # can underflow to 0
    if den <= 0.0:
        base = 0.0 if lhs_b == 0.0 else math.inf
    else:
        base = float(lhs_b) / den
    if not base <= 1.0:
        return None
    for bump in _BETA2_BUMPS:
        beta2 = min(base * bump, 1.0)
        if _wi_verify(snr, beta1, beta2):
            return WiCertificate(beta1, beta2)
    return None


def _wi_slack(snr: SnrSextet, beta1: float) -> float:
    """Feasibility margin of the first inequality at the tight beta2."""
    lhs_a = snr.snr32 * (1.0 + snr.snr21) ** 2
    lhs_b = snr.snr21 * (1.0 + snr.snr32) ** 2
    den = snr.snr22 * (1.0 - beta1)  # can underflow to 0
    if den <= 0.0:
        beta2 = 0.0 if lhs_b == 0.0 else math.inf
    else:
        beta2 = lhs_b / den
    if not beta2 <= 1.0:
        return -math.inf
    return beta1 * (snr.snr31 * (1.0 - beta2) - 2.0 * snr.snr32 * snr.snr11) - lhs_a


def wi_feasible(snr: SnrSextet, grid_points: int = WI_GRID_POINTS) -> WiCertificate | None:
    """Search for a weak-interference certificate (beta1, beta2) in [0,1]^2.

    The system is

        snr32 (1+snr21)^2 <= beta1 (snr31 (1-beta2) - 2 snr32 snr11)
        snr21 (1+snr32)^2 <= beta2 snr22 (1-beta1)

    Strategy: the second inequality is tight at the optimum, which reduces
    the search to beta1 alone; the resulting margin is concave in beta1, so
    a uniform grid plus one bisection-style refinement around the best
    bracket finds the maximizer, and the candidate is re-verified exactly
    against the raw inequalities before being returned.  Returns None when
    no certificate exists (infeasible at this resolution).
    """
    # Degenerate branches first: no interference at all, then snr22 = 0
    # where the tight-beta2 reduction would divide by zero.
    if snr.snr21 == 0.0 and snr.snr32 == 0.0:
        return WiCertificate(0.0, 0.0)
    if snr.snr22 == 0.0:
        if snr.snr21 > 0.0:
            return None
        return WiCertificate(1.0, 0.0) if _wi_verify(snr, 1.0, 0.0) else None

    # Grid stage vectorized; snr22 > 0 and beta1 < 1 hold on this path, so
    # the tight beta2 is a plain division.
    grid = np.linspace(0.0, 1.0, grid_points, endpoint=False)
    lhs_a = snr.snr32 * (1.0 + snr.snr21) ** 2
    lhs_b = snr.snr21 * (1.0 + snr.snr32) ** 2
    # snr22 * (1 - grid) can underflow to zero for subnormal snr22; the
    # resulting inf/nan beta2 rows are discarded by the <= 1 filter below.
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        beta2 = lhs_b / (snr.snr22 * (1.0 - grid))
        raw = grid * (
            snr.snr31 * (1.0 - np.minimum(beta2, 1.0)) - 2.0 * snr.snr32 * snr.snr11
        )
    slacks = np.where(beta2 <= 1.0, raw - lhs_a, -np.inf)
    best = int(np.argmax(slacks))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_points - 1)]

    # Bisection refinement on the concave margin: shrink the bracket by
    # comparing the two interior third points.
    for _ in range(_REFINE_ITERS):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if _wi_slack(snr, float(m1)) < _wi_slack(snr, float(m2)):
            lo = m1
        else:
            hi = m2

    candidates = [float(0.5 * (lo + hi)), float(grid[best]), 0.0]
    if snr.snr21 == 0.0:
        candidates.append(1.0)
    for beta1 in candidates:
        cert = _certificate_from_beta1(snr, beta1)
        if cert is not None:
            return cert
    return None


def wi_feasible_mask(
    snr11: np.ndarray,
    snr21: np.ndarray,
    snr31: np.ndarray,
    snr22: np.ndarray,
    snr32: np.ndarray,
) -> np.ndarray:
    """Vectorized feasibility decision over arrays of link SNRs.

    Uses the same two inequalities as `wi_feasible`, with the concave
    margin maximized in closed form instead of on a grid: with the second
    inequality tight, the margin g(beta1) = beta1 (A - B / (1 - beta1)) has
    A = snr31 - 2 snr32 snr11 and B = snr31 lhs_b / snr22, so its interior
    maximizer is beta1 = 1 - sqrt(B / A).  The best of the clipped interior
    point and the interval endpoints is re-checked exactly, which makes the
    returned mask sound in both directions up to floating point.
    """
    s11, s21, s31, s22, s32 = np.broadcast_arrays(
        np.asarray(snr11, dtype=float),
        np.asarray(snr21, dtype=float),
        np.asarray(snr31, dtype=float),
        np.asarray(snr22, dtype=float),
        np.asarray(snr32, dtype=float),
    )
    lhs_a = s32 * (1.0 + s21) ** 2
    lhs_b = s21 * (1.0 + s32) ** 2

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        beta2_at = np.where(s22 > 0.0, lhs_b / np.maximum(s22, 1e-300), np.inf)
        beta2_at = np.where(lhs_b == 0.0, 0.0, beta2_at)  # beta2 needed at beta1 = 0
        beta1_max = 1.0 - beta2_at
        a_coef = s31 - 2.0 * s32 * s11
        b_coef = np.where(s22 > 0.0, s31 * lhs_b / np.maximum(s22, 1e-300), 0.0)
        b_coef = np.where(lhs_b == 0.0, 0.0, b_coef)
        interior = 1.0 - np.sqrt(
            np.where(a_coef > 0.0, b_coef / np.maximum(a_coef, 1e-300), 0.0)
        )

    feasible = np.zeros(s11.shape, dtype=bool)
    admissible = beta1_max >= 0.0

    def margin(beta1: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            beta2 = np.where(
                beta1 < 1.0, beta2_at / np.maximum(1.0 - beta1, 1e-300), np.inf
            )
            beta2 = np.where(lhs_b == 0.0, 0.0, beta2)
            ok = beta2 <= 1.0
            val = (
                beta1 * (s31 * (1.0 - np.minimum(beta2, 1.0)) - 2.0 * s32 * s11)
                - lhs_a
            )
        return np.where(ok, val, -np.inf)

    for beta1 in (
        np.clip(interior, 0.0, np.maximum(beta1_max, 0.0)),
        np.zeros_like(s11),
        np.clip(beta1_max, 0.0, 1.0),
    ):
        feasible |= admissible & (margin(beta1) >= 0.0)
    return feasible


def sum_capacity_zicr(snr: SnrSextet) -> CapacityValue:
    """Relay-assisted sum-rate formula, flagged as certified capacity only
    when both the relay-decoding condition and the feasibility certificate
    hold; the raw value is always computed so sweeps can plot it."""
    value = math.log2(1.0 + (snr.snr11 + snr.snr31) / (1.0 + snr.snr21)) + math.log2(
        1.0 + snr.snr22 / (1.0 + snr.snr32)
    )
    relay_ok = relay_condition_holds(snr)
    cert = wi_feasible(snr)
    return CapacityValue(
        value=value,
        certified=bool(relay_ok and cert is not None),
        certificate=cert,
        relay_ok=relay_ok,
    )


def sum_capacity_zic(snr: SnrSextet) -> CapacityValue:
    """Relay-free baseline: treat-interference-as-noise sum rate, certified
    as capacity when snr21 <= snr22 (snr31 and snr32 are ignored)."""
    value = math.log2(1.0 + snr.snr11 / (1.0 + snr.snr21)) + math.log2(1.0 + snr.snr22)
    return CapacityValue(value=value, certified=bool(snr.snr21 <= snr.snr22))


def achievable_rates(snr: SnrSextet, inp: InputConfig) -> RatePair:
    """Decode-and-forward rates with interference treated as noise.

    Codebooks are independent, so inp.upsilon is ignored.  r1 is capped by
    what the relay can decode; r2 sees the relay as extra noise.
    """
    direct = (inp.p1 * snr.snr11 + inp.p3 * snr.snr31) / (1.0 + inp.p2 * snr.snr21)
    relay_decode = inp.p1 * snr.snr13
    r1 = math.log2(1.0 + min(direct, relay_decode))
    r2 = math.log2(1.0 + inp.p2 * snr.snr22 / (1.0 + inp.p3 * snr.snr32))
    return RatePair(r1=r1, r2=r2)


def genie_sum_upper_bound(snr: SnrSextet) -> tuple[float, bool]:
    """Genie-aided sum-rate upper bound and its validity flag.

    The derivation needs snr31 > snr32 sqrt(snr11 snr31); outside that the
    formula is still evaluated but flagged invalid.
    """
    value = math.log2(
        1.0
        + snr.snr21
        + (
            snr.snr11
            + snr.snr31
            + snr.snr11 * snr.snr32
            + 2.0 * math.sqrt(snr.snr11 * snr.snr31)
        )
        / (1.0 + snr.snr32)
    ) + math.log2(1.0 + snr.snr32 + snr.snr22 / (1.0 + snr.snr21))
    valid = snr.snr31 > snr.snr32 * math.sqrt(snr.snr11 * snr.snr31)
    return value, bool(valid)


def cutset_bounds(snr: SnrSextet) -> CutsetBounds:
    """Cut-set rate bounds: the tx1/relay broadcast cut, the rx1 side
    multiple-access cut, and the rx2 point-to-point cut."""
    return CutsetBounds(
        r1_tx_side=math.log2(1.0 + snr.snr11 + snr.snr31),
        r1_rx_side=math.log2(1.0 + snr.snr11 + snr.snr13),
        r2_bound=math.log2(1.0 + snr.snr22),
    )
