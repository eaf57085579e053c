"""Complex-Gaussian log-det oracle.

Everything in `capacity` has a closed form; this module re-derives those
numbers from first principles: build the joint covariance of inputs,
outputs, and genie signals at a fixed phase realization, take log-det
entropies of principal submatrices, and form conditional mutual
informations from Schur-complement conditional covariances.  Phase
averages use a deterministic trapezoid rule on the only angle the
statistics depend on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    ChannelRealization,
    GenieParams,
    HermitianCov,
    InputConfig,
    SnrSextet,
    WiCertificate,
)

LOG2_PI_E = math.log2(math.pi * math.e)

# Relative eigenvalue floor below which a principal submatrix is treated as
# singular; differential entropy is then undefined.
PD_REL_TOL = 1e-12

LABELS = ("X1", "X2", "X3", "Y1", "Y2", "Y3", "S1", "S2")

# Neutral genie for callers that only need input/output statistics: unit
# auxiliary noises uncorrelated with the channel noises.
NEUTRAL_GENIE = GenieParams(eta1=1.0 + 0j, eta2=1.0 + 0j, vtilde1=0j, vtilde2=0j)

PHASE_QUADRATURE_POINTS = 512


class DegenerateEntropyError(ValueError):
    """Requested differential entropy of a singular Gaussian block."""


class GenieDegenerateError(ValueError):
    """Genie construction impossible for the given certificate."""


@dataclass(frozen=True)
class JointGaussian:
    """Joint circularly-symmetric Gaussian vector with named coordinates."""

    cov: HermitianCov
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.cov.dim:
            raise ValueError("label count must match covariance dimension")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")

    def indices(self, subset) -> list[int]:
        pos = {name: k for k, name in enumerate(self.labels)}
        out = []
        for name in subset:
            if name not in pos:
                raise KeyError(f"unknown label {name!r}")
            out.append(pos[name])
        return out


def _coeff(snr: float, theta: float) -> complex:
    return math.sqrt(snr) * cmath.exp(1j * theta)


def build_joint(
    snr: SnrSextet,
    inp: InputConfig,
    genie: GenieParams | None = None,
    phases: ChannelRealization | None = None,
) -> JointGaussian:
    """Joint covariance of (X1, X2, X3, Y1, Y2, Y3, S1, S2).

    The underlying primitives are (X1, X2, X3, Z1, Z2, Z3, W1, W2) with
    cov(X1, X3) = upsilon * sqrt(p1 p3), X2 independent, unit noises, and
    E{W_k conj(Z_k)} = vtilde_k.  Outputs follow

        Y1 = H11 X1 + H21 X2 + H31 X3 + Z1
        Y2 = H22 X2 + H32 X3 + Z2
        Y3 = H13 X1 + Z3
        S1 = H11 X1 + H31 X3 + eta1 W1
        S2 = H22 X2 + eta2 W2

    with H_lk = sqrt(snr_lk) exp(j theta_lk).
    """
    if genie is None:
        genie = NEUTRAL_GENIE
    if phases is None:
        phases = ChannelRealization(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    h11 = _coeff(snr.snr11, phases.theta11)
    h21 = _coeff(snr.snr21, phases.theta21)
    h31 = _coeff(snr.snr31, phases.theta31)
    h22 = _coeff(snr.snr22, phases.theta22)
    h32 = _coeff(snr.snr32, phases.theta32)
    h13 = _coeff(snr.snr13, phases.theta13)

    # Primitive covariance, order (X1, X2, X3, Z1, Z2, Z3, W1, W2).
    k = np.zeros((8, 8), dtype=np.complex128)
    k[0, 0] = inp.p1
    k[1, 1] = inp.p2
    k[2, 2] = inp.p3
    cross = inp.upsilon * math.sqrt(inp.p1 * inp.p3)
    k[0, 2] = cross
    k[2, 0] = np.conj(cross)
    for d in (3, 4, 5, 6, 7):
        k[d, d] = 1.0
    k[6, 3] = genie.vtilde1  # E{W1 conj(Z1)}
    k[3, 6] = np.conj(genie.vtilde1)
    k[7, 4] = genie.vtilde2
    k[4, 7] = np.conj(genie.vtilde2)

    t = np.zeros((8, 8), dtype=np.complex128)
    t[0, 0] = 1.0  # X1
    t[1, 1] = 1.0  # X2
    t[2, 2] = 1.0  # X3
    t[3, 0], t[3, 1], t[3, 2], t[3, 3] = h11, h21, h31, 1.0  # Y1
    t[4, 1], t[4, 2], t[4, 4] = h22, h32, 1.0  # Y2
    t[5, 0], t[5, 5] = h13, 1.0  # Y3
    t[6, 0], t[6, 2], t[6, 6] = h11, h31, genie.eta1  # S1
    t[7, 1], t[7, 7] = h22, genie.eta2  # S2

    cov = t @ k @ t.conj().T
    return JointGaussian(cov=HermitianCov(cov), labels=LABELS)


def _pd_eigs(block: np.ndarray, what: str) -> np.ndarray:
    eigs = np.linalg.eigvalsh(block)
    top = float(eigs[-1])
    if top <= 0.0 or float(eigs[0]) <= PD_REL_TOL * top:
        raise DegenerateEntropyError(f"singular {what} (eigs {eigs})")
    return eigs


def logdet_entropy(jg: JointGaussian, subset) -> float:
    """Differential entropy log2 det(pi e K) of the named coordinates."""
    idx = jg.indices(subset)
    if not idx:
        raise ValueError("subset must be non-empty")
    eigs = _pd_eigs(jg.cov.submatrix(idx), f"block for subset {tuple(subset)!r}")
    return len(idx) * LOG2_PI_E + float(np.sum(np.log2(eigs)))


def _conditional_eigs(jg: JointGaussian, b: tuple, given: tuple) -> np.ndarray:
    """Eigenvalues of cov(B | given), via a Schur complement.

    Subtracting the regression term directly keeps the conditional block
    well scaled even when the joint covariance is badly conditioned; taking
    entropy differences of full blocks instead loses roughly
    eps * cond(joint) of relative accuracy to their smallest eigenvalues.
    """
    bi = jg.indices(b)
    if not given:
        return _pd_eigs(jg.cov.submatrix(bi), f"block for subset {tuple(b)!r}")
    si = jg.indices(given)
    cov = jg.cov.entries
    bb = cov[np.ix_(bi, bi)]
    bs = cov[np.ix_(bi, si)]
    ss = cov[np.ix_(si, si)]
    _pd_eigs(ss, f"conditioning block {tuple(given)!r}")
    schur = bb - bs @ np.linalg.solve(ss, bs.conj().T)
    schur = 0.5 * (schur + schur.conj().T)
    return _pd_eigs(schur, f"conditional block {tuple(b)!r} given {tuple(given)!r}")


def conditional_mi(jg: JointGaussian, a, b, given=()) -> float:
    """I(A; B | C) in bits, h(B|C) - h(B|A,C) on Schur-complement blocks.

    Tiny negatives from cancellation (>= -1e-10) are clamped to zero;
    anything more negative raises, because it signals a broken covariance.
    """
    a = tuple(a)
    b = tuple(b)
    given = tuple(given)
    if set(a) & set(b) or set(a) & set(given) or set(b) & set(given):
        raise ValueError("label sets must be disjoint")

    eigs_c = _conditional_eigs(jg, b, given)
    eigs_ac = _conditional_eigs(jg, b, a + given)
    value = float(np.sum(np.log2(eigs_c)) - np.sum(np.log2(eigs_ac)))
    if value < -1e-10:
        raise ValueError(f"conditional MI evaluated to {value}, covariance broken")
    return max(value, 0.0)


def make_genie(snr: SnrSextet, cert: WiCertificate) -> GenieParams:
    """Genie parameters from a weak-interference certificate.

    Identifies beta_k with |vtilde_k|^2, picks vtilde real nonnegative
    (phase freedom is unconstrained), and scales eta so that
    eta1 vtilde1 = 1 + snr21 and eta2 vtilde2 = 1 + snr32.  The returned
    parameters are re-checked against the two magnitude inequalities that make
    the genie side information useless to an optimal receiver.
    """
    if cert.beta1 <= 0.0 or cert.beta2 <= 0.0:
        raise GenieDegenerateError(
            "certificate with beta=0 leaves the genie scale undefined "
            f"(beta1={cert.beta1}, beta2={cert.beta2})"
        )
    vtilde1 = math.sqrt(cert.beta1)
    vtilde2 = math.sqrt(cert.beta2)
    eta1 = (1.0 + snr.snr21) / vtilde1
    eta2 = (1.0 + snr.snr32) / vtilde2

    # Magnitude inequalities, equivalent to the certificate system after the
    # beta = |vtilde|^2 substitution; small relative slack absorbs the
    # division/multiplication rounding difference on borderline certificates.
    lhs1 = snr.snr32 * eta1 * eta1
    rhs1 = snr.snr31 * (1.0 - vtilde2 * vtilde2) - 2.0 * snr.snr32 * snr.snr11
    lhs2 = snr.snr21 * eta2 * eta2
    rhs2 = snr.snr22 * (1.0 - vtilde1 * vtilde1)
    slack = 1e-12
    if lhs1 > rhs1 + slack * max(abs(lhs1), abs(rhs1), 1.0) or lhs2 > rhs2 + slack * max(
        abs(lhs2), abs(rhs2), 1.0
    ):
        raise ValueError(
            "certificate does not satisfy the genie magnitude inequalities: "
            f"({lhs1} <= {rhs1}, {lhs2} <= {rhs2})"
        )
    return GenieParams(
        eta1=complex(eta1), eta2=complex(eta2), vtilde1=complex(vtilde1), vtilde2=complex(vtilde2)
    )


def _mi_y1_leg(jg: JointGaussian, inp: InputConfig) -> float:
    sources = []
    if inp.p1 > 0.0:
        sources.append("X1")
    if inp.p3 > 0.0:
        sources.append("X3")
    if not sources:
        return 0.0
    return conditional_mi(jg, sources, ("Y1",))


def _mi_y2_leg(jg: JointGaussian, inp: InputConfig) -> float:
    if inp.p2 <= 0.0:
        return 0.0
    return conditional_mi(jg, ("X2",), ("Y2",))


def sum_rate_at_phases(
    snr: SnrSextet, inp: InputConfig, phases: ChannelRealization
) -> float:
    """I(X1,X3; Y1) + I(X2; Y2) at one fixed phase realization."""
    jg = build_joint(snr, inp, NEUTRAL_GENIE, phases)
    return _mi_y1_leg(jg, inp) + _mi_y2_leg(jg, inp)


def sum_rate_via_logdet(
    snr: SnrSextet, inp: InputConfig, n_theta: int = PHASE_QUADRATURE_POINTS
) -> float:
    """Phase-averaged I(X1,X3; Y1) + I(X2; Y2) from the log-det oracle.

    With upsilon = 0 the per-realization value is phase invariant and one
    realization suffices.  Otherwise only theta1 = arg(h11 conj(h31)
    upsilon) matters, and a uniform n_theta-point trapezoid average over it
    is spectrally accurate for this smooth periodic integrand.
    """
    cross_active = (
        abs(inp.upsilon) > 0.0
        and inp.p1 > 0.0
        and inp.p3 > 0.0
        and snr.snr11 > 0.0
        and snr.snr31 > 0.0
    )
    if not cross_active:
        return sum_rate_at_phases(snr, inp, ChannelRealization(0.0, 0.0, 0.0, 0.0, 0.0, 0.0))

    arg_upsilon = cmath.phase(inp.upsilon) % (2.0 * math.pi)
    thetas = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    leg1 = 0.0
    for t in thetas:
        theta11 = float((t - arg_upsilon) % (2.0 * math.pi))
        phases = ChannelRealization(theta11, 0.0, 0.0, 0.0, 0.0, 0.0)
        jg = build_joint(snr, inp, NEUTRAL_GENIE, phases)
        leg1 += _mi_y1_leg(jg, inp)
    leg1 /= n_theta

    jg0 = build_joint(snr, inp, NEUTRAL_GENIE, ChannelRealization(0.0, 0.0, 0.0, 0.0, 0.0, 0.0))
    return leg1 + _mi_y2_leg(jg0, inp)
