"""Self-check suites: every closed form re-derived through the log-det
oracle, the statistical identities behind the genie construction, and the
brute-force optimization claims.

`run_all` executes each named check with deterministic sub-seeds and
returns structured results; the command-line `verify` mode renders them as
a table and fails on any red row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import (
    achievable_rates,
    cutset_bounds,
    genie_sum_upper_bound,
    relay_condition_holds,
    sum_capacity_zic,
    sum_capacity_zicr,
    wi_feasible,
)
from .gaussian import (
    JointGaussian,
    build_joint,
    conditional_mi,
    make_genie,
    sum_rate_at_phases,
    sum_rate_via_logdet,
)
from .model import (
    HermitianCov,
    InputConfig,
    SnrSextet,
    sample_channel,
)
from .oracle import (
    KktProblem,
    Prop1Setup,
    ResidualCoeffs,
    claimed_phase_average,
    exact_phase_average,
    kkt_closed_form,
    kkt_solve,
    maxp_gdof_monotonicity,
    numeric_phase_average,
    prop1_bruteforce,
    y1_conditional_variance,
)

DEFAULT_SEED = 42

# Symmetric reference scenario used by the record re-validation check.
# snr13 = 1e2 satisfies the relay-decoding condition with two orders of
# margin while keeping every conditioning block inside the log-det
# oracle's positive-definiteness domain (condition number ~1e4).
REFERENCE_SNR = SnrSextet(
    snr11=1.0, snr21=0.01, snr31=1.0, snr22=1.0, snr32=0.01, snr13=1e2
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def sample_snr_loguniform(
    rng: np.random.Generator, low: float = 1e-3, high: float = 1e3
) -> SnrSextet:
    """One SnrSextet with all six links log-uniform on [low, high]."""
    lo, hi = math.log(low), math.log(high)
    vals = np.exp(rng.uniform(lo, hi, size=6))
    return SnrSextet(*[float(v) for v in vals])


def sample_wi_feasible_snr(
    rng: np.random.Generator, max_tries: int = 1000
) -> SnrSextet:
    """Rejection-sample a sextet passing both certified-capacity checks.

    Interference links are drawn weak and the relay links strong, so the
    acceptance rate is high; the certificate search still decides.
    """

    def lu(lo: float, hi: float) -> float:
        return float(np.exp(rng.uniform(math.log(lo), math.log(hi))))

    for _ in range(max_tries):
        snr = SnrSextet(
            snr11=lu(0.1, 10.0),
            snr21=lu(1e-4, 3e-2),
            snr31=lu(1.0, 100.0),
            snr22=lu(0.1, 10.0),
            snr32=lu(1e-4, 3e-2),
            snr13=lu(1e2, 1e6),
        )
        if relay_condition_holds(snr) and wi_feasible(snr) is not None:
            return snr
    raise RuntimeError("rejection sampler failed to find a feasible scenario")


def closed_vs_logdet_gap(snr: SnrSextet) -> float:
    """Largest disagreement between the closed forms and the log-det oracle
    at p = 1: relay-assisted sum, relay-free sum, and per-leg rates."""
    inp = InputConfig()
    gaps = [
        abs(sum_capacity_zicr(snr).value - sum_rate_via_logdet(snr, inp))
    ]
    zic = SnrSextet(snr.snr11, snr.snr21, 0.0, snr.snr22, 0.0, snr.snr13)
    gaps.append(abs(sum_capacity_zic(snr).value - sum_rate_via_logdet(zic, inp)))

    jg = build_joint(snr, inp)
    leg1 = conditional_mi(jg, ("X1", "X3"), ("Y1",))
    relay_leg = conditional_mi(jg, ("X1",), ("Y3",))
    leg2 = conditional_mi(jg, ("X2",), ("Y2",))
    rates = achievable_rates(snr, inp)
    gaps.append(abs(rates.r1 - min(leg1, relay_leg)))
    gaps.append(abs(rates.r2 - leg2))
    return max(gaps)


def _lemma3_joint(
    p1: float, p2: float, c1: complex, c2: complex, s1: float, s2: float, g: float
) -> JointGaussian:
    """Two noisy observations of the same mixture: Y_k = c1 X1 + c2 X2 + Z_k
    with noise variances s1, s2 and cross-correlation E{Z1 conj(Z2)} = g."""
    k = np.zeros((4, 4), dtype=np.complex128)
    k[0, 0] = p1
    k[1, 1] = p2
    k[2, 2] = s1
    k[3, 3] = s2
    k[2, 3] = g
    k[3, 2] = np.conj(g)
    t = np.zeros((4, 4), dtype=np.complex128)
    t[0, 0] = 1.0
    t[1, 1] = 1.0
    t[2, 0], t[2, 1], t[2, 2] = c1, c2, 1.0
    t[3, 0], t[3, 1], t[3, 3] = c1, c2, 1.0
    cov = t @ k @ t.conj().T
    return JointGaussian(cov=HermitianCov(cov), labels=("X1", "X2", "Y1", "Y2"))


def check_closed_vs_logdet(rng: np.random.Generator, draws: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(draws):
        worst = max(worst, closed_vs_logdet_gap(sample_snr_loguniform(rng)))
    return CheckResult(
        name="closed-form-vs-logdet",
        passed=worst <= 1e-10,
        detail=f"max gap {worst:.3e} over {draws} draws (tol 1e-10)",
    )


def check_lemma3_iff(rng: np.random.Generator, draws: int = 1000) -> CheckResult:
    """Side observation useless iff the noise cross-correlation equals the
    second noise variance; a >= 1% gap must show as clearly positive MI."""
    bad = 0
    for _ in range(draws):
        p1, p2 = rng.uniform(0.3, 3.0, size=2)
        phase1, phase2 = rng.uniform(0.0, 2.0 * math.pi, size=2)
        c1 = math.sqrt(rng.uniform(0.3, 3.0)) * np.exp(1j * phase1)
        c2 = math.sqrt(rng.uniform(0.3, 3.0)) * np.exp(1j * phase2)
        s1 = rng.uniform(0.5, 2.0)
        s2 = rng.uniform(0.3, 0.8) * s1
        satisfied = rng.uniform() < 0.5
        g = s2 if satisfied else s2 * (1.0 - rng.uniform(0.01, 0.5))
        jg = _lemma3_joint(p1, p2, c1, c2, s1, s2, g)
        mi = conditional_mi(jg, ("X1", "X2"), ("Y1",), given=("Y2",))
        if satisfied and mi >= 1e-10:
            bad += 1
        if not satisfied and mi <= 1e-6:
            bad += 1
    return CheckResult(
        name="lemma3-iff",
        passed=bad == 0,
        detail=f"{bad} misclassified of {draws} setups",
    )


def check_genie_zero_information(
    rng: np.random.Generator, scenarios: int = 20
) -> CheckResult:
    worst_product = 0.0
    worst_mi = 0.0
    for _ in range(scenarios):
        snr = sample_wi_feasible_snr(rng)
        cert = wi_feasible(snr)
        assert cert is not None
        genie = make_genie(snr, cert)
        worst_product = max(
            worst_product,
            abs(genie.eta1 * genie.vtilde1 - (1.0 + snr.snr21)),
            abs(genie.eta2 * genie.vtilde2 - (1.0 + snr.snr32)),
        )
        upsilon = rng.uniform(0.0, 0.9) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        inp = InputConfig(upsilon=complex(upsilon))
        for _ in range(3):
            jg = build_joint(snr, inp, genie, sample_channel(rng))
            worst_mi = max(
                worst_mi,
                conditional_mi(jg, ("X1", "X3"), ("S1",), given=("Y1",)),
                conditional_mi(jg, ("X2",), ("S2",), given=("Y2",)),
            )
    passed = worst_product <= 1e-14 and worst_mi < 1e-10
    return CheckResult(
        name="genie-zero-information",
        passed=passed,
        detail=(
            f"max product-identity error {worst_product:.3e} (tol 1e-14), "
            f"max conditional MI {worst_mi:.3e} (tol 1e-10)"
        ),
    )


def check_mi_chain_rule(rng: np.random.Generator, draws: int = 50) -> CheckResult:
    """I(A,B;Y) decomposed as I(A;Y) + I(B;Y|A) goes through different
    Schur complements on each side, so agreement is a real consistency test."""
    worst = 0.0
    sources = ("X1", "X2", "X3")
    sinks = ("Y1", "Y2", "Y3")
    for _ in range(draws):
        snr = sample_snr_loguniform(rng, 1e-2, 1e2)
        upsilon = rng.uniform(0.0, 0.9) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        jg = build_joint(
            snr, InputConfig(upsilon=complex(upsilon)), phases=sample_channel(rng)
        )
        perm = [sources[i] for i in rng.permutation(3)]
        a, b = (perm[0],), tuple(perm[1:])
        y = tuple(sinks[i] for i in rng.permutation(3)[: int(rng.integers(1, 4))])
        joint = conditional_mi(jg, a + b, y)
        chain = conditional_mi(jg, a, y) + conditional_mi(jg, b, y, given=a)
        worst = max(worst, abs(joint - chain))
    return CheckResult(
        name="mi-chain-rule",
        passed=worst <= 1e-10,
        detail=f"max chain-rule gap {worst:.3e} over {draws} splits (tol 1e-10)",
    )


def check_phase_invariance(rng: np.random.Generator, draws: int = 100) -> CheckResult:
    snr = sample_snr_loguniform(rng, 1e-2, 1e2)
    inp = InputConfig()
    values = np.array(
        [sum_rate_at_phases(snr, inp, sample_channel(rng)) for _ in range(draws)]
    )
    var = float(np.var(values))
    return CheckResult(
        name="phase-invariance-at-zero-correlation",
        passed=var < 1e-20,
        detail=f"sum-rate variance {var:.3e} over {draws} realizations (tol 1e-20)",
    )


def check_input_optimum_corner(
    rng: np.random.Generator, scenarios: int = 20
) -> CheckResult:
    bad = []
    for _ in range(scenarios):
        snr = sample_wi_feasible_snr(rng)
        cert = wi_feasible(snr)
        assert cert is not None
        setup = Prop1Setup(snr=snr, genie=make_genie(snr, cert))
        result = prop1_bruteforce(setup)
        if result.argmax != (0.0, 1.0, 1.0, 1.0):
            bad.append(result.argmax)
    return CheckResult(
        name="input-optimum-corner",
        passed=not bad,
        detail=(
            f"argmax at (|v|,P1,P2,P3)=(0,1,1,1) in {scenarios - len(bad)}/{scenarios} "
            f"scenarios" + (f"; offenders {bad[:3]}" if bad else "")
        ),
    )


def check_profile_monotonicity(
    rng: np.random.Generator, scenarios: int = 20, grid: int = 21
) -> CheckResult:
    """The conditional-variance profile falls as |v| grows at full power and
    its zero-correlation value rises with each input power."""
    tol = 1e-12
    worst = 0.0
    axis = np.linspace(0.0, 1.0, grid)
    for _ in range(scenarios):
        snr = sample_wi_feasible_snr(rng)
        cert = wi_feasible(snr)
        assert cert is not None
        genie = make_genie(snr, cert)
        setup = Prop1Setup(snr=snr, genie=genie)

        c_full = ResidualCoeffs.from_setup(setup, InputConfig())
        f2 = y1_conditional_variance(c_full, c_full.c1 - c_full.c2 * axis)
        worst = max(worst, float(np.max(np.diff(f2))))

        c4, c5, th2 = c_full.c4, c_full.c5, c_full.theta2
        p1 = axis[:, None, None]
        p2 = axis[None, :, None]
        p3 = axis[None, None, :]
        a = snr.snr11 * p1 + snr.snr31 * p3
        f3 = (1.0 + snr.snr21 * p2) + (
            a * c4 - c5**2 - 2.0 * a * c5 * math.cos(th2)
        ) / (a + c4)
        for ax in (0, 1, 2):
            worst = max(worst, float(np.max(-np.diff(f3, axis=ax))))
    return CheckResult(
        name="profile-monotonicity",
        passed=worst <= tol,
        detail=f"worst monotonicity violation {worst:.3e} (slack 1e-12)",
    )


def _draw_residual_coeffs(rng: np.random.Generator) -> tuple[ResidualCoeffs, float]:
    def lu(lo: float, hi: float) -> float:
        return float(np.exp(rng.uniform(math.log(lo), math.log(hi))))

    a = lu(0.05, 5.0)  # snr11 p1
    b = lu(0.05, 5.0)  # snr31 p3
    eta = lu(0.3, 3.0)
    vt = float(rng.uniform(0.0, 0.95))
    coeffs = ResidualCoeffs(
        c1=a + b,
        c2=2.0 * math.sqrt(a * b),
        c3=1.0 + lu(1e-3, 2.0),
        c4=eta**2,
        c5=eta * vt,
        theta2=float(rng.uniform(0.0, 2.0 * math.pi)),
    )
    return coeffs, float(rng.uniform(0.0, 1.0))


def check_phase_average_identity(
    rng: np.random.Generator, draws: int = 100
) -> CheckResult:
    """Quadrature phase average vs. the candidate single-point closed form.

    The candidate form evaluates the conditional-variance profile at the
    single coherent power c1 - c2|v| (the phase-opposed point); it equals
    the true phase average only when c2 |v| (c4^2 + c5^2
    - 2 c4 c5 cos theta2) = 0, so generic draws separate the two.
    """
    worst = 0.0
    for _ in range(draws):
        coeffs, v = _draw_residual_coeffs(rng)
        numeric = numeric_phase_average(coeffs, v)
        claimed = claimed_phase_average(coeffs, v)
        worst = max(worst, abs(numeric - claimed))
    return CheckResult(
        name="phase-average-identity",
        passed=worst < 1e-9,
        detail=f"max |quadrature - closed form| {worst:.3e} over {draws} draws (tol 1e-9)",
    )


def check_phase_average_exact(rng: np.random.Generator, draws: int = 100) -> CheckResult:
    worst = 0.0
    for _ in range(draws):
        coeffs, v = _draw_residual_coeffs(rng)
        numeric = numeric_phase_average(coeffs, v)
        exact = exact_phase_average(coeffs, v)
        worst = max(worst, abs(numeric - exact))
    return CheckResult(
        name="phase-average-quadrature-vs-analytic",
        passed=worst <= 1e-10,
        detail=f"max |quadrature - analytic| {worst:.3e} over {draws} draws (tol 1e-10)",
    )


def sample_feasible_kkt(rng: np.random.Generator, max_tries: int = 1000) -> KktProblem:
    def lu(lo: float, hi: float) -> float:
        return float(np.exp(rng.uniform(math.log(lo), math.log(hi))))

    for _ in range(max_tries):
        prob = KktProblem(
            snr11=lu(0.1, 10.0),
            snr31=lu(1.0, 50.0),
            snr32=lu(1e-3, 0.1),
            nbar1=float(rng.uniform(0.1, 2.0)),
            nbar2=float(rng.uniform(0.1, 0.5)),
            n=int(rng.integers(1, 9)),
        )
        if prob.feasible:
            return prob
    raise RuntimeError("failed to draw a feasible allocation problem")


def check_kkt_uniform_optimum(
    rng: np.random.Generator, problems: int = 10, restarts: int = 10
) -> CheckResult:
    worst_dev = 0.0
    worst_gap = 0.0
    worst_excess = -math.inf
    for _ in range(problems):
        prob = sample_feasible_kkt(rng)
        target = kkt_closed_form(prob)
        m = 2 * prob.n
        starts = [None] + [
            rng.uniform(0.0, 1.0, size=m) * (prob.n * rng.uniform(0.0, 1.0) / m)
            for _ in range(restarts)
        ]
        for start in starts:
            d3, dm, objective = kkt_solve(prob, start=start)
            worst_dev = max(
                worst_dev,
                float(np.max(np.abs(d3 - 0.5))),
                float(np.max(np.abs(dm - 0.5))),
            )
            worst_gap = max(worst_gap, abs(objective - target))
            worst_excess = max(worst_excess, objective - target)
    passed = worst_dev <= 1e-6 and worst_gap <= 1e-6 and worst_excess <= 1e-9
    return CheckResult(
        name="kkt-uniform-optimum",
        passed=passed,
        detail=(
            f"max |d - 1/2| {worst_dev:.3e}, max objective gap {worst_gap:.3e}, "
            f"max excess over closed form {worst_excess:.3e}"
        ),
    )


def check_maxp_monotonicity(rng: np.random.Generator, draws: int = 10) -> CheckResult:
    bad = 0
    for _ in range(draws):
        s11 = float(np.exp(rng.uniform(math.log(0.1), math.log(10.0))))
        s31 = float(np.exp(rng.uniform(math.log(1.0), math.log(100.0))))
        s32 = float(rng.uniform(0.0, 0.8)) * math.sqrt(s31 / s11)
        snr = SnrSextet(s11, 1.0, s31, 1.0, s32, 1.0)
        if not maxp_gdof_monotonicity(snr, grid=51):
            bad += 1
    return CheckResult(
        name="maxp-monotonicity",
        passed=bad == 0,
        detail=f"{draws - bad}/{draws} draws monotone under the validity condition",
    )


def check_capacity_record_revalidation(rng: np.random.Generator) -> CheckResult:
    """Every number the capacity mode emits, re-derived independently."""
    snr = REFERENCE_SNR
    issues = []

    cap = sum_capacity_zicr(snr)
    gap = abs(cap.value - sum_rate_via_logdet(snr, InputConfig()))
    if gap > 1e-10:
        issues.append(f"sum vs logdet gap {gap:.3e}")

    cut = cutset_bounds(snr)
    no_interf = SnrSextet(snr.snr11, 0.0, snr.snr31, snr.snr22, 0.0, snr.snr13)
    jg = build_joint(no_interf, InputConfig())
    tx_side = conditional_mi(jg, ("X1", "X3"), ("Y1",))
    if abs(tx_side - cut.r1_tx_side) > 1e-10:
        issues.append("tx-side cut mismatch")
    mrc = SnrSextet(snr.snr11, 0.0, 0.0, snr.snr22, 0.0, snr.snr13)
    jg = build_joint(mrc, InputConfig())
    rx_side = conditional_mi(jg, ("X1",), ("Y1", "Y3"))
    if abs(rx_side - cut.r1_rx_side) > 1e-10:
        issues.append("rx-side cut mismatch")
    r2 = conditional_mi(jg, ("X2",), ("Y2",))
    if abs(r2 - cut.r2_bound) > 1e-10:
        issues.append("rx2 cut mismatch")

    if cap.certificate is None:
        issues.append("reference scenario lost its certificate")
    else:
        genie = make_genie(snr, cap.certificate)
        jg = build_joint(snr, InputConfig(), genie, sample_channel(rng))
        if conditional_mi(jg, ("X1", "X3"), ("S1",), given=("Y1",)) >= 1e-10:
            issues.append("genie leaks information at rx1")
        if conditional_mi(jg, ("X2",), ("S2",), given=("Y2",)) >= 1e-10:
            issues.append("genie leaks information at rx2")

    ub, valid = genie_sum_upper_bound(snr)
    maxp = (
        snr.snr11
        + snr.snr31
        + snr.snr11 * snr.snr32
        + 2.0 * math.sqrt(snr.snr11 * snr.snr31)
    ) / (1.0 + snr.snr32)
    structural = math.log2(1.0 + snr.snr21 + maxp) + math.log2(
        1.0 + snr.snr32 + snr.snr22 / (1.0 + snr.snr21)
    )
    if abs(ub - structural) > 1e-12:
        issues.append("genie bound structural mismatch")
    if valid and ub < cap.value - 1e-12:
        issues.append("genie bound below certified sum")
    if cut.sum_bound < cap.value - 1e-12:
        issues.append("cut-set sum below certified sum")

    return CheckResult(
        name="capacity-record-revalidation",
        passed=not issues,
        detail="; ".join(issues) if issues else "all emitted numerics re-derived",
    )


ALL_CHECKS = (
    check_closed_vs_logdet,
    check_lemma3_iff,
    check_genie_zero_information,
    check_mi_chain_rule,
    check_phase_invariance,
    check_input_optimum_corner,
    check_profile_monotonicity,
    check_phase_average_identity,
    check_phase_average_exact,
    check_kkt_uniform_optimum,
    check_maxp_monotonicity,
    check_capacity_record_revalidation,
)


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    root = np.random.default_rng(seed)
    streams = root.spawn(len(ALL_CHECKS))
    results = []
    for check, rng in zip(ALL_CHECKS, streams):
        name = check.__name__.removeprefix("check_").replace("_", "-")
        try:
            results.append(check(rng))
        except Exception as exc:  # a crashed check is a failed check
            results.append(CheckResult(name=name, passed=False, detail=f"raised {exc!r}"))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [
        f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}"
        for r in results
    ]
    counts = sum(r.passed for r in results)
    lines.append(f"{counts}/{len(results)} checks passed")
    return "\n".join(lines)


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)
