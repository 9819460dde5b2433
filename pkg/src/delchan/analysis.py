"""Run-transition probabilities, rate formulas, and reference parameter sets.

A blown-up 1-run of N1 bits arrives with a Binomial/Poisson survivor count
Z; the decoder misreads it as a 2-run when Z > T and loses it when Z = 0,
and symmetrically for 2-runs. This module computes those four transition
probabilities exactly, or as channel-parameter-uniform upper bounds, and
aggregates them into the decodability coefficient gamma and the
distortion lower-bound coefficient xi. It also evaluates the overall rate
formulas and ships the reference parameter sets with a verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, fsum, lgamma, log, log2

from .inner import inner_rate_formula
from .scheme import ceil_snapped


def binary_entropy(x: float) -> float:
    if not 0.0 < x < 1.0:
        raise ValueError(f"entropy argument {x} outside (0, 1)")
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def _log_binom_pmf(n: int, p: float, k: int) -> float:
    return (
        lgamma(n + 1)
        - lgamma(k + 1)
        - lgamma(n - k + 1)
        + k * log(p)
        + (n - k) * log(1.0 - p)
    )


def binom_cdf(n: int, p: float, t: int) -> float:
    """Pr[Bin(n, p) <= t], summed directly with compensated summation."""
    if t < 0:
        return 0.0
    if t >= n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    return min(1.0, fsum(exp(_log_binom_pmf(n, p, k)) for k in range(t + 1)))


def binom_sf(n: int, p: float, t: int) -> float:
    """Pr[Bin(n, p) > t], summed over the upper tail directly."""
    if t < 0:
        return 1.0
    if t >= n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    return min(1.0, fsum(exp(_log_binom_pmf(n, p, k)) for k in range(t + 1, n + 1)))


def poisson_cdf(mu: float, t: int) -> float:
    """Pr[Poisson(mu) <= t], summed directly."""
    if t < 0:
        return 0.0
    if mu == 0.0:
        return 1.0
    return min(1.0, fsum(exp(-mu + k * log(mu) - lgamma(k + 1)) for k in range(t + 1)))


def poisson_sf(mu: float, t: int) -> float:
    """Pr[Poisson(mu) > t], via the complement (the upper tail is infinite)."""
    return max(0.0, 1.0 - poisson_cdf(mu, t))


@dataclass(frozen=True)
class ProbReport:
    """The four run-transition probabilities and their aggregates.

    gamma bounds the expected per-bit edit distortion of a decoded inner
    codeword from above (decodability needs gamma < delta_in); xi bounds it
    from below.
    """

    p12: float
    p10: float
    p21: float
    p20: float
    beta1: float
    mode: str  # "exact" or "bound"

    def __post_init__(self) -> None:
        for name in ("p12", "p10", "p21", "p20"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} = {v} outside [0, 1]")
        if self.mode not in ("exact", "bound"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def beta2(self) -> float:
        return (1.0 - self.beta1) / 2.0

    @property
    def gamma(self) -> float:
        b1, b2 = self.beta1, self.beta2
        return b1 * self.p12 + b2 * self.p21 + (2 * b1 + b2) * self.p10 + 4 * b2 * self.p20

    @property
    def xi(self) -> float:
        b1, b2 = self.beta1, self.beta2
        return b1 * (self.p12 + 2 * self.p10) + b2 * (self.p21 + 3 * self.p20)


def probs_bdc_from_counts(N1: int, N2: int, T: int, p: float, beta1: float) -> ProbReport:
    """Exact transition probabilities for given integer blow-up factors."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"deletion probability {p} outside (0, 1)")
    keep = 1.0 - p
    return ProbReport(
        p12=binom_sf(N1, keep, T),
        p10=p**N1,
        p21=binom_cdf(N2, keep, T),
        p20=p**N2,
        beta1=beta1,
        mode="exact",
    )


def probs_bdc_exact(M1: float, M2: float, T: int, p: float, beta1: float) -> ProbReport:
    """Exact transition probabilities with N1 = ceil(M1/(1-p)) etc."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"deletion probability {p} outside (0, 1)")
    keep = 1.0 - p
    return probs_bdc_from_counts(
        ceil_snapped(M1 / keep), ceil_snapped(M2 / keep), T, p, beta1
    )


def probs_bdc_bounds(
    M1: float,
    M2: float,
    T: int,
    q: float,
    beta1: float,
    *,
    p_eval: float | None = None,
    one_to_two_zero: bool = False,
) -> ProbReport:
    """Upper bounds valid uniformly over the regime {p : 1 - p <= q}.

    The 1-run-to-2-run bound is the Poisson-limit tail at mean M1 + q, which
    dominates the binomial tail for every p in the regime; it needs T >= M1 + q.
    When T >= ceil(M1/(1-p)) throughout the regime the survivor count can
    never exceed T, so the caller may assert that probability is exactly 0
    via one_to_two_zero.

    The other three probabilities are monotone in p, so with p_eval given
    they are evaluated exactly at the regime's worst p; without it the
    Poisson-limit bounds e^{-M1}, e^{-M2}*(tail), e^{-M2} are used, the
    middle one requiring T <= M2 - 1.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q = {q} outside (0, 1)")
    if one_to_two_zero:
        p12 = 0.0
    else:
        if T < M1 + q:
            raise ValueError(f"T = {T} below M1 + q = {M1 + q}; bound invalid")
        p12 = poisson_sf(M1 + q, T)
    if p_eval is None:
        if T > M2 - 1:
            raise ValueError(f"T = {T} above M2 - 1 = {M2 - 1}; bound invalid")
        p10 = exp(-M1)
        p21 = exp(-M2) * fsum(exp(k * log(M2) - lgamma(k + 1)) for k in range(T + 1))
        p20 = exp(-M2)
    else:
        if 1.0 - p_eval > q + 1e-12:
            raise ValueError("p_eval outside the regime {p : 1 - p <= q}")
        keep = 1.0 - p_eval
        N1 = ceil_snapped(M1 / keep)
        N2 = ceil_snapped(M2 / keep)
        p10 = p_eval**N1
        p21 = binom_cdf(N2, keep, T)
        p20 = p_eval**N2
    return ProbReport(p12=p12, p10=p10, p21=p21, p20=p20, beta1=beta1, mode="bound")


def probs_prc(
    M1: float, M2: float, T: int, lam: float, beta1: float, mode: str = "exact"
) -> ProbReport:
    """Transition probabilities for the Poisson repeat channel.

    Exact: survivor counts are Poisson with mean lam * ceil(M/lam). Bound:
    lam-uniform bounds valid for the regime {lam' <= lam}, with the same
    validity constraints as the deletion-channel bounds.
    """
    if lam <= 0.0:
        raise ValueError(f"repeat mean {lam} must be positive")
    if mode == "exact":
        mu1 = lam * ceil_snapped(M1 / lam)
        mu2 = lam * ceil_snapped(M2 / lam)
        return ProbReport(
            p12=poisson_sf(mu1, T),
            p10=exp(-mu1),
            p21=poisson_cdf(mu2, T),
            p20=exp(-mu2),
            beta1=beta1,
            mode="exact",
        )
    if mode != "bound":
        raise ValueError(f"unknown mode {mode!r}")
    if T < M1 + lam:
        raise ValueError(f"T = {T} below M1 + lam = {M1 + lam}; bound invalid")
    if T > M2 - 1:
        raise ValueError(f"T = {T} above M2 - 1 = {M2 - 1}; bound invalid")
    return ProbReport(
        p12=poisson_sf(M1 + lam, T),
        p10=exp(-M1),
        p21=exp(-M2) * fsum(exp(k * log(M2) - lgamma(k + 1)) for k in range(T + 1)),
        p20=exp(-M2),
        beta1=beta1,
        mode="bound",
    )


def rate_bdc_from_counts(
    N1: int, N2: int, M_B: float, beta1: float, p: float, R_in: float,
    R_out: float, m: float,
) -> float:
    """Rate with the integer blow-up factors given directly."""
    beta2 = (1.0 - beta1) / 2.0
    return R_in * R_out / (beta1 * N1 + beta2 * N2 + M_B / (1.0 - p) + 1.0 / m)


def rate_bdc(
    M1: float, M2: float, M_B: float, beta1: float, p: float, R_in: float,
    R_out: float, m: float,
) -> tuple[float, float]:
    """(rate with ceilinged blow-up factors, ceiling-free lower bound)."""
    keep = 1.0 - p
    beta2 = (1.0 - beta1) / 2.0
    with_ceil = rate_bdc_from_counts(
        ceil_snapped(M1 / keep), ceil_snapped(M2 / keep), M_B, beta1, p, R_in, R_out, m
    )
    no_ceil = R_in * R_out * keep / (beta1 * M1 + beta2 * M2 + M_B)
    return with_ceil, no_ceil


def rate_prc(
    M1: float, M2: float, M_B: float, beta1: float, lam: float, R_in: float,
    R_out: float, m: float,
) -> tuple[float, float]:
    """(rate with ceilinged blow-up factors, ceiling-free lower bound)."""
    beta2 = (1.0 - beta1) / 2.0
    N1 = ceil_snapped(M1 / lam)
    N2 = ceil_snapped(M2 / lam)
    with_ceil = R_in * R_out / (beta1 * N1 + beta2 * N2 + M_B / lam + 1.0 / m)
    no_ceil = R_in * R_out * lam / (beta1 * M1 + beta2 * M2 + M_B)
    return with_ceil, no_ceil


# Reference evaluation context for reproducing printed rates: an outer code
# of rate 1 - 2^-20 and a very long inner block so the 1/m term is negligible.
REF_R_OUT = 1.0 - 2.0**-20
REF_M = 1.0e6
REF_M_B = 1.0e-5


@dataclass(frozen=True)
class Preset:
    """One reference parameter set with its published figures of merit."""

    name: str
    kind: str  # "bdc_row", "bdc_regime", "prc_regime"
    p_or_lam: float  # fixed p / lambda, or the regime's worst value
    beta1: float
    T: int
    delta_in: float
    expected_R_in: float
    expected_rate: float | None = None
    N1: int | None = None  # fixed-p rows specify integer factors directly
    N2: int | None = None
    M1: float | None = None  # regimes specify targets
    M2: float | None = None
    q: float | None = None  # regime width for the Poisson-limit bound
    p_eval: float | None = None  # regime worst case for monotone-exact bounds
    one_to_two_zero: bool = False
    M_B: float = REF_M_B
    delta_out: float = 2.0**-20

    def probs(self) -> ProbReport:
        if self.kind == "bdc_row":
            return probs_bdc_from_counts(
                self.N1, self.N2, self.T, self.p_or_lam, self.beta1
            )
        if self.kind == "bdc_regime":
            return probs_bdc_bounds(
                self.M1, self.M2, self.T, self.q, self.beta1,
                p_eval=self.p_eval, one_to_two_zero=self.one_to_two_zero,
            )
        return probs_prc(self.M1, self.M2, self.T, self.p_or_lam, self.beta1, "bound")

    def computed_R_in(self) -> float:
        return inner_rate_formula(self.beta1, self.delta_in)

    def computed_rate(self) -> float:
        """Rate in the reference context (printed R_in, reference R_out/m)."""
        if self.kind == "bdc_row":
            return rate_bdc_from_counts(
                self.N1, self.N2, self.M_B, self.beta1, self.p_or_lam,
                self.expected_R_in, REF_R_OUT, REF_M,
            )
        if self.kind == "bdc_regime":
            return rate_bdc(
                self.M1, self.M2, self.M_B, self.beta1, self.p_or_lam,
                self.expected_R_in, REF_R_OUT, REF_M,
            )[0]
        return rate_prc(
            self.M1, self.M2, self.M_B, self.beta1, self.p_or_lam,
            self.expected_R_in, REF_R_OUT, REF_M,
        )[0]


def presets() -> list[Preset]:
    """The eleven fixed-p rows, three deletion regimes, one repeat regime."""
    rows = [
        # (p, beta1, N1, T, N2, R_in, delta_in, final_rate)
        (0.50, 0.497, 8, 7, 27, 0.5456, 0.00922, 0.050682),
        (0.55, 0.519, 9, 8, 34, 0.5525, 0.00825, 0.043005),
        (0.60, 0.508, 10, 8, 38, 0.5184, 0.01120, 0.035935),
        (0.65, 0.519, 13, 9, 49, 0.5545, 0.00810, 0.029926),
        (0.70, 0.509, 15, 9, 57, 0.5267, 0.01051, 0.024353),
        (0.75, 0.524, 20, 10, 75, 0.5400, 0.00910, 0.019420),
        (0.80, 0.514, 24, 10, 96, 0.5289, 0.01022, 0.014830),
        (0.85, 0.526, 34, 11, 138, 0.5413, 0.00895, 0.010701),
        (0.90, 0.537, 54, 12, 224, 0.5534, 0.00773, 0.006845),
        (0.95, 0.530, 108, 12, 452, 0.5402, 0.00893, 0.003305),
        (0.99, 0.520, 541, 12, 2280, 0.5318, 0.00985, 0.000641),
    ]
    out = [
        Preset(
            name=f"bdc_p{p:.2f}", kind="bdc_row", p_or_lam=p, beta1=b1, T=T,
            delta_in=din, expected_R_in=rin, expected_rate=rate, N1=n1, N2=n2,
        )
        for p, b1, n1, T, n2, rin, din, rate in rows
    ]
    out.append(Preset(
        name="bdc_regime_high", kind="bdc_regime", p_or_lam=0.99, beta1=0.522,
        T=12, delta_in=0.01052, expected_R_in=0.5229,
        M1=5.41, M2=22.8, q=0.1,
    ))
    out.append(Preset(
        name="bdc_regime_mid", kind="bdc_regime", p_or_lam=0.9, beta1=0.530,
        T=13, delta_in=0.008013, expected_R_in=0.55224,
        M1=5.59, M2=23.5, q=0.43, p_eval=0.9,
    ))
    out.append(Preset(
        name="bdc_regime_low", kind="bdc_regime", p_or_lam=0.57, beta1=0.530,
        T=13, delta_in=0.006147, expected_R_in=0.577475,
        M1=5.59, M2=20.21, q=0.43, p_eval=0.57, one_to_two_zero=True,
    ))
    out.append(Preset(
        name="prc_regime", kind="prc_regime", p_or_lam=0.5, beta1=0.532,
        T=13, delta_in=0.00954, expected_R_in=0.53186,
        M1=5.49, M2=24.2,
    ))
    return out


@dataclass(frozen=True)
class PresetVerification:
    preset: Preset
    report: ProbReport
    R_in: float
    rate: float
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_preset(preset: Preset) -> PresetVerification:
    """Recompute everything a preset claims and list any broken inequality."""
    failures: list[str] = []
    report = preset.probs()
    if report.gamma >= preset.delta_in:
        failures.append(
            f"gamma {report.gamma:.6g} >= delta_in {preset.delta_in:.6g}"
            f" (excess {report.gamma - preset.delta_in:.3g})"
        )
    r_in = preset.computed_R_in()
    if abs(r_in - preset.expected_R_in) > 2e-3:
        failures.append(
            f"R_in formula {r_in:.6f} vs expected {preset.expected_R_in:.6f}"
            f" (|diff| {abs(r_in - preset.expected_R_in):.2e} > 2e-3)"
        )
    rate = preset.computed_rate()
    if preset.expected_rate is not None:
        rel = abs(rate - preset.expected_rate) / preset.expected_rate
        if rel > 0.01:
            failures.append(
                f"rate {rate:.6g} vs expected {preset.expected_rate:.6g}"
                f" (rel err {rel:.2e} > 1e-2)"
            )
    if preset.kind == "bdc_row":
        floor_rate = (1.0 - preset.p_or_lam) / 16.0
        if rate < floor_rate:
            failures.append(f"rate {rate:.6g} < (1-p)/16 = {floor_rate:.6g}")
    if preset.kind == "prc_regime":
        floor_rate = preset.p_or_lam / 17.0
        if rate <= floor_rate:
            failures.append(f"rate {rate:.6g} <= lambda/17 = {floor_rate:.6g}")
    return PresetVerification(preset, report, r_in, rate, tuple(failures))
