"""Monte Carlo experiment runner with reproducible, deterministic reports.

Three experiment modes:
  single_codeword — transmit one blown-up inner codeword flanked by buffers,
    classify error events and the per-codeword distortion statistic X;
  end_to_end — encode random messages, transmit, decode, count successes;
  transition — transmit bare blown-up runs in bulk and compare empirical
    run-transition frequencies against the exact formulas.

Reports are plain dicts serialized as sorted JSON, so identical configs and
seeds produce byte-identical files. Wall-clock time is printed, never stored.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import exp, sqrt
from pathlib import Path

import numpy as np

from .analysis import (
    REF_M,
    REF_R_OUT,
    ProbReport,
    poisson_cdf,
    poisson_sf,
    presets,
    probs_bdc_from_counts,
    rate_bdc,
    verify_preset,
)
from .channels import ChannelModel, RngStream, apply_copy_counts, poisson_copy_counts
from .inner import InnerParams, construct_inner
from .outer import OuterSpec, construct_outer
from .scheme import (
    Layout,
    RunSpan,
    Scheme,
    SchemeParams,
    TransmitRecord,
    assemble_scheme,
)
from .strings import SProfile, runs_of


def worker_count() -> int:
    """Worker cap from DELCHAN_THREADS (default 1: sequential)."""
    return max(1, int(os.environ.get("DELCHAN_THREADS", "1")))


def _map_trials(fn, trials: int):
    """Run fn(0..trials-1); results ordered by trial index regardless of
    scheduling, since each trial owns an independent RNG stream."""
    threads = worker_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, range(trials)))
    return [fn(t) for t in range(trials)]


@lru_cache(maxsize=None)
def cached_inner_codebook(params: InnerParams):
    """Inner construction is the slow step; memoize it per parameter set."""
    return construct_inner(params)


# Desk-scale reference configuration: small enough that every analytic bound
# exercised against it is numerically nontrivial, large enough to decode
# reliably. The buffer scale M_B is deliberately generous; the tighter
# M_B = 0.5 variant below exists to measure buffer-loss frequency against
# its analytic bound, which is only meaningful when losses are observable.
DESK_PROFILE = SProfile(25, 13, 6)
DESK_D = 2
DESK_M1 = 4.0
DESK_M2 = 13.5
DESK_T = 8
DESK_M_B = 2.5
DESK_OUTER = OuterSpec(q=4, n=32, k=4, delta_out=0.125)
DESK_SEED = 2024


def desk_params(kind: str, *, M_B: float = DESK_M_B) -> SchemeParams:
    channel = ChannelModel("bdc", 0.3) if kind == "bdc" else ChannelModel("prc", 0.5)
    return SchemeParams(
        channel=channel,
        M1=DESK_M1,
        M2=DESK_M2,
        M_B=M_B,
        T=DESK_T,
        inner=InnerParams(DESK_PROFILE, DESK_D),
        outer=DESK_OUTER,
    )


def desk_scheme(kind: str, *, M_B: float = DESK_M_B) -> Scheme:
    params = desk_params(kind, M_B=M_B)
    inner_cb = cached_inner_codebook(params.inner).truncate(params.outer.q)
    outer = construct_outer(params.outer, DESK_SEED)
    return assemble_scheme(params, inner_cb, outer)


def scheme_exact_probs(scheme: Scheme) -> ProbReport:
    """Exact run-transition probabilities for a built scheme."""
    p = scheme.params
    prof = p.inner.profile
    beta1 = prof.r1 / prof.m
    ch = p.channel
    if ch.kind == "bdc":
        return probs_bdc_from_counts(scheme.N1, scheme.N2, p.T, ch.parameter, beta1)
    lam = ch.parameter
    return ProbReport(
        p12=poisson_sf(lam * scheme.N1, p.T),
        p10=exp(-lam * scheme.N1),
        p21=poisson_cdf(lam * scheme.N2, p.T),
        p20=exp(-lam * scheme.N2),
        beta1=beta1,
        mode="exact",
    )


def single_codeword_layout(scheme: Scheme, symbol: int) -> tuple[str, Layout]:
    """One blown-up inner codeword with a buffer on each side."""
    cw = scheme.inner_cb.encode(symbol)
    B = scheme.B
    pieces = ["0" * B]
    buffer_spans = [(0, B)]
    pos = B
    spans: list[RunSpan] = []
    for b, ln in runs_of(cw):
        blown = scheme.N1 if ln == 1 else scheme.N2
        pieces.append(str(b) * blown)
        spans.append(RunSpan(pos, pos + blown, b, ln))
        pos += blown
    pieces.append("0" * B)
    buffer_spans.append((pos, pos + B))
    return "".join(pieces), Layout((symbol,), [spans], buffer_spans)


def run_single_codeword(scheme: Scheme, trials: int, master_seed: int) -> dict:
    """Transmit isolated codewords; collect X and error-event statistics."""
    q = len(scheme.inner_cb)

    def one(t: int) -> tuple[int, int, int, int, int]:
        rng = RngStream(master_seed, t).generator()
        symbol = int(rng.integers(0, q))
        bits, layout = single_codeword_layout(scheme, symbol)
        counts = scheme.params.channel.copy_counts(bits, rng)
        received = apply_copy_counts(bits, counts)
        _, trace = scheme.decode_with_trace(received, TransmitRecord(layout, counts))
        ev = trace.error_events
        return (
            trace.per_codeword_X[0],
            ev["deleted_buffer"],
            ev["spurious_buffer"],
            ev["wrong_inner_decode"],
            len(layout.buffer_spans),
        )

    rows = _map_trials(one, trials)
    xs = np.array([r[0] for r in rows], dtype=np.float64)
    deleted = sum(r[1] for r in rows)
    buffers = sum(r[4] for r in rows)
    probs = scheme_exact_probs(scheme)
    m = scheme.params.inner.m
    return {
        "mode": "single_codeword",
        "trials": trials,
        "master_seed": master_seed,
        "x_mean": float(xs.mean()),
        "x_var": float(xs.var(ddof=1)),
        "x_stderr": float(xs.std(ddof=1) / sqrt(trials)),
        "error_events": {
            "deleted_buffer": deleted,
            "spurious_buffer": sum(r[2] for r in rows),
            "wrong_inner_decode": sum(r[3] for r in rows),
        },
        "buffers_transmitted": buffers,
        "deleted_buffer_frequency": deleted / buffers,
        "analytic": {
            "xi_m": probs.xi * m,
            "gamma_m_plus_p10": probs.gamma * m + probs.p10,
            "buffer_loss_bound": exp(-scheme.params.M_B * m / 8.0),
        },
    }


def run_end_to_end(scheme: Scheme, trials: int, master_seed: int) -> dict:
    """Encode random messages, transmit, decode; count exact recoveries."""
    num_messages = scheme.outer.spec.num_messages

    def one(t: int) -> int:
        rng = RngStream(master_seed, t).generator()
        message = int(rng.integers(0, num_messages))
        encoded = scheme.encode(message)
        received = scheme.params.channel.transmit(encoded, rng)
        return int(scheme.decode(received) == message)

    successes = sum(_map_trials(one, trials))
    return {
        "mode": "end_to_end",
        "trials": trials,
        "master_seed": master_seed,
        "successes": successes,
        "success_rate": successes / trials,
    }


def run_transition(scheme: Scheme, trials: int, master_seed: int) -> dict:
    """Bulk-transmit bare blown-up runs; compare frequencies to exact values.

    Survivor counts for all trials are drawn in one vectorized channel pass
    per run length.
    """
    ch = scheme.params.channel
    T = scheme.params.T
    rng = RngStream(master_seed, 0).generator()

    def survivor_counts(run_len: int) -> np.ndarray:
        if ch.kind == "bdc":
            keep = rng.random((trials, run_len)) >= ch.parameter
            return keep.sum(axis=1)
        flat = poisson_copy_counts("1" * (trials * run_len), ch.parameter, rng)
        return flat.reshape(trials, run_len).sum(axis=1)

    z1 = survivor_counts(scheme.N1)
    z2 = survivor_counts(scheme.N2)
    probs = scheme_exact_probs(scheme)
    empirical = {
        "p12": float((z1 > T).mean()),
        "p10": float((z1 == 0).mean()),
        "p21": float((z2 <= T).mean()),
        "p20": float((z2 == 0).mean()),
    }
    exact = {"p12": probs.p12, "p10": probs.p10, "p21": probs.p21, "p20": probs.p20}
    table = {
        name: {
            "empirical": empirical[name],
            "exact": exact[name],
            # binomial standard error at the exact probability
            "stderr": sqrt(exact[name] * (1.0 - exact[name]) / trials),
        }
        for name in ("p12", "p10", "p21", "p20")
    }
    return {
        "mode": "transition",
        "trials": trials,
        "master_seed": master_seed,
        "transitions": table,
    }


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run: a scheme (by descriptor path or desk default), a mode,
    a trial count, and a master seed."""

    mode: str
    trials: int
    master_seed: int
    scheme_path: str | None = None
    desk: str = "bdc"
    M_B: float = DESK_M_B

    def __post_init__(self) -> None:
        if self.mode not in ("single_codeword", "end_to_end", "transition"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


def load_config(path: str | Path) -> ExperimentConfig:
    fields: dict[str, str] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            key, value = line.split("=", 1)
            fields[key.strip()] = value.strip()
    return ExperimentConfig(
        mode=fields.get("mode", "end_to_end"),
        trials=int(fields.get("trials", "100")),
        master_seed=int(fields.get("seed", "0")),
        scheme_path=fields.get("scheme"),
        desk=fields.get("desk", "bdc"),
        M_B=float(fields.get("M_B", str(DESK_M_B))),
    )


def run_experiment(config: ExperimentConfig) -> dict:
    if config.scheme_path is not None:
        from .scheme import load_scheme

        scheme = load_scheme(config.scheme_path)
    else:
        scheme = desk_scheme(config.desk, M_B=config.M_B)
    runner = {
        "single_codeword": run_single_codeword,
        "end_to_end": run_end_to_end,
        "transition": run_transition,
    }[config.mode]
    report = runner(scheme, config.trials, config.master_seed)
    report["config"] = {
        "mode": config.mode,
        "trials": config.trials,
        "seed": config.master_seed,
        "channel": scheme.params.channel.kind,
        "channel_param": scheme.params.channel.parameter,
        "N1": scheme.N1,
        "N2": scheme.N2,
        "B": scheme.B,
        "T": scheme.params.T,
    }
    return report


def report_json(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed indentation."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def analyze_csv() -> tuple[str, int]:
    """Verification table for every reference parameter set.

    Returns (csv text, number of parameter sets that failed verification).
    """
    header = (
        "preset,p_or_lambda,P12,P10,P21,P20,gamma,xi,delta_in,"
        "gamma_lt_delta,R_in,final_rate,paper_rate,rel_err"
    )
    lines = [header]
    failures = 0
    for preset in presets():
        v = verify_preset(preset)
        r = v.report
        if not v.ok:
            failures += 1
        paper_rate = preset.expected_rate
        rel = (
            abs(v.rate - paper_rate) / paper_rate if paper_rate is not None else ""
        )
        lines.append(
            f"{preset.name},{preset.p_or_lam},{r.p12:.6e},{r.p10:.6e},"
            f"{r.p21:.6e},{r.p20:.6e},{r.gamma:.6e},{r.xi:.6e},"
            f"{preset.delta_in},{int(r.gamma < preset.delta_in)},"
            f"{v.R_in:.6f},{v.rate:.6e},"
            f"{paper_rate if paper_rate is not None else ''},"
            f"{rel if rel == '' else f'{rel:.3e}'}"
        )
    return "\n".join(lines) + "\n", failures


# Regime constants for the dense sweep: (p_low, p_high, beta1, M1, M2,
# R_in) per validity interval of the uniform bounds.
_SWEEP_REGIMES = (
    (0.0, 0.57, 0.530, 5.59, 20.21, 0.577475),
    (0.57, 0.9, 0.530, 5.59, 23.5, 0.55224),
    (0.9, 1.0, 0.522, 5.41, 22.8, 0.5229),
)


def sweep_csv(grid_step: float = 0.01) -> str:
    """Fixed-p reference rates plus a dense ceiling-free rate curve."""
    lines = ["kind,p,rate,curve_15_71,lower_16"]
    for preset in presets():
        if preset.kind != "bdc_row":
            continue
        p = preset.p_or_lam
        v = verify_preset(preset)
        lines.append(
            f"table,{p},{v.rate:.6e},{(1 - p) / 15.71:.6e},{(1 - p) / 16:.6e}"
        )
    p = grid_step
    while p < 0.995:
        for lo, hi, beta1, M1, M2, r_in in _SWEEP_REGIMES:
            if lo < p <= hi:
                rate = rate_bdc(M1, M2, 1e-5, beta1, p, r_in, REF_R_OUT, REF_M)[1]
                lines.append(
                    f"grid,{p:.2f},{rate:.6e},{(1 - p) / 15.71:.6e},"
                    f"{(1 - p) / 16:.6e}"
                )
                break
        p = round(p + grid_step, 10)
    return "\n".join(lines) + "\n"
