"""Coding schemes for bit-deletion and Poisson-repeat channels.

The pipeline concatenates an insertion/deletion-robust outer code with a
greedily constructed inner code over run-length-constrained binary strings,
blows runs up to channel-matched lengths, and separates blocks with zero
buffers. Submodules:

  strings  — run-length utilities, LCS/edit distance, the constrained family
  inner    — greedy inner codebook, rate formula, insertion/deletion balls
  outer    — q-ary outer code with symbol-level edit-distance decoding
  channels — seeded deletion and Poisson-repeat channel simulators
  scheme   — full encoder, threshold decoder, error-classifying traces
  analysis — transition probabilities, rate formulas, reference presets
  harness  — Monte Carlo experiments with deterministic reports
  cli      — command-line front end
"""

from .analysis import (
    Preset,
    ProbReport,
    presets,
    probs_bdc_bounds,
    probs_bdc_exact,
    probs_bdc_from_counts,
    probs_prc,
    rate_bdc,
    rate_prc,
    verify_preset,
)
from .channels import ChannelModel, RngStream, bdc_transmit, prc_transmit
from .inner import InnerCodebook, InnerParams, construct_inner, inner_rate_formula
from .outer import OuterCode, OuterSpec, construct_outer
from .scheme import (
    Scheme,
    SchemeParams,
    blow_up,
    build_scheme,
    identify_buffers,
    load_scheme,
    save_scheme,
    threshold_decode,
)
from .strings import SProfile, edit_distance, enumerate_S, in_S, lcs_len

__all__ = [
    "ChannelModel",
    "InnerCodebook",
    "InnerParams",
    "OuterCode",
    "OuterSpec",
    "Preset",
    "ProbReport",
    "RngStream",
    "SProfile",
    "Scheme",
    "SchemeParams",
    "bdc_transmit",
    "blow_up",
    "build_scheme",
    "construct_inner",
    "construct_outer",
    "edit_distance",
    "enumerate_S",
    "identify_buffers",
    "in_S",
    "inner_rate_formula",
    "lcs_len",
    "load_scheme",
    "prc_transmit",
    "presets",
    "probs_bdc_bounds",
    "probs_bdc_exact",
    "probs_bdc_from_counts",
    "probs_prc",
    "rate_bdc",
    "rate_prc",
    "save_scheme",
    "threshold_decode",
    "verify_preset",
]

__version__ = "0.1.0"
