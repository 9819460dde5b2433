"""Channel simulators: distributional sanity, reproducibility, edge cases."""

import numpy as np
import pytest

from delchan.channels import (
    ChannelModel,
    RngStream,
    apply_copy_counts,
    bdc_copy_counts,
    bdc_transmit,
    poisson_copy_counts,
    poisson_sample,
    prc_transmit,
)


def test_stream_reproducibility_and_independence():
    a = RngStream(42, 0).generator().random(5)
    b = RngStream(42, 0).generator().random(5)
    c = RngStream(42, 1).generator().random(5)
    d = RngStream(43, 0).generator().random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_bdc_output_is_subsequence():
    rng = RngStream(1, 0).generator()
    bits = "1100101110"
    for _ in range(50):
        out = bdc_transmit(bits, 0.4, rng)
        it = iter(bits)
        assert all(ch in it for ch in out)


def test_bdc_edge_probabilities():
    rng = RngStream(2, 0).generator()
    assert bdc_transmit("10101", 0.0, rng) == "10101"
    with pytest.raises(ValueError):
        bdc_transmit("1", 1.0, rng)
    with pytest.raises(ValueError):
        bdc_transmit("1", -0.1, rng)


def test_bdc_keep_rate():
    rng = RngStream(3, 0).generator()
    counts = bdc_copy_counts("1" * 200000, 0.3, rng)
    # 3-sigma band around the Binomial mean
    se = (0.3 * 0.7 / 200000) ** 0.5
    assert abs(counts.mean() - 0.7) < 3 * se
    assert set(np.unique(counts)) <= {0, 1}


def test_poisson_sample_moments():
    rng = RngStream(4, 0).generator()
    draws = np.array([poisson_sample(2.5, rng) for _ in range(20000)])
    assert abs(draws.mean() - 2.5) < 3 * (2.5 / 20000) ** 0.5
    assert abs(draws.var() - 2.5) < 0.15


def test_poisson_sample_guards():
    rng = RngStream(5, 0).generator()
    assert poisson_sample(0.0, rng) == 0
    with pytest.raises(ValueError):
        poisson_sample(-1.0, rng)
    with pytest.raises(ValueError):
        poisson_sample(1000.0, rng)


def test_vectorized_poisson_moments():
    rng = RngStream(6, 0).generator()
    counts = poisson_copy_counts("1" * 100000, 0.5, rng)
    assert abs(counts.mean() - 0.5) < 3 * (0.5 / 100000) ** 0.5
    assert abs(counts.var() - 0.5) < 0.02


def test_prc_transmit_expands_copies():
    rng = RngStream(7, 0).generator()
    out = prc_transmit("10", 3.0, rng)
    # output is a block of 1s followed by a block of 0s
    assert out == "1" * out.count("1") + "0" * out.count("0")


def test_apply_copy_counts():
    assert apply_copy_counts("101", np.array([2, 0, 3])) == "11111"
    with pytest.raises(ValueError):
        apply_copy_counts("10", np.array([1]))


def test_channel_model():
    bdc = ChannelModel("bdc", 0.3)
    prc = ChannelModel("prc", 0.5)
    assert bdc.mean_copies == 0.7
    assert prc.mean_copies == 0.5
    rng = RngStream(8, 0).generator()
    assert len(bdc.copy_counts("1010", rng)) == 4
    with pytest.raises(ValueError):
        ChannelModel("erasure", 0.1)
    with pytest.raises(ValueError):
        ChannelModel("prc", 0.0)
    with pytest.raises(ValueError):
        ChannelModel("bdc", 1.0)
