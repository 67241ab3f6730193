import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from dirtymac.errors import ConfigurationError, DimensionError, DomainError
from dirtymac.gf2 import BitVector
from dirtymac.korner_marton import (
    KmSourceConfig, analytic_block_error, exhaustive_error_set, km_decode, km_encode, km_rate_sum,
    km_scheme_demo, rate_gap, sw_rate_sum,
)


def test_rate_sums():
    assert km_rate_sum(0.0) == 0.0 and km_rate_sum(0.5) == 2.0
    assert sw_rate_sum(0.0) == 1.0 and sw_rate_sum(0.5) == 2.0
    assert km_rate_sum(0.11) == pytest.approx(2 * oracles.hb(0.11), abs=1e-12)
    assert km_rate_sum(0.11) == pytest.approx(0.999832, abs=1e-6)
    assert sw_rate_sum(0.11) == pytest.approx(1.499916, abs=1e-6)
    with pytest.raises(DomainError):
        km_rate_sum(0.7)


@given(st.floats(0.0, 0.5))
def test_gap_identity(theta):
    assert rate_gap(theta) == pytest.approx(1 - oracles.hb(theta), abs=1e-12)
    if theta < 0.5 - 1e-9:
        assert rate_gap(theta) > 0


def test_config_validation():
    with pytest.raises(ConfigurationError):
        KmSourceConfig(7, 0.6)


def test_decoder_depends_only_on_xor(hamming):
    rng = np.random.default_rng(1)
    for _ in range(200):
        x, z, x2 = (int(v) for v in rng.integers(0, 128, 3))
        a = km_decode(km_encode(BitVector(7, x), hamming), km_encode(BitVector(7, x ^ z), hamming), hamming)
        b = km_decode(km_encode(BitVector(7, x2), hamming), km_encode(BitVector(7, x2 ^ z), hamming), hamming)
        assert a == b == hamming.mod(BitVector(7, z))


def test_exhaustive_errors_are_heavy_patterns(hamming):
    errs = exhaustive_error_set(hamming)
    assert errs == {z for z in range(128) if bin(z).count("1") > 1}


def test_analytic_error_matches_binomial_tail(hamming):
    th = 0.02
    tail = 1 - (1 - th) ** 7 - 7 * th * (1 - th) ** 6
    assert analytic_block_error(th, hamming) == pytest.approx(tail, abs=1e-15)
    assert tail == pytest.approx(0.0078565, abs=1e-7)


def test_demo(hamming):
    assert km_scheme_demo(KmSourceConfig(7, 0.0), hamming, 5000).error_rate == 0.0
    cfg = KmSourceConfig(7, 0.02, seed=4)
    rep = km_scheme_demo(cfg, hamming, 100_000)
    p = analytic_block_error(0.02, hamming)
    sigma = math.sqrt(p * (1 - p) / rep.trials)
    assert abs(rep.error_rate - p) <= 3 * sigma
    assert rep.code_rate == pytest.approx(3 / 7)
    assert km_scheme_demo(cfg, hamming, 100_000, chunk=9999) == rep
    with pytest.raises(DimensionError):
        km_scheme_demo(KmSourceConfig(8, 0.1), hamming, 10)


def test_golay_demo(golay):
    rep = km_scheme_demo(KmSourceConfig(23, 0.05, seed=2), golay, 50_000)
    p = analytic_block_error(0.05, golay)
    assert abs(rep.error_rate - p) <= 4 * math.sqrt(p * (1 - p) / rep.trials)
