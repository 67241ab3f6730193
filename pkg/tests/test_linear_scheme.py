from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dirtymac.channel import ChannelConfig, transmit
from dirtymac.errors import ConfigurationError, DimensionError
from dirtymac.gf2 import BitVector
from dirtymac.linear_scheme import (
    SplitSpec, decode, encode_helper, encode_split, encode_user1, exhaustive_check, read_messages,
    run_simulation, split_syndromes,
)


def test_encode_user1_matches_brute_force(hamming):
    rows = hamming.H.to_strings()
    for v in range(8):
        for s in range(0, 128, 5):
            target = v ^ oracles.int_of(oracles.syndrome(rows, oracles.bits_of(s, 7)))
            candidates = [x for x in range(128)
                          if oracles.int_of(oracles.syndrome(rows, oracles.bits_of(x, 7))) == target]
            best = min(candidates, key=lambda x: (bin(x).count("1"), x))
            assert encode_user1(BitVector(3, v), BitVector(7, s), hamming).value == best


def test_helper_is_mod(hamming):
    s = BitVector.from_str("1100000")
    assert str(encode_helper(s, hamming)) == "0010000"


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**11 - 1), st.integers(0, 2**23 - 1), st.integers(0, 2**23 - 1), st.integers(0, 11))
def test_golay_round_trip(m, s1, s2, l1):
    from dirtymac.coset_code import golay_code
    code = golay_code()
    split = SplitSpec(l1, 11 - l1)
    m1 = BitVector(l1, m >> (11 - l1)) if l1 else None
    m2 = BitVector(11 - l1, m & ((1 << (11 - l1)) - 1)) if l1 < 11 else None
    S1, S2 = BitVector(23, s1), BitVector(23, s2)
    x1, x2 = encode_split(m1, m2, S1, S2, code, split)
    assert x1.weight() <= 3 and x2.weight() <= 3
    y = transmit(x1, x2, S1, S2).y
    assert read_messages(decode(y, code), split) == (m1, m2)


def test_split_layout():
    v1, v2 = split_syndromes(BitVector.from_str("10"), BitVector.from_str("1"), SplitSpec(2, 1))
    assert (str(v1), str(v2)) == ("100", "001")
    with pytest.raises(DimensionError):
        split_syndromes(BitVector.from_str("1"), BitVector.from_str("1"), SplitSpec(2, 1))


def test_dimension_errors(hamming):
    with pytest.raises(DimensionError):
        encode_user1(BitVector.zeros(4), BitVector.zeros(7), hamming)
    with pytest.raises(DimensionError):
        decode(BitVector.zeros(8), hamming)
    with pytest.raises(DimensionError):
        SplitSpec(2, 2).check(hamming)


@pytest.mark.parametrize("split", [None, SplitSpec(2, 1), SplitSpec(1, 2), SplitSpec(0, 3)])
def test_exhaustive_hamming(hamming, split):
    out = exhaustive_check(hamming, split)
    assert out["cases"] == 2**17
    assert out["decode_errors"] == 0
    assert out["max_weight1"] <= 1 and out["max_weight2"] <= 1


def test_simulation_report(hamming):
    cfg = ChannelConfig(n=7, q1=Fraction(1, 7), q2=Fraction(1, 7), seed=5)
    rep = run_simulation(cfg, hamming, SplitSpec(2, 1), trials=3000, chunk=1000)
    assert rep.decode_errors == 0
    assert rep.rate_sum == Fraction(3, 7)
    assert rep.max_norm_weight1 <= Fraction(1, 7)
    # a uniform state lands in the zero coset with prob 1/8 per user
    assert abs(rep.mean_norm_weight1 - 1 / 8) < 0.02
    again = run_simulation(cfg, hamming, SplitSpec(2, 1), trials=3000, chunk=777)
    assert again == rep
    d = rep.to_dict()
    assert d["rate_sum"] == "3/7" and d["code_hash"] == hamming.fingerprint


def test_one_dirty_run(hamming):
    rep = run_simulation(ChannelConfig(n=7, q1=1 / 7, q2=1 / 7, one_dirty=True), hamming, trials=1000)
    assert rep.decode_errors == 0
    assert rep.max_norm_weight2 == 0


def test_inadmissible_constraint(hamming):
    with pytest.raises(ConfigurationError):
        run_simulation(ChannelConfig(n=7, q1=0.1, q2=0.5), hamming, trials=10)
    with pytest.raises(ConfigurationError):
        run_simulation(ChannelConfig(n=8), hamming, trials=10)
