import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from dirtymac.channel import (
    ChannelConfig, as_fraction, draw_state_batch, draw_states, raw_words, transmit, write_trial_log,
)
from dirtymac.errors import ConfigurationError, DimensionError
from dirtymac.gf2 import BitVector


@pytest.mark.parametrize("kw", [dict(n=0), dict(n=65), dict(n=7, q1=0.6), dict(n=7, q2=-0.1)])
def test_config_validation(kw):
    with pytest.raises(ConfigurationError):
        ChannelConfig(**kw)


def test_draws_depend_only_on_seed_and_index():
    cfg = ChannelConfig(n=23, seed=11)
    s1, s2 = draw_state_batch(cfg, 0, 50)
    for i in (0, 7, 49):
        a, b = draw_states(cfg, i)
        assert (a.value, b.value) == (int(s1[i]), int(s2[i]))
    t1, _ = draw_state_batch(cfg, 20, 10)
    assert list(t1) == list(s1[20:30])
    other, _ = draw_state_batch(ChannelConfig(n=23, seed=12), 0, 50)
    assert list(other) != list(s1)
    assert raw_words(0, 0, 0).shape == (0, 4)


def test_one_dirty_has_no_second_state():
    _, s2 = draw_state_batch(ChannelConfig(n=7, one_dirty=True), 0, 100)
    assert not s2.any()


@given(st.integers(1, 64).flatmap(
    lambda n: st.tuples(st.just(n), *[st.integers(0, 2**n - 1)] * 4)))
def test_transmit_is_xor(args):
    n, *vals = args
    x1, x2, s1, s2 = (BitVector(n, v) for v in vals)
    rec = transmit(x1, x2, s1, s2)
    expected = oracles.xor_bits(*(oracles.bits_of(v, n) for v in vals))
    assert list(rec.y) == expected


def test_transmit_dimension_check():
    with pytest.raises(DimensionError):
        transmit(BitVector.zeros(7), BitVector.zeros(7), BitVector.zeros(7), BitVector.zeros(6))


def test_record_weights_and_log():
    z = BitVector.zeros(7)
    rec = transmit(BitVector.from_str("0010000"), z, z, BitVector.from_str("1111111"))
    assert rec.normalized_weights == (Fraction(1, 7), Fraction(0))
    assert rec.satisfies(1 / 7, 0.5)
    assert not rec.satisfies(0.1, 0.5)
    buf = io.StringIO()
    write_trial_log([rec, rec], buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["y"] == "1101111"


def test_as_fraction_snaps_float_constraints():
    assert as_fraction(1 / 7) == Fraction(1, 7)
    assert as_fraction(3 / 23) == Fraction(3, 23)
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)
