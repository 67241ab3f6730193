import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from dirtymac.errors import DimensionError
from dirtymac.gf2 import (
    BitVector, Gf2Matrix, hamming_weight, matvec, matvec_packed, nullspace, rank, row_reduce, xor,
)

bitstrings = st.integers(1, 64).flatmap(lambda n: st.text("01", min_size=n, max_size=n))


@given(bitstrings)
def test_string_roundtrip_and_order(text):
    v = BitVector.from_str(text)
    assert str(v) == text
    assert list(v) == [int(c) for c in text]
    assert v.value == int(text, 2)
    assert v.weight() == text.count("1") == hamming_weight(v)


def test_position_zero_is_leftmost():
    v = BitVector.from_str("1000000")
    assert v[0] == 1 and v[6] == 0
    assert BitVector.unit(7, 0) == v


@given(st.integers(1, 64).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))))
def test_xor_matches_bitwise_oracle(args):
    n, a, b = args
    va, vb = BitVector(n, a), BitVector(n, b)
    expected = oracles.xor_bits(oracles.bits_of(a, n), oracles.bits_of(b, n))
    assert list(xor(va, vb)) == expected
    assert (va ^ vb) ^ vb == va


def test_xor_length_mismatch():
    with pytest.raises(DimensionError):
        xor(BitVector.zeros(3), BitVector.zeros(4))


def test_slice_and_concat():
    v = BitVector.from_str("1101001")
    assert str(v.slice(2, 5)) == "010"
    assert str(v.slice(0, 3).concat(v.slice(3, 7))) == "1101001"


def test_bad_inputs():
    with pytest.raises(ValueError):
        BitVector.from_str("10a")
    with pytest.raises(DimensionError):
        BitVector.zeros(65)
    with pytest.raises(DimensionError):
        Gf2Matrix.from_strings(["101", "10"])


@given(st.integers(1, 8), st.integers(1, 16), st.randoms(use_true_random=False))
def test_matvec_and_rank_against_oracle(r, n, rnd):
    rows = ["".join(rnd.choice("01") for _ in range(n)) for _ in range(r)]
    H = Gf2Matrix.from_strings(rows)
    x = rnd.getrandbits(n)
    expected = oracles.int_of(oracles.syndrome(rows, oracles.bits_of(x, n)))
    assert matvec(H, BitVector(n, x)).value == expected
    xs = np.array([x, 0, (1 << n) - 1], dtype=np.uint64)
    packed = matvec_packed(H, xs)
    assert int(packed[0]) == expected
    assert int(packed[1]) == 0
    assert rank(H) == H.rank == oracles.gf2_rank([[int(c) for c in row] for row in rows])


def test_matvec_dimension_mismatch():
    H = Gf2Matrix.from_strings(["101"])
    with pytest.raises(DimensionError):
        matvec(H, BitVector.zeros(4))


def test_row_reduce_and_nullspace():
    H = Gf2Matrix.from_strings(["0001111", "0110011", "1010101"])
    R, piv = row_reduce(H)
    assert len(piv) == 3
    basis = nullspace(H)
    assert len(basis) == 4
    for v in basis:
        assert matvec(H, v).value == 0


def test_array_roundtrip():
    arr = np.array([[1, 0, 1], [0, 1, 1]])
    M = Gf2Matrix.from_array(arr)
    assert M.to_strings() == ["101", "011"]
    assert np.array_equal(M.to_array(), arr)
    assert Gf2Matrix.identity(3).rank == 3
