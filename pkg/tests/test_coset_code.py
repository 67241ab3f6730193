import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dirtymac.coset_code import (
    GOLAY_23_12_H, HAMMING_7_4_H, TABLE_CAP_ENV, build_code, covering_radius, fixture_path,
    hamming_code, load_code, mod_code, parse_code, random_covering_search, repetition_code,
    resolve_code, save_code, single_parity_check_code,
)
from dirtymac.errors import DimensionError, InvalidCodeError, ResourceError
from dirtymac.gf2 import BitVector, Gf2Matrix, matvec, nullspace


def _assert_leaders_match_brute_force(code):
    rows = code.H.to_strings()
    brute = oracles.brute_leaders(rows)
    assert len(brute) == code.num_cosets
    for s, leader in brute.items():
        assert code.leaders[s] == leader
    assert code.covering_radius == max(bin(v).count("1") for v in brute.values())


def test_hamming_mod_example(hamming):
    a = BitVector.from_str("1100000")
    assert str(hamming.syndrome(a)) == "011"
    assert str(mod_code(a, hamming)) == "0010000"


def test_hamming_leaders_are_units(hamming):
    assert covering_radius(hamming) == 1
    weights = sorted(bin(v).count("1") for v in hamming.leaders)
    assert weights == [0] + [1] * 7


@pytest.mark.parametrize("factory", [
    hamming_code,
    lambda: repetition_code(5),
    lambda: repetition_code(8),
    lambda: single_parity_check_code(6),
    lambda: hamming_code(4),
])
def test_leaders_against_brute_force(factory):
    _assert_leaders_match_brute_force(factory())


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))),
       st.integers(0, 2**32))
def test_random_codes_against_brute_force(nk, seed):
    n, r = nk
    rng = np.random.default_rng(seed)
    H = Gf2Matrix.from_array(rng.integers(0, 2, size=(r, n)))
    if H.rank < r:
        with pytest.raises(InvalidCodeError):
            build_code(H)
        return
    _assert_leaders_match_brute_force(build_code(H))


def test_coset_partition_properties(hamming):
    codewords = [v for v in range(128) if matvec(hamming.H, BitVector(7, v)).value == 0]
    assert len(codewords) == 16
    for a in range(128):
        va = BitVector(7, a)
        m = hamming.mod(va)
        # a and a mod C lie in the same coset, mod is idempotent and C-invariant
        assert (m ^ va).value in codewords
        assert hamming.mod(m) == m
        for c in codewords[:4]:
            assert hamming.mod(va ^ BitVector(7, c)) == m


def test_golay_parameters(golay):
    assert (golay.n, golay.k, golay.covering_radius) == (23, 12, 3)
    # perfect: every coset leader of weight <= 3 and all such vectors are leaders
    counts = np.bincount([bin(v).count("1") for v in golay.leaders])
    assert list(counts) == [1, 23, 253, 1771]
    basis = [v.value for v in nullspace(golay.H)]
    assert len(basis) == 12
    min_w = 23
    for mask in range(1, 1 << 12):
        c = 0
        for j, b in enumerate(basis):
            if mask >> j & 1:
                c ^= b
        min_w = min(min_w, bin(c).count("1"))
    assert min_w == 7


def test_invalid_codes():
    with pytest.raises(InvalidCodeError):
        build_code(Gf2Matrix.from_strings(["101", "101"]))
    with pytest.raises(InvalidCodeError):
        build_code(Gf2Matrix.from_strings(["10", "01"]))
    with pytest.raises(ResourceError):
        build_code(Gf2Matrix.from_strings(GOLAY_23_12_H), cap_bits=1000)


def test_table_cap_env(monkeypatch):
    monkeypatch.setenv(TABLE_CAP_ENV, "10")
    with pytest.raises(ResourceError):
        hamming_code()


def test_leader_length_check(hamming):
    with pytest.raises(DimensionError):
        hamming.leader(BitVector.zeros(4))


def test_file_roundtrip(tmp_path, golay):
    p = tmp_path / "g.code"
    save_code(golay, p)
    again = load_code(p)
    assert again.fingerprint == golay.fingerprint
    assert again.leaders == golay.leaders
    assert load_code(fixture_path("golay23")).fingerprint == golay.fingerprint
    assert resolve_code("hamming7").leaders == hamming_code().leaders


@pytest.mark.parametrize("text", [
    "",
    "7 x\n0001111",
    "7 4\n0001111\n0110011",
    "7 4\n000111\n011001\n101010",
    "7 4\n0001111\n0001111\n1010101",
    "7 4\n0001121\n0110011\n1010101",
])
def test_parse_errors(text):
    with pytest.raises(InvalidCodeError):
        parse_code(text)


def test_parse_hamming_text():
    code = parse_code("7 4\n" + "\n".join(HAMMING_7_4_H) + "\n")
    assert code.covering_radius == 1


def test_random_search_is_seeded():
    a = random_covering_search(10, 5, seed=3, attempts=6)
    b = random_covering_search(10, 5, seed=3, attempts=6)
    assert a.fingerprint == b.fingerprint
    assert a.H.rank == 5
    # sphere-covering bound: 2^5 cosets need radius with sum_{i<=rho} C(10,i) >= 32
    assert a.covering_radius >= 2
    _assert_leaders_match_brute_force(a)
