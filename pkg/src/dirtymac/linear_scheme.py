"""Coset (syndrome) coding for the binary doubly-dirty MAC.

User i sends ``x_i = f(v_i ^ H s_i)``, the coset leader of its message coset
shifted by its own interference. The receiver computes ``H y``; since
``H x_i = v_i ^ H s_i`` the interference syndromes cancel and ``H y = v1 ^ v2``.
Messages are embedded positionally: ``v1 = [m1 | 0]`` and ``v2 = [0 | m2]``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .channel import ChannelConfig, as_fraction, raw_words
from .coset_code import LinearCode
from .errors import ConfigurationError, DimensionError
from .gf2 import BitVector, matvec_packed


@dataclass(frozen=True)
class SplitSpec:
    l1: int
    l2: int

    def __post_init__(self):
        if self.l1 < 0 or self.l2 < 0:
            raise ValueError("message lengths must be nonnegative")

    @classmethod
    def helper(cls, code: LinearCode) -> "SplitSpec":
        """User 1 carries everything, user 2 only cancels its interference."""
        return cls(code.redundancy, 0)

    def check(self, code: LinearCode) -> None:
        if self.l1 + self.l2 != code.redundancy:
            raise DimensionError(f"l1 + l2 = {self.l1 + self.l2}, code has n-k = {code.redundancy}")


@dataclass(frozen=True)
class SchemeReport:
    trials: int
    decode_errors: int
    rate1: Fraction
    rate2: Fraction
    max_norm_weight1: Fraction
    max_norm_weight2: Fraction
    mean_norm_weight1: float
    mean_norm_weight2: float
    covering_radius: int
    code_id: str
    code_hash: str
    seed: int

    @property
    def rate_sum(self) -> Fraction:
        return self.rate1 + self.rate2

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("rate1", "rate2", "max_norm_weight1", "max_norm_weight2"):
            out[key] = str(out[key])
        out["rate_sum"] = str(self.rate_sum)
        out["rate_sum_bits"] = float(self.rate_sum)
        return out


def _check_len(v: BitVector, n: int, what: str) -> None:
    if v.length != n:
        raise DimensionError(f"{what} has length {v.length}, expected {n}")


def encode_user1(v1: BitVector, s1: BitVector, code: LinearCode) -> BitVector:
    _check_len(v1, code.redundancy, "syndrome")
    _check_len(s1, code.n, "state")
    return code.leader(v1 ^ code.syndrome(s1))


def encode_helper(s2: BitVector, code: LinearCode) -> BitVector:
    _check_len(s2, code.n, "state")
    return code.mod(s2)


def decode(y: BitVector, code: LinearCode) -> BitVector:
    _check_len(y, code.n, "channel output")
    return code.syndrome(y)


def split_syndromes(m1: BitVector | None, m2: BitVector | None, split: SplitSpec) -> tuple[BitVector, BitVector]:
    """v1 = [m1 | 0...0], v2 = [0...0 | m2] as length l1 + l2 syndromes."""
    r = split.l1 + split.l2
    m1_val = 0 if m1 is None else m1.value
    m2_val = 0 if m2 is None else m2.value
    if split.l1 and (m1 is None or m1.length != split.l1):
        raise DimensionError(f"m1 must have length {split.l1}")
    if split.l2 and (m2 is None or m2.length != split.l2):
        raise DimensionError(f"m2 must have length {split.l2}")
    return BitVector(r, m1_val << split.l2), BitVector(r, m2_val)


def read_messages(v: BitVector, split: SplitSpec) -> tuple[BitVector | None, BitVector | None]:
    m1 = v.slice(0, split.l1) if split.l1 else None
    m2 = v.slice(split.l1, v.length) if split.l2 else None
    return m1, m2


def encode_split(m1, m2, s1: BitVector, s2: BitVector, code: LinearCode,
                 split: SplitSpec) -> tuple[BitVector, BitVector]:
    split.check(code)
    v1, v2 = split_syndromes(m1, m2, split)
    return encode_user1(v1, s1, code), encode_user1(v2, s2, code)


def _admissible(code: LinearCode, cfg: ChannelConfig) -> None:
    if cfg.n != code.n:
        raise ConfigurationError(f"channel block length {cfg.n} != code length {code.n}")
    q = min(as_fraction(cfg.q1), as_fraction(cfg.q2))
    if Fraction(code.covering_radius, code.n) > q:
        raise ConfigurationError(
            f"covering radius {code.covering_radius}/{code.n} exceeds min(q1, q2) = {float(q):g}")


def _run_packed(code, split, s1, s2, m1, m2):
    """Vectorized encode/transmit/decode; returns (errors, w1, w2)."""
    leaders = code.leaders_array
    v1 = m1 << np.uint64(split.l2)
    v2 = m2
    x1 = leaders[(v1 ^ matvec_packed(code.H, s1)).astype(np.int64)]
    x2 = leaders[(v2 ^ matvec_packed(code.H, s2)).astype(np.int64)]
    y = x1 ^ x2 ^ s1 ^ s2
    v_hat = matvec_packed(code.H, y)
    m1_hat = v_hat >> np.uint64(split.l2)
    m2_hat = v_hat & np.uint64((1 << split.l2) - 1)
    errors = int(np.count_nonzero((m1_hat != m1) | (m2_hat != m2)))
    return errors, np.bitwise_count(x1), np.bitwise_count(x2)


def run_simulation(cfg: ChannelConfig, code: LinearCode, split: SplitSpec | None = None,
                   trials: int = 10_000, chunk: int = 1 << 16) -> SchemeReport:
    """Monte-Carlo run of the scheme; trial i uses Philox block i of ``cfg.seed``.

    Block words 0/1 give s1/s2 and words 2/3 give the messages m1/m2.
    """
    split = split or SplitSpec.helper(code)
    split.check(code)
    _admissible(code, cfg)
    n = code.n
    mask_n = np.uint64((1 << n) - 1)
    errors = 0
    max_w1 = max_w2 = 0
    sum_w1 = sum_w2 = 0
    for start in range(0, trials, chunk):
        count = min(chunk, trials - start)
        words = raw_words(cfg.seed, start, count)
        s1 = words[:, 0] & mask_n
        s2 = np.zeros_like(s1) if cfg.one_dirty else words[:, 1] & mask_n
        m1 = words[:, 2] & np.uint64((1 << split.l1) - 1)
        m2 = words[:, 3] & np.uint64((1 << split.l2) - 1)
        e, w1, w2 = _run_packed(code, split, s1, s2, m1, m2)
        errors += e
        max_w1 = max(max_w1, int(w1.max()))
        max_w2 = max(max_w2, int(w2.max()))
        sum_w1 += int(w1.sum())
        sum_w2 += int(w2.sum())
    denom = max(trials, 1) * n
    return SchemeReport(
        trials=trials,
        decode_errors=errors,
        rate1=Fraction(split.l1, n),
        rate2=Fraction(split.l2, n),
        max_norm_weight1=Fraction(max_w1, n),
        max_norm_weight2=Fraction(max_w2, n),
        mean_norm_weight1=sum_w1 / denom,
        mean_norm_weight2=sum_w2 / denom,
        covering_radius=code.covering_radius,
        code_id=code.code_id,
        code_hash=code.fingerprint,
        seed=cfg.seed,
    )


def exhaustive_check(code: LinearCode, split: SplitSpec | None = None) -> dict:
    """Every (m1, m2, s1, s2) combination; feasible for n up to about 10."""
    split = split or SplitSpec.helper(code)
    split.check(code)
    n = code.n
    states = np.arange(1 << n, dtype=np.uint64)
    m1s = np.arange(1 << split.l1, dtype=np.uint64)
    m2s = np.arange(1 << split.l2, dtype=np.uint64)
    m1, m2, s1, s2 = (a.ravel() for a in np.meshgrid(m1s, m2s, states, states, indexing="ij"))
    errors, w1, w2 = _run_packed(code, split, s1, s2, m1, m2)
    return {
        "cases": int(m1.size),
        "decode_errors": errors,
        "max_weight1": int(w1.max()),
        "max_weight2": int(w2.max()),
    }
