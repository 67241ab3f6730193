"""Binary doubly-dirty MAC  Y = X1 ^ X2 ^ S1 ^ S2  (no unknown noise).

States come from a counter-based Philox stream keyed by the seed: draw ``i``
uses Philox block ``i`` (four 64-bit words), so a draw depends only on
(seed, i) and batches reproduce single draws exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigurationError, DimensionError
from .gf2 import BitVector, MAX_LENGTH

WORDS_PER_DRAW = 4


@dataclass(frozen=True)
class ChannelConfig:
    n: int
    q1: float = 0.5
    q2: float = 0.5
    one_dirty: bool = False
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ConfigurationError(f"block length must be in [1, {MAX_LENGTH}]")
        for name in ("q1", "q2"):
            q = getattr(self, name)
            if not 0 <= q <= 0.5:
                raise ConfigurationError(f"{name}={q} outside [0, 1/2]")


@dataclass(frozen=True)
class TransmissionRecord:
    s1: BitVector
    s2: BitVector
    x1: BitVector
    x2: BitVector
    y: BitVector

    @property
    def normalized_weights(self) -> tuple[Fraction, Fraction]:
        n = self.y.length
        return Fraction(self.x1.weight(), n), Fraction(self.x2.weight(), n)

    def satisfies(self, q1, q2) -> bool:
        w1, w2 = self.normalized_weights
        return w1 <= as_fraction(q1) and w2 <= as_fraction(q2)

    def to_json(self) -> str:
        w1, w2 = self.normalized_weights
        return json.dumps({
            "s1": str(self.s1), "s2": str(self.s2),
            "x1": str(self.x1), "x2": str(self.x2), "y": str(self.y),
            "normalized_weights": [str(w1), str(w2)],
        })


def as_fraction(q) -> Fraction:
    """Exact rational for a constraint; floats snap to the nearest small fraction (1/7, 3/23...)."""
    if isinstance(q, float):
        return Fraction(q).limit_denominator(1 << 20)
    return Fraction(q)


def raw_words(seed: int, start: int, count: int) -> np.ndarray:
    """Philox blocks ``start .. start+count-1`` as a (count, 4) uint64 array."""
    if count == 0:
        return np.zeros((0, WORDS_PER_DRAW), dtype=np.uint64)
    bitgen = np.random.Philox(key=seed, counter=start)
    return bitgen.random_raw(WORDS_PER_DRAW * count).reshape(count, WORDS_PER_DRAW)


def _mask(n: int) -> np.uint64:
    return np.uint64((1 << n) - 1)


def draw_state_batch(cfg: ChannelConfig, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Packed states for draws ``start .. start+count-1``."""
    words = raw_words(cfg.seed, start, count)
    s1 = words[:, 0] & _mask(cfg.n)
    s2 = np.zeros_like(s1) if cfg.one_dirty else words[:, 1] & _mask(cfg.n)
    return s1, s2


def draw_states(cfg: ChannelConfig, index: int = 0) -> tuple[BitVector, BitVector]:
    s1, s2 = draw_state_batch(cfg, index, 1)
    return BitVector(cfg.n, int(s1[0])), BitVector(cfg.n, int(s2[0]))


def transmit(x1: BitVector, x2: BitVector, s1: BitVector, s2: BitVector) -> TransmissionRecord:
    n = x1.length
    if any(v.length != n for v in (x2, s1, s2)):
        raise DimensionError("all channel operands must share one block length")
    y = BitVector(n, x1.value ^ x2.value ^ s1.value ^ s2.value)
    return TransmissionRecord(s1=s1, s2=s2, x1=x1, x2=x2, y=y)


def write_trial_log(records, fh) -> None:
    """One JSON object per line."""
    for rec in records:
        fh.write(rec.to_json() + "\n")
