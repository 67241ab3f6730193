"""Distributed recovery of Z = X ^ Y from syndromes of X and Y.

X is uniform and Y = X ^ Z with Z i.i.d. Bernoulli(theta). Each encoder sends
the syndrome of its own block; the decoder forms H z = H x ^ H y and outputs
the coset leader f(H z). Finite-n rates and error rates only: nothing here
claims the asymptotic 2 H_b(theta) rate sum.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .coset_code import LinearCode
from .channel import raw_words
from .errors import ConfigurationError, DimensionError, DomainError
from .gf2 import BitVector, MAX_LENGTH, matvec_packed
from .single_letter import binary_entropy


@dataclass(frozen=True)
class KmSourceConfig:
    n: int
    theta: float
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ConfigurationError(f"block length must be in [1, {MAX_LENGTH}]")
        if not 0 <= self.theta <= 0.5:
            raise ConfigurationError(f"theta={self.theta} outside [0, 1/2]")


def _check_theta(theta) -> None:
    if not 0 <= theta <= 0.5:
        raise DomainError(f"theta={theta} outside [0, 1/2]")


def km_rate_sum(theta: float) -> float:
    """Rate sum 2 H(Z) of syndrome coding for the xor."""
    _check_theta(theta)
    return 2 * binary_entropy(theta)


def sw_rate_sum(theta: float) -> float:
    """Rate sum H(X, Y) = 1 + H(Z) for recovering both sources."""
    _check_theta(theta)
    return 1 + binary_entropy(theta)


def rate_gap(theta: float) -> float:
    return sw_rate_sum(theta) - km_rate_sum(theta)


def km_encode(x: BitVector, code: LinearCode) -> BitVector:
    if x.length != code.n:
        raise DimensionError(f"source block has length {x.length}, code has n={code.n}")
    return code.syndrome(x)


def km_decode(sx: BitVector, sy: BitVector, code: LinearCode) -> BitVector:
    """z_hat = f(H x ^ H y)."""
    return code.leader(sx ^ sy)


def analytic_block_error(theta: float, code: LinearCode) -> float:
    """P(z is not its own coset leader) for Bernoulli(theta) noise.

    Exact for any code: decoding succeeds iff z is the chosen leader.
    """
    counts = np.bincount([int(v).bit_count() for v in code.leaders], minlength=code.n + 1)
    w = np.arange(code.n + 1)
    p_ok = float(np.sum(counts * theta**w * (1 - theta) ** (code.n - w)))
    return 1.0 - p_ok


@dataclass(frozen=True)
class KmReport:
    theta: float
    trials: int
    block_errors: int
    error_rate: float
    code_rate: Fraction
    km_bound: float
    sw_bound: float
    gap: float
    code_id: str
    code_hash: str
    seed: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["code_rate"] = str(self.code_rate)
        return out


def km_scheme_demo(cfg: KmSourceConfig, code: LinearCode, trials: int = 100_000,
                   chunk: int = 1 << 16) -> KmReport:
    if cfg.n != code.n:
        raise DimensionError(f"source block length {cfg.n} != code length {code.n}")
    # trial i owns Philox blocks [i*K, (i+1)*K): word 0 is x, words 1..n
    # become the uniforms that draw the n noise bits
    K = (code.n + 1 + 3) // 4
    leaders = code.leaders_array
    weights = np.uint64(1) << np.arange(code.n - 1, -1, -1, dtype=np.uint64)
    mask = np.uint64((1 << code.n) - 1)
    errors = 0
    for start in range(0, trials, chunk):
        count = min(chunk, trials - start)
        words = raw_words(cfg.seed, start * K, count * K).reshape(count, 4 * K)
        x = words[:, 0] & mask
        u = (words[:, 1:code.n + 1] >> np.uint64(11)).astype(float) * 2.0**-53
        z = ((u < cfg.theta).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        y = x ^ z
        z_hat = leaders[(matvec_packed(code.H, x) ^ matvec_packed(code.H, y)).astype(np.int64)]
        errors += int(np.count_nonzero(z_hat != z))
    return KmReport(
        theta=cfg.theta,
        trials=trials,
        block_errors=errors,
        error_rate=errors / trials if trials else 0.0,
        code_rate=Fraction(code.redundancy, code.n),
        km_bound=km_rate_sum(cfg.theta),
        sw_bound=sw_rate_sum(cfg.theta),
        gap=rate_gap(cfg.theta),
        code_id=code.code_id,
        code_hash=code.fingerprint,
        seed=cfg.seed,
    )


def exhaustive_error_set(code: LinearCode) -> set[int]:
    """All noise patterns z (packed) that the decoder gets wrong, x = 0."""
    zs = np.arange(1 << code.n, dtype=np.uint64)
    z_hat = code.leaders_array[matvec_packed(code.H, zs).astype(np.int64)]
    return {int(z) for z in zs[z_hat != zs]}
