"""Gaussian doubly-dirty MAC  Y = X1 + X2 + S1 + S2 + Z  at desk scale.

Closed forms: the high-SNR sum capacity, the shaping loss and the
Costa-style Gaussian auxiliary rate. Monte Carlo: the G functional
(differential entropies of scalar variables, estimated by m-spacings) for
caller-supplied sampler families, in particular the scalar mod-Delta strategy.

"Strong interference" is a finite proxy (Q / P = 1e6 by default); the
vanishing terms of the limit argument are not modelled.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.stats import differential_entropy as _scipy_de

from .errors import DegenerateConfigurationError, DomainError, PrecisionError

LN2 = math.log(2.0)
MIN_SAMPLES = 10_000
DEFAULT_WINDOW = 1

Sampler = Callable[[np.random.Generator, int], np.ndarray]
PairSampler = Callable[[np.random.Generator, int], tuple]


def _positive(**kw) -> None:
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name}={v} must be positive and finite")


def gaussian_entropy(var: float) -> float:
    """h(N(0, var)) in bits."""
    _positive(var=var)
    return 0.5 * math.log2(2 * math.pi * math.e * var)


def high_snr_sum_capacity(P1: float, P2: float, N: float) -> float:
    _positive(P1=P1, P2=P2, N=N)
    return 0.5 * math.log2(min(P1, P2) / N)


def shaping_loss() -> float:
    """0.5 log2(pi e / 6): uniform versus Gaussian signalling."""
    return 0.5 * math.log2(math.pi * math.e / 6)


def shaping_loss_db() -> float:
    return 10 * math.log10(math.pi * math.e / 6)


def gaussian_costa_sum_rate(P1, P2, N, Q1, Q2, alpha1, alpha2, clamp: bool = True) -> float:
    """I(U1,U2;Y) - I(U1;S1) - I(U2;S2) for U_i = X_i + alpha_i S_i, all Gaussian.

    Computed from the covariance of (U1, U2, Y) as a linear image of the
    independent vector (X1, X2, S1, S2, Z).
    """
    _positive(P1=P1, P2=P2, N=N, Q1=Q1, Q2=Q2)
    A = np.array([
        [1.0, 0.0, alpha1, 0.0, 0.0],
        [0.0, 1.0, 0.0, alpha2, 0.0],
        [1.0, 1.0, 1.0, 1.0, 1.0],
    ])
    K = A @ np.diag([P1, P2, Q1, Q2, N]) @ A.T

    def logdet2(M):
        sign, ld = np.linalg.slogdet(M)
        if sign <= 0:
            raise DegenerateConfigurationError("singular covariance")
        return ld / LN2

    i_uy = 0.5 * (logdet2(K[:2, :2]) + logdet2(K[2:, 2:]) - logdet2(K))
    i_us1 = 0.5 * math.log2((P1 + alpha1**2 * Q1) / P1)
    i_us2 = 0.5 * math.log2((P2 + alpha2**2 * Q2) / P2)
    rate = float(i_uy - i_us1 - i_us2)
    return max(rate, 0.0) if clamp else rate


def costa_sweep(P1, P2, N, Q1, Q2, alphas) -> tuple[float, float, float]:
    """Best (rate, alpha1, alpha2) of the Costa-style auxiliaries over a grid."""
    best = (-math.inf, math.nan, math.nan)
    for a1 in alphas:
        for a2 in alphas:
            r = gaussian_costa_sum_rate(P1, P2, N, Q1, Q2, a1, a2)
            if r > best[0]:
                best = (r, float(a1), float(a2))
    return best


def differential_entropy(samples, window: int = DEFAULT_WINDOW) -> float:
    """m-spacings (van Es) estimate of h in bits.

    A small window keeps the estimate local, which matters for comb-like
    densities produced by lattice strategies; the price is extra variance.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < MIN_SAMPLES:
        raise PrecisionError(f"{x.size} samples, need at least {MIN_SAMPLES}")
    with np.errstate(divide="ignore"):
        h = float(_scipy_de(x, window_length=window, method="van es")) / LN2
    if not math.isfinite(h):
        raise PrecisionError("entropy estimate is not finite (tied samples?)")
    return h


def centered_mod(x, delta):
    """x mod delta, folded into [-delta/2, delta/2)."""
    return x - delta * np.floor(x / delta + 0.5)


class GResult(NamedTuple):
    value: float
    raw: float
    terms: dict
    powers: tuple[float, float]
    constraint: dict


def _g_terms(v1, v1p, v2, v2p, z, s1, s2, window) -> tuple[float, dict]:
    h = lambda a: differential_entropy(a, window)  # noqa: E731
    terms = {
        "h(V1)": h(v1) if v1 is not s1 else None,
        "h(V2)": h(v2) if v2 is not s2 else None,
        "h(V1'+V2'+Z)": h(v1p + v2p + z),
        "h(S1+S2)": h(s1 + s2),
        "h(S1)": h(s1),
        "h(S2)": h(s2),
    }
    # V_i given as the very same samples as S_i: the two terms are equal
    if terms["h(V1)"] is None:
        terms["h(V1)"] = terms["h(S1)"]
    if terms["h(V2)"] is None:
        terms["h(V2)"] = terms["h(S2)"]
    raw = (terms["h(V1)"] + terms["h(V2)"] - terms["h(V1'+V2'+Z)"]
           + terms["h(S1+S2)"] - terms["h(S1)"] - terms["h(S2)"])
    return raw, terms


def g_functional(sampler_pair_1: PairSampler, sampler_pair_2: PairSampler, noise_sampler: Sampler,
                 interference_samplers: tuple[Sampler, Sampler], samples: int,
                 seed: int = 0, window: int = DEFAULT_WINDOW) -> GResult:
    """[h(V1) + h(V2) - h(V1'+V2'+Z) + h(S1+S2) - h(S1) - h(S2)]^+ by Monte Carlo.

    Pair samplers return (V_i, V'_i); (V1, V1') and (V2, V2') are drawn
    independently. The report carries E(V_i - V'_i)^2 and both sides of
    h(V_i) <= h(S_i) without enforcing either.
    """
    if samples < MIN_SAMPLES:
        raise PrecisionError(f"{samples} samples, need at least {MIN_SAMPLES}")
    rng = np.random.Generator(np.random.Philox(seed))
    v1, v1p = (np.asarray(a, dtype=float) for a in sampler_pair_1(rng, samples))
    v2, v2p = (np.asarray(a, dtype=float) for a in sampler_pair_2(rng, samples))
    z = np.asarray(noise_sampler(rng, samples), dtype=float)
    s1 = np.asarray(interference_samplers[0](rng, samples), dtype=float)
    s2 = np.asarray(interference_samplers[1](rng, samples), dtype=float)
    raw, terms = _g_terms(v1, v1p, v2, v2p, z, s1, s2, window)
    powers = (float(np.mean((v1 - v1p) ** 2)), float(np.mean((v2 - v2p) ** 2)))
    constraint = {"h(V1)": terms["h(V1)"], "h(S1)": terms["h(S1)"],
                  "h(V2)": terms["h(V2)"], "h(S2)": terms["h(S2)"]}
    return GResult(max(raw, 0.0), raw, terms, powers, constraint)


@dataclass(frozen=True)
class GaussianConfig:
    P1: float = 1.0
    P2: float = 1.0
    N: float = 1e-3
    Q1: float = 1e6
    Q2: float = 1e6
    samples: int = 1_000_000
    seed: int = 0
    batches: int = 10
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        _positive(P1=self.P1, P2=self.P2, N=self.N, Q1=self.Q1, Q2=self.Q2)
        if self.samples < MIN_SAMPLES:
            raise PrecisionError(f"samples={self.samples} below {MIN_SAMPLES}")
        if self.batches < 2 or self.samples // self.batches < MIN_SAMPLES:
            raise PrecisionError("need at least 2 batches of 10^4 samples for the error estimate")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ModDeltaEstimate:
    estimate: float
    stderr: float
    capacity: float
    gap: float
    raw: float
    terms: dict
    powers: tuple[float, float]
    constraint: dict
    u: tuple[float, float]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["powers"] = list(self.powers)
        out["u"] = list(self.u)
        return out


def mod_delta_family(P: float, u: float) -> PairSampler:
    """(V, V') = (S, S + X) given U = u for U = [X + S] mod Delta, Delta = sqrt(12 P).

    Given U = u, X = [u - S] mod Delta, so V' = S + X sits on the lattice
    u + Delta Z; the caller supplies S through ``interference``.
    """
    delta = math.sqrt(12 * P)

    def pair(s):
        return s, s + centered_mod(u - s, delta)

    return pair


def mod_delta_sum_rate_estimate(cfg: GaussianConfig) -> ModDeltaEstimate:
    """G evaluated at the mod-Delta family, conditioned on one draw of (U1, U2).

    The estimate uses all samples; its standard error comes from the spread
    of the same estimator over ``cfg.batches`` disjoint batches.
    """
    if min(cfg.P1, cfg.P2) / cfg.N < 100:
        raise DomainError("mod-Delta estimate needs SNR = min(P1,P2)/N >= 100")
    if cfg.Q1 < 1e4 * cfg.P1 or cfg.Q2 < 1e4 * cfg.P2:
        raise DomainError("strong-interference proxy needs Q_i >= 1e4 P_i")
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    d1, d2 = math.sqrt(12 * cfg.P1), math.sqrt(12 * cfg.P2)
    u1 = float(rng.uniform(-d1 / 2, d1 / 2))
    u2 = float(rng.uniform(-d2 / 2, d2 / 2))
    n = cfg.samples
    s1 = rng.normal(0.0, math.sqrt(cfg.Q1), n)
    s2 = rng.normal(0.0, math.sqrt(cfg.Q2), n)
    z = rng.normal(0.0, math.sqrt(cfg.N), n)
    v1, v1p = mod_delta_family(cfg.P1, u1)(s1)
    v2, v2p = mod_delta_family(cfg.P2, u2)(s2)

    raw, terms = _g_terms(v1, v1p, v2, v2p, z, s1, s2, cfg.window)
    size = n // cfg.batches
    batch_vals = []
    for b in range(cfg.batches):
        sl = slice(b * size, (b + 1) * size)
        r, _ = _g_terms(v1[sl], v1p[sl], v2[sl], v2p[sl], z[sl], s1[sl], s2[sl], cfg.window)
        batch_vals.append(r)
    # a batch estimate has `batches` times the variance of the full estimate
    stderr = float(np.std(batch_vals, ddof=1) / math.sqrt(cfg.batches))
    estimate = max(raw, 0.0)
    capacity = high_snr_sum_capacity(cfg.P1, cfg.P2, cfg.N)
    powers = (float(np.mean((v1 - v1p) ** 2)), float(np.mean((v2 - v2p) ** 2)))
    constraint = {
        "h(V1)": terms["h(V1)"], "h(S1)_analytic": gaussian_entropy(cfg.Q1),
        "h(V2)": terms["h(V2)"], "h(S2)_analytic": gaussian_entropy(cfg.Q2),
    }
    return ModDeltaEstimate(estimate, stderr, capacity, capacity - estimate, raw, terms,
                            powers, constraint, (u1, u2))


def estimator_calibration(samples: int = 1_000_000, seed: int = 0,
                          window: int = DEFAULT_WINDOW) -> float:
    """Estimated minus exact entropy of a unit Gaussian, in bits."""
    rng = np.random.Generator(np.random.Philox(seed))
    x = rng.standard_normal(samples)
    return differential_entropy(x, window) - gaussian_entropy(1.0)
