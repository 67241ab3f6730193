"""Single-letter rate expressions for the binary doubly-dirty MAC.

Everything is in bits. The main objects are

* the sum capacity ``min(Hb(q1), Hb(q2))`` reached by coset codes,
* the random-binning (pentagon) bounds for finite auxiliary alphabets,
* the function ``F`` on pairs of 2x2 joint laws, its constrained maximum
  ``F_max`` and the upper concave envelope of ``F_max(q, q)`` in ``q``,
  which equals ``C* q`` on ``[0, q*]`` and ``2 Hb(q) - 1`` on ``[q*, 1/2]``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar
from scipy.special import entr

from .errors import DomainError

LN2 = math.log(2.0)
_EPS = 1e-12


def _hb(p):
    """Binary entropy without domain checks (vectorized)."""
    p = np.asarray(p, dtype=float)
    return (entr(p) + entr(1.0 - p)) / LN2


def _entropy(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    return float(entr(p).sum() / LN2)


def _check_unit(name: str, x, hi: float = 1.0) -> None:
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > hi):
        raise DomainError(f"{name}={x} outside [0, {hi:g}]")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def binary_entropy(p):
    _check_unit("p", p)
    return _out(_hb(p))


def binary_convolution(x, y):
    """x * y = (1-x) y + (1-y) x, the crossover of two cascaded BSCs."""
    _check_unit("x", x)
    _check_unit("y", y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return _out((1 - x) * y + (1 - y) * x)


def _conv(x, y):
    return (1 - x) * y + (1 - y) * x


def positive_part(x):
    return np.maximum(x, 0.0)


def capacity_sum(q1, q2) -> float:
    _check_unit("q1", q1, 0.5)
    _check_unit("q2", q2, 0.5)
    return float(min(_hb(q1), _hb(q2)))


def one_dirty_capacity(q1) -> float:
    """Common-message capacity with only user 1 informed: Hb(q1)."""
    _check_unit("q1", q1, 0.5)
    return float(_hb(q1))


# --------------------------------------------------------------------------
# critical constants


class CriticalConstants(NamedTuple):
    q_star: float
    c_star: float
    q_c: float
    x_at_qc: float


def f_threshold(x):
    """x - 1 / (1 + (1/x - 1)^2); its maximum on (0, 1/2] is q_c."""
    x = np.asarray(x, dtype=float)
    return _out(x - x**2 / (x**2 + (1 - x) ** 2))


def qc_quartic(x):
    """4x^4 - 8x^3 + 10x^2 - 6x + 1; same sign as the derivative of f_threshold."""
    return 4 * x**4 - 8 * x**3 + 10 * x**2 - 6 * x + 1


@lru_cache(maxsize=1)
def critical_constants() -> CriticalConstants:
    q_star = 1.0 - 1.0 / math.sqrt(2.0)
    c_star = (2.0 * float(_hb(q_star)) - 1.0) / q_star
    # f increases while the quartic is positive: the local maximum on (0, 1/2]
    # is the first + to - sign change.
    xs = np.linspace(1e-6, 0.5, 501)
    signs = np.sign(qc_quartic(xs))
    idx = int(np.flatnonzero((signs[:-1] > 0) & (signs[1:] <= 0))[0])
    x_c = bisect(qc_quartic, xs[idx], xs[idx + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return CriticalConstants(q_star, c_star, float(f_threshold(x_c)), float(x_c))


def bsl_sum_rate(q) -> float:
    """Best single-letter sum rate: C* q below q*, 2 Hb(q) - 1 above."""
    _check_unit("q", q, 0.5)
    cc = critical_constants()
    if q <= cc.q_star:
        return cc.c_star * q
    return 2.0 * float(_hb(q)) - 1.0


# --------------------------------------------------------------------------
# F, F_reduced, F_max


@dataclass(frozen=True)
class JointDist2x2:
    """Joint law of a binary pair (V, V'); ``p[v][v']``."""

    p: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.shape != (2, 2):
            raise DomainError("joint table must be 2x2")
        if np.any(arr < 0) or abs(arr.sum() - 1.0) > _EPS:
            raise DomainError(f"not a probability table: {self.p}")
        object.__setattr__(self, "p", tuple(tuple(float(v) for v in row) for row in arr))

    @classmethod
    def from_params(cls, alpha: float, delta: float, gamma: float) -> "JointDist2x2":
        """alpha = P(V=1), delta = P(V'=1 | V=0), gamma = P(V'=0 | V=1)."""
        return cls((((1 - alpha) * (1 - delta), (1 - alpha) * delta),
                    (alpha * gamma, alpha * (1 - gamma))))

    @classmethod
    def z_channel(cls, alpha: float, q: float) -> "JointDist2x2":
        """V' flips only 1 -> 0, as rarely as P(V != V') <= q allows."""
        gamma = 1.0 if alpha <= q else q / alpha
        return cls.from_params(alpha, 0.0, gamma)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.p)

    @property
    def p_v(self) -> float:
        return self.p[1][0] + self.p[1][1]

    @property
    def p_vprime(self) -> float:
        return self.p[0][1] + self.p[1][1]

    @property
    def mismatch(self) -> float:
        return self.p[0][1] + self.p[1][0]


def F_general(d1: JointDist2x2, d2: JointDist2x2) -> float:
    """[H(V1) + H(V2) - H(V1' xor V2') - 1]^+ with (V1,V1') independent of (V2,V2')."""
    a1, a2 = d1.array, d2.array
    p_xor = 0.0
    for v1 in (0, 1):
        for w1 in (0, 1):
            for v2 in (0, 1):
                for w2 in (0, 1):
                    if w1 ^ w2:
                        p_xor += a1[v1, w1] * a2[v2, w2]
    raw = (_entropy(a1.sum(axis=1)) + _entropy(a2.sum(axis=1))
           - _entropy([p_xor, 1.0 - p_xor]) - 1.0)
    return max(raw, 0.0)


def _f_raw(a1, a2, q1, q2):
    return _hb(a1) + _hb(a2) - _hb(_conv(positive_part(a1 - q1), positive_part(a2 - q2))) - 1.0


def F_reduced(alpha1, alpha2, q1, q2) -> float:
    """Z-channel form [Hb(a1) + Hb(a2) - Hb((a1-q1)^+ * (a2-q2)^+) - 1]^+."""
    for name, v in (("alpha1", alpha1), ("alpha2", alpha2), ("q1", q1), ("q2", q2)):
        _check_unit(name, v, 0.5)
    return max(float(_f_raw(alpha1, alpha2, q1, q2)), 0.0)


class FmaxResult(NamedTuple):
    value: float
    alpha1: float
    alpha2: float
    raw: float


def _refine_coordinate(fun, x0: float, lo: float, hi: float, kink: float, tol: float) -> tuple[float, float]:
    """Maximize a 1-D function on [lo, hi], treating each side of the kink separately."""
    pieces = [(lo, hi)]
    if lo < kink < hi:
        pieces = [(lo, kink), (kink, hi)]
    best_x, best_v = x0, fun(x0)
    for a, b in pieces:
        for x in (a, b):
            v = fun(x)
            if v > best_v:
                best_x, best_v = x, v
        if b - a > tol:
            res = minimize_scalar(lambda t: -fun(t), bounds=(a, b), method="bounded",
                                  options={"xatol": tol * 1e-3})
            if -res.fun > best_v:
                best_x, best_v = float(res.x), float(-res.fun)
    return best_x, best_v


def F_max(q1, q2, grid_resolution: int = 1024, tol: float = 1e-6) -> FmaxResult:
    """Constrained maximum of F over alpha in [0, 1/2]^2.

    Grid search (the kink points alpha_i = q_i are added to the grid), then
    coordinate-wise bounded refinement inside the neighbouring grid cells.
    The argmax is taken on the unclamped objective so it stays informative
    where the clamped value is 0.
    """
    _check_unit("q1", q1, 0.5)
    _check_unit("q2", q2, 0.5)
    base = np.linspace(0.0, 0.5, grid_resolution + 1)
    g1 = np.union1d(base, [q1])
    g2 = np.union1d(base, [q2])
    raw = _f_raw(g1[:, None], g2[None, :], q1, q2)
    i, j = np.unravel_index(int(np.argmax(raw)), raw.shape)
    a1, a2, best = float(g1[i]), float(g2[j]), float(raw[i, j])
    lo1, hi1 = g1[max(i - 1, 0)], g1[min(i + 1, g1.size - 1)]
    lo2, hi2 = g2[max(j - 1, 0)], g2[min(j + 1, g2.size - 1)]
    for _ in range(50):
        prev = (a1, a2)
        a1, best = _refine_coordinate(lambda t: float(_f_raw(t, a2, q1, q2)), a1, lo1, hi1, q1, tol)
        a2, best = _refine_coordinate(lambda t: float(_f_raw(a1, t, q1, q2)), a2, lo2, hi2, q2, tol)
        if abs(a1 - prev[0]) < tol and abs(a2 - prev[1]) < tol:
            break
    return FmaxResult(max(best, 0.0), a1, a2, best)


# --------------------------------------------------------------------------
# envelopes


@dataclass
class RegionCurve:
    q_grid: np.ndarray
    values: np.ndarray
    envelope_applied: bool = False
    breakpoints: tuple[float, ...] = field(default=())

    def __post_init__(self):
        self.q_grid = np.asarray(self.q_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.q_grid.shape != self.values.shape or self.q_grid.ndim != 1:
            raise ValueError("q_grid and values must be 1-D arrays of equal length")

    def is_concave(self, tol: float = 1e-12) -> bool:
        q, v = self.q_grid, self.values
        if q.size < 3:
            return True
        slopes = np.diff(v) / np.diff(q)
        return bool(np.all(np.diff(slopes) <= tol * np.maximum(1.0, np.abs(slopes[:-1]))))


def _upper_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    hull: list[int] = []
    for i in range(x.size):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (x[a] - x[o]) * (y[i] - y[o]) - (y[a] - y[o]) * (x[i] - x[o])
            if cross >= 0:  # a lies on or below the chord o -> i
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def upper_convex_envelope(curve: RegionCurve) -> RegionCurve:
    """Least concave majorant of the sampled curve (time sharing between samples)."""
    q, v = curve.q_grid, curve.values
    if q.size == 0:
        raise ValueError("empty curve")
    if np.any(np.diff(q) <= 0):
        raise ValueError("q grid must be strictly increasing")
    hull = _upper_hull(q, v)
    env = np.interp(q, q[hull], v[hull])
    env[hull] = v[hull]
    breaks = set()
    for a, b in zip(hull[:-1], hull[1:]):
        if b - a > 1:
            for idx in (a, b):
                if 0 < idx < q.size - 1:
                    breaks.add(float(q[idx]))
    return RegionCurve(q.copy(), env, True, tuple(sorted(breaks)))


def fmax_diagonal_curve(q_grid, grid_resolution: int = 1024) -> tuple[RegionCurve, np.ndarray]:
    """F_max(q, q) sampled on ``q_grid`` plus the maximizing alpha1 at each q."""
    q_grid = np.asarray(q_grid, dtype=float)
    results = [F_max(q, q, grid_resolution) for q in q_grid]
    values = np.array([r.value for r in results])
    alphas = np.array([r.alpha1 for r in results])
    return RegionCurve(q_grid, values), alphas


# --------------------------------------------------------------------------
# pentagon bounds from finite auxiliaries


@dataclass(frozen=True)
class AuxChannelSpec:
    """P(u, x | s) for one user, stored as ``table[s, u, x]`` with |S| = |X| = 2."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.ndim != 3 or t.shape[0] != 2 or t.shape[2] != 2 or t.shape[1] < 1:
            raise DomainError(f"table must have shape (2, |U|, 2), got {t.shape}")
        if np.any(t < 0) or np.any(np.abs(t.sum(axis=(1, 2)) - 1.0) > _EPS):
            raise DomainError("each slice P(., . | s) must be a probability table")
        object.__setattr__(self, "table", t)

    @property
    def u_size(self) -> int:
        return self.table.shape[1]

    @classmethod
    def random(cls, rng: np.random.Generator, u_size: int) -> "AuxChannelSpec":
        t = rng.random((2, u_size, 2))
        return cls(t / t.sum(axis=(1, 2), keepdims=True))

    @classmethod
    def costa_xor(cls, q: float) -> "AuxChannelSpec":
        """U = S xor X with X ~ Bernoulli(q) independent of S."""
        t = np.zeros((2, 2, 2))
        for s in (0, 1):
            for x in (0, 1):
                t[s, s ^ x, x] = q if x else 1 - q
        return cls(t)

    @classmethod
    def input_only(cls, q: float) -> "AuxChannelSpec":
        """U = X with X ~ Bernoulli(q) independent of S."""
        t = np.zeros((2, 2, 2))
        for s in (0, 1):
            t[s, 0, 0] = 1 - q
            t[s, 1, 1] = q
        return cls(t)

    @classmethod
    def constant(cls, q: float = 0.0) -> "AuxChannelSpec":
        t = np.zeros((2, 1, 2))
        t[:, 0, 0] = 1 - q
        t[:, 0, 1] = q
        return cls(t)


class PentagonBounds(NamedTuple):
    r1: float
    r2: float
    sum: float
    info: dict


def pentagon_region(spec1: AuxChannelSpec, spec2: AuxChannelSpec) -> PentagonBounds:
    """Random-binning pentagon for uniform independent states and Y = X1^X2^S1^S2.

    R1 <= I(U1;Y|U2) - I(U1;S1), R2 <= I(U2;Y|U1) - I(U2;S2),
    R1 + R2 <= I(U1,U2;Y) - I(U1;S1) - I(U2;S2); each clamped at 0.
    """
    t1, t2 = spec1.table, spec2.table
    xor = np.zeros((2, 2, 2, 2, 2))  # [s1, s2, x1, x2, y]
    for s1 in (0, 1):
        for s2 in (0, 1):
            for x1 in (0, 1):
                for x2 in (0, 1):
                    xor[s1, s2, x1, x2, s1 ^ s2 ^ x1 ^ x2] = 1.0
    # P(u1, u2, y) = sum_{s,x} P(s1) P(s2) P(u1,x1|s1) P(u2,x2|s2) [y = ...]
    p_uuy = 0.25 * np.einsum("aiu,bjv,abuvy->ijy", t1, t2, xor)
    p_us1 = 0.5 * t1.sum(axis=2).T  # [u1, s1]
    p_us2 = 0.5 * t2.sum(axis=2).T

    h = _entropy
    h_u1u2y = h(p_uuy)
    h_u1u2 = h(p_uuy.sum(axis=2))
    h_u1y = h(p_uuy.sum(axis=1))
    h_u2y = h(p_uuy.sum(axis=0))
    h_u1 = h(p_uuy.sum(axis=(1, 2)))
    h_u2 = h(p_uuy.sum(axis=(0, 2)))
    h_y = h(p_uuy.sum(axis=(0, 1)))

    info = {
        "I(U1;Y|U2)": h_u1u2 + h_u2y - h_u2 - h_u1u2y,
        "I(U2;Y|U1)": h_u1u2 + h_u1y - h_u1 - h_u1u2y,
        "I(U1,U2;Y)": h_u1u2 + h_y - h_u1u2y,
        "I(U1;S1)": h(p_us1.sum(axis=1)) + 1.0 - h(p_us1),
        "I(U2;S2)": h(p_us2.sum(axis=1)) + 1.0 - h(p_us2),
    }
    r1 = info["I(U1;Y|U2)"] - info["I(U1;S1)"]
    r2 = info["I(U2;Y|U1)"] - info["I(U2;S2)"]
    rs = info["I(U1,U2;Y)"] - info["I(U1;S1)"] - info["I(U2;S2)"]
    info["raw"] = (r1, r2, rs)
    return PentagonBounds(max(r1, 0.0), max(r2, 0.0), max(rs, 0.0), info)


# --------------------------------------------------------------------------
# one dirty user, auxiliary inequalities


class ConverseCheck(NamedTuple):
    max_value: float
    argmax: float
    attained: bool


def one_dirty_converse_check(q, grid: int = 200_000, tol: float = 1e-6) -> ConverseCheck:
    """Maximize Hb(a) - Hb([a - q]^+) over a in [0, 1/2]; the kink a = q is on the grid."""
    _check_unit("q", q, 0.5)
    a = np.union1d(np.linspace(0.0, 0.5, grid + 1), [q])
    vals = _hb(a) - _hb(positive_part(a - q))
    i = int(np.argmax(vals))
    target = float(_hb(q))
    at_q = float(_hb(q) - _hb(0.0))
    attained = abs(vals[i] - target) <= tol and abs(at_q - vals[i]) <= tol
    return ConverseCheck(float(vals[i]), float(a[i]), bool(attained))


def converse_inequality_checks(step: float = 1e-3) -> dict:
    """Dense-grid checks of the two auxiliary inequalities behind the converse.

    * Hb(a - q) - 2 Hb(a) + 2 Hb(q) >= 0 for q_c <= q <= a <= 1/2,
    * argmax over [0, 1/2] of Hb(x) - 1 - C* x is q*/2.
    """
    cc = critical_constants()
    qs = np.arange(cc.q_c, 0.5 + step / 2, step)
    qs = np.clip(qs, cc.q_c, 0.5)
    q_mesh, a_mesh = np.meshgrid(qs, qs, indexing="ij")
    valid = a_mesh >= q_mesh
    margin = _hb(a_mesh - q_mesh) - 2 * _hb(a_mesh) + 2 * _hb(q_mesh)
    entropy_margin = float(margin[valid].min())

    xs = np.arange(0.0, 0.5 + step / 2, step)
    xs = xs[xs <= 0.5]
    g = _hb(xs) - 1.0 - cc.c_star * xs
    slope_argmax = float(xs[int(np.argmax(g))])
    return {
        "entropy_margin_min": entropy_margin,
        "entropy_margin_holds": entropy_margin >= -1e-9,
        "slope_argmax": slope_argmax,
        "slope_argmax_expected": cc.q_star / 2,
        "slope_argmax_closed_form": 1.0 / (2.0**cc.c_star + 1.0),
        "f_at_0.257": float(f_threshold(0.257)),
        "q_c": cc.q_c,
        "step": step,
    }
