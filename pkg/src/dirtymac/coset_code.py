"""Linear codes viewed as coset partitions of Z_2^n.

A code is given by its parity-check matrix H. Each syndrome v labels one coset
and ``f(v)`` is the coset leader, a minimum-weight vector in that coset. The
n-dimensional modulo operation is ``a mod C = f(H a)``.
"""
from __future__ import annotations

import hashlib
import os
from importlib import resources
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DimensionError, InvalidCodeError, ResourceError
from .gf2 import BitVector, Gf2Matrix, MAX_LENGTH, matvec

DEFAULT_TABLE_CAP_BITS = 1 << 28
TABLE_CAP_ENV = "DIRTYMAC_TABLE_CAP_BITS"

HAMMING_7_4_H = (
    "0001111",
    "0110011",
    "1010101",
)

# Systematic parity-check matrix of the cyclic (23,12) Golay code with
# generator polynomial 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11.
GOLAY_23_12_H = (
    "10000000000111110010010",
    "01000000000011111001001",
    "00100000000110001110110",
    "00010000000011000111011",
    "00001000000110010001111",
    "00000100000100111010101",
    "00000010000101101111000",
    "00000001000010110111100",
    "00000000100001011011110",
    "00000000010000101101111",
    "00000000001111100100101",
)


def table_cap_bits() -> int:
    raw = os.environ.get(TABLE_CAP_ENV)
    return int(raw) if raw else DEFAULT_TABLE_CAP_BITS


@dataclass(frozen=True)
class LinearCode:
    n: int
    k: int
    H: Gf2Matrix
    leaders: tuple[int, ...] = field(repr=False)
    covering_radius: int
    name: str = ""

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def num_cosets(self) -> int:
        return 1 << self.redundancy

    def syndrome(self, x: BitVector) -> BitVector:
        return matvec(self.H, x)

    def leader(self, v: BitVector) -> BitVector:
        """f(v): the minimum-weight vector with syndrome v."""
        if v.length != self.redundancy:
            raise DimensionError(f"syndrome length {v.length}, code has n-k={self.redundancy}")
        return BitVector(self.n, self.leaders[v.value])

    def mod(self, a: BitVector) -> BitVector:
        return self.leader(self.syndrome(a))

    @property
    def leaders_array(self) -> np.ndarray:
        return np.array(self.leaders, dtype=np.uint64)

    def to_text(self) -> str:
        return f"{self.n} {self.k}\n" + self.H.to_text() + "\n"

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    @property
    def code_id(self) -> str:
        return self.name or f"code({self.n},{self.k})-{self.fingerprint[:12]}"


def _next_same_weight(v: int) -> int:
    # Gosper's hack: next larger integer with the same popcount
    c = v & -v
    r = v + c
    return (((r ^ v) >> 2) // c) | r


def build_code(H: Gf2Matrix, name: str = "", cap_bits: int | None = None) -> LinearCode:
    """Build the syndrome -> coset leader table by a BFS over weight shells.

    Shells are scanned in increasing numeric (= lexicographic) order, so the
    first vector reaching a syndrome is the lexicographically smallest
    minimum-weight member of that coset. The scan stops once every syndrome
    has been seen; the last shell weight is the covering radius.
    """
    n = H.cols
    r = H.rows
    if n > MAX_LENGTH:
        raise DimensionError(f"n={n} exceeds {MAX_LENGTH}")
    if r >= n:
        raise InvalidCodeError(f"need fewer checks than columns, got {r}x{n}")
    if H.rank != r:
        raise InvalidCodeError(f"parity-check matrix has rank {H.rank} < {r} rows")
    cap = table_cap_bits() if cap_bits is None else cap_bits
    if (1 << r) * n > cap:
        raise ResourceError(f"coset table needs 2^{r}*{n} bits, cap is {cap}")

    rows = H.data
    total = 1 << r
    leaders: list[int | None] = [None] * total
    seen = 0
    radius = 0
    limit = 1 << n
    for w in range(n + 1):
        v = (1 << w) - 1
        while v < limit:
            s = 0
            for row in rows:
                s = (s << 1) | ((row & v).bit_count() & 1)
            if leaders[s] is None:
                leaders[s] = v
                seen += 1
                radius = w
                if seen == total:
                    break
            if w == 0:
                break
            v = _next_same_weight(v)
        if seen == total:
            break
    return LinearCode(n=n, k=n - r, H=H, leaders=tuple(leaders), covering_radius=radius, name=name)


def mod_code(a: BitVector, code: LinearCode) -> BitVector:
    return code.mod(a)


def covering_radius(code: LinearCode) -> int:
    return code.covering_radius


def hamming_code(r: int = 3) -> LinearCode:
    """Hamming(2^r - 1, 2^r - 1 - r); column j holds the binary form of j+1."""
    n = (1 << r) - 1
    if r == 3:
        return build_code(Gf2Matrix.from_strings(HAMMING_7_4_H), name="hamming7")
    cols = [format(j + 1, f"0{r}b") for j in range(n)]
    lines = ["".join(c[i] for c in cols) for i in range(r)]
    return build_code(Gf2Matrix.from_strings(lines), name=f"hamming{n}")


def golay_code() -> LinearCode:
    return build_code(Gf2Matrix.from_strings(GOLAY_23_12_H), name="golay23")


def repetition_code(n: int) -> LinearCode:
    """Length-n repetition code, H rows e_0 + e_{i+1}."""
    lines = []
    for i in range(n - 1):
        row = ["0"] * n
        row[0] = row[i + 1] = "1"
        lines.append("".join(row))
    return build_code(Gf2Matrix.from_strings(lines), name=f"repetition{n}")


def single_parity_check_code(n: int) -> LinearCode:
    return build_code(Gf2Matrix.from_strings(["1" * n]), name=f"spc{n}")


def random_covering_search(n: int, k: int, seed: int, attempts: int) -> LinearCode:
    """Best covering radius among ``attempts`` random full-rank parity checks.

    Ties keep the earliest candidate, so the result depends only on the seed.
    """
    if not 1 <= k < n <= MAX_LENGTH:
        raise DimensionError(f"need 1 <= k < n <= {MAX_LENGTH}, got n={n} k={k}")
    if attempts < 1:
        raise ValueError("attempts must be positive")
    rng = np.random.Generator(np.random.Philox(seed))
    r = n - k
    best = None
    for _ in range(attempts):
        while True:
            arr = rng.integers(0, 2, size=(r, n))
            H = Gf2Matrix.from_array(arr)
            if H.rank == r:
                break
        code = build_code(H, name=f"random({n},{k})-seed{seed}")
        if best is None or code.covering_radius < best.covering_radius:
            best = code
    return best


def parse_code(text: str, name: str = "") -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidCodeError("empty code file")
    try:
        n, k = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise InvalidCodeError(f"bad header line {lines[0]!r}") from exc
    rows = lines[1:]
    if len(rows) != n - k:
        raise InvalidCodeError(f"header says {n - k} check rows, found {len(rows)}")
    try:
        H = Gf2Matrix.from_strings(rows)
    except (ValueError, DimensionError) as exc:
        raise InvalidCodeError(str(exc)) from exc
    if H.cols != n:
        raise InvalidCodeError(f"rows have {H.cols} columns, header says n={n}")
    return build_code(H, name=name)


def load_code(path) -> LinearCode:
    path = Path(path)
    return parse_code(path.read_text(), name=path.stem)


def save_code(code: LinearCode, path) -> None:
    Path(path).write_text(code.to_text())


BUILTIN_CODES = {
    "hamming7": lambda: hamming_code(3),
    "hamming15": lambda: hamming_code(4),
    "golay23": golay_code,
}


def fixture_path(name: str) -> Path:
    """Path of a shipped code file, e.g. ``fixture_path("hamming7")``."""
    return Path(str(resources.files("dirtymac") / "data" / f"{name}.code"))


def resolve_code(spec: str) -> LinearCode:
    """A builtin name (``hamming7``, ``golay23``...) or a path to a code file."""
    if spec in BUILTIN_CODES:
        return BUILTIN_CODES[spec]()
    return load_code(spec)
