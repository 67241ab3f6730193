"""Bit vectors and matrices over GF(2), packed into Python ints.

Position 0 of a vector is its leftmost character in text form and the most
significant bit of the packed integer, so ``int(text, 2)`` is the packed value
and numeric order coincides with lexicographic order of the bit strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

MAX_LENGTH = 64


def _check_length(n: int) -> None:
    if not 1 <= n <= MAX_LENGTH:
        raise DimensionError(f"length must be in [1, {MAX_LENGTH}], got {n}")


@dataclass(frozen=True)
class BitVector:
    length: int
    value: int

    def __post_init__(self):
        _check_length(self.length)
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        bits = list(bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        return cls.from_str("".join(map(str, bits)))

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, j: int) -> "BitVector":
        if not 0 <= j < n:
            raise IndexError(j)
        return cls(n, 1 << (n - 1 - j))

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not -self.length <= j < self.length:
            raise IndexError(j)
        j %= self.length
        return (self.value >> (self.length - 1 - j)) & 1

    def __iter__(self):
        return (self[j] for j in range(self.length))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    def weight(self) -> int:
        return self.value.bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor(self, other)

    def concat(self, other: "BitVector | None") -> "BitVector":
        if other is None:
            return self
        return BitVector(self.length + other.length, (self.value << other.length) | other.value)

    def slice(self, start: int, stop: int) -> "BitVector":
        """Bits ``start:stop`` as a new vector (positions counted from the left)."""
        if not 0 <= start < stop <= self.length:
            raise IndexError((start, stop))
        width = stop - start
        return BitVector(width, (self.value >> (self.length - stop)) & ((1 << width) - 1))


def hamming_weight(v: BitVector) -> int:
    return v.weight()


def xor(a: BitVector, b: BitVector) -> BitVector:
    if a.length != b.length:
        raise DimensionError(f"xor of lengths {a.length} and {b.length}")
    return BitVector(a.length, a.value ^ b.value)


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix; ``data[i]`` is row i packed like a BitVector."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1:
            raise DimensionError("matrix needs at least one row")
        _check_length(self.cols)
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        if any(not 0 <= r < limit for r in self.data):
            raise ValueError("row does not fit in the column count")

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "Gf2Matrix":
        vecs = [BitVector.from_str(s) for s in lines]
        if len({v.length for v in vecs}) != 1:
            raise DimensionError("ragged matrix rows")
        return cls(len(vecs), vecs[0].length, tuple(v.value for v in vecs))

    @classmethod
    def from_array(cls, array) -> "Gf2Matrix":
        arr = np.asarray(array, dtype=np.int64) % 2
        if arr.ndim != 2:
            raise DimensionError("need a 2-D array")
        return cls.from_strings(["".join(map(str, row)) for row in arr.tolist()])

    @classmethod
    def identity(cls, m: int) -> "Gf2Matrix":
        return cls(m, m, tuple(1 << (m - 1 - i) for i in range(m)))

    def to_strings(self) -> list[str]:
        return [format(r, f"0{self.cols}b") for r in self.data]

    def to_text(self) -> str:
        return "\n".join(self.to_strings())

    def to_array(self) -> np.ndarray:
        return np.array([[int(c) for c in s] for s in self.to_strings()], dtype=np.uint8)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column(self, j: int) -> BitVector:
        shift = self.cols - 1 - j
        return BitVector.from_bits((r >> shift) & 1 for r in self.data)

    @cached_property
    def rank(self) -> int:
        return len(row_reduce(self)[1])


def matvec(H: Gf2Matrix, x: BitVector) -> BitVector:
    if H.cols != x.length:
        raise DimensionError(f"matrix has {H.cols} columns, vector length {x.length}")
    s = 0
    for r in H.data:
        s = (s << 1) | ((r & x.value).bit_count() & 1)
    return BitVector(H.rows, s)


def matvec_packed(H: Gf2Matrix, xs: np.ndarray) -> np.ndarray:
    """Syndromes of many packed vectors at once (uint64 in, uint64 out)."""
    xs = np.asarray(xs, dtype=np.uint64)
    out = np.zeros(xs.shape, dtype=np.uint64)
    for r in H.data:
        parity = np.bitwise_count(xs & np.uint64(r)).astype(np.uint64) & np.uint64(1)
        out = (out << np.uint64(1)) | parity
    return out


def row_reduce(M: Gf2Matrix) -> tuple[Gf2Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    rows = list(M.data)
    pivots = []
    r = 0
    for col in range(M.cols):
        bit = 1 << (M.cols - 1 - col)
        pivot = next((i for i in range(r, M.rows) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(M.rows):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == M.rows:
            break
    return Gf2Matrix(M.rows, M.cols, tuple(rows)), tuple(pivots)


def rank(M: Gf2Matrix) -> int:
    return M.rank


def nullspace(M: Gf2Matrix) -> list[BitVector]:
    """Basis of {x : Mx = 0}."""
    R, pivots = row_reduce(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        x = 1 << (M.cols - 1 - f)
        for i, p in enumerate(pivots):
            if (R.data[i] >> (M.cols - 1 - f)) & 1:
                x |= 1 << (M.cols - 1 - p)
        basis.append(BitVector(M.cols, x))
    return basis
