"""Dense GF(2) vectors and matrices backed by int bitsets.

Bit order convention, used everywhere in this package: bit index i of a
vector lives at integer bit position i (so machine word i // 64, in-word
position i % 64), and text serialization is index-ascending left to right.
All values are immutable after construction; bits above the stated length
are always zero, so equality is plain integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = [
    "BitVector",
    "BitMatrix",
    "weight",
    "cyclic_shift",
    "rank",
    "is_self_orthogonal",
    "contains",
    "row_space_equal",
    "read_matrix_text",
    "write_matrix_text",
]


@dataclass(frozen=True)
class BitVector:
    """Fixed-length bit string; bit i of `bits` is coordinate i."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"BitVector length must be >= 1, got {self.n}")
        if self.bits < 0:
            raise ParameterError("BitVector bits must be a nonnegative integer")
        # enforce canonical form: no set bits at or above index n
        object.__setattr__(self, "bits", self.bits & ((1 << self.n) - 1))

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse a '0'/'1' string, leftmost character = bit 0."""
        stripped = text.strip()
        if not stripped or any(c not in "01" for c in stripped):
            raise ParameterError(f"not a binary string: {text!r}")
        bits = 0
        for i, c in enumerate(stripped):
            if c == "1":
                bits |= 1 << i
        return cls(len(stripped), bits)

    @classmethod
    def from_bits(cls, bit_list) -> "BitVector":
        """Build from an iterable of 0/1 values, element i = bit i."""
        bit_list = list(bit_list)
        bits = 0
        for i, b in enumerate(bit_list):
            if b:
                bits |= 1 << i
        return cls(len(bit_list), bits)

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ParameterError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ParameterError(f"length mismatch: {self.n} != {other.n}")
        return BitVector(self.n, self.bits & other.bits)

    def to_words(self) -> np.ndarray:
        """Pack into little-endian uint64 words (word j holds bits 64j..64j+63)."""
        nwords = (self.n + 63) // 64
        words = np.zeros(nwords, dtype=np.uint64)
        v = self.bits
        for j in range(nwords):
            words[j] = v & 0xFFFFFFFFFFFFFFFF
            v >>= 64
        return words


@dataclass(frozen=True)
class BitMatrix:
    """Stack of equal-length BitVector rows."""

    data: tuple
    rows: int = field(init=False)
    cols: int = field(init=False)

    def __post_init__(self) -> None:
        data = tuple(self.data)
        if not data:
            raise ParameterError("BitMatrix needs at least one row")
        cols = data[0].n
        if any(r.n != cols for r in data):
            raise ParameterError("all rows must have identical length")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, row_ints, cols: int) -> "BitMatrix":
        return cls(tuple(BitVector(cols, r) for r in row_ints))

    @classmethod
    def from_strings(cls, lines) -> "BitMatrix":
        return cls(tuple(BitVector.from_string(s) for s in lines))

    def row(self, i: int) -> BitVector:
        return self.data[i]

    def row_ints(self) -> list:
        return [r.bits for r in self.data]

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.data)


def weight(v: BitVector) -> int:
    """Hamming weight (number of set bits)."""
    return v.bits.bit_count()


def cyclic_shift(v: BitVector, l: int) -> BitVector:
    """Cyclic right-shift by l positions: output bit (i+l) mod n = input bit i."""
    if not 0 <= l < v.n:
        raise ParameterError(f"shift {l} out of range [0, {v.n})")
    if l == 0:
        return v
    mask = (1 << v.n) - 1
    return BitVector(v.n, ((v.bits << l) | (v.bits >> (v.n - l))) & mask)


def _eliminate(row_ints: list, cols: int) -> int:
    """In-place GF(2) Gaussian elimination on a list of int rows; returns rank."""
    r = 0
    for col in range(cols):
        pivot = None
        for i in range(r, len(row_ints)):
            if (row_ints[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        row_ints[r], row_ints[pivot] = row_ints[pivot], row_ints[r]
        for i in range(len(row_ints)):
            if i != r and ((row_ints[i] >> col) & 1):
                row_ints[i] ^= row_ints[r]
        r += 1
        if r == len(row_ints):
            break
    return r


def rank(M: BitMatrix) -> int:
    """GF(2) row rank via Gaussian elimination on a copy; M is not modified."""
    return _eliminate(M.row_ints(), M.cols)


def is_self_orthogonal(G: BitMatrix) -> bool:
    """True iff G * G^T = 0 over GF(2), diagonal included."""
    ints = G.row_ints()
    for i, a in enumerate(ints):
        for b in ints[i:]:
            if (a & b).bit_count() & 1:
                return False
    return True


def contains(G: BitMatrix, v: BitVector) -> bool:
    """True iff v lies in the row space of G."""
    if v.n != G.cols:
        raise ParameterError(f"vector length {v.n} != matrix cols {G.cols}")
    work = G.row_ints()
    base = _eliminate(work, G.cols)
    return _eliminate(work[:base] + [v.bits], G.cols) == base


def row_space_equal(A: BitMatrix, B: BitMatrix) -> bool:
    """True iff A and B generate the same GF(2) row space."""
    if A.cols != B.cols:
        raise ParameterError(f"column mismatch: {A.cols} != {B.cols}")
    ra = rank(A)
    rb = rank(B)
    if ra != rb:
        return False
    return _eliminate(A.row_ints() + B.row_ints(), A.cols) == ra


def write_matrix_text(M: BitMatrix, path, header: str | None = None) -> None:
    """Write the matrix text format: one '0'/'1' line per row, '#' comments allowed."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for r in M.data:
            fh.write(str(r) + "\n")


def read_matrix_text(path) -> BitMatrix:
    """Read the matrix text format written by write_matrix_text."""
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if any(c not in "01" for c in line):
                raise ParameterError(f"{path}:{lineno}: not a '0'/'1' row: {line!r}")
            lines.append(line)
    if not lines:
        raise ParameterError(f"{path}: no matrix rows found")
    if len({len(s) for s in lines}) != 1:
        raise ParameterError(f"{path}: rows have differing lengths")
    return BitMatrix.from_strings(lines)
