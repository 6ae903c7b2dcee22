"""Rate-1/2 tailbiting convolutional encoding.

Tailbiting is realized as cyclic convolution: output stream b at position t
is sum_j g_b[j] * u[(t - j) mod (n/2)] over GF(2), the two streams
interleaved (stream 1 on even positions). This is equivalent to running the
shift-register encoder with its initial state preloaded to the final K-1
information bits, and identical to multiplying u by the type_a0 generator
matrix whenever the tap window fits (n >= 2K).
"""

from __future__ import annotations

import numpy as np

from .bitlinalg import BitVector
from .construction import PolynomialPair, stream_mask
from .errors import ParameterError

__all__ = [
    "tb_encode",
    "a3_encode",
    "write_packed_bits",
    "read_packed_bits",
]


def _cyclic_stream(u_bits: int, m: int, g: BitVector) -> int:
    """One output stream of the tailbiting encoder, as an m-bit int."""
    mask = (1 << m) - 1
    out = 0
    for j in range(g.n):
        if g[j]:
            s = j % m
            out ^= ((u_bits << s) | (u_bits >> (m - s))) & mask if s else u_bits
    return out


def tb_encode(u: BitVector, p: PolynomialPair, n: int) -> BitVector:
    """Encode an information word of length n/2 into a codeword of length n."""
    if n < 2 or n % 2:
        raise ParameterError(f"code length n must be even and >= 2, got {n}")
    m = n // 2
    if u.n != m:
        raise ParameterError(f"information word length {u.n} != n/2 = {m}")
    y1 = _cyclic_stream(u.bits, m, p.g1)
    y2 = _cyclic_stream(u.bits, m, p.g2)
    c = 0
    for t in range(m):
        c |= ((y1 >> t) & 1) << (2 * t)
        c |= ((y2 >> t) & 1) << (2 * t + 1)
    return BitVector(n, c)


def a3_encode(u: BitVector, p: PolynomialPair, n: int, ones_stream: int) -> BitVector:
    """Type A3 encoding: the first information bit is additionally XORed onto
    one whole output stream (c = tb_encode(u) + u[0] * stream pattern)."""
    c = tb_encode(u, p, n)
    if u[0]:
        c = c ^ stream_mask(n, ones_stream)
    return c


def write_packed_bits(path, vectors) -> None:
    """Write fixed-length bit records, little-endian packed.

    Bit i of byte b is data bit 8b + i; each record is padded to a whole
    number of bytes with zero bits. All records must have equal length.
    """
    vectors = list(vectors)
    if not vectors:
        raise ParameterError("no records to write")
    nbits = vectors[0].n
    if any(v.n != nbits for v in vectors):
        raise ParameterError("records must all have the same bit length")
    nbytes = (nbits + 7) // 8
    with open(path, "wb") as fh:
        for v in vectors:
            fh.write(v.bits.to_bytes(nbytes, "little"))


def read_packed_bits(path, record_bits: int) -> list:
    """Read fixed-length bit records written by write_packed_bits."""
    if record_bits < 1:
        raise ParameterError("record_bits must be >= 1")
    nbytes = (record_bits + 7) // 8
    data = np.fromfile(path, dtype=np.uint8)
    if data.size == 0 or data.size % nbytes:
        raise ParameterError(
            f"{path}: size {data.size} is not a positive multiple of {nbytes}-byte records"
        )
    records = []
    raw = data.tobytes()
    mask = (1 << record_bits) - 1
    for off in range(0, len(raw), nbytes):
        value = int.from_bytes(raw[off : off + nbytes], "little")
        if value & ~mask:
            raise ParameterError(f"{path}: nonzero padding bits in record at byte {off}")
        records.append(BitVector(record_bits, value))
    return records
