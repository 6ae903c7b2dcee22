"""Shared fixtures and brute-force oracles for the test suite."""

from __future__ import annotations

from pathlib import Path

import pytest

from tailbite.bitlinalg import BitMatrix, BitVector
from tailbite.registry import load_registry

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def registry():
    return load_registry()


def rowspace(G: BitMatrix) -> set:
    """All distinct codewords of the row space, as ints (oracle-grade)."""
    words = {0}
    for r in G.row_ints():
        words |= {w ^ r for w in words}
    return words


def matrix_encode(u: BitVector, G: BitMatrix) -> BitVector:
    """u * G over GF(2), the matrix-product oracle for the stream encoders."""
    acc = 0
    for i, row in enumerate(G.row_ints()):
        if u[i]:
            acc ^= row
    return BitVector(G.cols, acc)


def brute_force_ml(frame, spec):
    """Exhaustive ML decoding with the documented tie-break, for k <= 16.

    Enumerates every information word, scores its codeword against the frame,
    and minimizes (score, coset bit, tailbiting start state, pinned input
    sequence read most-significant-first) - the same order the trellis
    decoder implements.
    """
    from tailbite.decode import frame_score, tailbiting_start_state
    from tailbite.tbcc import a3_encode, tb_encode

    k = spec.n // 2
    assert k <= 16
    best = None
    for ub in range(1 << k):
        u = BitVector(k, ub)
        if spec.construction == "type_a3":
            c = a3_encode(u, spec.polys, spec.n, spec.ones_stream)
            h = u[0]
            pinned = BitVector(k, ub if h == 0 else ub ^ ((1 << k) - 1))
        else:
            c = tb_encode(u, spec.polys, spec.n)
            h = 0
            pinned = u
        path = sum(pinned[t] << (k - 1 - t) for t in range(k))
        key = (frame_score(frame, c), h, tailbiting_start_state(pinned, spec.polys.K), path)
        if best is None or key < best[0]:
            best = (key, u)
    return best[1]
