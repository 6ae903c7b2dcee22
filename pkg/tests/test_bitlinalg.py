"""GF(2) vector/matrix kernel tests."""

from __future__ import annotations

import random

import pytest

from conftest import rowspace, matrix_encode
from tailbite.bitlinalg import (
    BitMatrix,
    BitVector,
    contains,
    cyclic_shift,
    is_self_orthogonal,
    rank,
    read_matrix_text,
    row_space_equal,
    weight,
    write_matrix_text,
)
from tailbite.errors import ParameterError

CATASTROPHIC_TOY = BitMatrix.from_strings(
    ["11110000", "00111100", "00001111", "11000011"]
)
A3_TOY = BitMatrix.from_strings(["01010101", "00111100", "00001111", "11000011"])
DISJOINT_PAIRS = BitMatrix.from_strings(
    ["11000000", "00110000", "00001100", "00000011"]
)


def test_weight_examples():
    assert weight(BitVector.from_string("00000000")) == 0
    assert weight(BitVector.from_string("11111111")) == 8
    assert weight(BitVector.from_string("01101001")) == 4


def test_weight_xor_identity():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 130)
        a = BitVector(n, rng.getrandbits(n))
        b = BitVector(n, rng.getrandbits(n))
        assert weight(a ^ b) == weight(a) + weight(b) - 2 * weight(a & b)


def test_cyclic_shift_examples():
    assert str(cyclic_shift(BitVector.from_string("10000000"), 2)) == "00100000"
    v = BitVector.from_string("0110110101")
    assert cyclic_shift(v, 0) == v


def test_cyclic_shift_roundtrip():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(3, 128)
        v = BitVector(n, rng.getrandbits(n))
        assert cyclic_shift(cyclic_shift(v, 2), n - 2) == v


def test_cyclic_shift_definition():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(1, 90)
        l = rng.randrange(n)
        v = BitVector(n, rng.getrandbits(n))
        s = cyclic_shift(v, l)
        assert all(s[(i + l) % n] == v[i] for i in range(n))


def test_cyclic_shift_range_errors():
    v = BitVector.from_string("1010")
    with pytest.raises(ParameterError):
        cyclic_shift(v, 4)
    with pytest.raises(ParameterError):
        cyclic_shift(v, -1)


def test_canonical_zero_padding():
    assert BitVector(4, 0xF5).bits == 0x5
    assert BitVector(4, 0xF5) == BitVector(4, 0x5)


def test_rank_examples():
    identity = BitMatrix.from_strings(["1000", "0100", "0010", "0001"])
    assert rank(identity) == 4
    assert rank(CATASTROPHIC_TOY) == 3
    dup = BitMatrix.from_strings(["1010", "1010", "0110"])
    assert rank(dup) < dup.rows


def test_rank_does_not_mutate():
    rows_before = CATASTROPHIC_TOY.row_ints()
    rank(CATASTROPHIC_TOY)
    assert CATASTROPHIC_TOY.row_ints() == rows_before


def test_rank_invariance_under_elementary_ops():
    rng = random.Random(17)
    for _ in range(60):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 20)
        ints = [rng.getrandbits(cols) for _ in range(rows)]
        M = BitMatrix.from_rows(ints, cols)
        shuffled = ints[:]
        rng.shuffle(shuffled)
        if rows >= 2:
            i, j = rng.sample(range(rows), 2)
            shuffled[i] ^= shuffled[j]
        assert rank(BitMatrix.from_rows(shuffled, cols)) == rank(M)


def test_is_self_orthogonal_examples():
    assert is_self_orthogonal(DISJOINT_PAIRS)
    assert not is_self_orthogonal(BitMatrix.from_strings(["11100000"]))
    # brute force over all row pairs, diagonal included
    ints = A3_TOY.row_ints()
    assert all(((a & b).bit_count() % 2) == 0 for a in ints for b in ints)
    assert is_self_orthogonal(A3_TOY)


def test_self_orthogonal_implies_even_weights():
    rng = random.Random(23)
    found = 0
    for _ in range(400):
        rows = rng.randint(1, 6)
        cols = rng.randint(2, 12)
        M = BitMatrix.from_rows([rng.getrandbits(cols) for _ in range(rows)], cols)
        if not is_self_orthogonal(M):
            continue
        found += 1
        assert all(w.bit_count() % 2 == 0 for w in rowspace(M))
    assert found > 10


def test_contains_examples():
    assert contains(DISJOINT_PAIRS, BitVector(8, 0))
    for row in DISJOINT_PAIRS.data:
        assert contains(DISJOINT_PAIRS, row)
    # oracle: enumerate all 16 row-space elements
    assert BitVector.from_string("01010101").bits not in rowspace(DISJOINT_PAIRS)
    assert not contains(DISJOINT_PAIRS, BitVector.from_string("01010101"))


def test_contains_encoded_words():
    rng = random.Random(29)
    for _ in range(50):
        rows = rng.randint(1, 8)
        cols = rng.randint(rows, 24)
        M = BitMatrix.from_rows([rng.getrandbits(cols) for _ in range(rows)], cols)
        u = BitVector(rows, rng.getrandbits(rows))
        assert contains(M, matrix_encode(u, M))


def test_contains_length_mismatch():
    with pytest.raises(ParameterError):
        contains(DISJOINT_PAIRS, BitVector.from_string("101"))


def test_row_space_equal():
    assert row_space_equal(A3_TOY, A3_TOY)
    # permute rows and replace one row by a sum of two rows
    ints = A3_TOY.row_ints()
    mangled = [ints[2], ints[0] ^ ints[1], ints[1], ints[3]]
    assert row_space_equal(A3_TOY, BitMatrix.from_rows(mangled, 8))
    # replacing row 0 of the toy with (row sum) + pattern spans the same code
    cat = CATASTROPHIC_TOY.row_ints()
    r0_plus_pattern = cat[0] ^ BitVector.from_string("01010101").bits
    alt = BitMatrix.from_rows([r0_plus_pattern] + cat[1:], 8)
    assert row_space_equal(A3_TOY, alt)
    assert not row_space_equal(A3_TOY, DISJOINT_PAIRS)


def test_row_space_equal_column_mismatch():
    with pytest.raises(ParameterError):
        row_space_equal(A3_TOY, BitMatrix.from_strings(["1010"]))


def test_matrix_text_roundtrip(tmp_path):
    path = tmp_path / "toy.mat"
    write_matrix_text(A3_TOY, path, header="toy matrix\nsecond line")
    M = read_matrix_text(path)
    assert M == A3_TOY
    text = path.read_text()
    assert text.startswith("# toy matrix\n# second line\n")


def test_matrix_text_errors(tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("10a0\n")
    with pytest.raises(ParameterError):
        read_matrix_text(bad)
    ragged = tmp_path / "ragged.mat"
    ragged.write_text("1010\n10\n")
    with pytest.raises(ParameterError):
        read_matrix_text(ragged)
    empty = tmp_path / "empty.mat"
    empty.write_text("# nothing here\n")
    with pytest.raises(ParameterError):
        read_matrix_text(empty)


def test_bitvector_validation():
    with pytest.raises(ParameterError):
        BitVector(0, 0)
    with pytest.raises(ParameterError):
        BitVector(4, -1)
    with pytest.raises(ParameterError):
        BitVector.from_string("10x1")
    with pytest.raises(ParameterError):
        BitMatrix(())
    with pytest.raises(ParameterError):
        BitMatrix((BitVector(3, 0), BitVector(4, 0)))
