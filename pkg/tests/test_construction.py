"""Generator-construction tests: circulants, type_a0/type_a3, double circulants."""

from __future__ import annotations

import random
import warnings

import pytest

from conftest import rowspace
from tailbite.bitlinalg import (
    BitMatrix,
    BitVector,
    contains,
    cyclic_shift,
    is_self_orthogonal,
    rank,
    row_space_equal,
    weight,
)
from tailbite.construction import (
    CodeSpec,
    PolynomialPair,
    a3_generator,
    bordered_double_circulant,
    build_generator,
    circulant,
    format_code_spec,
    load_code_spec,
    mixed_string,
    parse_code_spec,
    pure_double_circulant,
    qc_generator,
    rows_sum_to_zero,
    stream_mask,
)
from tailbite.errors import ConstructionError, ParameterError

TOY = PolynomialPair.from_strings("11", "11")


def test_circulant_examples():
    assert circulant(BitVector.from_string("1000")) == BitMatrix.from_strings(
        ["1000", "0100", "0010", "0001"]
    )
    assert circulant(BitVector.from_string("110")) == BitMatrix.from_strings(
        ["110", "011", "101"]
    )


def test_circulant_shift_property():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 20)
        v = BitVector(n, rng.getrandbits(n))
        C = circulant(v)
        for i in range(n):
            assert cyclic_shift(C.row(i), 1) == C.row((i + 1) % n)


def test_mixed_string_examples():
    assert str(mixed_string(PolynomialPair.from_strings("101", "111"))) == "110111"
    assert str(mixed_string(TOY)) == "1111"


def test_mixed_string_roundtrip():
    rng = random.Random(5)
    for _ in range(60):
        K = rng.randint(1, 12)
        g1 = rng.getrandbits(K) | 1  # tap 0 set keeps the pair valid
        g2 = rng.getrandbits(K) | (1 if rng.random() < 0.5 else 0)
        if not g2:
            g2 = 1
        p = PolynomialPair(BitVector(K, g1), BitVector(K, g2))
        s = mixed_string(p)
        back1 = BitVector.from_bits(s[2 * j] for j in range(K))
        back2 = BitVector.from_bits(s[2 * j + 1] for j in range(K))
        assert (back1, back2) == (p.g1, p.g2)


def test_qc_generator_examples():
    assert qc_generator(TOY, 8) == BitMatrix.from_strings(
        ["11110000", "00111100", "00001111", "11000011"]
    )
    p = PolynomialPair.from_strings("10", "10")
    assert qc_generator(p, 8) == BitMatrix.from_strings(
        ["11000000", "00110000", "00001100", "00000011"]
    )


def test_qc_generator_row_weights_k9(registry):
    spec = registry.get("a3_k9_n60")
    G = qc_generator(spec.polys, 60)
    assert G.rows == 30
    expected = weight(spec.polys.g1) + weight(spec.polys.g2)
    assert all(weight(r) == expected for r in G.data)


def test_qc_generator_rows_are_step2_shifts(registry):
    for name in registry.names():
        spec = registry.get(name)
        if spec.construction not in ("type_a0", "type_a3"):
            continue
        G = qc_generator(spec.polys, spec.n)
        for i in range(G.rows - 1):
            assert cyclic_shift(G.row(i), 2) == G.row(i + 1)
        assert cyclic_shift(G.row(G.rows - 1), 2) == G.row(0)


def test_qc_generator_errors_and_warning():
    with pytest.raises(ParameterError):
        qc_generator(TOY, 7)
    with pytest.raises(ParameterError):
        qc_generator(PolynomialPair.from_strings("10101", "11111"), 8)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        qc_generator(PolynomialPair.from_strings("101", "111"), 10)  # 2K <= n < 4K
    assert any("self-overlap" in str(w.message) for w in caught)


def test_a3_generator_toy():
    G = a3_generator(TOY, 8, 2)
    assert G == BitMatrix.from_strings(
        ["01010101", "00111100", "00001111", "11000011"]
    )
    assert rank(G) == 4 and is_self_orthogonal(G)
    weights = sorted(bin(w).count("1") for w in rowspace(G))
    assert weights == [0] + [4] * 14 + [8]


def test_a3_generator_stream1():
    G = a3_generator(TOY, 8, 1)
    assert str(G.row(0)) == "10101010"
    assert is_self_orthogonal(G) and rank(G) == 4


def test_a3_generator_requires_catastrophic_base():
    p = PolynomialPair.from_strings("10", "10")
    assert not rows_sum_to_zero(qc_generator(p, 8))
    with pytest.raises(ConstructionError, match="sum to zero"):
        a3_generator(p, 8, 2)


def test_a3_spans_shift2_invariant_code(registry):
    for name in ("toy_a3_n8", "a3_k9_n60"):
        spec = registry.get(name)
        G = a3_generator(spec.polys, spec.n, spec.ones_stream)
        for row in G.data:
            assert contains(G, cyclic_shift(row, 2))


def test_a3_equals_row0_xor_view(registry):
    # replacing row 0 by row0 + pattern generates the same code as replacing
    # it by the pattern outright (the base rows sum to zero)
    for name in ("toy_a3_n8", "a3_k9_n60", "a3_k9_n72"):
        spec = registry.get(name)
        base = qc_generator(spec.polys, spec.n)
        pi = stream_mask(spec.n, spec.ones_stream)
        xor_view = BitMatrix((base.row(0) ^ pi,) + base.data[1:])
        assert row_space_equal(a3_generator(spec.polys, spec.n, spec.ones_stream), xor_view)


def test_pure_double_circulant_examples():
    assert pure_double_circulant(BitVector.from_string("100")) == BitMatrix.from_strings(
        ["100100", "010010", "001001"]
    )
    assert pure_double_circulant(BitVector.from_string("111")) == BitMatrix.from_strings(
        ["100111", "010111", "001111"]
    )


def test_pure_dc_self_dual_iff_qqt_identity():
    rng = random.Random(9)
    for _ in range(200):
        m = rng.randint(1, 7)
        q = BitVector(m, rng.getrandbits(m))
        Q = circulant(q)
        qq_is_identity = all(
            ((Q.row(i).bits & Q.row(j).bits).bit_count() % 2) == (1 if i == j else 0)
            for i in range(m)
            for j in range(m)
        )
        G = pure_double_circulant(q)
        self_dual = is_self_orthogonal(G) and rank(G) == m
        assert self_dual == qq_is_identity


def test_bordered_shape_and_weights():
    r = BitVector.from_string("101")
    G = bordered_double_circulant(r)
    assert (G.rows, G.cols) == (4, 8)
    b_rows = [row.bits >> 4 for row in G.data]
    assert b_rows[0] & 1 == 0  # corner bit is m mod 2 = 0 here
    assert b_rows[0] >> 1 == 0b111  # all-ones border over the circulant columns
    for b in b_rows[1:]:
        assert b & 1 == 1  # all-ones column border
    for row in G.data[1:]:
        assert weight(row) - 1 == weight(r) + 1  # identity bit + border + circulant row


def test_bordered_small_self_dual_instance_exists():
    # exhaustive oracle over short first rows; 110 is the known hit
    hits = []
    for length in range(1, 6):
        for bits in range(1 << length):
            G = bordered_double_circulant(BitVector(length, bits))
            if is_self_orthogonal(G) and rank(G) == length + 1:
                hits.append((length, bits))
    assert (2, 0b011) in hits  # first_row "110"
    G = bordered_double_circulant(BitVector.from_string("110"))
    assert sorted(bin(w).count("1") for w in rowspace(G)) == [0] + [4] * 14 + [8]


def test_polynomial_pair_validation():
    with pytest.raises(ParameterError):
        PolynomialPair.from_strings("101", "11")
    with pytest.raises(ParameterError):
        PolynomialPair.from_strings("000", "101")
    with pytest.raises(ParameterError):
        PolynomialPair.from_strings("010", "010")  # common x factor


def test_code_spec_validation():
    with pytest.raises(ParameterError):
        CodeSpec(name="x", n=7, construction="type_a0", polys=TOY)
    with pytest.raises(ParameterError):
        CodeSpec(name="x", n=8, construction="nope")
    with pytest.raises(ParameterError):
        CodeSpec(name="x", n=8, construction="type_a3", polys=TOY, ones_stream=3)
    with pytest.raises(ParameterError):
        CodeSpec(name="x", n=8, construction="pure_dc", first_row=BitVector(3, 0b101))
    spec = CodeSpec(name="x", n=8, construction="pure_dc", first_row=BitVector(4, 0b1001))
    assert spec.k == 4


def test_code_spec_parse_and_format():
    text = (
        "# demo\n"
        "name: a3_demo\n"
        "n: 72\n"
        "construction: type_a3\n"
        "K: 9\n"
        "g1: 110110001\n"
        "g2: 101011011\n"
        "ones_stream: 2\n"
    )
    spec = parse_code_spec(text)
    assert (spec.name, spec.n, spec.ones_stream) == ("a3_demo", 72, 2)
    assert str(spec.polys.g1) == "110110001"
    reparsed = parse_code_spec(format_code_spec(spec))
    assert reparsed == spec


def test_code_spec_parse_errors():
    with pytest.raises(ParameterError, match=":2:"):
        parse_code_spec("name: x\nbogus line\n")
    with pytest.raises(ParameterError, match="unknown key"):
        parse_code_spec("name: x\nshoes: 2\n")
    with pytest.raises(ParameterError, match="duplicate"):
        parse_code_spec("name: x\nname: y\n")
    with pytest.raises(ParameterError, match="missing required"):
        parse_code_spec("name: x\nconstruction: type_a0\nn: 8\ng1: 11\n")
    with pytest.raises(ParameterError, match="does not match"):
        parse_code_spec(
            "name: x\nn: 8\nconstruction: type_a0\nK: 3\ng1: 11\ng2: 11\n"
        )
    with pytest.raises(ParameterError, match="not an integer"):
        parse_code_spec("name: x\nn: eight\nconstruction: type_a0\ng1: 11\ng2: 11\n")


def test_code_spec_pending_status(tmp_path):
    path = tmp_path / "pending.spec"
    path.write_text(
        "name: pending_demo\nn: 8\nconstruction: type_a0\ng1: 10\ng2: 10\n"
        "status: pending-transcription\n"
    )
    spec = load_code_spec(path)
    assert spec.status == "pending-transcription"


def test_build_generator_dispatch(registry):
    for name in registry.names():
        spec = registry.get(name)
        G = build_generator(spec)
        assert (G.rows, G.cols) == (spec.k, spec.n)
