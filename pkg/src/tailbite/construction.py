"""Generator-matrix constructions for rate-1/2 quasi-cyclic self-dual codes.

Four constructions are supported:

* ``type_a0``   - pure quasi-cyclic: step-2 cyclic shifts of the mixed
  polynomial string (the interleaving of the two tap polynomials).
* ``type_a3``   - the first row of a catastrophic type_a0 matrix is replaced
  by the pattern that is all-ones on one output stream and all-zeros on the
  other.
* ``pure_dc``   - pure double circulant [I | Q].
* ``bordered_dc`` - bordered double circulant [I | B] with an all-ones border
  framing a smaller circulant.

Stream convention (fixed for the whole package): stream 1 occupies even bit
indices, stream 2 odd indices; the mixed string puts g1 on stream 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .bitlinalg import BitMatrix, BitVector, cyclic_shift
from .errors import ConstructionError, ParameterError

__all__ = [
    "PolynomialPair",
    "CodeSpec",
    "CONSTRUCTIONS",
    "circulant",
    "mixed_string",
    "stream_mask",
    "qc_generator",
    "a3_generator",
    "pure_double_circulant",
    "bordered_double_circulant",
    "build_generator",
    "rows_sum_to_zero",
    "parse_code_spec",
    "load_code_spec",
    "format_code_spec",
]

CONSTRUCTIONS = ("type_a0", "type_a3", "pure_dc", "bordered_dc")


@dataclass(frozen=True)
class PolynomialPair:
    """The two tap polynomials of a rate-1/2 convolutional encoder.

    Bit j of g1/g2 is the coefficient of x^j (tap j); K is the constraint
    length, i.e. the number of taps per polynomial.
    """

    g1: BitVector
    g2: BitVector

    def __post_init__(self) -> None:
        if self.g1.n != self.g2.n:
            raise ParameterError("g1 and g2 must have the same tap count K")
        if self.g1.bits == 0 or self.g2.bits == 0:
            raise ParameterError("tap polynomials must be nonzero")
        if not ((self.g1.bits | self.g2.bits) & 1):
            raise ParameterError(
                "tap 0 must be set in at least one polynomial (common x factor)"
            )

    @property
    def K(self) -> int:
        return self.g1.n

    @classmethod
    def from_strings(cls, g1: str, g2: str) -> "PolynomialPair":
        """Parse tap strings, leftmost character = coefficient of x^0."""
        return cls(BitVector.from_string(g1), BitVector.from_string(g2))


@dataclass(frozen=True)
class CodeSpec:
    """Declarative description of one code instance.

    The code rate is 1/2 throughout (dimension k = n/2); the artifact fixes
    two circulants and quasi-cyclic shift step l = 2.
    """

    name: str
    n: int
    construction: str
    polys: PolynomialPair | None = None
    ones_stream: int | None = None
    first_row: BitVector | None = None
    status: str | None = None

    def __post_init__(self) -> None:
        if self.construction not in CONSTRUCTIONS:
            raise ParameterError(
                f"unknown construction {self.construction!r}; expected one of {CONSTRUCTIONS}"
            )
        if self.n < 2 or self.n % 2:
            raise ParameterError(f"code length n must be even and >= 2, got {self.n}")
        if self.construction in ("type_a0", "type_a3"):
            if self.polys is None:
                raise ParameterError(f"{self.construction} requires polynomials g1, g2")
            if self.construction == "type_a3" and self.ones_stream not in (1, 2):
                raise ParameterError("type_a3 requires ones_stream of 1 or 2")
        elif self.construction == "pure_dc":
            if self.first_row is None or self.first_row.n != self.n // 2:
                raise ParameterError("pure_dc requires first_row of length n/2")
        elif self.construction == "bordered_dc":
            if self.first_row is None or self.first_row.n != self.n // 2 - 1:
                raise ParameterError("bordered_dc requires first_row of length n/2 - 1")

    @property
    def k(self) -> int:
        return self.n // 2


def circulant(first_row: BitVector) -> BitMatrix:
    """Square matrix whose row i is the cyclic shift of first_row by i."""
    return BitMatrix(tuple(cyclic_shift(first_row, i) for i in range(first_row.n)))


def mixed_string(p: PolynomialPair) -> BitVector:
    """Interleave the tap polynomials: s[2j] = g1[j], s[2j+1] = g2[j]."""
    bits = 0
    for j in range(p.K):
        bits |= p.g1[j] << (2 * j)
        bits |= p.g2[j] << (2 * j + 1)
    return BitVector(2 * p.K, bits)


def stream_mask(n: int, stream: int) -> BitVector:
    """All-ones on one output stream: stream 1 = even indices, stream 2 = odd."""
    if stream not in (1, 2):
        raise ParameterError(f"stream must be 1 or 2, got {stream}")
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and >= 2, got {n}")
    ones = sum(1 << i for i in range(stream - 1, n, 2))
    return BitVector(n, ones)


def qc_generator(p: PolynomialPair, n: int) -> BitMatrix:
    """Pure quasi-cyclic (type_a0) generator: (n/2) x n.

    Row i is the mixed polynomial string, zero-extended to length n, shifted
    cyclically by 2i.
    """
    if n % 2:
        raise ParameterError(f"code length n must be even, got {n}")
    s = mixed_string(p)
    if n < s.n:
        raise ParameterError(
            f"n={n} is shorter than the mixed string (2K={s.n}); cannot place taps"
        )
    if n < 2 * s.n:
        warnings.warn(
            f"n={n} < 4K={2 * s.n}: shifted tap windows self-overlap cyclically",
            stacklevel=2,
        )
    padded = BitVector(n, s.bits)
    return BitMatrix(tuple(cyclic_shift(padded, 2 * i) for i in range(n // 2)))


def rows_sum_to_zero(M: BitMatrix) -> bool:
    """True iff the XOR of all rows is the zero vector."""
    acc = 0
    for r in M.data:
        acc ^= r.bits
    return acc == 0


def a3_generator(p: PolynomialPair, n: int, ones_stream: int) -> BitMatrix:
    """Type A3 generator: the catastrophic type_a0 matrix with row 0 replaced
    by the all-ones-on-one-stream pattern.

    Requires the type_a0 rows to sum to zero (so the all-ones input encodes
    to the zero codeword); otherwise the replacement changes the code
    dimension unpredictably and a ConstructionError is raised.
    """
    base = qc_generator(p, n)
    if not rows_sum_to_zero(base):
        raise ConstructionError(
            "type_a3 precondition violated: the type_a0 rows do not sum to zero "
            "(the base code is not catastrophic; both tap weights must be even)"
        )
    pi = stream_mask(n, ones_stream)
    return BitMatrix((pi,) + base.data[1:])


def pure_double_circulant(q_row: BitVector) -> BitMatrix:
    """Pure double circulant generator [I | Q], m x 2m with m = len(q_row)."""
    m = q_row.n
    q = circulant(q_row)
    rows = []
    for i in range(m):
        rows.append(BitVector(2 * m, (1 << i) | (q.row(i).bits << m)))
    return BitMatrix(tuple(rows))


def bordered_double_circulant(r_row: BitVector) -> BitMatrix:
    """Bordered double circulant generator [I | B], m x 2m with m = len(r_row) + 1.

    B's first row is the corner bit followed by all-ones over the smaller
    circulant's columns; the remaining rows carry an all-ones column border
    beside circulant(r_row). The corner bit is m mod 2, the unique value that
    makes the border row's weight even (necessary for self-orthogonality);
    self-duality itself still depends on r_row and is checked by callers.
    """
    m = r_row.n + 1
    corner = m & 1
    rp = circulant(r_row)
    b_rows = [corner | (((1 << (m - 1)) - 1) << 1)]
    for i in range(m - 1):
        b_rows.append(1 | (rp.row(i).bits << 1))
    rows = []
    for i in range(m):
        rows.append(BitVector(2 * m, (1 << i) | (b_rows[i] << m)))
    return BitMatrix(tuple(rows))


def build_generator(spec: CodeSpec) -> BitMatrix:
    """Build the generator matrix described by a CodeSpec."""
    if spec.construction == "type_a0":
        return qc_generator(spec.polys, spec.n)
    if spec.construction == "type_a3":
        return a3_generator(spec.polys, spec.n, spec.ones_stream)
    if spec.construction == "pure_dc":
        return pure_double_circulant(spec.first_row)
    return bordered_double_circulant(spec.first_row)


_SPEC_KEYS = ("name", "n", "construction", "K", "g1", "g2", "ones_stream", "first_row", "status")


def parse_code_spec(text: str, source: str = "<spec>") -> CodeSpec:
    """Parse the line-oriented ``key: value`` CodeSpec format."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParameterError(f"{source}:{lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key not in _SPEC_KEYS:
            raise ParameterError(f"{source}:{lineno}: unknown key {key!r}")
        if key in fields:
            raise ParameterError(f"{source}:{lineno}: duplicate key {key!r}")
        fields[key] = value

    def require(key: str) -> str:
        if key not in fields:
            raise ParameterError(f"{source}: missing required key {key!r}")
        return fields[key]

    def as_int(key: str) -> int:
        value = require(key)
        try:
            return int(value)
        except ValueError:
            raise ParameterError(f"{source}: key {key!r} is not an integer: {value!r}") from None

    name = require("name")
    n = as_int("n")
    construction = require("construction")
    polys = None
    ones_stream = None
    first_row = None
    if construction in ("type_a0", "type_a3"):
        g1 = require("g1")
        g2 = require("g2")
        try:
            polys = PolynomialPair.from_strings(g1, g2)
        except ParameterError as exc:
            raise ParameterError(f"{source}: bad polynomials: {exc}") from None
        if "K" in fields and as_int("K") != polys.K:
            raise ParameterError(
                f"{source}: K={fields['K']} does not match tap string length {polys.K}"
            )
        if construction == "type_a3":
            ones_stream = as_int("ones_stream")
    elif construction in ("pure_dc", "bordered_dc"):
        first_row = BitVector.from_string(require("first_row"))
    try:
        return CodeSpec(
            name=name,
            n=n,
            construction=construction,
            polys=polys,
            ones_stream=ones_stream,
            first_row=first_row,
            status=fields.get("status"),
        )
    except ParameterError as exc:
        raise ParameterError(f"{source}: {exc}") from None


def load_code_spec(path) -> CodeSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_spec(fh.read(), source=str(path))


def format_code_spec(spec: CodeSpec) -> str:
    """Serialize a CodeSpec back to the key: value file format."""
    lines = [f"name: {spec.name}", f"n: {spec.n}", f"construction: {spec.construction}"]
    if spec.polys is not None:
        lines.append(f"K: {spec.polys.K}")
        lines.append(f"g1: {spec.polys.g1}")
        lines.append(f"g2: {spec.polys.g2}")
    if spec.ones_stream is not None:
        lines.append(f"ones_stream: {spec.ones_stream}")
    if spec.first_row is not None:
        lines.append(f"first_row: {spec.first_row}")
    if spec.status is not None:
        lines.append(f"status: {spec.status}")
    return "\n".join(lines) + "\n"
