"""Exhaustive weight-enumerator analysis and self-duality certification.

The enumeration workhorse walks a reflected Gray code over all 2^rows row
combinations, XORing one row per step and bucketing popcounts, optionally
partitioned over worker threads by fixing the top rows. Everything downstream
of the raw distribution (minimum distance, parity class, enumerator-template
fits, MacWilliams self-check, extremality bound) is exact integer arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .bitlinalg import BitMatrix, BitVector, contains, cyclic_shift, is_self_orthogonal, rank
from .errors import DegenerateCodeError, ParameterError, ResourceRefusalError

__all__ = [
    "WeightDistribution",
    "EnumeratorTemplate",
    "TemplateFit",
    "weight_distribution_naive",
    "weight_distribution_gray",
    "min_distance",
    "parity_class",
    "fit_template",
    "macwilliams_selfcheck",
    "extremal_bound",
    "is_self_dual",
    "is_quasi_cyclic",
    "NAIVE_ROWS_LIMIT",
    "GRAY_ROWS_LIMIT",
    "write_distribution",
    "read_distribution",
    "write_template",
    "read_template",
]

NAIVE_ROWS_LIMIT = 24
GRAY_ROWS_LIMIT = 40


@dataclass(frozen=True)
class WeightDistribution:
    """Codeword counts by Hamming weight: counts[w] = A_w, w = 0..n."""

    n: int
    counts: tuple

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if self.n < 1 or len(counts) != self.n + 1:
            raise ParameterError(f"counts must have length n+1 = {self.n + 1}")
        if any(c < 0 for c in counts):
            raise ParameterError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> list:
        return [(w, c) for w, c in enumerate(self.counts) if c]


def weight_distribution_naive(G: BitMatrix) -> WeightDistribution:
    """Oracle enumerator: all 2^rows row combinations by direct XOR.

    Counts sum to 2^rows, not 2^rank; duplicate codewords from dependent
    rows are counted with multiplicity.
    """
    if G.rows > NAIVE_ROWS_LIMIT:
        raise ResourceRefusalError(
            f"naive enumeration refused for rows = {G.rows} > {NAIVE_ROWS_LIMIT}"
        )
    ints = G.row_ints()
    counts = [0] * (G.cols + 1)
    for sel in range(1 << G.rows):
        word = 0
        for i in range(G.rows):
            if (sel >> i) & 1:
                word ^= ints[i]
        counts[word.bit_count()] += 1
    return WeightDistribution(G.cols, tuple(counts))


def _block_base(row_words: np.ndarray, nlow: int, block: int) -> np.ndarray:
    base = np.zeros(row_words.shape[1], dtype=np.uint64)
    j = 0
    while block:
        if block & 1:
            base ^= row_words[nlow + j]
        block >>= 1
        j += 1
    return base


def _run_block(row_words: np.ndarray, nlow: int, block: int, nbuckets: int) -> np.ndarray:
    hist = np.zeros(nbuckets, dtype=np.int64)
    base = _block_base(row_words, nlow, block)
    low = np.ascontiguousarray(row_words[:nlow])
    W = row_words.shape[1]
    if W == 1:
        _kernels.gray_hist_w1(low[:, 0].copy(), nlow, base[0], hist)
    elif W == 2:
        _kernels.gray_hist_w2(low, nlow, base[0], base[1], hist)
    else:
        _kernels.gray_hist_wn(low, nlow, base, hist)
    return hist


def weight_distribution_gray(G: BitMatrix, threads: int = 1) -> WeightDistribution:
    """Exact weight distribution by Gray-code enumeration of all 2^rows sums.

    The walk XORs the row indexed by the trailing-zero count of the step
    counter into a running codeword. With threads > 1 the top rows are fixed
    per block and blocks are farmed out to worker threads with private
    histograms; the result is independent of the thread count.
    """
    if G.rows > GRAY_ROWS_LIMIT:
        raise ResourceRefusalError(
            f"gray enumeration refused for rows = {G.rows} > {GRAY_ROWS_LIMIT} (2^40 ceiling)"
        )
    if threads < 1:
        raise ParameterError(f"threads must be >= 1, got {threads}")
    row_words = np.vstack([r.to_words() for r in G.data])
    nbuckets = G.cols + 1
    p = 0
    if threads > 1:
        p = min(G.rows - 1, max(1, (threads - 1).bit_length()))
    nlow = G.rows - p
    blocks = 1 << p
    if blocks == 1:
        hist = _run_block(row_words, nlow, 0, nbuckets)
    else:
        hist = np.zeros(nbuckets, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(
                lambda b: _run_block(row_words, nlow, b, nbuckets), range(blocks)
            ):
                hist += part
    return WeightDistribution(G.cols, tuple(int(c) for c in hist))


def min_distance(dist: WeightDistribution) -> int:
    """Smallest w > 0 with A_w > 0."""
    for w in range(1, dist.n + 1):
        if dist.counts[w]:
            return w
    raise DegenerateCodeError("no nonzero codeword: minimum distance undefined")


def parity_class(dist: WeightDistribution) -> str:
    """Classify: 'doubly_even' (all weights = 0 mod 4), 'singly_even' (all
    even, some = 2 mod 4), or 'not_even'."""
    weights = [w for w, c in enumerate(dist.counts) if c and w > 0]
    if any(w % 2 for w in weights):
        return "not_even"
    if any(w % 4 == 2 for w in weights):
        return "singly_even"
    return "doubly_even"


@dataclass(frozen=True)
class EnumeratorTemplate:
    """Parameterized enumerator family: A_w = c_w + sum_p m_{w,p} * param_p."""

    name: str
    parameters: tuple
    terms: tuple  # of (weight, constant, coefficient tuple)

    def __post_init__(self) -> None:
        parameters = tuple(str(p) for p in self.parameters)
        terms = tuple((int(w), int(c), tuple(int(x) for x in coefs)) for w, c, coefs in self.terms)
        if not parameters:
            raise ParameterError("template needs at least one parameter")
        if len(terms) < len(parameters):
            raise ParameterError("template needs at least as many terms as parameters")
        if any(len(coefs) != len(parameters) for _, _, coefs in terms):
            raise ParameterError("every term needs one coefficient per parameter")
        object.__setattr__(self, "parameters", parameters)
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class TemplateFit:
    """Solved template parameters plus the consistency verdict."""

    params: dict
    consistent: bool
    residual_terms: tuple  # of (weight, expected, observed)


def _solve_exact(A, b):
    """Solve a small square system exactly over the rationals; None if singular."""
    n = len(b)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [x / inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def fit_template(dist: WeightDistribution, tpl: EnumeratorTemplate) -> TemplateFit:
    """Solve the first |parameters| template terms for integer parameters and
    verify every remaining term against the distribution.

    A non-integer exact solution is rounded to the nearest integers and
    reported with consistent=False (the residuals then include the defining
    terms themselves).
    """
    for w, _, _ in tpl.terms:
        if not 0 <= w <= dist.n:
            raise ParameterError(
                f"distribution (n={dist.n}) does not cover template weight {w}"
            )
    P = len(tpl.parameters)
    head = tpl.terms[:P]
    A = [list(coefs) for _, _, coefs in head]
    b = [dist.counts[w] - c for w, c, _ in head]
    solution = _solve_exact(A, b)
    if solution is None:
        raise ParameterError(
            f"underdetermined template {tpl.name!r}: defining terms are singular"
        )
    integral = all(x.denominator == 1 for x in solution)
    if integral:
        values = [int(x) for x in solution]
    else:
        values = [int(round(x)) for x in solution]
    residuals = []
    for w, c, coefs in tpl.terms:
        expected = c + sum(m * v for m, v in zip(coefs, values))
        observed = dist.counts[w]
        if expected != observed:
            residuals.append((w, expected, observed))
    consistent = integral and not residuals
    return TemplateFit(
        params=dict(zip(tpl.parameters, values)),
        consistent=consistent,
        residual_terms=tuple(residuals),
    )


def _krawtchouk(n: int, j: int, w: int) -> int:
    return sum(
        (-1) ** i * math.comb(w, i) * math.comb(n - w, j - i) for i in range(0, j + 1)
    )


def macwilliams_selfcheck(dist: WeightDistribution, k: int) -> bool:
    """True iff the MacWilliams transform of the distribution equals itself.

    B_j = 2^-k * sum_w A_w K_j(w) with Krawtchouk K_j; exact big-integer
    arithmetic throughout. A fixed point certifies the enumerator is
    consistent with a self-dual code.
    """
    if dist.total() != 1 << k:
        raise ParameterError(f"counts sum {dist.total()} != 2^k = {1 << k}")
    n = dist.n
    for j in range(n + 1):
        num = sum(dist.counts[w] * _krawtchouk(n, j, w) for w in range(n + 1))
        if num != dist.counts[j] << k:
            return False
    return True


def extremal_bound(n: int) -> int:
    """Upper bound on the minimum distance of a binary self-dual code."""
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and >= 2, got {n}")
    if n % 24 == 22:
        return 4 * (n // 24) + 6
    return 4 * (n // 24) + 4


def is_self_dual(G: BitMatrix) -> bool:
    """True iff G generates a self-dual code: G*G^T = 0 and rank = cols/2."""
    if G.cols % 2:
        raise ParameterError(f"self-dual codes need even length, got {G.cols}")
    return is_self_orthogonal(G) and rank(G) == G.cols // 2


def is_quasi_cyclic(G: BitMatrix, l: int) -> bool:
    """True iff the cyclic shift by l of every row stays in the row space."""
    return all(contains(G, cyclic_shift(row, l)) for row in G.data)


def write_distribution(
    dist: WeightDistribution, path, name: str = "", k: int | None = None, elapsed_s: float | None = None
) -> None:
    """Distribution file: '#' header lines, then ascending `w<TAB>A_w` for
    nonzero counts only."""
    with open(path, "w", encoding="utf-8") as fh:
        if name:
            fh.write(f"# code: {name}\n")
        fh.write(f"# n: {dist.n}\n")
        if k is not None:
            fh.write(f"# k: {k}\n")
        if elapsed_s is not None:
            fh.write(f"# elapsed_s: {elapsed_s:.3f}\n")
        for w, c in dist.nonzero():
            fh.write(f"{w}\t{c}\n")


def read_distribution(path) -> WeightDistribution:
    n = None
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("n:"):
                    n = int(body[2:].strip())
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParameterError(f"{path}:{lineno}: expected 'w<TAB>count'")
            pairs.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ParameterError(f"{path}: missing '# n:' header line")
    counts = [0] * (n + 1)
    for w, c in pairs:
        if not 0 <= w <= n:
            raise ParameterError(f"{path}: weight {w} out of range 0..{n}")
        counts[w] = c
    return WeightDistribution(n, tuple(counts))


def write_template(tpl: EnumeratorTemplate, path, header: str | None = None) -> None:
    """Template file: '#' comments, a `params:` line, then `w<TAB>c_w<TAB>m,...`."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"params: {', '.join(tpl.parameters)}\n")
        for w, c, coefs in tpl.terms:
            fh.write(f"{w}\t{c}\t{','.join(str(x) for x in coefs)}\n")


def read_template(path, name: str | None = None) -> EnumeratorTemplate:
    params = None
    terms = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("params:"):
                params = tuple(p.strip() for p in line[len("params:"):].split(",") if p.strip())
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 3:
                raise ParameterError(f"{path}:{lineno}: expected 'w<TAB>c<TAB>m1[,m2...]'")
            coefs = tuple(int(x) for x in parts[2].split(","))
            terms.append((int(parts[0]), int(parts[1]), coefs))
    if params is None:
        raise ParameterError(f"{path}: missing 'params:' line")
    return EnumeratorTemplate(name=name or str(path), parameters=params, terms=tuple(terms))
