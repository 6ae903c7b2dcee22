"""Exhaustive search for tap-polynomial pairs yielding self-dual codes.

The search space for constraint length K is all ordered pairs of K-tap
polynomials with tap 0 and tap K-1 each used by at least one polynomial.
Candidates are screened in three stages, cheapest first:

1. joint autocorrelation: the generator rows are pairwise orthogonal for
   every length n >= 2(2K - 1) iff the autocorrelations of g1 and g2 cancel
   at every shift 1..K-1 (tap windows at distinct even offsets never wrap
   onto each other), and each row is self-orthogonal iff the tap weights
   have even sum;
2. rank n/2 of the assembled generator (self-duality given stage 1);
3. exact minimum distance via a min-plus Viterbi over closed trellis paths,
   rejecting as soon as a codeword lighter than the target exists.

Stage 3 is exact, so survivors are certified [n, n/2, d] self-dual codes;
the full weight distribution is still worth enumerating afterwards for the
enumerator-template analysis.

Run ``python -m tailbite.discover`` to reproduce the shipped fixture
polynomials from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .analysis import is_self_dual
from .bitlinalg import BitVector
from .construction import (
    PolynomialPair,
    a3_generator,
    qc_generator,
    rows_sum_to_zero,
)
from .decode import build_trellis
from .errors import ParameterError

__all__ = [
    "Candidate",
    "autocorrelations_cancel",
    "tb_min_distance",
    "search_type_a3",
    "search_type_a0",
]


@dataclass(frozen=True)
class Candidate:
    """One surviving polynomial pair with its certified distances per length."""

    g1: str
    g2: str
    construction: str
    ones_stream: int | None
    distances: dict


def _bit_reversed(v: int, K: int) -> int:
    out = 0
    for i in range(K):
        if (v >> i) & 1:
            out |= 1 << (K - 1 - i)
    return out


def canonical_pair(g1: int, g2: int, K: int) -> tuple:
    """Representative under time reversal (reciprocal polynomials)."""
    return min((g1, g2), (_bit_reversed(g1, K), _bit_reversed(g2, K)))


def autocorrelations_cancel(g1: int, g2: int, K: int) -> bool:
    """True iff sum of the two tap autocorrelations is even at every shift."""
    for s in range(1, K):
        if ((g1 & (g1 >> s)).bit_count() + (g2 & (g2 >> s)).bit_count()) & 1:
            return False
    return True


def _branch_weights(p: PolynomialPair, flip_stream: int | None = None) -> np.ndarray:
    trellis = build_trellis(p)
    out = trellis.outputs.astype(np.int32)
    if flip_stream == 1:
        out ^= 1
    elif flip_stream == 2:
        out ^= 2
    return np.ascontiguousarray((out & 1) + ((out >> 1) & 1), dtype=np.int32)


def tb_min_distance(
    p: PolynomialPair,
    n: int,
    construction: str,
    ones_stream: int | None = None,
    reject_below: int = 0,
) -> int:
    """Exact minimum distance of the tailbiting code via min-plus Viterbi.

    For type_a0 the all-zeros input is excluded (and the all-ones input too
    when the rows sum to zero, since it also encodes to the zero word). For
    type_a3 the minimum is taken over the quasi-cyclic part and the
    stream-pattern coset. If reject_below > 0, the search may return any
    value below it as soon as one is found.
    """
    if n % 2:
        raise ParameterError(f"n must be even, got {n}")
    m = n // 2
    bw = _branch_weights(p)
    if construction == "type_a0":
        mode = 2 if rows_sum_to_zero(qc_generator(p, n)) else 1
        return int(_kernels.closed_min_weight(bw, m, mode, reject_below))
    if construction == "type_a3":
        if ones_stream not in (1, 2):
            raise ParameterError("type_a3 requires ones_stream of 1 or 2")
        d_qc = int(_kernels.closed_min_weight(bw, m, 2, reject_below))
        if reject_below and d_qc < reject_below:
            return d_qc
        bw_coset = _branch_weights(p, flip_stream=ones_stream)
        d_coset = int(_kernels.closed_min_weight(bw_coset, m, 0, reject_below))
        return min(d_qc, d_coset)
    raise ParameterError(f"no trellis distance for construction {construction!r}")


def _tap_pairs(K: int, weight_parity: int):
    """Ordered (g1, g2) pairs of K-tap polynomials, both weights of the given
    parity, taps 0 and K-1 each used by at least one polynomial."""
    values = [v for v in range(1, 1 << K) if v.bit_count() % 2 == weight_parity]
    for g1 in values:
        for g2 in values:
            if not ((g1 | g2) & 1):
                continue
            if not ((g1 | g2) >> (K - 1)):
                continue
            yield g1, g2


def search_type_a3(K: int, lengths, d_target: int = 12, ones_stream: int = 2) -> list:
    """All tap pairs whose type_a3 codes are self-dual with minimum distance
    exactly d_target at every requested length.

    Only even tap weights can make the type_a0 base catastrophic, so the scan
    is restricted to them. Fixing ones_stream loses no codes up to
    equivalence: swapping the streams of (g1, g2) is a coordinate permutation.
    """
    lengths = sorted(lengths)
    hits = []
    for g1, g2 in _tap_pairs(K, 0):
        if not autocorrelations_cancel(g1, g2, K):
            continue
        p = PolynomialPair(BitVector(K, g1), BitVector(K, g2))
        distances = {}
        ok = True
        for n in lengths:
            G = a3_generator(p, n, ones_stream)
            if not is_self_dual(G):
                ok = False
                break
            d = tb_min_distance(p, n, "type_a3", ones_stream, reject_below=d_target)
            if d != d_target:
                ok = False
                break
            distances[n] = d
        if ok:
            hits.append(
                Candidate(str(p.g1), str(p.g2), "type_a3", ones_stream, distances)
            )
    return hits


def search_type_a0(K: int, lengths, d_target: int = 12) -> list:
    """All tap pairs whose pure quasi-cyclic codes are self-dual with minimum
    distance exactly d_target at every requested length.

    Self-orthogonal rows need an even total tap weight, and full rank needs
    the rows not to sum to zero, so both tap weights must be odd.
    """
    lengths = sorted(lengths)
    hits = []
    for g1, g2 in _tap_pairs(K, 1):
        if not autocorrelations_cancel(g1, g2, K):
            continue
        p = PolynomialPair(BitVector(K, g1), BitVector(K, g2))
        distances = {}
        ok = True
        for n in lengths:
            G = qc_generator(p, n)
            if not is_self_dual(G):
                ok = False
                break
            d = tb_min_distance(p, n, "type_a0", reject_below=d_target)
            if d != d_target:
                ok = False
                break
            distances[n] = d
        if ok:
            hits.append(Candidate(str(p.g1), str(p.g2), "type_a0", None, distances))
    return hits


def _dedupe_reversal(hits: list, K: int) -> list:
    seen = set()
    out = []
    for cand in hits:
        key = canonical_pair(
            BitVector.from_string(cand.g1).bits, BitVector.from_string(cand.g2).bits, K
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(cand)
    return out


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        prog="tailbite-discover",
        description="rerun the exhaustive tap-pair searches behind the shipped fixtures",
    )
    parser.add_argument("--a3-k", type=int, default=9, help="constraint length for the type_a3 family")
    parser.add_argument("--a0-k", type=int, default=10, help="constraint length for the type_a0 search")
    parser.add_argument(
        "--lengths", type=str, default="60,64,68,72", help="comma-separated code lengths for type_a3"
    )
    parser.add_argument(
        "--a0-lengths", type=str, default="68,72", help="comma-separated code lengths for type_a0"
    )
    parser.add_argument("--d", type=int, default=12, help="required minimum distance")
    args = parser.parse_args(argv)

    lengths = [int(x) for x in args.lengths.split(",") if x]
    print(f"type_a3 search: K={args.a3_k}, lengths {lengths}, d={args.d}")
    a3 = search_type_a3(args.a3_k, lengths, args.d)
    for cand in _dedupe_reversal(a3, args.a3_k):
        print(f"  g1={cand.g1} g2={cand.g2} ones_stream={cand.ones_stream} d={cand.distances}")
    print(f"  ({len(a3)} ordered pairs, {len(_dedupe_reversal(a3, args.a3_k))} up to reversal)")

    for n in (int(x) for x in args.a0_lengths.split(",") if x):
        print(f"type_a0 search: K={args.a0_k}, n={n}, d={args.d}")
        a0 = search_type_a0(args.a0_k, [n], args.d)
        for cand in _dedupe_reversal(a0, args.a0_k):
            print(f"  g1={cand.g1} g2={cand.g2} d={cand.distances}")
        print(f"  ({len(a0)} ordered pairs, {len(_dedupe_reversal(a0, args.a0_k))} up to reversal)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
