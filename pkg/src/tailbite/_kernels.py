"""Numba kernels: Gray-code weight enumeration, tailbiting Viterbi, min-weight DP.

Everything here is an implementation detail of analysis/decode/discover. All
kernels are compiled nogil so Python threads achieve real concurrency, and
all are deterministic: loop orders are fixed and no shared mutable state is
touched concurrently.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U56 = np.uint64(56)
_U58 = np.uint64(58)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_DB_CONST = np.uint64(0x03F79D71B4CA8B09)

# de Bruijn table: index of the lone set bit of (t & -t)
_DEBRUIJN = np.array(
    [
        0, 1, 48, 2, 57, 49, 28, 3, 61, 58, 50, 42, 38, 29, 17, 4,
        62, 55, 59, 36, 53, 51, 43, 22, 45, 39, 33, 30, 24, 18, 12, 5,
        63, 47, 56, 27, 60, 41, 37, 16, 54, 35, 52, 21, 44, 32, 23, 11,
        46, 26, 40, 15, 34, 20, 31, 10, 25, 14, 19, 9, 13, 8, 7, 6,
    ],
    dtype=np.int64,
)

_INF32 = np.int32(1 << 30)


@njit(cache=True, nogil=True, inline="always")
def _popcount64(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> _U2) & _M2)
    x = (x + (x >> _U4)) & _M4
    return int((x * _H01) >> _U56)


@njit(cache=True, nogil=True)
def gray_hist_w1(rows, nlow, base, hist):
    """Gray walk over 2^nlow XOR combinations of `rows`, 1 word per row."""
    acc = base
    hist[_popcount64(acc)] += 1
    total = _U1 << np.uint64(nlow)
    t = _U1
    while t < total:
        idx = _DEBRUIJN[int(((t & (_U0 - t)) * _DB_CONST) >> _U58)]
        acc ^= rows[idx]
        hist[_popcount64(acc)] += 1
        t += _U1
    return hist


@njit(cache=True, nogil=True)
def gray_hist_w2(rows, nlow, base0, base1, hist):
    """Gray walk, 2 words per row (rows is (nlow, 2))."""
    a0 = base0
    a1 = base1
    hist[_popcount64(a0) + _popcount64(a1)] += 1
    total = _U1 << np.uint64(nlow)
    t = _U1
    while t < total:
        idx = _DEBRUIJN[int(((t & (_U0 - t)) * _DB_CONST) >> _U58)]
        a0 ^= rows[idx, 0]
        a1 ^= rows[idx, 1]
        hist[_popcount64(a0) + _popcount64(a1)] += 1
        t += _U1
    return hist


@njit(cache=True, nogil=True)
def gray_hist_wn(rows, nlow, base, hist):
    """Gray walk, generic word count (rows is (nlow, W), base is (W,))."""
    W = base.shape[0]
    acc = base.copy()
    w = 0
    for j in range(W):
        w += _popcount64(acc[j])
    hist[w] += 1
    total = _U1 << np.uint64(nlow)
    t = _U1
    while t < total:
        idx = _DEBRUIJN[int(((t & (_U0 - t)) * _DB_CONST) >> _U58)]
        w = 0
        for j in range(W):
            acc[j] ^= rows[idx, j]
            w += _popcount64(acc[j])
        hist[w] += 1
        t += _U1
    return hist


@njit(cache=True, nogil=True)
def viterbi_closed_scan(costs, pin_first_zero, bound, have_incumbent):
    """Exact tailbiting Viterbi over all start states with start == end.

    costs: (m, 2, S) float64 branch costs, S = 2^(K-1) states; the transition
    into state ns consumes input bit ns & 1 from predecessor ns >> 1 or
    (ns >> 1) | S/2.

    Per state the survivor is the (metric, path-prefix) lexicographic minimum,
    prefixes compared as integers with the stage-0 bit most significant; the
    returned path is therefore the lexicographically smallest input sequence
    among minimum-cost closed paths of the winning start, and starts are
    scanned ascending so equal-metric ties resolve to the smallest start.

    `bound`/`have_incumbent` let the caller chain scans: a start is abandoned
    once every state's partial metric exceeds the best known metric, and a
    completed start only wins with a strictly better metric (or an equal one
    when no incumbent exists yet).

    Returns (updated, metric, start, path_bits); updated says whether this
    scan produced a new incumbent (metric/start/path are then meaningful).
    """
    m, _, S = costs.shape
    half = S >> 1
    metric = np.empty(S, np.float64)
    prefix = np.empty(S, np.uint64)
    nmetric = np.empty(S, np.float64)
    nprefix = np.empty(S, np.uint64)

    best_metric = bound
    found = have_incumbent
    updated = False
    best_start = np.int64(-1)
    best_path = _U0
    for start in range(S):
        for s in range(S):
            metric[s] = np.inf
            prefix[s] = _U0
        metric[start] = 0.0
        aborted = False
        for t in range(m):
            stage_min = np.inf
            for ns in range(S):
                b = ns & 1
                if t == 0 and pin_first_zero and b == 1:
                    nmetric[ns] = np.inf
                    nprefix[ns] = _U0
                    continue
                p0 = ns >> 1
                p1 = p0 | half
                c0 = metric[p0] + costs[t, b, p0]
                c1 = metric[p1] + costs[t, b, p1]
                e0 = (prefix[p0] << _U1) | np.uint64(b)
                e1 = (prefix[p1] << _U1) | np.uint64(b)
                if c0 < c1 or (c0 == c1 and e0 <= e1):
                    nmetric[ns] = c0
                    nprefix[ns] = e0
                else:
                    nmetric[ns] = c1
                    nprefix[ns] = e1
                if nmetric[ns] < stage_min:
                    stage_min = nmetric[ns]
            tmpm = metric
            metric = nmetric
            nmetric = tmpm
            tmpp = prefix
            prefix = nprefix
            nprefix = tmpp
            if stage_min > best_metric:
                aborted = True
                break
        if aborted:
            continue
        closed = metric[start]
        if closed < best_metric or (closed == best_metric and not found):
            best_metric = closed
            best_start = start
            best_path = prefix[start]
            found = True
            updated = True
    return updated, best_metric, best_start, best_path


@njit(cache=True, nogil=True)
def wava_pass(costs, init_metric):
    """One wrap-around Viterbi pass from per-state initial metrics.

    Returns (final_metric, prefix, origin): accumulated metric per end state,
    the pass's surviving input bits per end state (stage-0 bit most
    significant), and the state each survivor started the pass in.
    """
    m, _, S = costs.shape
    half = S >> 1
    metric = init_metric.copy()
    prefix = np.zeros(S, np.uint64)
    origin = np.empty(S, np.int64)
    for s in range(S):
        origin[s] = s
    nmetric = np.empty(S, np.float64)
    nprefix = np.empty(S, np.uint64)
    norigin = np.empty(S, np.int64)
    for t in range(m):
        for ns in range(S):
            b = ns & 1
            p0 = ns >> 1
            p1 = p0 | half
            c0 = metric[p0] + costs[t, b, p0]
            c1 = metric[p1] + costs[t, b, p1]
            e0 = (prefix[p0] << _U1) | np.uint64(b)
            e1 = (prefix[p1] << _U1) | np.uint64(b)
            if c0 < c1 or (c0 == c1 and e0 <= e1):
                nmetric[ns] = c0
                nprefix[ns] = e0
                norigin[ns] = origin[p0]
            else:
                nmetric[ns] = c1
                nprefix[ns] = e1
                norigin[ns] = origin[p1]
        tmpm = metric
        metric = nmetric
        nmetric = tmpm
        tmpp = prefix
        prefix = nprefix
        nprefix = tmpp
        tmpo = origin
        origin = norigin
        norigin = tmpo
    return metric, prefix, origin


@njit(cache=True, nogil=True)
def closed_min_weight(bw, m, mode, reject_below):
    """Minimum weight over closed (start == end) trellis paths of length m.

    bw: (2, S) int32 output weight of the transition taken from state s on
    input b (stage-invariant). mode selects which input sequences count:
    0 = all of them, 1 = exclude the all-zeros input, 2 = exclude both the
    all-zeros and the all-ones inputs.

    Early exit: returns as soon as the running minimum drops below
    reject_below (callers screening candidates pass their threshold; pass 0
    for an exact answer).

    Flag bit 0 tracks "some input 1 seen", bit 1 "some input 0 seen".
    """
    S = bw.shape[1]
    half = S >> 1
    F = 4
    dp = np.empty((S, F), np.int32)
    ndp = np.empty((S, F), np.int32)
    best = _INF32
    for start in range(S):
        for s in range(S):
            for f in range(F):
                dp[s, f] = _INF32
        dp[start, 0] = 0
        for t in range(m):
            for ns in range(S):
                b = ns & 1
                fb = 1 if b == 1 else 2
                p0 = ns >> 1
                p1 = p0 | half
                for fn in range(F):
                    if (fn & fb) != fb:
                        ndp[ns, fn] = _INF32
                        continue
                    fo = fn & ~fb
                    a0 = dp[p0, fn]
                    if dp[p0, fo] < a0:
                        a0 = dp[p0, fo]
                    a1 = dp[p1, fn]
                    if dp[p1, fo] < a1:
                        a1 = dp[p1, fo]
                    v0 = a0 + bw[b, p0] if a0 < _INF32 else _INF32
                    v1 = a1 + bw[b, p1] if a1 < _INF32 else _INF32
                    ndp[ns, fn] = v0 if v0 <= v1 else v1
            tmp = dp
            dp = ndp
            ndp = tmp
        for f in range(F):
            ok = True
            if mode >= 1 and (f & 1) == 0:
                ok = False
            if mode == 2 and (f & 2) == 0:
                ok = False
            if ok and dp[start, f] < best:
                best = dp[start, f]
        if best < reject_below:
            return best
    return best
