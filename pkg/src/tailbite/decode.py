"""Tailbiting Viterbi decoding, channel models, and the frame-error loop.

Metric convention (fixed): decoders minimize a cost. For hard frames the
cost is Hamming distance; for soft frames it is the negated correlation
-sum((1 - 2c_i) * r_i), r_i > 0 favoring bit 0. DecodeResult.metric is the
cost of the re-encoded winning codeword against the frame, so the result
invariant "re-encoding info reproduces metric" holds by construction.

Exact ML decoding runs one constrained Viterbi per start state (start ==
end). For type_a3 codes both coset hypotheses are decoded with the stage-0
input pinned to 0 (the catastrophic base maps u and its complement to the
same codeword; pinning picks the representative and the hypothesis restores
the first information bit). Ties are broken by (coset bit, start state,
lexicographically smallest pinned input sequence), in that order, ascending.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .bitlinalg import BitVector, weight
from .construction import CodeSpec, PolynomialPair
from .errors import ParameterError, ResourceRefusalError
from .tbcc import a3_encode, tb_encode

__all__ = [
    "Trellis",
    "ReceivedFrame",
    "DecodeResult",
    "ChannelModel",
    "SimReport",
    "build_trellis",
    "viterbi_exact_ml",
    "viterbi_wava",
    "apply_channel",
    "simulate",
    "frame_score",
    "tailbiting_start_state",
    "format_sim_report",
    "parse_sim_report",
    "write_soft_frames",
    "read_soft_frames",
]

TRELLIS_K_LIMIT = 16
_PATH_BITS_LIMIT = 63


@dataclass(frozen=True)
class Trellis:
    """Transition tables of the 2^(K-1)-state encoder.

    State s encodes the previous K-1 input bits (bit j = input j+1 steps
    back). next_state[b, s] and outputs[b, s] (bit 0 = stream-1 output,
    bit 1 = stream-2 output) describe the transition taken from s on input b.
    """

    K: int
    states: int
    next_state: np.ndarray
    outputs: np.ndarray


def build_trellis(p: PolynomialPair) -> Trellis:
    """Tabulate transitions for the rate-1/2 encoder with taps p."""
    if p.K > TRELLIS_K_LIMIT:
        raise ResourceRefusalError(
            f"trellis refused for K = {p.K} > {TRELLIS_K_LIMIT} (state ceiling 2^15)"
        )
    return _build_trellis_cached(p.g1.bits, p.g2.bits, p.K)


@lru_cache(maxsize=64)
def _build_trellis_cached(g1: int, g2: int, K: int) -> Trellis:
    S = 1 << (K - 1)
    mask = S - 1
    s = np.arange(S, dtype=np.int64)
    nxt = np.empty((2, S), dtype=np.int32)
    out = np.empty((2, S), dtype=np.uint8)
    for b in (0, 1):
        reg = (s << 1) | b
        y1 = (np.bitwise_count(reg & g1) & 1).astype(np.uint8)
        y2 = (np.bitwise_count(reg & g2) & 1).astype(np.uint8)
        nxt[b] = (b | ((s << 1) & mask)).astype(np.int32)
        out[b] = y1 | (y2 << 1)
    return Trellis(K=K, states=S, next_state=nxt, outputs=out)


@dataclass(frozen=True)
class ReceivedFrame:
    """Per-bit channel observations: hard 0/1 decisions or soft reliabilities."""

    n: int
    metrics: np.ndarray
    hard: bool

    def __post_init__(self) -> None:
        metrics = np.asarray(self.metrics, dtype=np.float64)
        if metrics.shape != (self.n,):
            raise ParameterError(f"frame needs exactly n = {self.n} metric values")
        if self.hard and not np.all((metrics == 0.0) | (metrics == 1.0)):
            raise ParameterError("hard frame metrics must be 0 or 1")
        object.__setattr__(self, "metrics", metrics)

    @classmethod
    def from_bits(cls, v: BitVector) -> "ReceivedFrame":
        return cls(v.n, np.array([v[i] for i in range(v.n)], dtype=np.float64), True)

    def to_bits(self) -> BitVector:
        if not self.hard:
            raise ParameterError("soft frame has no exact bit representation")
        return BitVector.from_bits(int(x) for x in self.metrics)


@dataclass(frozen=True)
class DecodeResult:
    """Recovered information word plus decoder bookkeeping."""

    info: BitVector
    metric: float
    mode: str
    coset_bit: int | None = None
    converged: bool | None = None


@dataclass(frozen=True)
class ChannelModel:
    """bsc with crossover probability, or awgn_bpsk with Eb/N0 in dB.

    Randomness comes from a counter-based generator (Philox) keyed by
    (seed, frame index), one draw per bit index, so any frame is
    reproducible in isolation and across thread counts.
    """

    kind: str
    parameter: float
    seed: int

    def __post_init__(self) -> None:
        if self.kind not in ("bsc", "awgn_bpsk"):
            raise ParameterError(f"unknown channel kind {self.kind!r}")
        if self.kind == "bsc" and not 0.0 <= self.parameter < 0.5:
            raise ParameterError(f"bsc crossover must be in [0, 0.5), got {self.parameter}")
        if not np.isfinite(self.parameter):
            raise ParameterError("channel parameter must be finite")


def _frame_rng(seed: int, domain: int, frame_index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, 0], dtype=np.uint64)
    counter = np.array([0, 0, domain, frame_index & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def apply_channel(c: BitVector, ch: ChannelModel, frame_index: int = 0) -> ReceivedFrame:
    """Pass one codeword through the channel model."""
    rng = _frame_rng(ch.seed, 0, frame_index)
    bits = np.array([c[i] for i in range(c.n)], dtype=np.float64)
    if ch.kind == "bsc":
        flips = rng.random(c.n) < ch.parameter
        return ReceivedFrame(c.n, np.where(flips, 1.0 - bits, bits), True)
    sigma2 = 10.0 ** (-ch.parameter / 10.0)  # 1 / (2 * R * Eb/N0) at R = 1/2
    noise = rng.standard_normal(c.n) * np.sqrt(sigma2)
    y = (1.0 - 2.0 * bits) + noise
    return ReceivedFrame(c.n, 2.0 * y / sigma2, False)


def frame_score(frame: ReceivedFrame, codeword: BitVector) -> float:
    """Decoder cost of a codeword against a frame (lower is better)."""
    if codeword.n != frame.n:
        raise ParameterError(f"codeword length {codeword.n} != frame length {frame.n}")
    bits = np.array([codeword[i] for i in range(codeword.n)], dtype=np.float64)
    if frame.hard:
        return float(np.sum(bits != frame.metrics))
    return float(-np.sum((1.0 - 2.0 * bits) * frame.metrics))


def tailbiting_start_state(u: BitVector, K: int) -> int:
    """Trellis state preloaded by tailbiting: the final K-1 information bits."""
    m = u.n
    s = 0
    for j in range(1, K):
        s |= u[(m - j) % m] << (j - 1)
    return s


def _branch_costs(frame: ReceivedFrame, trellis: Trellis, flip_stream: int | None) -> np.ndarray:
    """(m, 2, S) float64 branch costs; flip_stream complements one output
    stream first (the type_a3 coset hypothesis)."""
    m = frame.n // 2
    y1 = (trellis.outputs & 1).astype(np.int64)
    y2 = ((trellis.outputs >> 1) & 1).astype(np.int64)
    if flip_stream == 1:
        y1 = 1 - y1
    elif flip_stream == 2:
        y2 = 1 - y2
    r0 = frame.metrics[0::2]
    r1 = frame.metrics[1::2]
    if frame.hard:
        cost = (y1[None, :, :] != r0[:, None, None]).astype(np.float64)
        cost += (y2[None, :, :] != r1[:, None, None]).astype(np.float64)
    else:
        cost = -(
            (1.0 - 2.0 * y1)[None, :, :] * r0[:, None, None]
            + (1.0 - 2.0 * y2)[None, :, :] * r1[:, None, None]
        )
    return np.ascontiguousarray(cost)


def _shift_nonnegative(costs: list) -> list:
    """Shift every stage so all branch costs are >= 0, using one shift per
    stage common to all cost arrays: every full-length path in every array
    gains the same constant, so rankings and ties are unchanged, and partial
    metrics become valid lower bounds for the scan kernel's early abort."""
    shift = costs[0].min(axis=(1, 2), keepdims=True)
    for cost in costs[1:]:
        shift = np.minimum(shift, cost.min(axis=(1, 2), keepdims=True))
    shift = np.minimum(shift, 0.0)
    return [np.ascontiguousarray(cost - shift) for cost in costs]


def _path_to_bits(path: int, m: int) -> BitVector:
    """Kernel path word (stage-0 bit most significant) -> information bits."""
    bits = 0
    for t in range(m):
        bits |= ((path >> (m - 1 - t)) & 1) << t
    return BitVector(m, bits)


def _check_decodable(frame: ReceivedFrame, spec: CodeSpec) -> int:
    if spec.construction not in ("type_a0", "type_a3"):
        raise ParameterError(f"{spec.construction} has no trellis; cannot Viterbi-decode")
    if frame.n != spec.n:
        raise ParameterError(f"frame length {frame.n} != code length {spec.n}")
    m = spec.n // 2
    if m > _PATH_BITS_LIMIT:
        raise ResourceRefusalError(f"decoder path words hold at most {_PATH_BITS_LIMIT} stages")
    return m


def _complement(u: BitVector) -> BitVector:
    return BitVector(u.n, u.bits ^ ((1 << u.n) - 1))


def _decoded_info(path: int, m: int, spec: CodeSpec, h: int) -> BitVector:
    u = _path_to_bits(path, m)
    if spec.construction == "type_a3" and h == 1:
        u = _complement(u)
    return u


def _reencode(info: BitVector, spec: CodeSpec) -> BitVector:
    if spec.construction == "type_a3":
        return a3_encode(info, spec.polys, spec.n, spec.ones_stream)
    return tb_encode(info, spec.polys, spec.n)


def _wava_run(costs: np.ndarray, m: int, max_iters: int):
    """Iterated wrap-around passes. Returns (candidate, converged, fallback):
    candidate = (score, path) of the best tailbiting-consistent survivor seen
    (None if none), converged says whether a pass's best survivor was itself
    consistent, fallback is the last pass's best survivor path."""
    S = costs.shape[2]
    init = np.zeros(S, dtype=np.float64)
    candidate = None
    fallback = 0
    for _ in range(max_iters):
        final, prefix, origin = _kernels.wava_pass(costs, init)
        f_star = int(np.argmin(final))
        fallback = int(prefix[f_star])
        consistent = np.nonzero(origin == np.arange(S))[0]
        if consistent.size:
            scores = final[consistent] - init[consistent]
            i = int(np.lexsort((consistent, scores))[0])
            score = float(scores[i])
            if candidate is None or score < candidate[0]:
                candidate = (score, int(prefix[consistent[i]]))
        if int(origin[f_star]) == f_star:
            return candidate, True, fallback
        init = final
    return candidate, False, fallback


def viterbi_exact_ml(frame: ReceivedFrame, spec: CodeSpec) -> DecodeResult:
    """Exact maximum-likelihood tailbiting decoding.

    One Viterbi per start state, constrained to end where it started; for
    type_a3 both coset hypotheses are tried. A cheap wrap-around pre-pass
    seeds an upper bound so hopeless start states abort early; the result is
    still exactly the tie-break-minimal ML path.
    """
    m = _check_decodable(frame, spec)
    trellis = build_trellis(spec.polys)
    a3 = spec.construction == "type_a3"
    hypotheses = (0, 1) if a3 else (0,)
    costs = []
    for h in hypotheses:
        flip = spec.ones_stream if (a3 and h == 1) else None
        costs.append(_branch_costs(frame, trellis, flip))
    costs = _shift_nonnegative(costs)

    bound = np.inf
    for cost in costs:
        cand, _, _ = _wava_run(cost, m, 2)
        if cand is not None and cand[0] < bound:
            bound = cand[0]

    found = False
    best = None  # (metric, h, start, path)
    for _attempt in range(2):
        for h in hypotheses:
            updated, metric, start, path = _kernels.viterbi_closed_scan(
                costs[h], a3, bound, found
            )
            if updated:
                best = (float(metric), h, int(start), int(path))
                bound = float(metric)
                found = True
        if found:
            break
        bound = np.inf  # soft-metric bound was unattainably tight; rescan open

    metric, h, _, path = best
    info = _decoded_info(path, m, spec, h)
    result_metric = frame_score(frame, _reencode(info, spec))
    return DecodeResult(
        info=info,
        metric=result_metric,
        mode="exact_ml",
        coset_bit=h if a3 else None,
        converged=None,
    )


def viterbi_wava(frame: ReceivedFrame, spec: CodeSpec, max_iters: int = 4) -> DecodeResult:
    """Wrap-around Viterbi approximation to exact tailbiting ML.

    All start metrics begin equal; each pass feeds its final state metrics
    into the next pass's initial metrics. Decoding stops once a pass's best
    survivor is tailbiting-consistent (converged=True); otherwise the best
    consistent path seen anywhere is returned, or failing that the last
    pass's best survivor, with converged=False. For type_a3 both coset
    hypotheses are run and the better re-encoded cost wins (ties to coset 0).
    """
    if max_iters < 1:
        raise ParameterError(f"max_iters must be >= 1, got {max_iters}")
    m = _check_decodable(frame, spec)
    trellis = build_trellis(spec.polys)
    a3 = spec.construction == "type_a3"
    hypotheses = (0, 1) if a3 else (0,)

    best = None  # (metric, h, info, converged)
    for h in hypotheses:
        flip = spec.ones_stream if (a3 and h == 1) else None
        cost = _branch_costs(frame, trellis, flip)
        candidate, converged, fallback = _wava_run(cost, m, max_iters)
        path = candidate[1] if candidate is not None else fallback
        u = _path_to_bits(path, m)
        if a3 and u[0] == 1:
            u = _complement(u)  # same codeword; normalize the representative
        info = _complement(u) if (a3 and h == 1) else u
        metric = frame_score(frame, _reencode(info, spec))
        if best is None or metric < best[0]:
            best = (metric, h, info, converged)
    metric, h, info, converged = best
    return DecodeResult(
        info=info,
        metric=metric,
        mode="wava",
        coset_bit=h if a3 else None,
        converged=converged,
    )


@dataclass(frozen=True)
class SimReport:
    """Aggregate error statistics of one simulation run."""

    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    mode: str
    seed: int
    elapsed_ms: float


def _sim_frame(spec: CodeSpec, ch: ChannelModel, mode: str, index: int, wava_iters: int):
    k = spec.n // 2
    rng = _frame_rng(ch.seed, 1, index)
    info = BitVector.from_bits(rng.integers(0, 2, size=k, dtype=np.uint8).tolist())
    frame = apply_channel(_reencode(info, spec), ch, frame_index=index)
    if mode == "exact_ml":
        result = viterbi_exact_ml(frame, spec)
    else:
        result = viterbi_wava(frame, spec, max_iters=wava_iters)
    nbit = weight(info ^ result.info)
    return nbit, 1 if nbit else 0


def simulate(
    spec: CodeSpec,
    ch: ChannelModel,
    frames: int,
    mode: str = "exact_ml",
    threads: int = 1,
    wava_iters: int = 4,
) -> SimReport:
    """Encode random information words, pass them through the channel, decode,
    and tally bit/frame errors. Deterministic given (seed, frames, spec, mode),
    independent of the thread count."""
    if frames < 1:
        raise ParameterError(f"frames must be >= 1, got {frames}")
    if mode not in ("exact_ml", "wava"):
        raise ParameterError(f"unknown decoder mode {mode!r}")
    if threads < 1:
        raise ParameterError(f"threads must be >= 1, got {threads}")
    t0 = time.perf_counter()
    bit_errors = 0
    frame_errors = 0
    if threads == 1:
        results = (_sim_frame(spec, ch, mode, i, wava_iters) for i in range(frames))
    else:
        pool = ThreadPoolExecutor(max_workers=threads)
        results = pool.map(lambda i: _sim_frame(spec, ch, mode, i, wava_iters), range(frames))
    for nbit, nframe in results:
        bit_errors += nbit
        frame_errors += nframe
    if threads > 1:
        pool.shutdown()
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    k = spec.n // 2
    return SimReport(
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (frames * k),
        fer=frame_errors / frames,
        mode=mode,
        seed=ch.seed,
        elapsed_ms=elapsed_ms,
    )


def format_sim_report(report: SimReport) -> str:
    """Diff-stable report text: counts in decimal, rates in 6-significant-digit
    scientific notation. elapsed_ms is intentionally omitted (it goes to
    stderr) so reports are byte-identical across runs and thread counts."""
    return (
        f"frames {report.frames}\n"
        f"bit_errors {report.bit_errors}\n"
        f"frame_errors {report.frame_errors}\n"
        f"ber {report.ber:.5e}\n"
        f"fer {report.fer:.5e}\n"
        f"mode {report.mode}\n"
        f"seed {report.seed}\n"
    )


def parse_sim_report(text: str) -> dict:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        fields[key] = value
    return fields


def write_soft_frames(path, frames) -> None:
    """Soft frame file: little-endian float32, one value per code bit."""
    data = np.concatenate([np.asarray(f.metrics, dtype="<f4") for f in frames])
    data.tofile(path)


def read_soft_frames(path, n: int) -> list:
    values = np.fromfile(path, dtype="<f4")
    if values.size == 0 or values.size % n:
        raise ParameterError(f"{path}: size {values.size} not a positive multiple of n={n}")
    return [
        ReceivedFrame(n, values[i : i + n].astype(np.float64), False)
        for i in range(0, values.size, n)
    ]
