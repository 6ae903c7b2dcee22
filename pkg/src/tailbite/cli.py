"""Command-line interface.

Subcommands: build, verify, enumerate, fit, encode, decode, simulate,
registry. Exit codes: 0 success, 1 verification failure, 2 usage/parse
error, 3 resource refusal (enumeration/trellis ceilings). All outputs use
fixed formats (counts as decimals, rates as 6-significant-digit scientific)
so runs are diff-stable; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import analysis, decode, tbcc
from .bitlinalg import rank, write_matrix_text
from .construction import build_generator, load_code_spec
from .errors import ParameterError, ResourceRefusalError, TailbiteError
from .registry import PENDING_STATUS, load_named_template, load_registry

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


def _cmd_build(args) -> int:
    spec = load_code_spec(args.spec)
    G = build_generator(spec)
    if args.out:
        write_matrix_text(G, args.out, header=f"generator matrix for {spec.name}")
    else:
        sys.stdout.write(str(G) + "\n")
    print(f"n {spec.n}", file=sys.stderr)
    print(f"k {spec.k}", file=sys.stderr)
    print(f"construction {spec.construction}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = load_code_spec(args.spec)
    G = build_generator(spec)
    checks = []
    r = rank(G)
    checks.append(("rank_n_half", r == spec.k, f"rank {r} (want {spec.k})"))
    sd = analysis.is_self_dual(G)
    checks.append(("self_dual", sd, "G*G^T = 0 and rank n/2" if sd else "failed"))
    qc = analysis.is_quasi_cyclic(G, 2)
    checks.append(("quasi_cyclic_l2", qc, "shift-by-2 closed" if qc else "failed"))
    if spec.status == PENDING_STATUS:
        checks.append(("status", False, f"fixture marked {PENDING_STATUS}"))

    if args.enumerate or args.template:
        t0 = time.perf_counter()
        dist = analysis.weight_distribution_gray(G, threads=args.threads)
        print(f"enumeration_s {time.perf_counter() - t0:.3f}", file=sys.stderr)
        d = analysis.min_distance(dist)
        bound = analysis.extremal_bound(spec.n)
        checks.append(("distribution_sum", dist.total() == 1 << spec.k, f"sum {dist.total()}"))
        checks.append(("min_distance", True, f"d = {d}"))
        checks.append(("extremal_bound", d <= bound, f"d = {d} <= {bound}"))
        checks.append(("parity_class", True, analysis.parity_class(dist)))
        mw = analysis.macwilliams_selfcheck(dist, spec.k)
        checks.append(("macwilliams", mw, "transform fixed point" if mw else "failed"))
        if args.template:
            tpl = load_named_template(args.template)
            fit = analysis.fit_template(dist, tpl)
            detail = ", ".join(f"{k} = {v}" for k, v in fit.params.items())
            if not fit.consistent:
                detail += f"; residuals {fit.residual_terms}"
            checks.append((f"template_{tpl.name}", fit.consistent, detail))
        if args.out:
            analysis.write_distribution(dist, args.out, name=spec.name, k=spec.k)

    ok = True
    for name, passed, detail in checks:
        print(f"{'ok' if passed else 'FAIL'} {name}: {detail}")
        ok = ok and passed
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_enumerate(args) -> int:
    spec = load_code_spec(args.spec)
    G = build_generator(spec)
    t0 = time.perf_counter()
    dist = analysis.weight_distribution_gray(G, threads=args.threads)
    elapsed = time.perf_counter() - t0
    print(f"enumeration_s {elapsed:.3f}", file=sys.stderr)
    if args.out:
        analysis.write_distribution(dist, args.out, name=spec.name, k=spec.k, elapsed_s=elapsed)
    else:
        for w, c in dist.nonzero():
            sys.stdout.write(f"{w}\t{c}\n")
    return EXIT_OK


def _cmd_fit(args) -> int:
    dist = analysis.read_distribution(args.dist)
    tpl = load_named_template(args.template)
    fit = analysis.fit_template(dist, tpl)
    for name, value in fit.params.items():
        print(f"{name} {value}")
    print(f"consistent {'yes' if fit.consistent else 'no'}")
    for w, expected, observed in fit.residual_terms:
        print(f"residual w={w} expected={expected} observed={observed}")
    return EXIT_OK if fit.consistent else EXIT_VERIFY


def _cmd_encode(args) -> int:
    spec = load_code_spec(args.spec)
    infos = tbcc.read_packed_bits(args.infile, spec.k)
    words = []
    for u in infos:
        if spec.construction == "type_a3":
            words.append(tbcc.a3_encode(u, spec.polys, spec.n, spec.ones_stream))
        elif spec.construction == "type_a0":
            words.append(tbcc.tb_encode(u, spec.polys, spec.n))
        else:
            raise ParameterError(f"{spec.construction} has no stream encoder")
    tbcc.write_packed_bits(args.outfile, words)
    print(f"frames {len(words)}", file=sys.stderr)
    return EXIT_OK


def _cmd_decode(args) -> int:
    spec = load_code_spec(args.spec)
    if args.soft:
        frames = decode.read_soft_frames(args.infile, spec.n)
    else:
        frames = [decode.ReceivedFrame.from_bits(v) for v in tbcc.read_packed_bits(args.infile, spec.n)]
    infos = []
    for frame in frames:
        if args.mode == "exact_ml":
            result = decode.viterbi_exact_ml(frame, spec)
        else:
            result = decode.viterbi_wava(frame, spec, max_iters=args.max_iters)
        infos.append(result.info)
    tbcc.write_packed_bits(args.outfile, infos)
    print(f"frames {len(infos)}", file=sys.stderr)
    return EXIT_OK


def _parse_channel(text: str, seed: int) -> decode.ChannelModel:
    kind, _, value = text.partition(":")
    if kind == "bsc":
        return decode.ChannelModel("bsc", float(value), seed)
    if kind == "awgn":
        return decode.ChannelModel("awgn_bpsk", float(value), seed)
    raise ParameterError(f"channel must be bsc:P or awgn:DB, got {text!r}")


def _cmd_simulate(args) -> int:
    spec = load_code_spec(args.spec)
    ch = _parse_channel(args.channel, args.seed)
    report = decode.simulate(
        spec, ch, args.frames, mode=args.mode, threads=args.threads, wava_iters=args.max_iters
    )
    text = decode.format_sim_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"elapsed_ms {report.elapsed_ms:.1f}", file=sys.stderr)
    return EXIT_OK


def _cmd_registry(args) -> int:
    reg = load_registry(args.fixtures)
    if args.action == "list":
        for name in reg.names():
            spec = reg.entries[name]
            status = f" [{spec.status}]" if spec.status else ""
            print(f"{name} n={spec.n} construction={spec.construction}{status}")
        return EXIT_OK
    spec = reg.get(args.name)
    from .construction import format_code_spec

    sys.stdout.write(format_code_spec(spec))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailbite",
        description="self-dual quasi-cyclic codes as tailbiting convolutional codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write the generator matrix of a code spec")
    p.add_argument("spec")
    p.add_argument("--out", default=None, help="matrix text file (default: stdout)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="check self-duality and (optionally) the full enumerator")
    p.add_argument("spec")
    p.add_argument("--enumerate", action="store_true", help="run the full weight enumeration")
    p.add_argument("--template", default=None, help="fit the named enumerator template")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="also write the distribution file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", help="compute the exact weight distribution")
    p.add_argument("spec")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="distribution file (default: stdout pairs)")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("fit", help="fit an enumerator template to a distribution file")
    p.add_argument("--dist", required=True)
    p.add_argument("--template", required=True, help="template name or file path")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("encode", help="encode packed information words")
    p.add_argument("spec")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode received frames to packed information words")
    p.add_argument("spec")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--mode", choices=("exact_ml", "wava"), default="exact_ml")
    p.add_argument("--soft", action="store_true", help="input is float32 soft reliabilities")
    p.add_argument("--max-iters", type=int, default=4, help="wava pass limit")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("simulate", help="run a reproducible frame-error simulation")
    p.add_argument("spec")
    p.add_argument("--channel", required=True, help="bsc:P or awgn:DB")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("exact_ml", "wava"), default="exact_ml")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-iters", type=int, default=4, help="wava pass limit")
    p.add_argument("--out", default=None, help="report file (default: stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("registry", help="list or show the shipped code fixtures")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--fixtures", default=None, help="alternate fixtures directory")
    p.set_defaults(func=_cmd_registry)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "registry" and args.action == "show" and not args.name:
        print("registry show requires a fixture name", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ResourceRefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except TailbiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
