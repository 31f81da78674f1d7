"""Command-line front end: ``lpdecode <command> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys

import numpy as np

from .bounds import BoundMode, SpectrumKind, WeightSpectrum, bound_curve, curve_to_csv
from .channel import llr_from_received
from .codes import count_cycles, load_matrix, summarize
from .cone import enumerate_generators, weight_spectrum
from .decoders import decode_bp, decode_ml
from .errors import LpDecodeError
from .lpdecoder import decode_lp
from .minpw import DEFAULT_EPS, min_pseudoweight
from .regions import CutSpec, map_regions
from .sim import fer_to_csv, parse_range, run_fer

log = logging.getLogger("lpdecode")


def _vector(text):
    try:
        return np.array([float(v) for v in text.replace(" ", "").split(",") if v != ""])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_codes_info(args):
    H = load_matrix(args.matrix)
    s = summarize(H)
    print(f"matrix: {H.name or args.matrix}")
    print(f"m: {H.m}")
    print(f"n: {s.n}")
    print(f"k: {s.k}")
    print(f"d_min: {s.d_min}")
    print(f"cycles4: {count_cycles(H, 4)}")
    print(f"cycles6: {count_cycles(H, 6)}")


def cmd_spectrum(args):
    H = load_matrix(args.matrix)
    gens = enumerate_generators(H, ray_limit=args.ray_limit)
    spec = weight_spectrum(gens, precision=args.precision)
    _write(args.out, spec.to_csv())
    w, c = spec.minimum
    print(f"{len(gens)} generators; minimum pseudoweight {w} with multiplicity {c}")


def cmd_minpw(args):
    H = load_matrix(args.matrix)
    res = min_pseudoweight(H, a=args.a, eps=args.eps, node_budget=args.node_budget,
                           cross_check=not args.no_cross_check)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["matrix", "w_p_min", "n_p_min", "gap", "nodes"])
    w.writerow([H.name or args.matrix, repr(res.w_p_min), res.n_p_min, repr(res.relative_gap), res.nodes])
    _write(args.out, buf.getvalue())
    print(f"w_p_min {res.w_p_min:.10g}, N_p_min {res.n_p_min}, gap {res.relative_gap:.3g}, nodes {res.nodes}")
    if res.cross_check is not None:
        print(f"exact enumeration: w {res.cross_check[0]:.10g}, count {res.cross_check[1]}")


def cmd_map(args):
    H = load_matrix(args.matrix)
    parts = [float(v) for v in args.range.split(":")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--range must be ymin:ymax:xmin:xmax")
    cut = CutSpec(args.ny, args.nx, (parts[0], parts[1]), (parts[2], parts[3]), args.step, args.sigma)
    rmap = map_regions(H, args.decoder, cut, check_ranges=not args.no_range_check)
    rmap.write(args.out_prefix)
    print(f"{len(rmap.legend)} regions on a {len(rmap.ys)}x{len(rmap.xs)} grid -> {args.out_prefix}.csv/.legend.json/.ppm")


def cmd_fer(args):
    H = load_matrix(args.matrix)
    points = run_fer(H, args.decoder, parse_range(args.ebn0), max_frames=args.max_frames,
                     max_errors=args.max_errors, seed=args.seed, workers=args.workers)
    _write(args.out, fer_to_csv(points))
    for p in points:
        print(f"{p.ebn0_db:g} dB: {p.frame_errors}/{p.frames} fer={p.fer:.4g} CI=[{p.ci_lo:.4g}, {p.ci_hi:.4g}]")


def read_weight_csv(path, kind):
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path} is empty")
    body = rows[1:] if not _is_number(rows[0][0]) else rows
    return WeightSpectrum(tuple((float(r[0]), int(r[1])) for r in body if r), kind)


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def cmd_bound(args):
    kind = SpectrumKind.HAMMING if args.kind == "ml" else SpectrumKind.PSEUDO
    spectrum = read_weight_csv(args.spectrum, kind)
    mode = BoundMode.FULL if args.mode == "full" else BoundMode.DOMINANT
    curve = bound_curve(spectrum, parse_range(args.ebn0), args.rate, mode)
    _write(args.out, curve_to_csv(curve))
    print(f"{len(curve)} points written to {args.out}")


def cmd_decode(args):
    H = load_matrix(args.matrix)
    r = args.received
    if r.size != H.n:
        raise LpDecodeError(f"received vector has length {r.size}, code length is {H.n}")
    llr = llr_from_received(r, args.sigma)
    if args.decoder == "lp":
        res = decode_lp(H, llr)
        vec = res.x
        cls = "codeword" if res.integral else "fractional"
        extra = f"objective {res.objective_value:.10g}, cuts {res.cuts_added}, verdict {res.verdict.name}"
    elif args.decoder == "bp":
        res = decode_bp(H, llr)
        vec = res.hard_bits
        cls = "codeword" if res.converged else "noncodeword"
        extra = f"iterations {res.iterations_used}, converged {res.converged}"
    else:
        vec = decode_ml(H, r)
        cls = "codeword"
        extra = f"correlation {float(r @ (2.0 * vec - 1.0)):.10g}"
    print("output: " + ",".join(f"{float(v):.6g}" for v in vec))
    print(f"class: {cls}")
    print(extra)


def build_parser():
    p = argparse.ArgumentParser(prog="lpdecode", description="LP decoding analysis tools")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    codes = sub.add_parser("codes", help="code properties")
    codes_sub = codes.add_subparsers(dest="codes_command", required=True)
    info = codes_sub.add_parser("info", help="n, k, d_min and short-cycle counts")
    info.add_argument("--matrix", required=True)
    info.set_defaults(func=cmd_codes_info)

    sp = sub.add_parser("spectrum", help="generator pseudoweight spectrum by exact enumeration")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--ray-limit", type=int, default=10**7)
    sp.add_argument("--precision", type=int, default=6)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_spectrum)

    mp = sub.add_parser("minpw", help="minimal pseudoweight by branch-and-bound")
    mp.add_argument("--matrix", required=True)
    mp.add_argument("--a", type=float, default=None)
    mp.add_argument("--eps", type=float, default=DEFAULT_EPS)
    mp.add_argument("--node-budget", type=int, default=10**6)
    mp.add_argument("--no-cross-check", action="store_true")
    mp.add_argument("--out", required=True)
    mp.set_defaults(func=cmd_minpw)

    rm = sub.add_parser("map", help="decision-region map on a 2D cut")
    rm.add_argument("--matrix", required=True)
    rm.add_argument("--decoder", choices=("lp", "bp", "ml"), required=True)
    rm.add_argument("--ny", type=_vector, required=True)
    rm.add_argument("--nx", type=_vector, required=True)
    rm.add_argument("--range", default="-2:4:-2:4")
    rm.add_argument("--step", type=float, default=0.02)
    rm.add_argument("--sigma", type=float, default=1.0)
    rm.add_argument("--no-range-check", action="store_true")
    rm.add_argument("--out-prefix", required=True)
    rm.set_defaults(func=cmd_map)

    fr = sub.add_parser("fer", help="Monte-Carlo frame error rate")
    fr.add_argument("--matrix", required=True)
    fr.add_argument("--decoder", choices=("lp", "bp", "ml"), required=True)
    fr.add_argument("--ebn0", required=True)
    fr.add_argument("--seed", type=int, default=0)
    fr.add_argument("--max-frames", type=int, default=10**6)
    fr.add_argument("--max-errors", type=int, default=200)
    fr.add_argument("--workers", type=int, default=1)
    fr.add_argument("--out", required=True)
    fr.set_defaults(func=cmd_fer)

    bd = sub.add_parser("bound", help="union bound curve from a weight spectrum CSV")
    bd.add_argument("--spectrum", required=True)
    bd.add_argument("--kind", choices=("ml", "lp"), required=True)
    bd.add_argument("--mode", choices=("full", "approx"), default="full")
    bd.add_argument("--ebn0", required=True)
    bd.add_argument("--rate", type=float, required=True)
    bd.add_argument("--out", required=True)
    bd.set_defaults(func=cmd_bound)

    dc = sub.add_parser("decode", help="decode one received vector")
    dc.add_argument("--matrix", required=True)
    dc.add_argument("--decoder", choices=("lp", "bp", "ml"), required=True)
    dc.add_argument("--received", type=_vector, required=True)
    dc.add_argument("--sigma", type=float, default=1.0)
    dc.set_defaults(func=cmd_decode)
    return p


VALUE_FLAGS = {"--received", "--ny", "--nx", "--range", "--ebn0"}


def _glue_negative_values(argv):
    """Turn ``--flag -1,2`` into ``--flag=-1,2`` so argparse does not read the value as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (LpDecodeError, ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
