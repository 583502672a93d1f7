"""Command-line interface: denoise files, run benchmarks, certify rounding.

Exit codes: 0 success, 2 argument errors, 3 I/O errors (missing or
malformed files), 4 degenerate solver states (zero vectors where a
projection or chromaticity is undefined).  Errors go to stderr.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import bench as bench_mod
from .admm import SolverConfig, admm_solve
from .colormap import (
    DegenerateChromaticityError,
    RgbImage,
    chromaticity_recombine,
    chromaticity_split,
)
from .graph import chain_graph, grid_graph
from .pnm import read_pgm, read_ppm, write_pgm, write_ppm
from .signal import (
    DegenerateProjectionError,
    Signal,
    characteristic,
    load_signal_csv,
    miou,
    mse,
    project_sphere,
    save_signal_csv,
)
from .synth import Rng, add_gaussian, gen_barcode
from .tightness import ResourceLimitError, verify_tightness

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="spheretv",
        description="TV denoising of sphere-valued signals via convex relaxation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("denoise", help="denoise a CSV signal or PGM/PPM image")
    d.add_argument("input", help="input file (.csv signal, .pgm or .ppm image)")
    d.add_argument("--out", required=True, help="output file (same format as input)")
    d.add_argument("--graph", choices=("chain", "grid"), default=None,
                   help="graph kind for CSV inputs (default: chain; images always use their pixel grid)")
    d.add_argument("--rows", type=int, default=None,
                   help="grid rows for CSV inputs with --graph grid")
    d.add_argument("--dim", type=int, default=None,
                   help="expected signal dimension; mismatches are an argument error")
    d.add_argument("--lambda", dest="lam", type=float, default=1.0, help="TV weight")
    d.add_argument("--rho", type=float, default=1.0, help="ADMM step size")
    d.add_argument("--max-iter", type=int, default=10000)
    d.add_argument("--tol-residual", type=float, default=1e-6)
    d.add_argument("--tol-sphere", type=float, default=1e-5)
    d.add_argument("--project", choices=("none", "sphere", "chi0"), default="none",
                   help="post-processing of the solver output")
    d.add_argument("--seed", type=int, default=0,
                   help="accepted for interface stability; denoising is deterministic")
    d.add_argument("--ref", default=None,
                   help="optional reference signal CSV; enables mse/miou in the report")

    b = sub.add_parser("bench", help="run a benchmark experiment with a lambda sweep")
    b.add_argument("experiment", choices=bench_mod.EXPERIMENTS)
    b.add_argument("--trials", type=int, default=None)
    b.add_argument("--lambdas", default=None,
                   help="comma-separated TV weights (default grid: 0.1,0.2,...,3.0)")
    b.add_argument("--rho", type=float, default=None)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--sigma", type=float, default=None, help="Gaussian / wrapped noise level")
    b.add_argument("--kappa", type=float, default=None, help="vMF concentration")
    b.add_argument("--kappa-axis", type=float, default=None,
                   help="vMF concentration for rotation axes (so3 only)")
    b.add_argument("--bars", type=int, default=None, help="barcode bar count")
    b.add_argument("--bar-width", type=int, default=None, help="barcode bar width in px")
    b.add_argument("--blocks", type=int, default=None, help="qr block count per side")
    b.add_argument("--block-px", type=int, default=None, help="qr block size in px")
    b.add_argument("--n", type=int, default=None, help="circle1d signal length")
    b.add_argument("--img-rows", type=int, default=None, help="image experiment rows")
    b.add_argument("--img-cols", type=int, default=None, help="image experiment cols")
    b.add_argument("--max-iter", type=int, default=None)
    b.add_argument("--tol-residual", type=float, default=None)
    b.add_argument("--tol-sphere", type=float, default=None)
    b.add_argument("--jobs", type=int, default=None, help="parallel trial workers")
    b.add_argument("--out-dir", default=".", help="directory for the report CSV files")

    c = sub.add_parser("certify", help="certify threshold rounding on random instances")
    c.add_argument("--n", type=int, default=12, help="chain length (at most 24)")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--sigma", type=float, default=float(np.sqrt(2.0) * 0.5))
    c.add_argument("--lambda", dest="lam", type=float, default=1.3)
    c.add_argument("--rho", type=float, default=0.1)
    c.add_argument("--seed", type=int, default=0)
    return parser


def _load_input(path, args):
    """Input file -> (signal, graph, rebuild) where rebuild(values) writes back."""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".csv":
        sig = load_signal_csv(path)
        kind = args.graph or "chain"
        if kind == "chain":
            graph = chain_graph(sig.num_vertices)
        else:
            rows = args.rows
            if rows is None or rows < 1 or sig.num_vertices % rows:
                raise _ArgumentError("--graph grid needs --rows dividing the vertex count")
            graph = grid_graph(rows, sig.num_vertices // rows)

        def rebuild(out_sig, out_path):
            save_signal_csv(out_sig, out_path)

        return sig, graph, rebuild

    if ext == ".pgm":
        gray = read_pgm(path)
        rows, cols = gray.shape
        sig = Signal((2.0 * gray.ravel() - 1.0)[None, :])
        graph = grid_graph(rows, cols)

        def rebuild(out_sig, out_path):
            levels = np.clip((out_sig.values[0].reshape(rows, cols) + 1.0) / 2.0, 0.0, 1.0)
            write_pgm(out_path, levels)

        return sig, graph, rebuild

    if ext == ".ppm":
        pixels = read_ppm(path)
        img = RgbImage(pixels)
        chroma, brightness = chromaticity_split(img)
        graph = grid_graph(img.rows, img.cols)

        def rebuild(out_sig, out_path):
            write_ppm(out_path, chromaticity_recombine(out_sig, brightness).pixels)

        return chroma, graph, rebuild

    raise _ArgumentError(f"unsupported input extension {ext!r}")


class _ArgumentError(ValueError):
    pass


def cmd_denoise(args):
    try:
        sig, graph, rebuild = _load_input(args.input, args)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except DegenerateChromaticityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.dim is not None and sig.dim != args.dim:
        print(f"error: input dimension {sig.dim} does not match --dim {args.dim}", file=sys.stderr)
        return EXIT_ARGS
    if args.project == "chi0" and sig.dim != 1:
        print("error: --project chi0 needs a one-dimensional signal", file=sys.stderr)
        return EXIT_ARGS
    try:
        cfg = SolverConfig(
            lam=args.lam,
            rho=args.rho,
            max_iter=args.max_iter,
            tol_residual=args.tol_residual,
            tol_sphere=args.tol_sphere,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    solved, report = admm_solve(sig, graph, cfg)
    try:
        if args.project == "sphere":
            solved = project_sphere(solved)
        elif args.project == "chi0":
            solved = characteristic(solved, 0.0)
    except DegenerateProjectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    ref_mse = None
    ref_miou = None
    if args.ref is not None:
        try:
            ref = load_signal_csv(args.ref)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        if ref.values.shape != solved.values.shape:
            print("error: reference shape does not match the input", file=sys.stderr)
            return EXIT_ARGS
        ref_mse = mse(solved, ref)
        if solved.is_binary() and ref.is_binary():
            ref_miou = miou(solved, ref)

    try:
        rebuild(solved, args.out)
        payload = {
            "mse": ref_mse,
            "miou": ref_miou,
            "lambda": args.lam,
            "rho": args.rho,
            "time_sec": report.wall_time_sec,
            "sphere_distance": report.final_sphere_distance,
            "iterations": report.iterations,
            "stop_reason": report.stop_reason,
        }
        with open(args.out + ".json", "w", encoding="ascii") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_bench(args):
    try:
        grid = None
        if args.lambdas is not None:
            grid = tuple(float(s) for s in args.lambdas.split(",") if s.strip())
        spec = bench_mod.make_bench_spec(
            args.experiment,
            trials=args.trials,
            lambda_grid=grid,
            rho=args.rho,
            seed=args.seed,
            sigma=args.sigma,
            kappa=args.kappa,
            kappa_axis=args.kappa_axis,
            num_bars=args.bars,
            bar_width=args.bar_width,
            blocks=args.blocks,
            block_px=args.block_px,
            n=args.n,
            rows=args.img_rows,
            cols=args.img_cols,
            max_iter=args.max_iter,
            tol_residual=args.tol_residual,
            tol_sphere=args.tol_sphere,
            jobs=args.jobs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    try:
        raw, summary = bench_mod.run_bench(spec)
        os.makedirs(args.out_dir, exist_ok=True)
        raw_path = os.path.join(args.out_dir, f"{spec.experiment}_raw.csv")
        summary_path = os.path.join(args.out_dir, f"{spec.experiment}_summary.csv")
        bench_mod.write_csv(raw_path, bench_mod.RAW_COLUMNS, raw)
        bench_mod.write_csv(summary_path, bench_mod.SUMMARY_COLUMNS, summary)
    except DegenerateProjectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    for row in summary:
        print(
            f"{row['experiment']} {row['method']}: lambda={row['lambda']:g} "
            f"mse={row['mse']:.6g} miou={row['miou'] if row['miou'] != '' else 'n/a'} "
            f"sphere_distance={row['sphere_distance']:.3g} time={row['time_sec']:.3g}s"
        )
    print(f"wrote {raw_path} and {summary_path}")
    return EXIT_OK


def cmd_certify(args):
    if args.n < 1 or args.n > 24:
        print("error: --n must lie in [1, 24]", file=sys.stderr)
        return EXIT_ARGS
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_ARGS
    try:
        cfg = SolverConfig(lam=args.lam, rho=args.rho, tol_residual=1e-9, tol_sphere=1e-16)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    graph = chain_graph(args.n)
    all_ok = True
    for trial in range(args.trials):
        rng = Rng(args.seed).derive(trial)
        truth = gen_barcode(args.n, 1, rng)
        noisy = add_gaussian(truth, args.sigma, rng)
        solved, _ = admm_solve(noisy, graph, cfg)
        try:
            etas = rng.gen.uniform(-1.0, 1.0, 9)
            report = verify_tightness(noisy, graph, args.lam, solved, etas)
        except ResourceLimitError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ARGS
        all_ok = all_ok and report.attained
        print(
            f"trial {trial}: attained={report.attained} gap={report.gap:.3e} "
            f"best_binary={report.best_binary_value:.9g} "
            f"brute_force={report.brute_force_value:.9g}"
        )
    print("all instances attained" if all_ok else "some instances FAILED")
    return EXIT_OK if all_ok else 1


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "denoise":
        return cmd_denoise(args)
    if args.command == "bench":
        return cmd_bench(args)
    return cmd_certify(args)


if __name__ == "__main__":
    sys.exit(main())
