"""Batch command line for mask generation, completion runs, metrics, and sweeps.

Exit codes: 0 success, 2 usage or shape errors, 3 stopped at the iteration
cap without reaching tolerance, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io as tio
from .metrics import psnr, sparsity_level, ssim, truncate_reconstruct
from .solvers import (
    DivergenceError,
    SolverConfig,
    config_from_json,
    kkt_residuals,
    resolve_config,
    solve,
)
from .tensor import expand_mask, mask_from_image, random_mask, sampling_rate

__all__ = ["main", "entry", "build_parser"]

_EXIT_OK = 0
_EXIT_USAGE = 2
_EXIT_MAXITER = 3
_EXIT_NUMERIC = 4

_IMAGE_SUFFIXES = (".ppm", ".pgm", ".png")


def _load_any(path) -> np.ndarray:
    """Load a tensor from a TNSR1 file, an image file, or a frame directory."""
    p = Path(path)
    if p.is_dir():
        return tio.load_video(p)
    if p.suffix.lower() == ".tnsr":
        return tio.load_tensor(p)
    return tio.load_image(p)


def _save_any(t: np.ndarray, path) -> None:
    """Save by destination type: .tnsr file, image file, or frame directory."""
    p = Path(path)
    suffix = p.suffix.lower()
    if suffix == ".tnsr":
        tio.save_tensor(t, p)
    elif suffix in _IMAGE_SUFFIXES:
        tio.save_image(t, p)
    else:
        tio.save_video(t, p)


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        shape = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad shape {text!r}: expected comma-separated integers") from exc
    if not shape or any(v < 1 for v in shape):
        raise ValueError(f"bad shape {text!r}: extents must be positive")
    return shape


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad list {text!r}: expected comma-separated numbers") from exc


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad list {text!r}: expected comma-separated integers") from exc


def _read_config(path) -> SolverConfig:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    return config_from_json(doc)


# ---------------------------------------------------------------------------
# commands


def cmd_mask(args) -> int:
    sources = [args.shape is not None, args.like is not None, args.from_image is not None]
    if sum(sources) != 1:
        raise ValueError("choose exactly one mask source: --shape, --like, or --from-image")
    if args.from_image is not None:
        if args.sr is not None:
            raise ValueError("--sr conflicts with --from-image (the image fixes the pattern)")
        mask = mask_from_image(args.from_image)
    else:
        if args.sr is None:
            raise ValueError("--sr is required with --shape/--like")
        shape = args.shape if args.shape is not None else _load_any(args.like).shape
        mask = random_mask(shape, args.sr, args.seed)
    tio.save_mask(mask, args.out)
    print(
        json.dumps(
            {
                "sr": sampling_rate(mask),
                "observed": int(np.count_nonzero(mask)),
                "size": int(mask.size),
            }
        )
    )
    return _EXIT_OK


def cmd_complete(args) -> int:
    h = _load_any(args.input)
    mask = tio.load_mask(args.mask)
    expand_mask(mask, h.shape)  # shape compatibility check up front
    cfg = _read_config(args.config)
    cfg = resolve_config(cfg, h.shape)
    x_true = None
    if args.truth is not None:
        x_true = _load_any(args.truth)
        if x_true.shape != h.shape:
            raise ValueError(f"truth shape {x_true.shape} does not match input {h.shape}")
    if cfg.stop_mode == "ORACLE" and x_true is None:
        raise ValueError("ORACLE stopping requires --truth")
    start = time.perf_counter()
    x_star, history, state = solve(h, mask, cfg, x_true=x_true, return_state=True)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    _save_any(x_star, args.out)
    converged = bool(history) and history[-1].relcha <= cfg.tol
    resid = kkt_residuals(state, cfg)
    report = {
        "psnr_db": psnr(x_star, x_true) if x_true is not None else None,
        "ssim": ssim(x_star, x_true) if x_true is not None else None,
        "elapsed_ms": elapsed_ms,
        "iterations": len(history),
        "sr": sampling_rate(expand_mask(mask, h.shape)),
        "model": cfg.model,
        "converged": converged,
        "relcha": history[-1].relcha if history else None,
        "feas_y": list(resid["feas_y"]),
        "feas_t": resid["feas_t"],
        "multiplier_balance": resid["multiplier_balance"],
    }
    if args.report is not None:
        tio.write_report(report, args.report)
    if args.history is not None:
        tio.write_history_csv(history, args.history)
    print(json.dumps({"converged": converged, "iterations": len(history)}))
    return _EXIT_OK if converged else _EXIT_MAXITER


def cmd_metrics(args) -> int:
    a = _load_any(args.a)
    b = _load_any(args.b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    doc = {
        "psnr_db": psnr(a, b),
        "ssim": ssim(a, b, data_range=args.range, mode=args.mode),
    }
    text = json.dumps(tio.json_safe(doc), indent=2)
    if args.out is not None:
        Path(args.out).write_text(text + "\n")
    print(text)
    return _EXIT_OK


def cmd_sparsity(args) -> int:
    t = _load_any(args.input)
    rows = []
    for tn in _parse_floats(args.tn):
        if tn < 0:
            raise ValueError("tn values must be nonnegative")
        level = sparsity_level(t, tn)
        rec = truncate_reconstruct(t, tn)
        rows.append((tn, level, psnr(rec, t)))
    lines = ["tn,sparsity_level,reconstruction_psnr"]
    for tn, level, rec_psnr in rows:
        rec_text = "inf" if rec_psnr == float("inf") else repr(rec_psnr)
        lines.append(f"{tn!r},{level!r},{rec_text}")
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return _EXIT_OK


def _sweep_one(truth, shape, cfg, sr, seed):
    mask = random_mask(shape, sr, seed)
    start = time.perf_counter()
    try:
        x_star, history = solve(truth, mask, cfg, x_true=truth)
    except DivergenceError:
        return (sr, seed, "", "", "", round(time.perf_counter() - start, 3), "diverged")
    seconds = time.perf_counter() - start
    converged = bool(history) and history[-1].relcha <= cfg.tol
    status = "ok" if converged else "maxiter"
    return (
        sr,
        seed,
        repr(psnr(x_star, truth)),
        repr(ssim(x_star, truth)),
        len(history),
        round(seconds, 3),
        status,
    )


def cmd_sweep(args) -> int:
    truth_path = args.truth if args.truth is not None else args.input
    truth = _load_any(truth_path)
    cfg = _read_config(args.config)
    cfg = resolve_config(cfg, truth.shape)
    srs = _parse_floats(args.sr)
    seeds = _parse_ints(args.seeds)
    grid = [(sr, seed) for sr in srs for seed in seeds]
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(lambda g: _sweep_one(truth, truth.shape, cfg, *g), grid))
    else:
        rows = [_sweep_one(truth, truth.shape, cfg, sr, seed) for sr, seed in grid]
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sr", "seed", "psnr", "ssim", "iters", "seconds", "status"])
        writer.writerows(rows)
    print(json.dumps({"runs": len(rows), "out": str(args.out)}))
    return _EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slrtc",
        description="Sparse-plus-low-rank tensor completion toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mask", help="generate a sampling mask (MSK1)")
    p.add_argument("--shape", type=_parse_shape, help="tensor shape, e.g. 256,256,3")
    p.add_argument("--like", help="take the shape from this tensor/image/video")
    p.add_argument("--from-image", dest="from_image", help="white pixels mark observed entries")
    p.add_argument("--sr", type=float, help="sampling rate in (0, 1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("complete", help="run a completion and write outputs")
    p.add_argument("--input", required=True, help="observed image/video/tensor")
    p.add_argument("--mask", required=True, help="MSK1 sampling mask")
    p.add_argument("--config", required=True, help="solver config JSON")
    p.add_argument("--out", required=True, help="recovered image/video dir/.tnsr")
    p.add_argument("--truth", help="ground truth for ORACLE stopping and metrics")
    p.add_argument("--report", help="metric report JSON path")
    p.add_argument("--history", help="iteration history CSV path")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("metrics", help="PSNR/SSIM between two inputs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--range", type=float, default=None, help="dynamic range override")
    p.add_argument("--mode", choices=("windowed", "global"), default="windowed")
    p.add_argument("--out", help="optional JSON output path")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sparsity", help="transform-domain sparsity at truncation levels")
    p.add_argument("--input", required=True)
    p.add_argument("--tn", required=True, help="comma-separated truncation thresholds")
    p.add_argument("--out", help="optional CSV output path")
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("sweep", help="completion grid over sampling rates and seeds")
    p.add_argument("--input", required=True, help="clean data to subsample")
    p.add_argument("--truth", help="ground truth (defaults to --input)")
    p.add_argument("--config", required=True)
    p.add_argument("--sr", required=True, help="comma-separated sampling rates")
    p.add_argument("--seeds", required=True, help="comma-separated seeds")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


def entry() -> None:
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    sys.exit(main())
