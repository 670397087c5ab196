"""Command-line front end.

Subcommands:
  encode      simulate blocky compression of a PGM at a quality factor
  deblock     run the post-filter over a blocky PGM
  experiment  full (image x quality) matrix with CSV/plot-data/figures
  synth       generate a deterministic synthetic test image

Exit status: 0 success, 1 runtime failure, 2 usage error.
"""

import argparse
import math
import re
import sys
from pathlib import Path

from . import codec, deblock, harness, metrics
from .image import PgmError, load_pgm, save_pgm
from .synthetic import KINDS, SyntheticSpec, gen_synthetic


def _quality(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"quality must be an integer: {text!r}")
    if not 1 <= value <= 100:
        raise argparse.ArgumentTypeError(f"quality {value} outside [1, 100]")
    return value


def _odd_window(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be an integer: {text!r}")
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"window must be odd and >= 3: {value}")
    return value


def _row_threshold(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"TH must be an integer: {text!r}")
    if not 0 <= value <= 8:
        raise argparse.ArgumentTypeError(f"TH {value} outside [0, 8]")
    return value


def _qualities(text):
    try:
        values = [_quality(t) for t in text.split(",") if t]
    except argparse.ArgumentTypeError:
        raise
    if not values:
        raise argparse.ArgumentTypeError("empty quality list")
    return values


def _size(text):
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError(f"size must look like 256x256: {text!r}")
    w, h = int(m.group(1)), int(m.group(2))
    if w % 8 or h % 8 or w < 8 or h < 8:
        raise argparse.ArgumentTypeError(
            f"dimensions must be positive multiples of 8: {text!r}"
        )
    return w, h


def _synthetic_spec(text):
    """kind:WxH[:seed], e.g. smooth-noise:256x256:7"""
    parts = text.split(":")
    if len(parts) not in (2, 3) or parts[0] not in KINDS:
        raise argparse.ArgumentTypeError(
            f"expected kind:WxH[:seed] with kind in {'/'.join(KINDS)}: {text!r}"
        )
    w, h = _size(parts[1])
    seed = 0
    if len(parts) == 3:
        try:
            seed = int(parts[2])
        except ValueError:
            raise argparse.ArgumentTypeError(f"seed must be an integer: {parts[2]!r}")
    return SyntheticSpec(kind=parts[0], width=w, height=h, seed=seed)


def _deblock_config(args):
    return deblock.DeblockConfig(
        smooth_threshold=args.threshold,
        row_threshold=args.th,
        window=args.window,
        symmetric_taper=args.symmetric_taper,
    )


def _add_deblock_flags(parser):
    parser.add_argument(
        "--threshold", type=float, default=8.0,
        help="boundary-smoothing trigger threshold (default 8)",
    )
    parser.add_argument(
        "--th", type=_row_threshold, default=4,
        help="rows that must trigger before a segment counts as blocked (default 4)",
    )
    parser.add_argument(
        "--window", type=_odd_window, default=5,
        help="Gaussian filter window size, odd (default 5)",
    )
    parser.add_argument(
        "--symmetric-taper", action="store_true",
        help="use the mass-preserving outer-tap variant of boundary smoothing",
    )


def _fmt_psnr(value):
    return "inf" if math.isinf(value) else f"{value:.4f}"


def cmd_encode(args):
    img = load_pgm(args.input)
    if img.shape[0] % 8 or img.shape[1] % 8:
        raise ValueError(
            f"{args.input}: dimensions must be multiples of 8 "
            "(crop first, e.g. via the experiment command)"
        )
    cfg = codec.CodecConfig(quality=args.quality, estimate_bpp=args.bpp)
    decoded, sidecar = codec.encode_decode(img, cfg)
    save_pgm(decoded, args.output)
    m = metrics.mse(img, decoded)
    print(f"quality={args.quality} mse={m:.4f} psnr={_fmt_psnr(metrics.psnr_from_mse(m))}")
    if sidecar.bpp_estimate is not None:
        print(f"bpp_estimate={sidecar.bpp_estimate:.4f}")
    return 0


def cmd_deblock(args):
    blocky = load_pgm(args.input)
    if blocky.shape[0] % 8 or blocky.shape[1] % 8:
        raise ValueError(f"{args.input}: dimensions must be multiples of 8")
    result = deblock.deblock_pipeline(blocky, _deblock_config(args))
    save_pgm(result, args.output)
    if args.reference:
        ref = load_pgm(args.reference)
        mse_b = metrics.mse(ref, blocky)
        mse_d = metrics.mse(ref, result)
        psnr_b = metrics.psnr_from_mse(mse_b)
        psnr_d = metrics.psnr_from_mse(mse_d)
        print(f"blocked   mse={mse_b:.4f} psnr={_fmt_psnr(psnr_b)}")
        print(f"deblocked mse={mse_d:.4f} psnr={_fmt_psnr(psnr_d)}")
        delta = 0.0 if math.isinf(psnr_b) and math.isinf(psnr_d) else psnr_d - psnr_b
        print(f"delta_psnr={delta:.4f}")
    return 0


def cmd_experiment(args):
    images = []
    if args.corpus:
        corpus = Path(args.corpus)
        if not corpus.is_dir():
            raise ValueError(f"corpus directory not found: {corpus}")
        for path in sorted(corpus.glob("*.pgm")):
            try:
                images.append((path.stem, load_pgm(path)))
            except PgmError as exc:
                print(f"skipping {path}: {exc}", file=sys.stderr)
    for spec in args.synthetic or []:
        images.append((spec.name, gen_synthetic(spec)))
    if not images:
        raise ValueError("empty corpus: no PGM files and no --synthetic specs")

    rows = harness.run_experiment(images, args.qualities, _deblock_config(args))
    if not rows:
        raise ValueError("no experiment cells completed")
    harness.write_csv(rows, args.csv)
    print(f"wrote {args.csv} ({len(rows)} rows)")
    if args.plotdata:
        harness.write_plotdata(rows, args.plotdata)
        print(f"wrote {args.plotdata}")
    if args.figures:
        from .plots import render_figures

        for path in render_figures(rows, Path(args.figures)):
            print(f"wrote {path}")
    return 0


def cmd_synth(args):
    spec = SyntheticSpec(
        kind=args.kind, width=args.size[0], height=args.size[1], seed=args.seed
    )
    save_pgm(gen_synthetic(spec), args.output)
    print(f"wrote {args.output} ({spec.name})")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deblockkit",
        description="Block-DCT compression simulator and deblocking post-filter",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="simulate blocky compression of a PGM")
    p.add_argument("input", help="input PGM (P5), dimensions multiples of 8")
    p.add_argument("output", help="output PGM path")
    p.add_argument("--quality", type=_quality, default=10)
    p.add_argument("--bpp", action="store_true", help="print entropy bpp estimate")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("deblock", help="run the deblocking post-filter")
    p.add_argument("input", help="blocky PGM (P5)")
    p.add_argument("output", help="output PGM path")
    p.add_argument("--reference", help="pristine original, for metrics")
    _add_deblock_flags(p)
    p.set_defaults(func=cmd_deblock)

    p = sub.add_parser("experiment", help="run the full (image x quality) matrix")
    p.add_argument("--corpus", help="directory of PGM images")
    p.add_argument(
        "--synthetic", type=_synthetic_spec, action="append",
        metavar="KIND:WxH[:SEED]", help="add a synthetic image (repeatable)",
    )
    p.add_argument("--qualities", type=_qualities, default=[1, 5, 10])
    p.add_argument("--csv", required=True, help="output CSV path")
    p.add_argument("--plotdata", help="output plot-data path")
    p.add_argument("--figures", help="directory for rendered PNG figures")
    _add_deblock_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("synth", help="generate a synthetic test image")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("output", help="output PGM path")
    p.add_argument("--size", type=_size, default=(256, 256), metavar="WxH")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PgmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
