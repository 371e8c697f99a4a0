"""Command-line interface: embed, extract, capacity, report, bench.

Every command is a thin composition of library calls. Reports go to
stdout, diagnostics to stderr. Exit codes are stable:

    0   success
    1   I/O or decode failure
    2   cover too small for the payload
    3   unsupported image format
    4   truncated bit stream (not a stego image / wrong method)
    64  usage error
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    DecodeError,
    EncodeError,
    InsufficientCapacity,
    StegoError,
    TruncatedStream,
    UnsupportedFormat,
)
from .image import Channel, load_image_file, save_image_file
from .methods import (
    LENGTH_HEADER_BITS,
    METHOD1,
    METHOD3,
    MethodId,
    capacity,
    embed,
    extract,
    max_secret_bytes,
    method2,
)
from .metrics import CSV_FIELDS, compare_images, full_report, human_psnr

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CAPACITY = 2
EXIT_FORMAT = 3
EXIT_TRUNCATED = 4
EXIT_USAGE = 64

SEED_ENV_VAR = "TRISTEGO_SEED"
DEFAULT_BENCH_INDICATOR = "G"


class _Parser(argparse.ArgumentParser):
    """argparse that exits with the sysexits usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _method_from_args(parser: _Parser, args) -> MethodId:
    if args.method == 2:
        if args.indicator is None:
            parser.error("--method 2 requires --indicator {R,G,B}")
        return method2(Channel.from_letter(args.indicator))
    if args.indicator is not None:
        parser.error("--indicator is only valid with --method 2")
    return METHOD1 if args.method == 1 else METHOD3


def _add_method_options(sub):
    sub.add_argument(
        "--method", type=int, choices=(1, 2, 3), required=True,
        help="embedding method: 1 fixed red guide, 2 chosen guide, 3 cyclic guide",
    )
    sub.add_argument(
        "--indicator", choices=("R", "G", "B"),
        help="guide channel (method 2 only)",
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="tristego",
        description="Indicator-guided RGB LSB steganography toolkit",
    )
    parser.add_argument("--version", action="version", version=f"tristego {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a secret file inside a cover image")
    p.add_argument("cover", type=Path, help="cover image (PNG or BMP, 8-bit RGB)")
    p.add_argument("secret", type=Path, help="file with the bytes to hide")
    p.add_argument("-o", "--output", type=Path, required=True, help="stego image path")
    _add_method_options(p)
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("extract", help="recover the secret from a stego image")
    p.add_argument("stego", type=Path, help="stego image")
    p.add_argument("-o", "--output", type=Path, required=True, help="recovered secret path")
    _add_method_options(p)

    p = sub.add_parser("capacity", help="payload bits a cover can hold")
    p.add_argument("cover", type=Path)
    _add_method_options(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("report", help="per-channel MSE/PSNR between cover and stego")
    p.add_argument("cover", type=Path)
    p.add_argument("stego", type=Path)
    p.add_argument(
        "--bits", type=int, default=0,
        help="embedded bit count for the BPP column (default 0)",
    )
    p.add_argument("--json", action="store_true")

    p = sub.add_parser(
        "bench",
        help="full-capacity embedding metrics over a directory of covers",
    )
    p.add_argument("corpus", type=Path, help="directory of PNG/BMP covers")
    p.add_argument(
        "--methods", default="1,2,3",
        help="comma-separated method numbers to run (default 1,2,3)",
    )
    p.add_argument(
        "--indicator", choices=("R", "G", "B"), default=None,
        help=f"guide channel for method 2 (default {DEFAULT_BENCH_INDICATOR})",
    )
    p.add_argument(
        "--seed", type=int, default=None,
        help=f"payload RNG seed (default ${SEED_ENV_VAR} or 0)",
    )
    p.add_argument(
        "--payload", choices=("random", "zeros"), default="random",
        help="payload fill: seeded uniform random bytes or all zeros",
    )
    p.add_argument("--csv", type=Path, help="also write rows to this CSV file")
    p.add_argument("--json", type=Path, help="also write rows to this JSON file")

    return parser


def cmd_embed(parser, args) -> int:
    method = _method_from_args(parser, args)
    cover = load_image_file(args.cover)
    secret = args.secret.read_bytes()
    result = embed(cover, secret, method)
    save_image_file(result.stego, args.output)
    report = full_report(cover, result)
    if args.json:
        print(report.to_json())
    else:
        print(f"wrote {args.output} (method {method.label})")
        print(report.format_text())
    return EXIT_OK


def cmd_extract(parser, args) -> int:
    method = _method_from_args(parser, args)
    stego = load_image_file(args.stego)
    secret = extract(stego, method)
    args.output.write_bytes(secret)
    print(f"recovered {len(secret)} bytes to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_capacity(parser, args) -> int:
    method = _method_from_args(parser, args)
    cover = load_image_file(args.cover)
    bits = capacity(cover, method)
    payload_bytes = max_secret_bytes(bits)
    if args.json:
        print(json.dumps({
            "capacity_bits": bits,
            "max_secret_bytes": payload_bytes,
            "width": cover.width,
            "height": cover.height,
        }))
    else:
        print(f"capacity: {bits} bits ({payload_bytes} payload bytes after the "
              f"{LENGTH_HEADER_BITS}-bit header)")
    return EXIT_OK


def cmd_report(parser, args) -> int:
    cover = load_image_file(args.cover)
    stego = load_image_file(args.stego)
    report = compare_images(cover, stego, args.bits)
    print(report.to_json() if args.json else report.format_text())
    return EXIT_OK


def _bench_methods(parser, args) -> list[MethodId]:
    indicator = Channel.from_letter(args.indicator or DEFAULT_BENCH_INDICATOR)
    methods = []
    for token in args.methods.split(","):
        token = token.strip()
        if token == "1":
            methods.append(METHOD1)
        elif token == "2":
            methods.append(method2(indicator))
        elif token == "3":
            methods.append(METHOD3)
        else:
            parser.error(f"bad method {token!r} in --methods")
    return methods


def _bench_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def cmd_bench(parser, args) -> int:
    methods = _bench_methods(parser, args)
    if not args.corpus.is_dir():
        parser.error(f"{args.corpus} is not a directory")
    covers = sorted(
        p for p in args.corpus.iterdir()
        if p.suffix.lower() in (".png", ".bmp")
    )
    if not covers:
        print(f"no PNG/BMP covers in {args.corpus}", file=sys.stderr)
        return EXIT_FAILURE

    rng = np.random.default_rng(_bench_seed(args))
    rows = []
    for path in covers:
        try:
            cover = load_image_file(path)
            for method in methods:
                nbytes = max_secret_bytes(capacity(cover, method))
                if args.payload == "random":
                    secret = rng.bytes(nbytes)
                else:
                    secret = bytes(nbytes)
                result = embed(cover, secret, method)
                report = full_report(cover, result)
                rows.extend(report.csv_rows(file=path.name, method=method.label))
        except StegoError as exc:
            print(f"{path.name}: {exc}", file=sys.stderr)

    if not rows:
        print("all covers failed", file=sys.stderr)
        return EXIT_FAILURE

    _print_bench_table(rows)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
            writer.writeheader()
            writer.writerows(rows)
    if args.json:
        args.json.write_text(json.dumps(rows, indent=2) + "\n")
    return EXIT_OK


def _print_bench_table(rows):
    # Wide layout: one line per (file, method), channels across the columns.
    by_run: dict[tuple[str, str], dict] = {}
    for row in rows:
        run = by_run.setdefault((row["file"], row["method"]), {"bpp": row["bpp"]})
        run[row["channel"]] = row

    header = (f"{'file':<20}{'method':<8}"
              f"{'R.mse':>8}{'R.psnr':>9}{'G.mse':>8}{'G.psnr':>9}"
              f"{'B.mse':>8}{'B.psnr':>9}{'bpp':>7}")
    print(header)
    for (name, method), run in by_run.items():
        cells = [f"{name:<20}{method:<8}"]
        for channel in ("red", "green", "blue"):
            row = run[channel]
            value = row["psnr_db"]
            shown = human_psnr(float("inf") if value == "inf" else value)
            cells.append(f"{row['mse']:>8.2f}{shown:>9}")
        cells.append(f"{run['bpp']:>7.2f}")
        print("".join(cells))


_COMMANDS = {
    "embed": cmd_embed,
    "extract": cmd_extract,
    "capacity": cmd_capacity,
    "report": cmd_report,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](parser, args)
    except InsufficientCapacity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UnsupportedFormat as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except TruncatedStream as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED
    except (DecodeError, EncodeError, StegoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
