"""Image-quality and capacity metrics: MSE, PSNR, BPP, histograms, reports.

MSE accumulates in exact integers before the one final division, so the
numbers are bit-reproducible across platforms. PSNR of a zero MSE is
positive infinity, serialized as the string "inf" in machine output and
as the infinity sign in human tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyImage
from .image import Channel, Plane, RgbImage
from .methods import EmbedResult

PEAK_INTENSITY = 255

CSV_FIELDS = ("file", "method", "channel", "mse", "psnr_db", "bpp")


def mse(a: Plane, b: Plane) -> float:
    """Mean squared intensity difference between two equal-sized planes."""
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatch(
            f"{a.width}x{a.height} plane cannot be compared with {b.width}x{b.height}"
        )
    count = a.width * a.height
    if count == 0:
        raise EmptyImage("cannot average over zero pixels")
    diff = a.to_array().astype(np.int64) - b.to_array().astype(np.int64)
    return int(np.sum(diff * diff)) / count


def psnr(mse_value: float) -> float:
    """Peak signal-to-noise ratio in dB; infinite for identical planes."""
    if mse_value < 0:
        raise ValueError("MSE cannot be negative")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK_INTENSITY**2 / mse_value)


def bpp(bits_embedded: int, width: int, height: int) -> float:
    """Embedded bits per cover pixel."""
    if width * height <= 0:
        raise EmptyImage("bits per pixel needs at least one pixel")
    return bits_embedded / (width * height)


def histogram(plane: Plane) -> list[int]:
    """Counts of each intensity 0..255; sums to the pixel count."""
    return np.bincount(plane.to_array().ravel(), minlength=256).tolist()


@dataclass(frozen=True)
class ChannelReport:
    channel: Channel
    mse: float
    psnr_db: float


@dataclass(frozen=True)
class StegoReport:
    """Per-channel distortion plus realized payload density."""

    channels: tuple[ChannelReport, ChannelReport, ChannelReport]
    bits_embedded: int
    width: int
    height: int

    @property
    def bpp(self) -> float:
        return bpp(self.bits_embedded, self.width, self.height)

    def channel(self, ch: Channel) -> ChannelReport:
        return self.channels[ch]

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "bits_embedded": self.bits_embedded,
            "bpp": self.bpp,
            "channels": [
                {
                    "channel": rep.channel.name.lower(),
                    "mse": rep.mse,
                    "psnr_db": _machine_psnr(rep.psnr_db),
                }
                for rep in self.channels
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self, *, file: str = "", method: str = "") -> list[dict]:
        """One row per channel with the fixed CSV_FIELDS keys."""
        return [
            {
                "file": file,
                "method": method,
                "channel": rep.channel.name.lower(),
                "mse": rep.mse,
                "psnr_db": _machine_psnr(rep.psnr_db),
                "bpp": self.bpp,
            }
            for rep in self.channels
        ]

    def format_text(self) -> str:
        lines = [
            f"size: {self.width}x{self.height}   "
            f"bits embedded: {self.bits_embedded}   bpp: {self.bpp:.2f}",
            f"{'channel':<8}{'mse':>10}{'psnr_db':>10}",
        ]
        for rep in self.channels:
            lines.append(
                f"{rep.channel.name.lower():<8}{rep.mse:>10.2f}{human_psnr(rep.psnr_db):>10}"
            )
        return "\n".join(lines)


def _machine_psnr(value: float):
    return "inf" if math.isinf(value) else value


def human_psnr(value: float) -> str:
    return "∞" if math.isinf(value) else f"{value:.2f}"


def compare_images(cover: RgbImage, stego: RgbImage, bits_embedded: int = 0) -> StegoReport:
    """Per-channel MSE/PSNR between two images of equal size."""
    if (cover.width, cover.height) != (stego.width, stego.height):
        raise DimensionMismatch(
            f"cover is {cover.width}x{cover.height}, "
            f"stego is {stego.width}x{stego.height}"
        )
    reports = []
    for ch in Channel:
        err = mse(cover.plane(ch), stego.plane(ch))
        reports.append(ChannelReport(ch, err, psnr(err)))
    return StegoReport(tuple(reports), bits_embedded, cover.width, cover.height)


def full_report(cover: RgbImage, result: EmbedResult) -> StegoReport:
    """Distortion and density report for one embedding run."""
    return compare_images(cover, result.stego, result.bits_embedded)
