"""Lossless RGB image model: planes, file I/O, split/merge.

Only exact 8-bit-per-channel RGB images are accepted, and only the two
lossless container formats PNG and BMP. Anything lossy, paletted,
grayscale, 16-bit or alpha-carrying is rejected outright instead of being
converted: LSB payloads do not survive re-quantization, and silently
stripping an alpha channel would change the file on save.
"""

from __future__ import annotations

import enum
import io
import struct
from dataclasses import dataclass
from os import fspath

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, DimensionMismatch, EncodeError, UnsupportedFormat

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

SUPPORTED_FORMATS = ("png", "bmp")


class Channel(enum.IntEnum):
    """One of the three colour planes; the value is the plane index."""

    RED = 0
    GREEN = 1
    BLUE = 2

    @property
    def letter(self) -> str:
        return self.name[0]

    @classmethod
    def from_letter(cls, letter: str) -> "Channel":
        for ch in cls:
            if letter.upper() == ch.letter:
                return ch
        raise ValueError(f"unknown channel {letter!r}, expected R, G or B")


@dataclass(frozen=True)
class Plane:
    """A single colour channel: row-major, top-left origin byte intensities."""

    width: int
    height: int
    data: bytes

    def __post_init__(self):
        if self.width < 0 or self.height < 0:
            raise ValueError("plane dimensions must be non-negative")
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if len(self.data) != self.width * self.height:
            raise ValueError(
                f"plane data holds {len(self.data)} bytes, "
                f"expected {self.width * self.height}"
            )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Plane":
        """Build a plane from an H x W uint8 array."""
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("plane array must be two-dimensional")
        if arr.dtype != np.uint8:
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("plane values must fit in a byte")
            arr = arr.astype(np.uint8)
        h, w = arr.shape
        return cls(w, h, arr.tobytes())

    def to_array(self) -> np.ndarray:
        """Return the plane as an H x W uint8 array (read-only view)."""
        arr = np.frombuffer(self.data, dtype=np.uint8)
        return arr.reshape(self.height, self.width)

    def pixel(self, x: int, y: int) -> int:
        return self.data[y * self.width + x]


@dataclass(frozen=True)
class RgbImage:
    """Three equally sized planes. Immutable; safe to share across threads."""

    red: Plane
    green: Plane
    blue: Plane

    def __post_init__(self):
        r, g, b = self.red, self.green, self.blue
        if not (r.width == g.width == b.width and r.height == g.height == b.height):
            raise DimensionMismatch(
                "planes differ in size: "
                f"{r.width}x{r.height}, {g.width}x{g.height}, {b.width}x{b.height}"
            )

    @property
    def width(self) -> int:
        return self.red.width

    @property
    def height(self) -> int:
        return self.red.height

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def plane(self, channel: Channel) -> Plane:
        return (self.red, self.green, self.blue)[channel]

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        return (self.red.pixel(x, y), self.green.pixel(x, y), self.blue.pixel(x, y))

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RgbImage":
        """Build an image from an H x W x 3 uint8 array."""
        arr = np.asarray(arr)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError("image array must be H x W x 3")
        return cls(
            Plane.from_array(arr[:, :, 0]),
            Plane.from_array(arr[:, :, 1]),
            Plane.from_array(arr[:, :, 2]),
        )

    def to_array(self) -> np.ndarray:
        """Return the image as an H x W x 3 uint8 array."""
        return np.stack(
            [self.red.to_array(), self.green.to_array(), self.blue.to_array()],
            axis=2,
        )


def split_planes(image: RgbImage) -> tuple[Plane, Plane, Plane]:
    """Return the (red, green, blue) planes; inverse of merge_planes."""
    return image.red, image.green, image.blue


def merge_planes(red: Plane, green: Plane, blue: Plane) -> RgbImage:
    """Assemble an image from three equally sized planes."""
    return RgbImage(red, green, blue)


def _check_png_header(data: bytes):
    # IHDR is mandatory and first: width/height at 16..23, bit depth byte 24,
    # colour type byte 25. Colour type 2 = truecolour RGB.
    if len(data) < 26 or data[12:16] != b"IHDR":
        raise DecodeError("PNG stream has no leading IHDR chunk")
    bit_depth, colour_type = data[24], data[25]
    if bit_depth != 8 or colour_type != 2:
        raise UnsupportedFormat(
            f"PNG must be 8-bit RGB (colour type 2); "
            f"got bit depth {bit_depth}, colour type {colour_type}"
        )


def _check_bmp_header(data: bytes):
    # 14-byte file header, then a DIB header. The legacy 12-byte core header
    # keeps bit count at offset 24; every later variant keeps it at 28 with a
    # compression dword at 30.
    if len(data) < 26:
        raise DecodeError("BMP stream too short for its headers")
    dib_size = struct.unpack_from("<I", data, 14)[0]
    if dib_size == 12:
        bit_count = struct.unpack_from("<H", data, 24)[0]
        compression = 0
    else:
        if len(data) < 34:
            raise DecodeError("BMP stream too short for its headers")
        bit_count = struct.unpack_from("<H", data, 28)[0]
        compression = struct.unpack_from("<I", data, 30)[0]
    if bit_count != 24:
        raise UnsupportedFormat(f"BMP must be 24-bit RGB; got {bit_count}-bit")
    if compression != 0:
        raise UnsupportedFormat("BMP must be uncompressed (BI_RGB)")


def load_image(source: bytes) -> RgbImage:
    """Decode a PNG or BMP byte stream into an RgbImage, bit-exactly.

    Raises UnsupportedFormat for anything that is not 8-bit 3-channel RGB
    in one of the two supported containers, and DecodeError for streams
    that cannot be parsed at all.
    """
    data = bytes(source)
    try:
        img = Image.open(io.BytesIO(data))
        fmt = img.format
    except UnidentifiedImageError as exc:
        raise DecodeError(f"unrecognized image stream: {exc}") from exc

    if fmt == "PNG":
        _check_png_header(data)
    elif fmt == "BMP":
        _check_bmp_header(data)
    else:
        raise UnsupportedFormat(f"{fmt or 'unknown'} input is not supported; use PNG or BMP")

    if img.mode != "RGB":
        raise UnsupportedFormat(f"image mode {img.mode!r} is not plain 8-bit RGB")

    try:
        arr = np.asarray(img, dtype=np.uint8)
    except (OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"corrupt {fmt} stream: {exc}") from exc
    return RgbImage.from_array(arr)


def save_image(image: RgbImage, fmt: str = "png") -> bytes:
    """Encode an image losslessly; reloading the result is bit-exact."""
    fmt = fmt.lower().lstrip(".")
    if fmt not in SUPPORTED_FORMATS:
        raise UnsupportedFormat(
            f"refusing to write {fmt!r}: only lossless {SUPPORTED_FORMATS} are supported"
        )
    pil = Image.fromarray(image.to_array(), mode="RGB")
    buf = io.BytesIO()
    try:
        pil.save(buf, format=fmt.upper())
    except (OSError, ValueError) as exc:
        raise EncodeError(f"could not encode {fmt} image: {exc}") from exc
    return buf.getvalue()


def load_image_file(path) -> RgbImage:
    with open(path, "rb") as fh:
        return load_image(fh.read())


def save_image_file(image: RgbImage, path, fmt: str | None = None):
    """Write an image to disk; the format defaults to the path suffix."""
    name = fspath(path)
    if fmt is None:
        dot = name.rfind(".")
        fmt = name[dot + 1 :] if dot >= 0 else ""
    data = save_image(image, fmt)
    with open(path, "wb") as fh:
        fh.write(data)
