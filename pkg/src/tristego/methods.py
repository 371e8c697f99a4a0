"""The three indicator-guided embedding methods over whole images.

Wire contract (embed and extract must both honour every point):

* Pixels are traversed row-major from the top-left; ordinals are 1-based.
* Per pixel one channel is the indicator and is never modified; the other
  two receive floor(total/2) and ceil(total/2) payload bits in that order,
  where total is the indicator byte's Excess-3 coded two LSBs (3..6).
* Method 1 uses red as the indicator everywhere; method 2 uses a caller-
  chosen plane everywhere; method 3 rotates the indicator through
  red, green, blue with the pixel ordinal.
* Bit groups are written MSB-first into each channel's LSBs, then nudged
  by OPAP (which preserves those LSBs).
* The payload goes on the wire as a 32-bit big-endian byte count followed
  by the raw bytes, MSB-first. A final partial group is zero-padded; once
  the stream is consumed no later byte is touched (if the stream dies at a
  group boundary mid-pixel, that pixel's second channel stays untouched).
* Extraction is blind: it needs the stego image and the method id, nothing
  else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import InsufficientCapacity, PayloadTooLarge, TruncatedStream
from .image import Channel, Plane, RgbImage

LENGTH_HEADER_BITS = 32

#: indicator -> (indicator, channel-1, channel-2)
ROLE_TABLE = {
    Channel.RED: (Channel.RED, Channel.GREEN, Channel.BLUE),
    Channel.GREEN: (Channel.GREEN, Channel.RED, Channel.BLUE),
    Channel.BLUE: (Channel.BLUE, Channel.RED, Channel.GREEN),
}

#: method-3 indicator for pixel ordinals 1, 2, 3 (then repeating)
CYCLE = (Channel.RED, Channel.GREEN, Channel.BLUE)


class RoleAssignment(NamedTuple):
    """Which plane plays which part for one pixel."""

    indicator: Channel
    channel1: Channel
    channel2: Channel


@dataclass(frozen=True)
class MethodId:
    """Selects one of the three embedding methods.

    Method 2 requires the indicator channel; methods 1 and 3 forbid it.
    """

    number: int
    indicator: Channel | None = None

    def __post_init__(self):
        if self.number not in (1, 2, 3):
            raise ValueError(f"method must be 1, 2 or 3, got {self.number}")
        if self.number == 2 and self.indicator is None:
            raise ValueError("method 2 needs an indicator channel")
        if self.number != 2 and self.indicator is not None:
            raise ValueError(f"method {self.number} does not take an indicator")

    @property
    def label(self) -> str:
        if self.number == 2:
            return f"2/{self.indicator.letter}"
        return str(self.number)


METHOD1 = MethodId(1)
METHOD3 = MethodId(3)


def method2(indicator: Channel) -> MethodId:
    return MethodId(2, Channel(indicator))


def role_for_pixel(method: MethodId, pixel_ordinal: int) -> RoleAssignment:
    """Role assignment for the pixel with the given 1-based ordinal."""
    if pixel_ordinal < 1:
        raise ValueError("pixel ordinals are 1-based")
    if method.number == 1:
        indicator = Channel.RED
    elif method.number == 2:
        indicator = method.indicator
    else:
        indicator = CYCLE[(pixel_ordinal - 1) % 3]
    return RoleAssignment(*ROLE_TABLE[indicator])


@dataclass(frozen=True)
class FramedPayload:
    """Secret bytes behind a 32-bit big-endian length header."""

    body: bytes

    @property
    def header(self) -> bytes:
        return len(self.body).to_bytes(4, "big")

    @property
    def bit_length(self) -> int:
        return LENGTH_HEADER_BITS + 8 * len(self.body)

    def to_bits(self) -> np.ndarray:
        """The header-then-body bit stream, MSB-first, as a 0/1 uint8 array."""
        return np.unpackbits(np.frombuffer(self.header + self.body, dtype=np.uint8))


def frame_payload(secret: bytes) -> FramedPayload:
    """Wrap secret bytes with the length header."""
    secret = bytes(secret)
    if len(secret) >= 1 << 32:
        raise PayloadTooLarge(
            f"{len(secret)} bytes cannot be described by the 32-bit header"
        )
    return FramedPayload(secret)


class BitReader:
    """MSB-first reader over a sequence of 0/1 bits."""

    def __init__(self, bits: Union[str, bytes, Iterable[int], np.ndarray]):
        if isinstance(bits, str):
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        elif isinstance(bits, (bytes, bytearray)):
            arr = np.frombuffer(bits, dtype=np.uint8)
        else:
            arr = np.asarray(bits, dtype=np.uint8).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bit sequence may only contain 0 and 1")
        self._bits = arr
        self._pos = 0

    @property
    def remaining(self) -> int:
        return self._bits.size - self._pos

    def read(self, count: int) -> int:
        """Read count bits as an unsigned integer, MSB first."""
        if count > self.remaining:
            raise TruncatedStream(
                f"needed {count} more bits, only {self.remaining} left"
            )
        value = 0
        for bit in self._bits[self._pos : self._pos + count]:
            value = (value << 1) | int(bit)
        self._pos += count
        return value

    def read_bytes(self, count: int) -> bytes:
        """Read count whole bytes (8*count bits)."""
        if 8 * count > self.remaining:
            raise TruncatedStream(
                f"needed {8 * count} more bits, only {self.remaining} left"
            )
        chunk = self._bits[self._pos : self._pos + 8 * count]
        self._pos += 8 * count
        return np.packbits(chunk).tobytes()


def unframe(bits: Union[BitReader, str, Iterable[int], np.ndarray]) -> bytes:
    """Read the 32-bit length header, then exactly that many payload bytes.

    Trailing bits beyond the declared payload are pad and are discarded.
    """
    reader = bits if isinstance(bits, BitReader) else BitReader(bits)
    length = reader.read(LENGTH_HEADER_BITS)
    return reader.read_bytes(length)


@dataclass(frozen=True)
class EmbedResult:
    stego: RgbImage
    bits_embedded: int
    pixels_used: int


class _TraversalPlan:
    """Vectorized per-pixel geometry shared by capacity, embed and extract.

    Group 2i is pixel i+1's channel-1 write, group 2i+1 its channel-2
    write; widths come from the untouched indicator bytes, so embedder and
    extractor always derive the same plan.
    """

    def __init__(self, image: RgbImage, method: MethodId):
        npix = image.pixel_count
        self.stack = image.to_array().reshape(npix, 3).T.copy()  # (3, npix)
        pixels = np.arange(npix)

        if method.number == 3:
            residue = pixels % 3
            table = np.array(
                [ROLE_TABLE[ch] for ch in CYCLE], dtype=np.intp
            )  # rows follow the ordinal cycle
            ind_ids = table[residue, 0]
            ch1_ids = table[residue, 1]
            ch2_ids = table[residue, 2]
        else:
            indicator = Channel.RED if method.number == 1 else method.indicator
            ind, ch1, ch2 = ROLE_TABLE[indicator]
            ind_ids = np.full(npix, int(ind), dtype=np.intp)
            ch1_ids = np.full(npix, int(ch1), dtype=np.intp)
            ch2_ids = np.full(npix, int(ch2), dtype=np.intp)

        totals = (self.stack[ind_ids, pixels] & 0b11).astype(np.int64) + 3
        k1 = totals // 2

        self.widths = np.empty(2 * npix, dtype=np.int64)
        self.widths[0::2] = k1
        self.widths[1::2] = totals - k1
        self.ends = np.cumsum(self.widths)
        self.group_pixel = np.repeat(pixels, 2)
        self.group_plane = np.empty(2 * npix, dtype=np.intp)
        self.group_plane[0::2] = ch1_ids
        self.group_plane[1::2] = ch2_ids
        self.capacity = int(self.ends[-1]) if npix else 0

    def groups_for(self, bit_count: int) -> int:
        """Number of leading groups needed to cover bit_count stream bits."""
        if bit_count <= 0 or self.capacity == 0:
            return 0
        if bit_count >= self.capacity:
            return len(self.widths)
        return int(np.searchsorted(self.ends, bit_count, side="left")) + 1


def capacity(cover: RgbImage, method: MethodId) -> int:
    """Exact number of payload bits embed() can place in this cover."""
    return _TraversalPlan(cover, method).capacity


def max_secret_bytes(bit_capacity: int) -> int:
    """Largest secret byte count whose framed stream fits bit_capacity."""
    return max(0, (bit_capacity - LENGTH_HEADER_BITS) // 8)


def _image_from_stack(stack: np.ndarray, width: int, height: int) -> RgbImage:
    planes = [
        Plane(width, height, stack[i].astype(np.uint8).tobytes()) for i in range(3)
    ]
    return RgbImage(*planes)


def embed(cover: RgbImage, secret: bytes, method: MethodId) -> EmbedResult:
    """Hide secret bytes in a copy of the cover; the cover is untouched.

    Indicator bytes are never modified, so the extractor can re-derive the
    bit widths from the stego image alone.
    """
    frame = frame_payload(secret)
    plan = _TraversalPlan(cover, method)
    nbits = frame.bit_length
    if nbits > plan.capacity:
        raise InsufficientCapacity(nbits, plan.capacity)

    n_groups = plan.groups_for(nbits)
    widths = plan.widths[:n_groups]
    ends = plan.ends[:n_groups]
    starts = ends - widths
    pixels = plan.group_pixel[:n_groups]
    planes = plan.group_plane[:n_groups]

    padded = np.zeros(int(ends[-1]), dtype=np.uint8)
    padded[:nbits] = frame.to_bits()

    values = np.zeros(n_groups, dtype=np.int64)
    for width in (1, 2, 3):
        sel = np.nonzero(widths == width)[0]
        if sel.size == 0:
            continue
        group = padded[starts[sel]].astype(np.int64)
        for offset in range(1, width):
            group = (group << 1) | padded[starts[sel] + offset]
        values[sel] = group

    original = plan.stack[planes, pixels].astype(np.int64)
    substituted = (original >> widths << widths) | values

    # OPAP: shift the bits above the payload by one unit when that strictly
    # shrinks the error and stays inside the byte range.
    error = substituted - original
    half = 1 << (widths - 1)
    step = 1 << widths
    adjusted = substituted.copy()
    down = (error > half) & (substituted >= step)
    up = (error < -half) & (substituted <= 255 - step)
    adjusted[down] -= step[down]
    adjusted[up] += step[up]

    stego_stack = plan.stack.copy()
    stego_stack[planes, pixels] = adjusted
    stego = _image_from_stack(stego_stack, cover.width, cover.height)
    return EmbedResult(stego, nbits, (n_groups + 1) // 2)


def _collect_bits(plan: _TraversalPlan, bit_count: int) -> np.ndarray:
    """LSB groups from the leading pixels, concatenated in traversal order.

    Returns at least bit_count bits when the image holds that many, else
    everything it holds.
    """
    n_groups = plan.groups_for(bit_count)
    if n_groups == 0:
        return np.zeros(0, dtype=np.uint8)
    widths = plan.widths[:n_groups]
    starts = plan.ends[:n_groups] - widths
    carriers = plan.stack[plan.group_plane[:n_groups], plan.group_pixel[:n_groups]]

    out = np.zeros(int(plan.ends[n_groups - 1]), dtype=np.uint8)
    for width in (1, 2, 3):
        sel = np.nonzero(widths == width)[0]
        if sel.size == 0:
            continue
        group = carriers[sel] & ((1 << width) - 1)
        for offset in range(width):
            out[starts[sel] + offset] = (group >> (width - 1 - offset)) & 1
    return out


def extract(stego: RgbImage, method: MethodId) -> bytes:
    """Blind recovery: re-derive widths from the indicator bytes and unframe.

    Raises TruncatedStream when the header promises more bits than the
    image can hold -- the usual sign of a wrong method/indicator or of an
    image that carries no payload at all.
    """
    plan = _TraversalPlan(stego, method)
    bits = _collect_bits(plan, LENGTH_HEADER_BITS)
    if bits.size >= LENGTH_HEADER_BITS:
        declared = int.from_bytes(
            np.packbits(bits[:LENGTH_HEADER_BITS]).tobytes(), "big"
        )
        needed = LENGTH_HEADER_BITS + 8 * declared
        if needed > bits.size:
            bits = _collect_bits(plan, needed)
    return unframe(BitReader(bits))
