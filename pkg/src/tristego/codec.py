"""Pixel-level primitives: indicator decoding, k-bit LSB I/O, OPAP.

The two least significant bits of an indicator byte select, via an
Excess-3 code, how many payload bits the pixel's other two channels carry:

    indicator LSBs   total bits   channel-1   channel-2
          00             3            1           2
          01             4            2           2
          10             5            2           3
          11             6            3           3

Bit groups are MSB-first: the first bit written into a byte's k LSBs
becomes the most significant of the replaced bits. Embed and extract must
agree on this or nothing round-trips.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import BadGroupLength, PreconditionViolation


class BitWidths(NamedTuple):
    """How many payload bits go into channel-1 and channel-2 of one pixel."""

    k1: int
    k2: int

    @property
    def total(self) -> int:
        return self.k1 + self.k2


def embed_widths(indicator_byte: int) -> BitWidths:
    """Decode an indicator byte's two LSBs into per-channel bit widths.

    The Excess-3 total (two-bit value + 3, range 3..6) is split as evenly
    as possible, with channel-2 taking the odd extra bit.
    """
    total = (indicator_byte & 0b11) + 3
    half = total // 2
    return BitWidths(half, total - half)


def _check_byte(value: int):
    if not 0 <= value <= 255:
        raise ValueError(f"byte value out of range: {value}")


def _check_group(group: str, k: int):
    if not 1 <= k <= 3:
        raise BadGroupLength(f"group width must be 1..3, got {k}")
    if len(group) != k or any(c not in "01" for c in group):
        raise BadGroupLength(f"expected {k} bits of '0'/'1', got {group!r}")


def lsb_substitute(value: int, group: str, k: int) -> int:
    """Replace the k least significant bits of value with the given group."""
    _check_byte(value)
    _check_group(group, k)
    return (value >> k << k) | int(group, 2)


def lsb_read(value: int, k: int) -> str:
    """Read the k least significant bits of value, most significant first."""
    _check_byte(value)
    if not 1 <= k <= 3:
        raise BadGroupLength(f"group width must be 1..3, got {k}")
    return format(value & ((1 << k) - 1), f"0{k}b")


def opap_adjust(original: int, substituted: int, k: int) -> int:
    """Minimize the error of a k-bit LSB substitution without touching its LSBs.

    After substitution the bits above position k may be shifted by one unit
    (plus or minus 2^k) to bring the byte closer to the original. The
    adjustment is applied only when it strictly reduces the error (ties keep
    the substituted value) and only when it stays inside [0, 255]; the k
    LSBs carrying the payload are never disturbed.
    """
    _check_byte(original)
    _check_byte(substituted)
    if not 1 <= k <= 3:
        raise BadGroupLength(f"group width must be 1..3, got {k}")
    if (original ^ substituted) >> k:
        raise PreconditionViolation(
            "substituted value differs from the original above the k LSBs"
        )
    error = substituted - original
    half, step = 1 << (k - 1), 1 << k
    if error > half and substituted >= step:
        return substituted - step
    if error < -half and substituted <= 255 - step:
        return substituted + step
    return substituted
