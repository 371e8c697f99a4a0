"""Exception hierarchy shared across the package."""


class StegoError(Exception):
    """Base class for all tristego errors."""


class UnsupportedFormat(StegoError):
    """Input or output format is not lossless 8-bit RGB (PNG or BMP)."""


class DecodeError(StegoError):
    """Image byte stream is corrupt or unreadable."""


class EncodeError(StegoError):
    """Image could not be serialized."""


class DimensionMismatch(StegoError):
    """Planes or images that must share dimensions do not."""


class EmptyImage(StegoError):
    """Operation requires at least one pixel."""


class BadGroupLength(StegoError):
    """Bit group does not match the requested width."""


class PreconditionViolation(StegoError):
    """Arguments break a documented precondition."""


class PayloadTooLarge(StegoError):
    """Secret exceeds what the 32-bit length header can describe."""


class TruncatedStream(StegoError):
    """Bit stream ended before the declared payload was complete.

    On extraction this usually means the image is not a stego image or the
    wrong method/indicator was supplied.
    """


class InsufficientCapacity(StegoError):
    """Cover image cannot hold the framed payload."""

    def __init__(self, required_bits: int, available_bits: int):
        self.required_bits = required_bits
        self.available_bits = available_bits
        super().__init__(
            f"payload needs {required_bits} bits but cover holds "
            f"{available_bits} bits"
        )
