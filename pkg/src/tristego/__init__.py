"""Indicator-guided RGB LSB steganography.

Two LSBs of a per-pixel guide channel choose, via an Excess-3 code, how
many payload bits (3..6 per pixel) go into the other two channels' LSBs;
an optimal pixel adjustment pass then shrinks the embedding error without
disturbing the payload. Extraction is blind: stego image plus method id,
no cover needed.
"""

__version__ = "0.1.0"

from .codec import BitWidths, embed_widths, lsb_read, lsb_substitute, opap_adjust
from .errors import (
    BadGroupLength,
    DecodeError,
    DimensionMismatch,
    EmptyImage,
    EncodeError,
    InsufficientCapacity,
    PayloadTooLarge,
    PreconditionViolation,
    StegoError,
    TruncatedStream,
    UnsupportedFormat,
)
from .image import (
    Channel,
    Plane,
    RgbImage,
    load_image,
    load_image_file,
    merge_planes,
    save_image,
    save_image_file,
    split_planes,
)
from .methods import (
    METHOD1,
    METHOD3,
    BitReader,
    EmbedResult,
    FramedPayload,
    MethodId,
    RoleAssignment,
    capacity,
    embed,
    extract,
    frame_payload,
    max_secret_bytes,
    method2,
    role_for_pixel,
    unframe,
)
from .metrics import (
    ChannelReport,
    StegoReport,
    bpp,
    compare_images,
    full_report,
    histogram,
    mse,
    psnr,
)

__all__ = [
    "__version__",
    "BadGroupLength",
    "BitReader",
    "BitWidths",
    "Channel",
    "ChannelReport",
    "DecodeError",
    "DimensionMismatch",
    "EmbedResult",
    "EmptyImage",
    "EncodeError",
    "FramedPayload",
    "InsufficientCapacity",
    "METHOD1",
    "METHOD3",
    "MethodId",
    "PayloadTooLarge",
    "Plane",
    "PreconditionViolation",
    "RgbImage",
    "RoleAssignment",
    "StegoError",
    "StegoReport",
    "TruncatedStream",
    "UnsupportedFormat",
    "bpp",
    "capacity",
    "compare_images",
    "embed",
    "embed_widths",
    "extract",
    "frame_payload",
    "full_report",
    "histogram",
    "load_image",
    "load_image_file",
    "lsb_read",
    "lsb_substitute",
    "max_secret_bytes",
    "merge_planes",
    "method2",
    "mse",
    "opap_adjust",
    "psnr",
    "role_for_pixel",
    "save_image",
    "save_image_file",
    "split_planes",
    "unframe",
]
