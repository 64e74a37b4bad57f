"""Binary PGM (P5, maxval 255) reader and writer."""
from pathlib import Path
from typing import Union
import numpy as np
from core.exceptions import DomainError
from core.matcher import Image
from config.logging import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def encode_pgm(image: Image) -> bytes:
    """Bit-exact P5 encoding: header then width*height raw bytes, top row first."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(image.pixels).tobytes()


def write_pgm(image: Image, path: PathLike) -> Path:
    """Write ``image`` to ``path`` and return the path written."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(encode_pgm(image))
    logger.debug(f"PGM written: {out}")
    return out


def decode_pgm(data: bytes) -> Image:
    """Parse a P5 graymap with maxval 255; comment lines in the header are skipped."""
    fields = []
    pos = 0
    while len(fields) < 4:
        # skip whitespace and comments between header tokens
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise DomainError("truncated PGM header")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise DomainError("truncated PGM header")
        fields.append(data[start:pos])
    pos += 1  # single whitespace byte after maxval

    if fields[0] != b"P5":
        raise DomainError(f"unsupported PGM magic {fields[0]!r}")
    width, height, max_value = (int(f) for f in fields[1:])
    if max_value != 255:
        raise DomainError(f"only 8-bit graymaps are supported, got maxval {max_value}")
    payload = data[pos:pos + width * height]
    if len(payload) != width * height:
        raise DomainError("truncated PGM pixel data")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()
    return Image(pixels=pixels)


def read_pgm(path: PathLike) -> Image:
    """
    Read a P5 graymap from disk.

    Args:
        path: File to read

    Returns:
        The decoded Image

    Raises:
        DomainError: The file is not an 8-bit binary PGM
    """
    return decode_pgm(Path(path).read_bytes())
