"""Raster decoding (Netpbm, optionally anything Pillow reads) and grayscale conversion."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import MalformedImage, MissingFile, UnsupportedFormat

MAXVAL = 255

_WHITESPACE = b" \t\r\n\v\f"
# magic numbers handed to Pillow when it is installed
_PILLOW_MAGICS = (b"\x89PNG", b"\xff\xd8", b"BM", b"GIF8", b"II*\x00", b"MM\x00*")


@dataclass(frozen=True)
class RgbImage:
    """``pixels`` has shape (height, width, 3), dtype uint8, row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        p = self.pixels
        if p.ndim != 3 or p.shape[2] != 3 or p.shape[0] < 1 or p.shape[1] < 1:
            raise MalformedImage(f"RGB pixel array must be (h, w, 3), got {p.shape}")
        if p.dtype != np.uint8:
            raise MalformedImage(f"RGB pixels must be uint8, got {p.dtype}")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @classmethod
    def from_gray(cls, img: GrayImage) -> RgbImage:
        return cls(np.repeat(img.pixels[:, :, None], 3, axis=2))


@dataclass(frozen=True)
class GrayImage:
    """``pixels`` has shape (height, width), dtype uint8, row-major.

    Zero-sized grids are representable so that the histogram stage can
    report them as empty images rather than failing here.
    """

    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.ndim != 2:
            raise MalformedImage(f"gray pixel array must be 2-D, got {self.pixels.shape}")
        if self.pixels.dtype != np.uint8:
            raise MalformedImage(f"gray pixels must be uint8, got {self.pixels.dtype}")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def rgb_to_gray(img: RgbImage) -> GrayImage:
    """Average the three channels, flooring: ``(R + G + B) // 3``."""
    total = img.pixels.astype(np.uint16).sum(axis=2)
    return GrayImage((total // 3).astype(np.uint8))


class _Tokens:
    """Header tokenizer honouring Netpbm '#' comments."""

    def __init__(self, data: bytes, path):
        self.data = data
        self.pos = 2
        self.path = path

    def next_int(self, what: str) -> int:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos : self.pos + 1]
            if c == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = n if end < 0 else end + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                break
        start = self.pos
        while self.pos < n and data[self.pos : self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        tok = data[start : self.pos]
        if not tok:
            raise MalformedImage(f"{self.path}: truncated header, expected {what}")
        if not tok.isdigit():
            raise MalformedImage(f"{self.path}: bad {what} {tok!r}")
        return int(tok)


def _decode_netpbm(data: bytes, path) -> np.ndarray:
    magic = data[:2]
    channels = 3 if magic in (b"P3", b"P6") else 1
    tok = _Tokens(data, path)
    width = tok.next_int("width")
    height = tok.next_int("height")
    maxval = tok.next_int("maxval")
    if width < 1 or height < 1:
        raise MalformedImage(f"{path}: non-positive size {width}x{height}")
    if maxval != MAXVAL:
        raise MalformedImage(f"{path}: maxval {maxval} unsupported (only {MAXVAL})")
    count = width * height * channels

    if magic in (b"P5", b"P6"):
        # exactly one whitespace byte separates the header from the raster
        start = tok.pos + 1
        raster = data[start : start + count]
        if len(raster) < count:
            raise MalformedImage(f"{path}: truncated raster, {len(raster)} of {count} bytes")
        values = np.frombuffer(raster, dtype=np.uint8).copy()
    else:
        fields = data[tok.pos :].split()
        if len(fields) < count:
            raise MalformedImage(f"{path}: truncated raster, {len(fields)} of {count} samples")
        try:
            ints = np.array([int(f) for f in fields[:count]], dtype=np.int64)
        except ValueError as exc:
            raise MalformedImage(f"{path}: non-integer sample ({exc})") from None
        if ints.min() < 0 or ints.max() > maxval:
            raise MalformedImage(f"{path}: sample outside [0, {maxval}]")
        values = ints.astype(np.uint8)

    if channels == 1:
        return np.repeat(values.reshape(height, width, 1), 3, axis=2)
    return values.reshape(height, width, 3)


def _decode_pillow(path) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover - depends on environment
        raise UnsupportedFormat(f"{path}: decoding this format needs Pillow") from None
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert("RGB"), dtype=np.uint8).copy()
    except OSError as exc:
        raise MalformedImage(f"{path}: {exc}") from None


def load_image(path) -> RgbImage:
    """Decode PPM (P3/P6), PGM (P2/P5), or a Pillow-readable raster.

    PGM input is replicated into three equal channels.
    """
    if not os.path.isfile(path):
        raise MissingFile(f"{path}: no such file")
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic in (b"P2", b"P3", b"P5", b"P6"):
        return RgbImage(_decode_netpbm(data, path))
    if data.startswith(_PILLOW_MAGICS):
        return RgbImage(_decode_pillow(path))
    raise UnsupportedFormat(f"{path}: unknown magic number {data[:4]!r}")


def write_pgm(img: GrayImage, path, binary: bool = False) -> None:
    """Write a grayscale image as PGM (P2 ASCII by default, P5 binary)."""
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{MAXVAL}\n".encode("ascii")
    if binary:
        body = img.pixels.tobytes()
    else:
        body = "\n".join(" ".join(str(v) for v in row) for row in img.pixels).encode("ascii") + b"\n"
    with open(path, "wb") as fh:
        fh.write(header + body)
