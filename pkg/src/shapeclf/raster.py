"""Image ingestion, grey-level histograms, Otsu thresholding and binarization.

Images are 2-D ``uint8`` arrays of shape ``(height, width)``; masks are 2-D
``bool`` arrays. Only the netpbm family is read (PGM P2/P5, PPM P3/P6).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Polarity = Literal["dark", "light", "minority"]
POLARITIES = ("dark", "light", "minority")


class PnmError(ValueError):
    """Malformed netpbm content; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class BadMagic(PnmError):
    pass


class TruncatedPayload(PnmError):
    pass


class BadMaxval(PnmError):
    pass


class ZeroDimension(PnmError):
    pass


class BadToken(PnmError):
    pass


class DegenerateHistogram(ValueError):
    """Fewer than two distinct grey levels: no two-class split exists."""


@dataclass(frozen=True)
class Histogram:
    counts: np.ndarray  # 256 int64 tallies
    total: int


# -- netpbm reading ---------------------------------------------------------


class _HeaderReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_space_and_comments(self):
        data = self.data
        while self.pos < len(data):
            c = data[self.pos]
            if c == ord("#"):
                while self.pos < len(data) and data[self.pos] not in b"\r\n":
                    self.pos += 1
            elif c in b" \t\r\n\v\f":
                self.pos += 1
            else:
                break

    def integer(self, what: str) -> int:
        self._skip_space_and_comments()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            if start >= len(self.data):
                raise TruncatedPayload(f"unexpected end of file reading {what}", start)
            raise BadToken(f"expected integer for {what}", start)
        return int(self.data[start : self.pos])


def load_image(content: bytes) -> np.ndarray:
    """Decode a PGM (P2/P5) or PPM (P3/P6) file into a grey ``uint8`` image.

    Grey levels with ``maxval < 255`` are rescaled by ``round(v * 255 / maxval)``;
    colour pixels are reduced with the luma ``round(0.299 R + 0.587 G + 0.114 B)``.
    Both roundings are half-up and done in integer arithmetic.

    Raises
    ------
    PnmError
        One of :class:`BadMagic`, :class:`TruncatedPayload`, :class:`BadMaxval`,
        :class:`ZeroDimension` or :class:`BadToken`, each carrying the offending
        byte offset.
    """
    magic = content[:2]
    if len(content) < 2 or magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise BadMagic(f"unsupported magic number {magic!r}", 0)
    channels = 3 if magic in (b"P3", b"P6") else 1
    binary = magic in (b"P5", b"P6")

    reader = _HeaderReader(content)
    reader.pos = 2
    width_at = reader.pos
    width = reader.integer("width")
    height = reader.integer("height")
    if width == 0 or height == 0:
        raise ZeroDimension(f"image dimensions {width}x{height}", width_at)
    reader._skip_space_and_comments()
    maxval_at = reader.pos
    maxval = reader.integer("maxval")
    if not 1 <= maxval <= 255:
        raise BadMaxval(f"maxval {maxval} outside [1, 255]", maxval_at)

    n_values = width * height * channels
    if binary:
        # exactly one whitespace byte separates the header from the raster
        start = reader.pos + 1
        payload = content[start : start + n_values]
        if len(payload) < n_values:
            raise TruncatedPayload(
                f"expected {n_values} raster bytes, found {len(payload)}", start + len(payload)
            )
        values = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)
        if int(values.max(initial=0)) > maxval:
            bad = start + int(np.argmax(values > maxval))
            raise BadToken(f"sample exceeds maxval {maxval}", bad)
    else:
        values = np.empty(n_values, dtype=np.int64)
        for i in range(n_values):
            at = reader.pos
            v = reader.integer("sample")
            if v > maxval:
                raise BadToken(f"sample {v} exceeds maxval {maxval}", at)
            values[i] = v

    if maxval != 255:
        values = (values * 510 + maxval) // (2 * maxval)
    if channels == 3:
        rgb = values.reshape(-1, 3)
        values = (rgb[:, 0] * 299 + rgb[:, 1] * 587 + rgb[:, 2] * 114 + 500) // 1000
    return values.reshape(height, width).astype(np.uint8)


def write_pgm(image: np.ndarray) -> bytes:
    """Encode a grey image (or a bool mask, as 0/255) as binary PGM P5."""
    image = np.asarray(image)
    if image.dtype == bool:
        image = np.where(image, 255, 0)
    image = np.ascontiguousarray(image, dtype=np.uint8)
    h, w = image.shape
    return b"P5\n%d %d\n255\n" % (w, h) + image.tobytes()


# -- thresholding -----------------------------------------------------------


def histogram(image: np.ndarray) -> Histogram:
    image = np.asarray(image, dtype=np.uint8)
    counts = np.bincount(image.ravel(), minlength=256).astype(np.int64)
    return Histogram(counts=counts, total=int(image.size))


def otsu_threshold(hist: Histogram | np.ndarray) -> int:
    """Grey level ``t`` maximizing the between-class variance of ``<= t`` vs ``> t``.

    The variance ``w0 w1 (mu0 - mu1)^2`` equals
    ``(N S0 - n0 S)^2 / (N^2 n0 n1)``, with ``n0``, ``S0`` the count and
    intensity sum at or below ``t``. The candidates are compared as exact
    integer fractions, so ties resolve to the lowest ``t`` without rounding
    noise.
    """
    counts = hist.counts if isinstance(hist, Histogram) else np.asarray(hist)
    counts = counts.astype(np.int64)
    if np.count_nonzero(counts) < 2:
        raise DegenerateHistogram("need at least two distinct intensities")

    levels = np.arange(counts.size, dtype=np.int64)
    n0 = np.cumsum(counts).tolist()
    s0 = np.cumsum(counts * levels).tolist()
    total, total_sum = n0[-1], s0[-1]

    best_t, best_num, best_den = -1, 0, 1
    for t in range(counts.size - 1):
        a = n0[t]
        b = total - a
        if a == 0 or b == 0:
            continue
        num = (total * s0[t] - a * total_sum) ** 2
        den = a * b
        if best_t < 0 or num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def binarize(image: np.ndarray, threshold: int, polarity: Polarity = "minority") -> np.ndarray:
    """Foreground mask: ``dark`` is ``v <= t``, ``light`` is ``v > t``.

    ``minority`` keeps whichever of the two has fewer pixels (ties go to
    ``dark``), which picks the object on a uniform background.
    """
    image = np.asarray(image)
    dark = image <= threshold
    if polarity == "dark":
        return dark
    if polarity == "light":
        return ~dark
    if polarity == "minority":
        n_dark = int(dark.sum())
        return dark if n_dark <= image.size - n_dark else ~dark
    raise ValueError(f"unknown polarity {polarity!r}; expected one of {POLARITIES}")


def segment(image: np.ndarray, polarity: Polarity = "minority") -> np.ndarray:
    """Otsu-threshold an image into a foreground mask."""
    return binarize(image, otsu_threshold(histogram(image)), polarity)
