"""Deterministic synthetic single-object images in five shape classes.

Each image is a dark shape on a light background. The shape's boundary is
perturbed by a smooth random radial wobble of at most ``jitter`` pixels, which
keeps the grey-level histogram strictly two-valued.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass

import numpy as np

from .prng import Prng
from .raster import write_pgm

SHAPE_CLASSES = ("disk", "rectangle", "ellipse", "ring", "cross")
MARGIN = 2.5  # pixels kept clear at each image edge (2 plus half a pixel)
_HARMONICS = (2, 3, 4, 5)


@dataclass(frozen=True)
class GenParams:
    """Rendering parameters.

    ``scale_range`` is the fraction of the largest radius that still fits in
    the image with the margin and the jitter allowance; the circumscribed
    radius of every shape is drawn from it.
    """

    image_size: int = 64
    scale_range: tuple[float, float] = (0.3, 0.8)
    rotation: tuple[float, float] = (0.0, 180.0)
    jitter: float = 0.5
    background: int = 255
    foreground: int = 40
    seed: int = 42

    def __post_init__(self):
        lo, hi = self.scale_range
        if not 0 < lo <= hi <= 1:
            raise ValueError(f"scale_range must satisfy 0 < lo <= hi <= 1, got {self.scale_range}")
        if self.jitter < 0:
            raise ValueError("jitter must be nonnegative")
        if self.max_radius() <= 1:
            raise ValueError("image too small for the margin and jitter")
        if self.foreground == self.background:
            raise ValueError("foreground and background intensities must differ")

    def max_radius(self) -> float:
        return self.image_size / 2 - MARGIN - self.jitter


def _inside(shape: str, u: np.ndarray, v: np.ndarray, param: float) -> np.ndarray:
    """Inside test in the shape frame, lengths relative to the circumradius."""
    if shape == "disk":
        return u * u + v * v <= 1.0
    if shape == "ellipse":
        return u * u + (v / param) ** 2 <= 1.0
    if shape == "ring":
        r2 = u * u + v * v
        return (r2 <= 1.0) & (r2 >= param * param)
    a = 1.0 / math.sqrt(1.0 + param * param)
    b = param * a
    au, av = np.abs(u), np.abs(v)
    if shape == "rectangle":
        return (au <= a) & (av <= b)
    if shape == "cross":
        return ((au <= a) & (av <= b)) | ((au <= b) & (av <= a))
    raise ValueError(f"unknown shape class {shape!r}")


# range of the per-class shape parameter: ellipse minor/major, ring inner/outer,
# rectangle side ratio, cross arm width ratio
_SHAPE_PARAM = {
    "disk": (1.0, 1.0),
    "ellipse": (0.35, 0.65),
    "ring": (0.4, 0.6),
    "rectangle": (0.35, 0.75),
    "cross": (0.25, 0.4),
}


def generate_image(shape: str, params: GenParams = GenParams(), index: int = 0) -> np.ndarray:
    """Render one image; identical ``(shape, params, index)`` give identical pixels."""
    if shape not in SHAPE_CLASSES:
        raise ValueError(f"unknown shape class {shape!r}; expected one of {SHAPE_CLASSES}")
    rng = Prng.stream(params.seed, "synth", index)
    size = params.image_size
    radius = rng.uniform(*params.scale_range) * params.max_radius()
    theta = math.radians(rng.uniform(*params.rotation))
    shape_param = rng.uniform(*_SHAPE_PARAM[shape])
    slack = params.max_radius() - radius
    cx = size / 2 + rng.uniform(-slack, slack)
    cy = size / 2 + rng.uniform(-slack, slack)
    amps = np.array([rng.random() for _ in _HARMONICS])
    phases = np.array([rng.uniform(0, 2 * math.pi) for _ in _HARMONICS])
    amps /= max(float(np.abs(amps).sum()), 1e-12)

    coords = np.arange(size) + 0.5
    dx = coords[None, :] - cx
    dy = cy - coords[:, None]  # y up
    phi = np.arctan2(dy, dx)
    wobble = sum(a * np.cos(k * phi + p) for a, k, p in zip(amps, _HARMONICS, phases))
    shrink = radius + params.jitter * wobble
    x, y = dx / shrink, dy / shrink
    u = x * math.cos(theta) + y * math.sin(theta)
    v = -x * math.sin(theta) + y * math.cos(theta)
    inside = _inside(shape, u, v, shape_param)
    return np.where(inside, params.foreground, params.background).astype(np.uint8)


def generate_dataset(n_per_class: int, params: GenParams = GenParams()):
    """``5 * n_per_class`` images, classes interleaved, with a ``(filename, class)`` manifest."""
    if n_per_class < 1:
        raise ValueError(f"n_per_class must be >= 1, got {n_per_class}")
    images, manifest = [], []
    for i in range(n_per_class):
        for c, shape in enumerate(SHAPE_CLASSES):
            index = i * len(SHAPE_CLASSES) + c
            images.append(generate_image(shape, params, index))
            manifest.append((f"{index:05d}_{shape}.pgm", shape))
    return images, manifest


def manifest_csv(manifest) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("filename", "class"))
    writer.writerows(manifest)
    return buf.getvalue()


def write_dataset(out_dir, n_per_class: int, params: GenParams = GenParams()) -> str:
    """Write the images as PGM P5 plus ``manifest.csv``; returns the manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    images, manifest = generate_dataset(n_per_class, params)
    for image, (name, _) in zip(images, manifest):
        with open(os.path.join(out_dir, name), "wb") as fh:
            fh.write(write_pgm(image))
    path = os.path.join(out_dir, "manifest.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(manifest_csv(manifest))
    return path
