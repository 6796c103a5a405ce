"""The eleven region shape descriptors.

Moments treat every pixel as a unit square (hence the ``+1/12`` variance
correction) and the equivalent ellipse is scaled by ``2 * sqrt(2)``, the
convention of the usual ``regionprops`` family of tools. Convex area is the
number of lattice points inside or on the convex hull of the pixel centres,
which keeps ``area <= convex_area`` exact.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields
from math import gcd

import numpy as np

from .labeling import EmptyMask, Region, label_components, largest_component

FEATURE_NAMES = (
    "area",
    "major_axis_length",
    "minor_axis_length",
    "eccentricity",
    "orientation",
    "convex_area",
    "filled_area",
    "euler_number",
    "equiv_diameter",
    "solidity",
    "extent",
)


@dataclass(frozen=True)
class CentralMoments:
    n: int
    cx: float
    cy: float
    uxx: float
    uyy: float
    uxy: float


@dataclass(frozen=True)
class FeatureVector:
    area: int
    major_axis_length: float
    minor_axis_length: float
    eccentricity: float
    orientation: float
    convex_area: int
    filled_area: int
    euler_number: int
    equiv_diameter: float
    solidity: float
    extent: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)


assert tuple(f.name for f in fields(FeatureVector)) == FEATURE_NAMES


def central_moments(region: Region) -> CentralMoments:
    """Centroid and normalized second central moments of a region.

    Sums are taken in exact integer arithmetic on coordinates relative to the
    bounding-box corner, so the result is bit-identical under translation and
    under 90 degree rotation (which only swaps and negates the sums).
    """
    c0, r0, _, _ = region.bbox
    x = (region.cols - c0).tolist()
    y = (region.rows - r0).tolist()
    n = len(x)
    sx, sy = sum(x), sum(y)
    sxx = sum(v * v for v in x)
    syy = sum(v * v for v in y)
    sxy = sum(a * b for a, b in zip(x, y))
    n2 = n * n
    return CentralMoments(
        n=n,
        cx=c0 + sx / n,
        cy=r0 + sy / n,
        uxx=(n * sxx - sx * sx) / n2 + 1 / 12,
        uyy=(n * syy - sy * sy) / n2 + 1 / 12,
        uxy=(n * sxy - sx * sy) / n2,
    )


def ellipse_features(m: CentralMoments) -> tuple[float, float, float, float]:
    """Major and minor axis lengths, eccentricity and orientation (degrees).

    Orientation is measured counter-clockwise from the +x axis with y pointing
    up, in ``(-90, 90]``; rows grow downward, hence the negated ``uxy``.
    """
    common = math.sqrt((m.uxx - m.uyy) ** 2 + 4 * m.uxy**2)
    major = 2 * math.sqrt(2) * math.sqrt(m.uxx + m.uyy + common)
    minor = 2 * math.sqrt(2) * math.sqrt(max(m.uxx + m.uyy - common, 0.0))
    ecc = math.sqrt(max(1 - (minor / major) ** 2, 0.0))
    if m.uxy == 0 and m.uxx == m.uyy:
        orientation = 0.0
    else:
        orientation = 0.5 * math.degrees(math.atan2(-2 * m.uxy, m.uxx - m.uyy))
        if orientation <= -90:
            orientation += 180
        orientation += 0.0  # no negative zero
    return major, minor, ecc, orientation


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[int, int]]:
    """Andrew's monotone chain; counter-clockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def lattice_points_in_hull(hull: list[tuple[int, int]]) -> int:
    """Lattice points inside or on a convex lattice polygon, by Pick's theorem."""
    if len(hull) == 1:
        return 1
    if len(hull) == 2:
        (x0, y0), (x1, y1) = hull
        return gcd(abs(x1 - x0), abs(y1 - y0)) + 1
    twice_area = 0
    boundary = 0
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        twice_area += x0 * y1 - x1 * y0
        boundary += gcd(abs(x1 - x0), abs(y1 - y0))
    # Pick: A = I + B/2 - 1, so I + B = (2A + B) / 2 + 1
    return (abs(twice_area) + boundary) // 2 + 1


def _row_extremes(region: Region) -> list[tuple[int, int]]:
    # the hull of a pixel set is the hull of each row's leftmost and rightmost pixel
    order = np.lexsort((region.cols, region.rows))
    rows, cols = region.rows[order], region.cols[order]
    first = np.r_[True, rows[1:] != rows[:-1]]
    last = np.r_[rows[1:] != rows[:-1], True]
    pts = set(zip(cols[first].tolist(), rows[first].tolist()))
    pts.update(zip(cols[last].tolist(), rows[last].tolist()))
    return list(pts)


def convex_features(region: Region) -> tuple[int, float]:
    """``(convex_area, solidity)``."""
    hull = convex_hull(_row_extremes(region))
    convex_area = lattice_points_in_hull(hull)
    return convex_area, region.area / convex_area


def topology_features(region: Region, fg_connectivity: int = 8) -> tuple[int, int, int]:
    """``(filled_area, euler_number, hole_count)`` of a single region.

    Background is labeled with the dual connectivity inside the bounding box
    padded by one pixel. The padding ring is one background component; every
    other background component is a hole.
    """
    if fg_connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {fg_connectivity}")
    background = ~region.to_mask(pad=1)
    dual = 4 if fg_connectivity == 8 else 8
    lm = label_components(background, dual)
    hole_count = lm.count - 1
    hole_pixels = int(np.count_nonzero(lm.labels > 1))  # label 1 holds pixel (0, 0)
    return region.area + hole_pixels, 1 - hole_count, hole_count


def scalar_features(region: Region) -> tuple[int, float, float]:
    """``(area, equiv_diameter, extent)``."""
    area = region.area
    c0, r0, c1, r1 = region.bbox
    extent = area / ((c1 - c0 + 1) * (r1 - r0 + 1))
    return area, math.sqrt(4 * area / math.pi), extent


def region_features(region: Region, connectivity: int = 8) -> FeatureVector:
    area, equiv_diameter, extent = scalar_features(region)
    major, minor, ecc, orientation = ellipse_features(central_moments(region))
    convex_area, solidity = convex_features(region)
    filled_area, euler_number, _ = topology_features(region, connectivity)
    return FeatureVector(
        area=area,
        major_axis_length=major,
        minor_axis_length=minor,
        eccentricity=ecc,
        orientation=orientation,
        convex_area=convex_area,
        filled_area=filled_area,
        euler_number=euler_number,
        equiv_diameter=equiv_diameter,
        solidity=solidity,
        extent=extent,
    )


def extract_features(mask: np.ndarray, connectivity: int = 8) -> FeatureVector:
    """Label ``mask``, keep its largest component and describe it.

    Raises
    ------
    EmptyMask
        If the mask has no foreground pixel.
    """
    if not np.any(mask):
        raise EmptyMask("mask has no foreground pixel")
    region = largest_component(label_components(mask, connectivity))
    return region_features(region, connectivity)
