"""Run-length connected-component labeling.

The labeling follows four passes: run-length encode the mask, scan the runs
assigning provisional labels while recording equivalences between touching
runs of consecutive rows, resolve the equivalence classes with union-find,
and relabel the runs compactly in row-major first-encounter order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class EmptyMask(ValueError):
    """The mask holds no foreground pixel."""


class Run(NamedTuple):
    row: int
    col_start: int
    col_end: int  # inclusive
    label: int = 0


@dataclass(frozen=True)
class LabelMap:
    labels: np.ndarray  # int32, 0 = background, 1..count
    count: int

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    def sizes(self) -> np.ndarray:
        """Pixel count per label, index 0 being the background."""
        return np.bincount(self.labels.ravel(), minlength=self.count + 1)


@dataclass(frozen=True)
class Region:
    """Pixel set of one component, as parallel column and row arrays."""

    cols: np.ndarray
    rows: np.ndarray

    def __post_init__(self):
        if len(self.cols) == 0:
            raise EmptyMask("a region needs at least one pixel")

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "Region":
        rows, cols = np.nonzero(mask)
        return cls(cols=cols.astype(np.int64), rows=rows.astype(np.int64))

    @classmethod
    def from_pixels(cls, pixels) -> "Region":
        """Build from an iterable of ``(col, row)`` pairs."""
        pts = np.array(sorted(set(map(tuple, pixels)), key=lambda p: (p[1], p[0])), dtype=np.int64)
        if pts.size == 0:
            raise EmptyMask("a region needs at least one pixel")
        return cls(cols=pts[:, 0], rows=pts[:, 1])

    @property
    def area(self) -> int:
        return len(self.cols)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        """``(min_col, min_row, max_col, max_row)``, inclusive."""
        return (
            int(self.cols.min()),
            int(self.rows.min()),
            int(self.cols.max()),
            int(self.rows.max()),
        )

    def to_mask(self, pad: int = 0) -> np.ndarray:
        """Region rasterized in its bounding box, surrounded by ``pad`` background pixels."""
        c0, r0, c1, r1 = self.bbox
        mask = np.zeros((r1 - r0 + 1 + 2 * pad, c1 - c0 + 1 + 2 * pad), dtype=bool)
        mask[self.rows - r0 + pad, self.cols - c0 + pad] = True
        return mask


def _run_arrays(mask: np.ndarray):
    """Row, start and inclusive end of every maximal horizontal run, row-major."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    padded = np.zeros((h, w + 2), dtype=np.int8)
    padded[:, 1:-1] = mask
    edges = np.diff(padded, axis=1)
    start_r, start_c = np.nonzero(edges == 1)
    _, end_c = np.nonzero(edges == -1)
    # np.nonzero walks row-major, so starts and ends pair up in order
    return start_r, start_c, end_c - 1


def encode_runs(mask: np.ndarray) -> list[Run]:
    rows, starts, ends = _run_arrays(mask)
    return [Run(int(r), int(s), int(e)) for r, s, e in zip(rows, starts, ends)]


class EquivalenceTable:
    """Union-find over provisional labels; the smaller representative wins a union."""

    def __init__(self):
        self.parent = [0]  # label 0 is reserved for background

    def make(self) -> int:
        label = len(self.parent)
        self.parent.append(label)
        return label

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra


def label_components(mask: np.ndarray, connectivity: int = 8) -> LabelMap:
    """Label the connected foreground components of ``mask``.

    A run on row ``r`` touches a run on row ``r - 1`` when their column
    intervals overlap (4-connectivity) or when ``[s - 1, e + 1]`` meets the
    other interval (8-connectivity). Labels ``1..K`` are numbered by the
    row-major position of each component's first pixel.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    rows, starts, ends = _run_arrays(mask)
    n_runs = len(rows)
    labels = np.zeros((h, w), dtype=np.int32)
    if n_runs == 0:
        return LabelMap(labels=labels, count=0)

    # Step 2 needs, per run, the contiguous block of previous-row runs it
    # touches. With row-offset keys both bounds come from one searchsorted.
    d = 1 if connectivity == 8 else 0
    stride = w + 4
    start_keys = rows * stride + starts + 2
    end_keys = rows * stride + ends + 2
    above = (rows - 1) * stride
    lo = np.searchsorted(end_keys, above + starts - d + 2, side="left").tolist()
    hi = np.searchsorted(start_keys, above + ends + d + 2, side="right").tolist()

    table = EquivalenceTable()
    find, union = table.find, table.union
    provisional = [0] * n_runs
    for i in range(n_runs):
        a, b = lo[i], hi[i]
        if a >= b:
            provisional[i] = table.make()
            continue
        label = find(provisional[a])
        for j in range(a + 1, b):
            label = union(label, provisional[j])
        provisional[i] = label

    # Steps 3 and 4: resolve classes, then number them in first-encounter order.
    compact: dict[int, int] = {}
    final = np.empty(n_runs, dtype=np.int32)
    for i in range(n_runs):
        root = find(provisional[i])
        final[i] = compact.setdefault(root, len(compact) + 1)

    lengths = ends - starts + 1
    flat = labels.ravel()
    offsets = np.repeat(rows * w + starts - np.cumsum(lengths) + lengths, lengths)
    flat[offsets + np.arange(lengths.sum())] = np.repeat(final, lengths)
    return LabelMap(labels=labels, count=len(compact))


def component_region(label_map: LabelMap, label: int) -> Region:
    return Region.from_mask(label_map.labels == label)


def largest_component(label_map: LabelMap) -> Region:
    """Region of the component with the most pixels; ties go to the lowest label."""
    if label_map.count == 0:
        raise EmptyMask("no foreground component to select")
    sizes = label_map.sizes()
    sizes[0] = -1
    return component_region(label_map, int(np.argmax(sizes)))
