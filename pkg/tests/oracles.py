"""Slow, independent reference implementations used only by the tests."""

from collections import deque
from fractions import Fraction
from itertools import product

import numpy as np


def otsu_exhaustive(counts):
    """Lowest t maximizing w0 w1 (mu0 - mu1)^2, evaluated in exact fractions."""
    counts = [int(c) for c in counts]
    total = sum(counts)
    best_t, best = None, None
    for t in range(len(counts)):
        n0 = sum(counts[: t + 1])
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        mu0 = Fraction(sum(v * counts[v] for v in range(t + 1)), n0)
        mu1 = Fraction(sum(v * counts[v] for v in range(t + 1, len(counts))), n1)
        var = Fraction(n0, total) * Fraction(n1, total) * (mu0 - mu1) ** 2
        if best is None or var > best:
            best_t, best = t, var
    return best_t


def neighbours(connectivity):
    if connectivity == 4:
        return [(-1, 0), (1, 0), (0, -1), (0, 1)]
    return [(dr, dc) for dr, dc in product((-1, 0, 1), repeat=2) if (dr, dc) != (0, 0)]


def bfs_label(mask, connectivity):
    """Flood-fill labeling, numbered by row-major first pixel."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int64)
    steps = neighbours(connectivity)
    count = 0
    for r in range(h):
        for c in range(w):
            if mask[r, c] and labels[r, c] == 0:
                count += 1
                labels[r, c] = count
                queue = deque([(r, c)])
                while queue:
                    rr, cc = queue.popleft()
                    for dr, dc in steps:
                        nr, nc = rr + dr, cc + dc
                        if 0 <= nr < h and 0 <= nc < w and mask[nr, nc] and labels[nr, nc] == 0:
                            labels[nr, nc] = count
                            queue.append((nr, nc))
    return labels, count


def moments_direct(pixels):
    """(uxx, uyy, uxy) by direct summation in exact fractions."""
    n = len(pixels)
    cx = Fraction(sum(p[0] for p in pixels), n)
    cy = Fraction(sum(p[1] for p in pixels), n)
    uxx = sum((p[0] - cx) ** 2 for p in pixels) / n + Fraction(1, 12)
    uyy = sum((p[1] - cy) ** 2 for p in pixels) / n + Fraction(1, 12)
    uxy = sum((p[0] - cx) * (p[1] - cy) for p in pixels) / n
    return uxx, uyy, uxy


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_lattice_count(pixels):
    """Count lattice points in the hull of ``pixels`` by testing every point of the bbox.

    Hull edges are found by brute force (ordered pairs with no point strictly
    to their right); a point is inside when it is left of or on all of them.
    """
    pts = sorted(set(pixels))
    if len(pts) == 1:
        return 1
    edges = [
        (a, b)
        for a in pts
        for b in pts
        if a != b and all(_cross(a, b, p) >= 0 for p in pts)
    ]
    collinear = all(_cross(pts[0], pts[-1], p) == 0 for p in pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            q = (x, y)
            if collinear:
                lo, hi = pts[0], pts[-1]
                if _cross(lo, hi, q) == 0 and min(lo, hi) <= q <= max(lo, hi):
                    count += 1
            elif all(_cross(a, b, q) >= 0 for a, b in edges):
                count += 1
    return count


def holes_flood_fill(pixels, fg_connectivity):
    """(hole_pixels, hole_count) by flood-filling the complement from outside."""
    pts = set(pixels)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    steps = neighbours(4 if fg_connectivity == 8 else 8)
    background = {
        (x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1) if (x, y) not in pts
    }

    def fill(seed, pool):
        seen = {seed}
        queue = deque([seed])
        while queue:
            x, y = queue.popleft()
            for dy, dx in steps:
                q = (x + dx, y + dy)
                if q in pool and q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    outside = fill((x0, y0), background)
    holes = background - outside
    n_holes = 0
    while holes:
        comp = fill(next(iter(holes)), holes)
        holes -= comp
        n_holes += 1
    return len(background - outside), n_holes


def random_connected_region(rng, max_size=14, fill=0.55, connectivity=8):
    """A random mask's largest 8- (or 4-) connected component as (col, row) pixels."""
    h = int(rng.integers(1, max_size + 1))
    w = int(rng.integers(1, max_size + 1))
    mask = rng.random((h, w)) < fill
    if not mask.any():
        mask[rng.integers(h), rng.integers(w)] = True
    labels, count = bfs_label(mask, connectivity)
    sizes = np.bincount(labels.ravel(), minlength=count + 1)
    sizes[0] = -1
    rows, cols = np.nonzero(labels == int(np.argmax(sizes)))
    return list(zip(cols.tolist(), rows.tolist()))
