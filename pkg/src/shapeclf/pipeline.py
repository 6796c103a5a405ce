"""Image to feature-table glue: segment, label, describe."""

from __future__ import annotations

import numpy as np

from .dataio import Attribute, Dataset
from .raster import Polarity, segment
from .shapefeat import FEATURE_NAMES, FeatureVector, extract_features


def image_features(image: np.ndarray, polarity: Polarity = "minority",
                   connectivity: int = 8) -> FeatureVector:
    """Otsu-segment ``image`` and describe its largest component."""
    return extract_features(segment(image, polarity), connectivity)


def feature_dataset(vectors, labels, classes=None, ids=None, relation="features") -> Dataset:
    """Assemble feature vectors and class names into a :class:`Dataset`.

    ``classes`` fixes the nominal order; by default it is first-appearance.
    """
    labels = list(labels)
    if classes is None:
        classes = tuple(dict.fromkeys(labels))
    lookup = {c: i for i, c in enumerate(classes)}
    X = np.array([v.as_array() for v in vectors], dtype=float).reshape(-1, len(FEATURE_NAMES))
    y = np.array([lookup[c] for c in labels], dtype=np.int64)
    attributes = tuple(Attribute(n) for n in FEATURE_NAMES) + (Attribute("class", tuple(classes)),)
    return Dataset(relation, attributes, X, y, tuple(ids) if ids is not None else None)


def images_to_dataset(images, labels, classes=None, ids=None, polarity: Polarity = "minority",
                      connectivity: int = 8) -> Dataset:
    vectors = [image_features(img, polarity, connectivity) for img in images]
    return feature_dataset(vectors, labels, classes, ids)
