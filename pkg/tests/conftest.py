import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from shapeclf.pipeline import images_to_dataset  # noqa: E402
from shapeclf.synth import SHAPE_CLASSES, GenParams, generate_dataset  # noqa: E402


def synthetic_features(n_per_class=100, **params):
    images, manifest = generate_dataset(n_per_class, GenParams(**params))
    return images_to_dataset(
        images, [c for _, c in manifest], SHAPE_CLASSES, [f for f, _ in manifest]
    )


@pytest.fixture(scope="session")
def default_features():
    """The default 500-image synthetic feature set (seed 42, jitter 0.5)."""
    return synthetic_features()


@pytest.fixture(scope="session")
def small_features():
    return synthetic_features(n_per_class=20, seed=7)
