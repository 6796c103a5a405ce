import csv
import io
import math

import numpy as np
import pytest

from shapeclf.labeling import label_components
from shapeclf.pipeline import image_features
from shapeclf.raster import load_image, segment
from shapeclf.synth import (
    SHAPE_CLASSES,
    GenParams,
    generate_dataset,
    generate_image,
    manifest_csv,
    write_dataset,
)


def fixed_radius(r, **kw):
    params = GenParams(jitter=0.0, **kw)
    s = r / params.max_radius()
    return GenParams(jitter=0.0, scale_range=(s, s), **kw)


def test_disk_area():
    params = fixed_radius(10)
    for index in range(5):
        area = image_features(generate_image("disk", params, index)).area
        assert abs(area - math.pi * 100) / (math.pi * 100) < 0.03


def test_ring_has_one_hole_without_jitter():
    params = GenParams(jitter=0.0)
    for index in range(20):
        assert image_features(generate_image("ring", params, index)).euler_number == 0


def test_two_valued_dark_on_light():
    image = generate_image("cross", GenParams(), 3)
    assert image.dtype == np.uint8
    assert set(np.unique(image).tolist()) == {40, 255}
    assert (image == 255).sum() > (image == 40).sum()


def test_deterministic():
    a = generate_image("ellipse", GenParams(seed=5), 17)
    b = generate_image("ellipse", GenParams(seed=5), 17)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, generate_image("ellipse", GenParams(seed=6), 17))


def test_margin():
    images, _ = generate_dataset(40, GenParams(scale_range=(0.8, 0.8), jitter=1.0))
    for image in images:
        dark = image < 128
        assert not dark[:2].any() and not dark[-2:].any()
        assert not dark[:, :2].any() and not dark[:, -2:].any()


def test_background_override():
    image = generate_image("disk", GenParams(background=180, foreground=20), 0)
    assert set(np.unique(image).tolist()) == {20, 180}


def test_invalid_params():
    with pytest.raises(ValueError):
        GenParams(scale_range=(0.5, 1.2))
    with pytest.raises(ValueError):
        generate_image("triangle")
    with pytest.raises(ValueError):
        generate_dataset(0)


def test_balanced_manifest():
    images, manifest = generate_dataset(100)
    assert len(images) == 500
    counts = {c: sum(1 for _, k in manifest if k == c) for c in SHAPE_CLASSES}
    assert set(counts.values()) == {100}
    rows = list(csv.reader(io.StringIO(manifest_csv(manifest))))
    assert rows[0] == ["filename", "class"]
    assert rows[1] == ["00000_disk.pgm", "disk"]


def test_write_dataset(tmp_path):
    path = write_dataset(tmp_path / "imgs", 2, GenParams(seed=3))
    names = sorted(p.name for p in (tmp_path / "imgs").iterdir())
    assert len(names) == 11 and "manifest.csv" in names
    image = load_image((tmp_path / "imgs" / "00004_cross.pgm").read_bytes())
    assert np.array_equal(image, generate_image("cross", GenParams(seed=3), 4))
    assert path.endswith("manifest.csv")


def test_full_set_separability(default_features):
    ds = default_features
    assert len(ds) == 500
    cls = np.array(ds.classes)[ds.y]
    euler = ds.X[:, ds.feature_names.index("euler_number")]
    solidity = ds.X[:, ds.feature_names.index("solidity")]
    assert set(cls[euler == 0]) == {"ring"}
    assert (euler[cls == "ring"] == 0).all()
    solid = np.isin(cls, ["disk", "rectangle", "ellipse"])
    assert solidity[cls == "cross"].max() < solidity[solid].min()


@pytest.mark.parametrize("jitter", [0.0, 0.5, 1.0])
def test_one_dominant_component(jitter):
    images, _ = generate_dataset(20, GenParams(jitter=jitter, seed=11))
    for image in images:
        assert label_components(segment(image), 8).count == 1
