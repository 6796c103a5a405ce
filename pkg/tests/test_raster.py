import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import otsu_exhaustive
from shapeclf.raster import (
    BadMagic,
    BadMaxval,
    DegenerateHistogram,
    PnmError,
    TruncatedPayload,
    ZeroDimension,
    binarize,
    histogram,
    load_image,
    otsu_threshold,
    segment,
    write_pgm,
)


class TestLoadImage:
    def test_ascii_pgm(self):
        img = load_image(b"P2\n1 1\n255\n7\n")
        assert img.shape == (1, 1)
        assert img[0, 0] == 7

    def test_ppm_luma(self):
        img = load_image(b"P6\n1 1\n255\n" + bytes([255, 0, 0]))
        assert img[0, 0] == 76  # round(76.245)

    def test_ascii_ppm_matches_binary(self):
        a = load_image(b"P3 2 1 255  10 20 30  200 100 50")
        b = load_image(b"P6 2 1 255\n" + bytes([10, 20, 30, 200, 100, 50]))
        assert np.array_equal(a, b)

    def test_truncated_payload(self):
        with pytest.raises(TruncatedPayload) as info:
            load_image(b"P5\n2 2\n255\n" + bytes([1, 2, 3]))
        assert "byte offset" in str(info.value)

    def test_maxval_rescale(self):
        img = load_image(b"P2\n3 1\n3\n0 1 3\n")
        assert img.tolist() == [[0, 85, 255]]

    def test_rescale_rounds_half_up(self):
        # 1 * 255 / 2 = 127.5
        assert load_image(b"P2 1 1 2 1")[0, 0] == 128

    def test_comments_in_header(self):
        img = load_image(b"P2\n# a comment\n2 # width\n1\n255\n4 5\n")
        assert img.tolist() == [[4, 5]]

    @pytest.mark.parametrize(
        "content, error, offset",
        [
            (b"P7\n1 1\n255\n0", BadMagic, 0),
            (b"P2\n0 3\n255\n", ZeroDimension, 2),
            (b"P2\n1 1\n0\n0", BadMaxval, 7),
            (b"P2\n1 1\n256\n0", BadMaxval, 7),
            (b"P2\n2 1\n255\n1", TruncatedPayload, 12),
        ],
    )
    def test_distinct_errors(self, content, error, offset):
        with pytest.raises(error) as info:
            load_image(content)
        assert info.value.offset == offset
        assert isinstance(info.value, PnmError)

    @given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))))
    def test_p5_round_trip(self, image):
        assert np.array_equal(load_image(write_pgm(image)), image)


class TestHistogram:
    def test_single_pixel(self):
        h = histogram(np.array([[7]], dtype=np.uint8))
        assert h.counts[7] == 1 and h.total == 1

    def test_two_levels(self):
        h = histogram(np.array([[0, 0], [255, 255]], dtype=np.uint8))
        assert h.counts[0] == 2 and h.counts[255] == 2

    @given(arrays(np.uint8, st.tuples(st.integers(1, 20), st.integers(1, 20))))
    def test_sum_is_pixel_count(self, image):
        h = histogram(image)
        assert h.counts.sum() == h.total == image.size


class TestOtsu:
    def test_flat_plateau_picks_lowest(self):
        img = np.array([50] * 32 + [200] * 32, dtype=np.uint8).reshape(8, 8)
        assert otsu_exhaustive(histogram(img).counts) == 50
        assert otsu_threshold(histogram(img)) == 50

    def test_degenerate(self):
        with pytest.raises(DegenerateHistogram):
            otsu_threshold(histogram(np.full((4, 4), 100, dtype=np.uint8)))

    def test_matches_exhaustive_scan(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            counts = rng.integers(0, 50, 256) * (rng.random(256) < 0.3)
            if np.count_nonzero(counts) < 2:
                continue
            assert otsu_threshold(counts) == otsu_exhaustive(counts)

    @settings(max_examples=60)
    @given(st.lists(st.integers(0, 255), min_size=2, max_size=64))
    def test_sparse_histograms(self, levels):
        counts = np.bincount(levels, minlength=256)
        if np.count_nonzero(counts) < 2:
            return
        assert otsu_threshold(counts) == otsu_exhaustive(counts)


class TestBinarize:
    img = np.array([[50, 50, 200, 200]], dtype=np.uint8)

    def test_dark(self):
        assert binarize(self.img, 50, "dark").tolist() == [[True, True, False, False]]

    def test_light(self):
        assert binarize(self.img, 50, "light").tolist() == [[False, False, True, True]]

    def test_minority_picks_object_on_white(self):
        img = np.array([0] * 10 + [255] * 90, dtype=np.uint8).reshape(10, 10)
        t = otsu_threshold(histogram(img))
        mask = binarize(img, t, "minority")
        assert mask.sum() == 10
        assert np.all(img[mask] == 0)

    def test_minority_tie_goes_dark(self):
        assert binarize(self.img, 50, "minority").tolist() == [[True, True, False, False]]

    def test_unknown_polarity(self):
        with pytest.raises(ValueError):
            binarize(self.img, 50, "bright")

    @given(arrays(np.uint8, (6, 7)), st.integers(0, 255))
    def test_partition(self, image, t):
        dark = binarize(image, t, "dark")
        light = binarize(image, t, "light")
        assert np.array_equal(dark, ~light)
        assert dark.sum() + light.sum() == image.size


def test_segment_light_object_on_dark():
    img = np.zeros((10, 10), dtype=np.uint8)
    img[2:5, 3:6] = 180
    assert segment(img).sum() == 9
