import random
from fractions import Fraction

import numpy as np
import pytest

from doclabeler.errors import DocLabelerError
from doclabeler.preprocess import (
    GrayImage,
    binarize,
    otsu_threshold,
    preprocess_image,
    resize_image,
)


def otsu_oracle(hist) -> int:
    """Independent exhaustive search: evaluate sigma^2_B(t) for every split
    point with exact rational arithmetic, keep the smallest maximizer."""
    total = sum(hist)
    best_t, best = 0, Fraction(0)
    for t in range(256):
        w0 = sum(hist[: t + 1])
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        mu0 = Fraction(sum(i * hist[i] for i in range(t + 1)), w0)
        mu1 = Fraction(sum(i * hist[i] for i in range(t + 1, 256)), w1)
        sigma = Fraction(w0 * w1) * (mu0 - mu1) ** 2
        if sigma > best:
            best, best_t = sigma, t
    return best_t


def random_histogram(rng: random.Random) -> list[int]:
    hist = [0] * 256
    style = rng.random()
    if style < 0.3:  # sparse spikes
        for _ in range(rng.randint(1, 6)):
            hist[rng.randrange(256)] += rng.randint(1, 10_000)
    elif style < 0.6:  # two noisy modes
        for center in (rng.randrange(0, 110), rng.randrange(140, 256)):
            for _ in range(rng.randint(50, 400)):
                hist[max(0, min(255, center + rng.randint(-25, 25)))] += 1
    else:  # uniform noise
        for i in range(256):
            hist[i] = rng.randint(0, 50)
        if sum(hist) == 0:
            hist[0] = 1
    return hist


class TestOtsu:
    def test_bimodal_split(self):
        hist = [0] * 256
        hist[50] = 4
        hist[200] = 4
        assert otsu_threshold(hist) == 50

    def test_constant_image_degenerates_to_zero(self):
        hist = [0] * 256
        hist[128] = 77
        assert otsu_threshold(hist) == 0

    def test_matches_oracle_on_random_histograms(self):
        rng = random.Random(1234)
        for _ in range(300):
            hist = random_histogram(rng)
            assert otsu_threshold(hist) == otsu_oracle(hist)

    def test_rejects_empty_histogram(self):
        with pytest.raises(DocLabelerError):
            otsu_threshold([0] * 256)

    def test_rejects_wrong_bin_count(self):
        with pytest.raises(DocLabelerError):
            otsu_threshold([1] * 255)


class TestBinarize:
    def test_all_below_threshold(self):
        img = GrayImage(np.full((4, 5), 30, dtype=np.uint8))
        assert np.all(binarize(img, 30).pixels == 0)

    def test_all_above_threshold(self):
        img = GrayImage(np.full((4, 5), 200, dtype=np.uint8))
        assert np.all(binarize(img, 199).pixels == 255)

    def test_mixed_population_splits_exactly(self):
        rng = np.random.default_rng(7)
        values = rng.choice([50, 200], size=(64, 64))
        img = GrayImage(values.astype(np.uint8))
        out = binarize(img, 50)
        assert np.array_equal(out.pixels == 0, values == 50)
        assert set(np.unique(out.pixels)) <= {0, 255}

    def test_binarization_separates_bimodal_populations(self):
        rng = np.random.default_rng(3)
        values = rng.choice([50, 200], size=(32, 32)).astype(np.uint8)
        img = GrayImage(values)
        t = otsu_threshold(img.histogram())
        assert t == 50
        out = binarize(img, t)
        assert np.array_equal(out.pixels == 0, values == 50)


class TestResize:
    def test_scale_one_is_identity(self):
        rng = np.random.default_rng(0)
        img = GrayImage(rng.integers(0, 256, (40, 30), dtype=np.uint8))
        out = resize_image(img, 1.0)
        assert out == img

    def test_constant_image_stays_constant(self):
        img = GrayImage(np.full((100, 100), 97, dtype=np.uint8))
        out = resize_image(img, 0.5)
        assert (out.height, out.width) == (50, 50)
        assert np.all(out.pixels == 97)

    def test_two_pixel_upscale_hand_computed(self):
        # src row [0, 255] at scale 2: sample points x/2 - 0.25 give
        # weights 0, .25, .75, 1 -> rounded [0, 64, 191, 255]
        img = GrayImage(np.array([[0, 255]], dtype=np.uint8))
        out = resize_image(img, 2.0)
        assert (out.height, out.width) == (2, 4)
        expected = [0, 64, 191, 255]
        for row in out.pixels:
            assert list(row) == expected
            assert all(int(b) >= int(a) for a, b in zip(row, row[1:]))

    def test_zero_dimension_is_error(self):
        img = GrayImage(np.zeros((4, 4), dtype=np.uint8))
        with pytest.raises(DocLabelerError):
            resize_image(img, 0.05)

    def test_negative_scale_is_error(self):
        img = GrayImage(np.zeros((4, 4), dtype=np.uint8))
        with pytest.raises(DocLabelerError):
            resize_image(img, -1.0)

    @pytest.mark.parametrize("scale", [0.5, 2.0, 4.0])
    def test_constant_round_trip_scale(self, scale):
        img = GrayImage(np.full((64, 48), 123, dtype=np.uint8))
        out = resize_image(resize_image(img, scale), 1.0 / scale)
        assert out == img


class TestPreprocessPipeline:
    def test_constant_image_binarization_is_noop(self):
        img = GrayImage(np.full((10, 10), 128, dtype=np.uint8))
        assert preprocess_image(img, binarization=True) == img

    def test_pipeline_resizes_then_binarizes(self):
        values = np.where(np.arange(100 * 100).reshape(100, 100) % 7 == 0, 40, 210)
        img = GrayImage(values.astype(np.uint8))
        out = preprocess_image(img, scale=0.5, binarization=True)
        assert (out.height, out.width) == (50, 50)
        assert set(np.unique(out.pixels)) <= {0, 255}
