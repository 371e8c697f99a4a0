import numpy as np
import pytest

from tristego import METHOD1, METHOD3, Channel, RgbImage, method2

ALL_METHODS = (
    METHOD1,
    method2(Channel.RED),
    method2(Channel.GREEN),
    method2(Channel.BLUE),
    METHOD3,
)


def random_image(rng, width, height) -> RgbImage:
    arr = rng.integers(0, 256, (height, width, 3), dtype=np.uint8)
    return RgbImage.from_array(arr)


def constant_image(width, height, rgb) -> RgbImage:
    arr = np.zeros((height, width, 3), dtype=np.uint8)
    arr[:, :] = rgb
    return RgbImage.from_array(arr)


def full_capacity_secret(rng, cover, method) -> bytes:
    from tristego import capacity, max_secret_bytes

    return rng.bytes(max_secret_bytes(capacity(cover, method)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
