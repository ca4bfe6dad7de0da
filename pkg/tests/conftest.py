import numpy as np
import pytest

from mockrep.builtin import build_example

SYSTEM_IDS = ["wavelet1d", "heisenberg", "shearlet", "dilrot2d", "transdil2d"]
FIBERED_IDS = ["wavelet1d", "shearlet", "dilrot2d", "transdil2d"]


@pytest.fixture(scope="session")
def systems():
    return {sid: build_example(sid) for sid in SYSTEM_IDS}


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(42)


def random_y(sys, rng):
    lo, hi = sys.defaults["y_sample_box"]
    return rng.uniform(np.asarray(lo, float), np.asarray(hi, float))
