import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20070313)


def random_signal(rng, L):
    return rng.standard_normal(L) + 1j * rng.standard_normal(L)


def random_unit_window(rng, L):
    from gaborkit import Window

    return Window.unit(random_signal(rng, L), "random")
