import numpy as np
import pytest

from aucpower.datasets import load_demo_pilot


def make_instance(rng, n_min=4, n_max=500, tie_chance=0.5):
    """Random paired-score instance with both classes present.

    About half the instances get their scores rounded to one decimal,
    which injects heavy ties; the tie-handling paths stay exercised.
    """
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        y = rng.integers(0, 2, n)
        if 0 < y.sum() < n:
            break
    sa = rng.normal(size=n) + 0.8 * y
    sb = 0.6 * sa + 0.8 * rng.normal(size=n) + 0.5 * y
    if rng.random() < tie_chance:
        sa = np.round(sa, 1)
        sb = np.round(sb, 1)
    return y, sa, sb


@pytest.fixture(scope="session")
def demo_pilot():
    pilot, summary = load_demo_pilot()
    return pilot, summary
