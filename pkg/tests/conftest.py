import numpy as np
import pytest

from sweepdescent.functions import GaugeFunction, NormFunction, TubeFunction


@pytest.fixture(scope="session")
def norm():
    return NormFunction(2)


@pytest.fixture(scope="session")
def tube():
    return TubeFunction()


@pytest.fixture(scope="session")
def gauge():
    return GaugeFunction()


@pytest.fixture(scope="session")
def gallery(norm, tube, gauge):
    return {"norm": norm, "tube": tube, "gauge": gauge}


def dense_boundary_nearest(points_on_boundary: np.ndarray, x) -> np.ndarray:
    """Brute-force nearest boundary point; independent projection oracle."""
    x = np.asarray(x, dtype=float)
    i = int(np.argmin(np.linalg.norm(points_on_boundary - x, axis=1)))
    return points_on_boundary[i]
