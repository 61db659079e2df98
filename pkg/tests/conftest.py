import numpy as np
import pytest

from teleres.oracle import _rng, random_density_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def partial_trace(mat: np.ndarray, d: int, keep: str) -> np.ndarray:
    """Independent partial-trace oracle by direct index summation."""
    r = mat.reshape(d, d, d, d)
    if keep == "first":
        return np.einsum("iaja->ij", r)
    if keep == "second":
        return np.einsum("iaib->ab", r)
    raise ValueError(keep)


def random_state(d: int, index: int, seed: int = 515):
    return random_density_matrix(d, _rng(seed, index))
