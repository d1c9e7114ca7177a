import math

import numpy as np
import pytest

from symminv.states import SymmetricState, dicke_to_full

SQ2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def ghz():
    return SymmetricState([SQ2, 0.0, 0.0, SQ2])


@pytest.fixture
def w_state():
    return SymmetricState([0.0, 1.0, 0.0, 0.0])


@pytest.fixture
def zero_state():
    return SymmetricState([1.0, 0.0, 0.0, 0.0])


def random_symmetric(rng) -> SymmetricState:
    return SymmetricState(rng.standard_normal(4) + 1j * rng.standard_normal(4))


def haar_su2(rng) -> np.ndarray:
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q) + 0j)


def apply_lu(c: np.ndarray, U: np.ndarray) -> np.ndarray:
    return np.einsum("ia,jb,kc,abc->ijk", U, U, U, c)


def full_of(s: SymmetricState) -> np.ndarray:
    return dicke_to_full(s).c
