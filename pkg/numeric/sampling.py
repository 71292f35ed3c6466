"""Seeded random fixtures (PCG64 via numpy's default_rng)."""
from typing import Sequence

import numpy as np


def seeded_rng(seed: int | Sequence[int]) -> np.random.Generator:
    return np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    X = _ginibre(rng, n, n)
    return 0.5 * (X + X.conj().T)


def random_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = _ginibre(rng, n, 1)[:, 0]
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    G = _ginibre(rng, n, rank or n)
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(_ginibre(rng, n, n))
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases
