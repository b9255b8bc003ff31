import importlib.resources

import numpy as np
import pytest

from latred import io, kernels
from latred.automaton import FuzzyAutomaton
from latred.fuzmat import FuzzyMatrix, FuzzyVector
from latred.generate import grid_values, random_automaton
from latred.lattice import ALL_KINDS, LatticeSpec

EXAMPLE1_PATH = importlib.resources.files("latred") / "data" / "example1.json"

LATTICES = [LatticeSpec.of(kind) for kind in ALL_KINDS]
LATTICE_IDS = [lat.kind.value for lat in LATTICES]


@pytest.fixture
def example1() -> FuzzyAutomaton:
    return io.load_automaton(EXAMPLE1_PATH)


@pytest.fixture(params=LATTICES, ids=LATTICE_IDS)
def lattice(request) -> LatticeSpec:
    return request.param


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    previous = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def rand_matrix(rng, lattice, rows, cols=None, grid=4):
    return FuzzyMatrix(grid_values(rng, (rows, rows if cols is None else cols), lattice, grid), lattice)


def rand_vector(rng, lattice, n, grid=4):
    return FuzzyVector(grid_values(rng, n, lattice, grid), lattice)


def rand_automaton(rng, lattice, n_max=4, m_max=2):
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    return random_automaton(n, m, lattice, rng)


def as_int(M) -> list:
    return np.asarray(M.data, dtype=int).tolist()
