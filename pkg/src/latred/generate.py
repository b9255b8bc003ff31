"""Seeded random automata with grid-valued entries."""
import numpy as np

from .automaton import FuzzyAutomaton
from .fuzmat import FuzzyMatrix, FuzzyVector
from .lattice import LatticeKind, LatticeSpec


def grid_values(rng: np.random.Generator, shape, lattice: LatticeSpec, grid: int = 4) -> np.ndarray:
    """Entries drawn uniformly from {0, 1/grid, ..., 1} ({0, 1} for boolean)."""
    g = 1 if lattice.kind is LatticeKind.BOOLEAN else grid
    return rng.integers(0, g + 1, size=shape) / g


def letters(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple("xyzabcdefghijklmnopqrstuvw"[:m])
    return tuple(f"a{i}" for i in range(m))


def random_automaton(n: int, m: int, lattice: LatticeSpec, rng, grid: int = 4) -> FuzzyAutomaton:
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    alphabet = letters(m)
    return FuzzyAutomaton(
        alphabet,
        FuzzyVector(grid_values(rng, n, lattice, grid), lattice),
        {x: FuzzyMatrix(grid_values(rng, (n, n), lattice, grid), lattice) for x in alphabet},
        FuzzyVector(grid_values(rng, n, lattice, grid), lattice),
        lattice,
    )
