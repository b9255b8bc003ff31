"""Fuzzy finite automata in linear representation (sigma, {delta_x}, tau)."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    AlphabetMismatch,
    DimensionMismatch,
    LatticeMismatch,
    PathCapExceeded,
    UnknownSymbol,
    ValidationError,
    WordCapExceeded,
)
from .fuzmat import (
    FuzzyMatrix,
    FuzzyVector,
    QuasiOrderMatrix,
    extract_rows_cols,
    mat_chain,
    mat_mul,
    mat_vec_mul,
    validate_quasi_order,
    vec_mat_mul,
)
from .lattice import LatticeSpec

Word = tuple

DEFAULT_WORD_CAP = 10**6
DEFAULT_PATH_CAP = 10**6


def word_cap() -> int:
    """Maximum number of word-tree nodes; LATRED_WORD_CAP overrides the default."""
    raw = os.environ.get("LATRED_WORD_CAP")
    return int(raw) if raw else DEFAULT_WORD_CAP


def tree_size(m: int, k: int) -> int:
    """Number of words of length at most k over m letters."""
    return k + 1 if m == 1 else (m ** (k + 1) - 1) // (m - 1)


def _check_tree(m: int, k: int, cap: int | None):
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    cap = word_cap() if cap is None else cap
    size = tree_size(m, k)
    if size > cap:
        raise WordCapExceeded(f"{size} words of length <= {k} over {m} letters exceed the cap of {cap}")


@dataclass(frozen=True)
class FuzzyAutomaton:
    alphabet: tuple[str, ...]
    sigma: FuzzyVector
    delta: Mapping[str, FuzzyMatrix]
    tau: FuzzyVector
    lattice: LatticeSpec
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if not alphabet:
            raise ValidationError("the alphabet is empty")
        if len(set(alphabet)) != len(alphabet):
            raise ValidationError(f"repeated symbols in alphabet {alphabet}")
        if set(self.delta) != set(alphabet):
            raise ValidationError(f"transition symbols {sorted(self.delta)} do not match alphabet {list(alphabet)}")
        n = self.sigma.n
        if self.tau.n != n:
            raise DimensionMismatch(f"sigma has size {n} but tau has size {self.tau.n}")
        for x in alphabet:
            if self.delta[x].shape != (n, n):
                raise DimensionMismatch(f"delta[{x!r}] has shape {self.delta[x].shape}, expected {(n, n)}")
        for part in (self.sigma, self.tau, *self.delta.values()):
            if part.lattice != self.lattice:
                raise LatticeMismatch(f"component over {part.lattice}, automaton over {self.lattice}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", MappingProxyType({x: self.delta[x] for x in alphabet}))

    @classmethod
    def from_lists(cls, lattice: LatticeSpec, alphabet, sigma, delta, tau, name=None) -> "FuzzyAutomaton":
        return cls(
            tuple(alphabet),
            FuzzyVector(sigma, lattice),
            {x: FuzzyMatrix(delta[x], lattice) for x in alphabet},
            FuzzyVector(tau, lattice),
            lattice,
            name,
        )

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def m(self) -> int:
        return len(self.alphabet)

    def __len__(self):
        return self.n

    def check_word(self, u: Sequence[str]) -> Word:
        u = tuple(u)
        for x in u:
            if x not in self.delta:
                raise UnknownSymbol(f"symbol {x!r} is not in the alphabet {list(self.alphabet)}")
        return u


def behavior(A: FuzzyAutomaton, u: Sequence[str]) -> float:
    """sigma . delta_{x1} ... delta_{xs} . tau"""
    u = A.check_word(u)
    code = A.lattice.kind.code
    v = A.sigma.data[None, :]
    for x in u:
        v = kernels.mat_mul(v, A.delta[x].data, code)
    return float(np.max(A.lattice.tensor_arr(v[0], A.tau.data)))


def behavior_paths(A: FuzzyAutomaton, u: Sequence[str], cap: int = DEFAULT_PATH_CAP) -> float:
    """Behavior as the join over all state paths of the tensor chain.

    Scalar lattice operations only; serves as an oracle for :func:`behavior`.
    """
    u = A.check_word(u)
    n = A.n
    paths = n ** (len(u) + 1)
    if paths > cap:
        raise PathCapExceeded(f"{paths} state paths exceed the cap of {cap}")
    L = A.lattice
    sigma, tau = A.sigma.data, A.tau.data
    deltas = [A.delta[x].data for x in u]
    best = L.zero
    for path in itertools.product(range(n), repeat=len(u) + 1):
        acc = float(sigma[path[0]])
        for step, d in enumerate(deltas):
            acc = L.tensor(acc, float(d[path[step], path[step + 1]]))
        acc = L.tensor(acc, float(tau[path[-1]]))
        best = L.join(best, acc)
    return best


@dataclass(frozen=True)
class KEquivalence:
    """Outcome of a bounded equivalence check.

    ``witness`` is the shortlex-first word on which the behaviors differ, or
    None when they agree on every word up to length ``k``.
    """

    k: int
    witness: Word | None = None
    value_a: float | None = None
    value_b: float | None = None
    words_checked: int = 0

    @property
    def equal(self) -> bool:
        return self.witness is None

    def __bool__(self):
        return self.equal


def _forward_levels(A: FuzzyAutomaton, k: int):
    """Yield (level, state vectors sigma.delta_u) for |u| = 0..k in shortlex order."""
    code = A.lattice.kind.code
    level = A.sigma.data[None, :]
    yield 0, level
    deltas = [A.delta[x].data for x in A.alphabet]
    for length in range(1, k + 1):
        children = np.stack([kernels.mat_mul(level, d, code) for d in deltas], axis=1)
        # parent-major, letter-minor ordering keeps each level lexicographic
        level = children.reshape(-1, A.n)
        yield length, level


def _word_at(alphabet, length: int, index: int) -> Word:
    m = len(alphabet)
    out = []
    for _ in range(length):
        index, r = divmod(index, m)
        out.append(alphabet[r])
    return tuple(reversed(out))


def k_equivalent(A: FuzzyAutomaton, B: FuzzyAutomaton, k: int, cap: int | None = None) -> KEquivalence:
    """Compare behaviors on all words of length <= k, in shortlex order."""
    if A.alphabet != B.alphabet:
        raise AlphabetMismatch(f"{list(A.alphabet)} vs {list(B.alphabet)}")
    if A.lattice != B.lattice:
        raise LatticeMismatch(f"{A.lattice} vs {B.lattice}")
    _check_tree(A.m, k, cap)
    L = A.lattice
    checked = 0
    for (length, va), (_, vb) in zip(_forward_levels(A, k), _forward_levels(B, k)):
        ba = L.tensor_arr(va, A.tau.data[None, :]).max(axis=1)
        bb = L.tensor_arr(vb, B.tau.data[None, :]).max(axis=1)
        bad = np.flatnonzero(np.abs(ba - bb) > L.epsilon)
        if bad.size:
            i = int(bad[0])
            return KEquivalence(k, _word_at(A.alphabet, length, i), float(ba[i]), float(bb[i]), checked + i + 1)
        checked += ba.shape[0]
    return KEquivalence(k, words_checked=checked)


def iter_words(alphabet: Sequence[str], k: int):
    """All words of length <= k in shortlex order."""
    for length in range(k + 1):
        yield from itertools.product(alphabet, repeat=length)


# -- constructions -----------------------------------------------------------


def _rebuild(A: FuzzyAutomaton, sigma, delta, tau, suffix) -> FuzzyAutomaton:
    name = f"{A.name}{suffix}" if A.name else None
    return FuzzyAutomaton(A.alphabet, sigma, delta, tau, A.lattice, name)


def row_automaton(A: FuzzyAutomaton, Q) -> FuzzyAutomaton:
    """Automaton on the distinct rows of the quasi-order Q.

    sigma' = sigma.Q_c, delta'_x = Q_r.delta_x.Q_c, tau' = Q_r.tau.
    """
    if not isinstance(Q, QuasiOrderMatrix):
        Q = validate_quasi_order(Q)
    if Q.lattice != A.lattice:
        raise LatticeMismatch(f"{Q.lattice} vs {A.lattice}")
    if Q.n != A.n:
        raise DimensionMismatch(f"quasi-order of order {Q.n} for an automaton with {A.n} states")
    Qr, Qc = extract_rows_cols(Q)
    return _rebuild(
        A,
        vec_mat_mul(A.sigma, Qc),
        {x: mat_chain(Qr, d, Qc) for x, d in A.delta.items()},
        mat_vec_mul(Qr, A.tau),
        "/Q",
    )


def factor_automaton(A: FuzzyAutomaton, L: FuzzyMatrix, R: FuzzyMatrix) -> FuzzyAutomaton:
    """Automaton of an r-factorization Q = L.R: sigma.L, R.delta_x.L, R.tau."""
    if L.rows != A.n or R.cols != A.n or L.cols != R.rows:
        raise DimensionMismatch(f"factors {L.shape} and {R.shape} for an automaton with {A.n} states")
    validate_quasi_order(mat_mul(L, R))
    return _rebuild(
        A,
        vec_mat_mul(A.sigma, L),
        {x: mat_chain(R, d, L) for x, d in A.delta.items()},
        mat_vec_mul(R, A.tau),
        "/LR",
    )


def row_behavior(A: FuzzyAutomaton, Q: FuzzyMatrix, u: Sequence[str]) -> float:
    """sigma.Q.delta_{x1}.Q ... Q.delta_{xs}.Q.tau evaluated directly on the n states."""
    u = A.check_word(u)
    code = A.lattice.kind.code
    v = kernels.mat_mul(A.sigma.data[None, :], Q.data, code)
    for x in u:
        v = kernels.mat_mul(kernels.mat_mul(v, A.delta[x].data, code), Q.data, code)
    return float(np.max(A.lattice.tensor_arr(v[0], A.tau.data)))


# -- word families -------------------------------------------------------------


def tau_levels(A: FuzzyAutomaton, k: int, cap: int | None = None):
    """Per-level arrays of tau_u = delta_u.tau; row r of level L is the word _word_at(L, r)."""
    _check_tree(A.m, k, cap)
    code = A.lattice.kind.code
    # tau_{xu} = delta_x.tau_u, stored as rows: T . delta_x^T
    deltas_t = [np.ascontiguousarray(A.delta[x].data.T) for x in A.alphabet]
    level = A.tau.data[None, :]
    levels = [level]
    for _ in range(k):
        # letter-major ordering: block x holds the words x.u for u in the previous level
        level = np.concatenate([kernels.mat_mul(level, d, code) for d in deltas_t], axis=0)
        levels.append(level)
    return levels


def sigma_levels(A: FuzzyAutomaton, k: int, cap: int | None = None):
    """Per-level arrays of sigma_u = sigma.delta_u, each level in lexicographic order."""
    _check_tree(A.m, k, cap)
    return [level for _, level in _forward_levels(A, k)]


def _tau_word(alphabet, length, index, prev_count):
    # inverse of the letter-major layout used by tau_levels
    out = []
    while length:
        block = prev_count(length - 1)
        x, index = divmod(index, block)
        out.append(alphabet[x])
        length -= 1
    return tuple(out)


def _family(levels, words_of_level, lattice, dedup):
    family: dict[Word, FuzzyVector] = {}
    seen = set()
    for length, level in enumerate(levels):
        for index, vec in enumerate(level):
            if dedup:
                key = vec.tobytes()
                if key in seen:
                    continue
                seen.add(key)
            family[words_of_level(length, index)] = FuzzyVector(vec, lattice, check=False)
    return family


def tau_family(A: FuzzyAutomaton, k: int, dedup: bool = False, cap: int | None = None) -> dict[Word, FuzzyVector]:
    """Map each word u with |u| <= k to tau_u = delta_u.tau (breadth first).

    With ``dedup`` only the first word producing each distinct vector is kept.
    """
    levels = tau_levels(A, k, cap)
    m = A.m

    def words_of_level(length, index):
        return _tau_word(A.alphabet, length, index, lambda l: m**l)

    return _family(levels, words_of_level, A.lattice, dedup)


def sigma_family(A: FuzzyAutomaton, k: int, dedup: bool = False, cap: int | None = None) -> dict[Word, FuzzyVector]:
    """Map each word u with |u| <= k to sigma_u = sigma.delta_u (breadth first)."""
    levels = sigma_levels(A, k, cap)

    def words_of_level(length, index):
        return _word_at(A.alphabet, length, index)

    return _family(levels, words_of_level, A.lattice, dedup)
