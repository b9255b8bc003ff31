"""Timing harness behind ``latred bench``."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .generate import random_automaton
from .lattice import LatticeSpec
from .reduction import MethodTag, method_matrix

CSV_HEADER = ("n", "m", "k", "method", "millis", "d_final")


@dataclass
class BenchRow:
    n: int
    m: int
    k: int
    method: str
    millis: float
    d_final: int

    def as_tuple(self):
        return (self.n, self.m, self.k, self.method, f"{self.millis:.3f}", self.d_final)


def time_reduction(A, method, k, repeat: int = 3):
    """Best-of-``repeat`` time, in milliseconds, to compute the k-th reduction matrix.

    Only the matrix procedure is timed (including validation of every
    member); building and checking the reduced automaton is not. Returns
    the time and d of the matrix, the state count of the reduced automaton.
    """
    best = float("inf")
    d = None
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        Q = method_matrix(A, method, k)
        best = min(best, time.perf_counter() - start)
        d = Q.d
    return best * 1000.0, d


def run_bench(sizes, m, ks, method, lattice: LatticeSpec, seed: int = 0, repeat: int = 3, grid: int = 4):
    method = MethodTag(method)
    rows = []
    for n in sizes:
        # one automaton per n, independent of the other parameters
        A = random_automaton(n, m, lattice, np.random.default_rng([seed, n, m]), grid)
        for k in ks:
            millis, d = time_reduction(A, method, k, repeat)
            rows.append(BenchRow(n, m, k, method.value, millis, d))
    return rows


def fit_exponent(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def fit_growth(ks, ys) -> float:
    """Per-unit growth factor of y in k, from a log-linear least-squares fit."""
    return float(np.exp(np.polyfit(np.asarray(ks, dtype=float), np.log(ys), 1)[0]))
