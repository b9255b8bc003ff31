"""Dense fuzzy vectors and matrices over a residuated lattice.

Products are max-tensor compositions, residuals are min-residuum
compositions. The heavy lifting is done by :mod:`latred.kernels`; this
module owns shapes, lattice bookkeeping and the epsilon-aware comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatch,
    FactorizationError,
    InvalidValue,
    LatticeMismatch,
    NotReflexive,
    NotTransitive,
)
from .lattice import LatticeSpec


def _frozen(arr, ndim, lattice, check):
    data = np.array(arr, dtype=np.float64, copy=True)
    if data.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-d array, got shape {data.shape}")
    if 0 in data.shape:
        raise DimensionMismatch(f"empty shape {data.shape}")
    if check and not lattice.check_values(data):
        raise InvalidValue(f"entries are not valid {lattice.kind.value} values")
    data.flags.writeable = False
    return data


class FuzzyVector:
    """A vector of lattice values; used both as a row and as a column."""

    __slots__ = ("data", "lattice")

    def __init__(self, entries, lattice: LatticeSpec, *, check: bool = True):
        self.data = _frozen(entries, 1, lattice, check)
        self.lattice = lattice

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __len__(self):
        return self.data.shape[0]

    def __getitem__(self, i):
        return float(self.data[i])

    def tolist(self) -> list[float]:
        return self.data.tolist()

    def __repr__(self):
        return f"FuzzyVector({self.data.tolist()}, {self.lattice.kind.value})"


class FuzzyMatrix:
    __slots__ = ("data", "lattice")

    def __init__(self, entries, lattice: LatticeSpec, *, check: bool = True):
        self.data = _frozen(entries, 2, lattice, check)
        self.lattice = lattice

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "FuzzyMatrix":
        return FuzzyMatrix(self.data.T, self.lattice, check=False)

    def row(self, i: int) -> FuzzyVector:
        return FuzzyVector(self.data[i], self.lattice, check=False)

    def col(self, j: int) -> FuzzyVector:
        return FuzzyVector(self.data[:, j], self.lattice, check=False)

    def __getitem__(self, ij):
        return float(self.data[ij])

    def __matmul__(self, other):
        if isinstance(other, FuzzyVector):
            return mat_vec_mul(self, other)
        return mat_mul(self, other)

    def __rmatmul__(self, other):
        if isinstance(other, FuzzyVector):
            return vec_mat_mul(other, self)
        return NotImplemented

    def tolist(self) -> list[list[float]]:
        return self.data.tolist()

    def __repr__(self):
        return f"FuzzyMatrix({self.data.tolist()}, {self.lattice.kind.value})"


def _same_lattice(*objs) -> LatticeSpec:
    lattice = objs[0].lattice
    for o in objs[1:]:
        if o.lattice != lattice:
            raise LatticeMismatch(f"{lattice} vs {o.lattice}")
    return lattice


def _wrap(data, lattice) -> FuzzyMatrix:
    return FuzzyMatrix(data, lattice, check=False)


def identity(n: int, lattice: LatticeSpec) -> FuzzyMatrix:
    return _wrap(np.eye(n), lattice)


def constant(rows: int, cols: int, value: float, lattice: LatticeSpec) -> FuzzyMatrix:
    return FuzzyMatrix(np.full((rows, cols), float(value)), lattice)


# -- products -----------------------------------------------------------


def mat_mul(M: FuzzyMatrix, N: FuzzyMatrix) -> FuzzyMatrix:
    """(M.N)(i, j) = max_s M(i, s) (x) N(s, j)."""
    lattice = _same_lattice(M, N)
    if M.cols != N.rows:
        raise DimensionMismatch(f"cannot multiply {M.shape} by {N.shape}")
    return _wrap(kernels.mat_mul(M.data, N.data, lattice.kind.code), lattice)


def mat_chain(first: FuzzyMatrix, *rest: FuzzyMatrix) -> FuzzyMatrix:
    out = first
    for M in rest:
        out = mat_mul(out, M)
    return out


def vec_mat_mul(alpha: FuzzyVector, M: FuzzyMatrix) -> FuzzyVector:
    lattice = _same_lattice(alpha, M)
    if alpha.n != M.rows:
        raise DimensionMismatch(f"vector of size {alpha.n} times matrix {M.shape}")
    out = kernels.mat_mul(alpha.data[None, :], M.data, lattice.kind.code)[0]
    return FuzzyVector(out, lattice, check=False)


def mat_vec_mul(M: FuzzyMatrix, beta: FuzzyVector) -> FuzzyVector:
    lattice = _same_lattice(M, beta)
    if M.cols != beta.n:
        raise DimensionMismatch(f"matrix {M.shape} times vector of size {beta.n}")
    out = kernels.mat_mul(M.data, beta.data[:, None], lattice.kind.code)[:, 0]
    return FuzzyVector(out, lattice, check=False)


def dot(alpha: FuzzyVector, beta: FuzzyVector) -> float:
    lattice = _same_lattice(alpha, beta)
    if alpha.n != beta.n:
        raise DimensionMismatch(f"dot of sizes {alpha.n} and {beta.n}")
    return float(np.max(lattice.tensor_arr(alpha.data, beta.data)))


# -- residuals ------------------------------------------------------------


def right_residual_mat(M: FuzzyMatrix, N: FuzzyMatrix) -> FuzzyMatrix:
    r"""M\N: the greatest X with M.X <= N.

    (M\N)(j, k) = min_i M(i, j) -> N(i, k). Square operands are the usual
    case; any pair with equal row counts is accepted.
    """
    lattice = _same_lattice(M, N)
    if M.rows != N.rows:
        raise DimensionMismatch(f"right residual needs equal row counts, got {M.shape} and {N.shape}")
    return _wrap(kernels.right_residual(M.data, N.data, lattice.kind.code), lattice)


def left_residual_mat(N: FuzzyMatrix, M: FuzzyMatrix) -> FuzzyMatrix:
    """N/M: the greatest X with X.M <= N.

    (N/M)(i, j) = min_k M(j, k) -> N(i, k).
    """
    lattice = _same_lattice(M, N)
    if M.cols != N.cols:
        raise DimensionMismatch(f"left residual needs equal column counts, got {N.shape} and {M.shape}")
    return _wrap(kernels.left_residual(N.data, M.data, lattice.kind.code), lattice)


def right_residual_vec(alpha: FuzzyVector, beta: FuzzyVector) -> FuzzyMatrix:
    r"""(alpha\beta)(i, j) = alpha(i) -> beta(j)."""
    lattice = _same_lattice(alpha, beta)
    if alpha.n != beta.n:
        raise DimensionMismatch(f"sizes {alpha.n} and {beta.n}")
    return _wrap(lattice.residuum_arr(alpha.data[:, None], beta.data[None, :]), lattice)


def left_residual_vec(beta: FuzzyVector, alpha: FuzzyVector) -> FuzzyMatrix:
    """(beta/alpha)(j, i) = alpha(i) -> beta(j)."""
    lattice = _same_lattice(alpha, beta)
    if alpha.n != beta.n:
        raise DimensionMismatch(f"sizes {beta.n} and {alpha.n}")
    return _wrap(lattice.residuum_arr(alpha.data[None, :], beta.data[:, None]), lattice)


# -- lattice structure on matrices ---------------------------------------------


def infimum(Ms: Iterable[FuzzyMatrix]) -> FuzzyMatrix:
    Ms = list(Ms)
    if not Ms:
        raise ValueError("infimum of an empty family")
    lattice = _same_lattice(*Ms)
    shape = Ms[0].shape
    for M in Ms[1:]:
        if M.shape != shape:
            raise DimensionMismatch(f"infimum over shapes {shape} and {M.shape}")
    out = Ms[0].data
    for M in Ms[1:]:
        out = np.minimum(out, M.data)
    return _wrap(out, lattice)


def supremum(Ms: Iterable[FuzzyMatrix]) -> FuzzyMatrix:
    Ms = list(Ms)
    if not Ms:
        raise ValueError("supremum of an empty family")
    lattice = _same_lattice(*Ms)
    out = Ms[0].data
    for M in Ms[1:]:
        if M.shape != out.shape:
            raise DimensionMismatch(f"supremum over shapes {out.shape} and {M.shape}")
        out = np.maximum(out, M.data)
    return _wrap(out, lattice)


def _check_same_shape(a, b):
    _same_lattice(a, b)
    if a.data.shape != b.data.shape:
        raise DimensionMismatch(f"shapes {a.data.shape} and {b.data.shape}")


def mat_leq(M, N) -> bool:
    """Entrywise M <= N within the lattice tolerance (also works on vectors)."""
    _check_same_shape(M, N)
    return bool(np.all(M.data <= N.data + M.lattice.epsilon))


def mat_eq(M, N) -> bool:
    _check_same_shape(M, N)
    return bool(np.all(np.abs(M.data - N.data) <= M.lattice.epsilon))


vec_leq = mat_leq
vec_eq = mat_eq


# -- quasi-orders ---------------------------------------------------------


def distinct_row_indices(M: FuzzyMatrix) -> tuple[int, ...]:
    """Smallest indices of the pairwise distinct rows (first occurrence wins)."""
    return kernels.distinct_rows(M.data, M.lattice.epsilon)


def distinct_column_indices(M: FuzzyMatrix) -> tuple[int, ...]:
    return kernels.distinct_rows(M.data.T, M.lattice.epsilon)


@dataclass(frozen=True)
class QuasiOrderMatrix:
    """A reflexive and transitive square matrix with its distinct-row index set.

    Build through :func:`validate_quasi_order`.
    """

    q: FuzzyMatrix
    distinct_row_indices: tuple[int, ...] = field(compare=False)

    @property
    def n(self) -> int:
        return self.q.rows

    @property
    def d(self) -> int:
        return len(self.distinct_row_indices)

    @property
    def data(self) -> np.ndarray:
        return self.q.data

    @property
    def lattice(self) -> LatticeSpec:
        return self.q.lattice

    def __getitem__(self, ij):
        return self.q[ij]


def validate_quasi_order(M: FuzzyMatrix) -> QuasiOrderMatrix:
    if isinstance(M, QuasiOrderMatrix):
        return M
    if not M.is_square:
        raise DimensionMismatch(f"a quasi-order must be square, got {M.shape}")
    eps = M.lattice.epsilon
    diag = np.diagonal(M.data)
    bad = np.flatnonzero(diag < 1.0 - eps)
    if bad.size:
        i = int(bad[0])
        raise NotReflexive(i, i, float(diag[i]))
    bad = kernels.transitivity_violation(M.data, M.lattice.kind.code, eps)
    if bad is not None:
        i, j, value = bad
        raise NotTransitive(i, j, float(value), float(M.data[i, j]))
    return QuasiOrderMatrix(M, distinct_row_indices(M))


def extract_rows_cols(Q: QuasiOrderMatrix) -> tuple[FuzzyMatrix, FuzzyMatrix]:
    """Return (Q_r, Q_c): the distinct rows of Q and the matching columns.

    Raises FactorizationError unless Q = Q_c . Q_r, which holds for every
    genuine quasi-order.
    """
    idx = list(Q.distinct_row_indices)
    Qr = _wrap(Q.data[idx, :], Q.lattice)
    Qc = _wrap(Q.data[:, idx], Q.lattice)
    if not mat_eq(mat_mul(Qc, Qr), Q.q):
        raise FactorizationError("Q != Q_c . Q_r; the matrix is not a quasi-order within tolerance")
    return Qr, Qc


def _combination(R: np.ndarray, i: int, others: Sequence[int], lattice: LatticeSpec):
    """Coefficients expressing row i through ``others``, or None if impossible.

    The coefficient of row j is the largest c with c (x) R[j] <= R[i], i.e. the
    meet over t of R[j, t] -> R[i, t].
    """
    if not others:
        return None
    rows = R[list(others)]
    coef = lattice.residuum_arr(rows, R[i][None, :]).min(axis=1)
    span = lattice.tensor_arr(coef[:, None], rows).max(axis=0)
    if np.all(np.abs(span - R[i]) <= lattice.epsilon):
        return coef
    return None


def greedy_factor(L: FuzzyMatrix, R: FuzzyMatrix) -> tuple[FuzzyMatrix, FuzzyMatrix]:
    """Shrink the inner dimension of L.R by dropping rows of R spanned by the rest.

    Rows are scanned in ascending order and the scan restarts after every
    removal. The product L.R is unchanged.
    """
    lattice = _same_lattice(L, R)
    Ld, Rd = L.data.copy(), R.data.copy()
    removed = True
    while removed and Rd.shape[0] > 1:
        removed = False
        for i in range(Rd.shape[0]):
            others = [j for j in range(Rd.shape[0]) if j != i]
            coef = _combination(Rd, i, others, lattice)
            if coef is None:
                continue
            # L[:, i] (x) R[i] = max_j (L[:, i] (x) c_j) (x) R[j]
            folded = lattice.tensor_arr(Ld[:, i][:, None], coef[None, :])
            Ld = np.maximum(Ld[:, others], folded)
            Rd = Rd[others]
            removed = True
            break
    return _wrap(Ld, lattice), _wrap(Rd, lattice)


def r_factorize(Q: QuasiOrderMatrix) -> tuple[FuzzyMatrix, FuzzyMatrix]:
    """Greedy r-factorization Q = L.R with r <= d(Q), starting from (Q_c, Q_r)."""
    Qr, Qc = extract_rows_cols(Q)
    L, R = greedy_factor(Qc, Qr)
    if not mat_eq(mat_mul(L, R), Q.q):
        raise FactorizationError("greedy factorization changed the product")
    return L, R
