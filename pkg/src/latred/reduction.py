"""k-reduction of fuzzy automata by right/left invariant quasi-order sequences.

Four procedures are provided:

* ``RI``  Q_0 = tau/tau,  Q_{t+1} = Q_t ^ meet_x (delta_x.Q_t)/delta_x
* ``LI``  P_0 = sigma\\sigma, P_{t+1} = P_t ^ meet_x delta_x\\(P_t.delta_x)
* ``WRI`` meet of tau_u/tau_u over all |u| <= k
* ``WLI`` meet of sigma_u\\sigma_u over all |u| <= k

The row automaton of the k-th matrix agrees with the input on every word of
length at most k. For RI/LI, once two consecutive members coincide the
sequence is constant and the reduction preserves the whole language.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .automaton import (
    FuzzyAutomaton,
    factor_automaton,
    k_equivalent,
    row_automaton,
    sigma_levels,
    tau_levels,
)
from .errors import EquivalenceCheckFailed, InternalInvariantError, ValidationError
from .fuzmat import (
    FuzzyMatrix,
    QuasiOrderMatrix,
    left_residual_vec,
    r_factorize,
    right_residual_vec,
    validate_quasi_order,
)


class MethodTag(str, enum.Enum):
    RI = "ri"
    LI = "li"
    WRI = "wri"
    WLI = "wli"


def _validated(data, lattice) -> QuasiOrderMatrix:
    try:
        return validate_quasi_order(FuzzyMatrix(data, lattice, check=False))
    except ValidationError as exc:
        raise InternalInvariantError(f"sequence member is not a quasi-order: {exc}") from exc


def _stack(A: FuzzyAutomaton) -> np.ndarray:
    return np.stack([d.data for d in A.delta.values()])


def _ri_step(A: FuzzyAutomaton, Q: np.ndarray, D=None) -> np.ndarray:
    return kernels.ri_step(Q, _stack(A) if D is None else D, A.lattice.kind.code)


def _li_step(A: FuzzyAutomaton, P: np.ndarray, D=None) -> np.ndarray:
    return kernels.li_step(P, _stack(A) if D is None else D, A.lattice.kind.code)


def _start(A: FuzzyAutomaton, method: MethodTag) -> np.ndarray:
    if method is MethodTag.RI:
        return left_residual_vec(A.tau, A.tau).data
    return right_residual_vec(A.sigma, A.sigma).data


def _iterate(A: FuzzyAutomaton, method: MethodTag, k: int):
    """Members 0..k of the RI/LI sequence and the first s <= k with M_s = M_{s+1}.

    One step past k is computed so that stabilization at s = k is detected.
    """
    method = MethodTag(method)
    if method not in (MethodTag.RI, MethodTag.LI):
        raise ValueError(f"{method.value} is not an iterated sequence")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    step = _ri_step if method is MethodTag.RI else _li_step
    eps = A.lattice.epsilon
    D = _stack(A)
    current = _start(A, method)
    members = [_validated(current, A.lattice)]
    stabilized_at = None
    for t in range(k + 1):
        nxt = step(A, current, D)
        if np.all(np.abs(nxt - current) <= eps):
            stabilized_at = t
            members.extend([members[-1]] * (k - t))
            break
        if t == k:
            break
        current = nxt
        members.append(_validated(current, A.lattice))
    return members, stabilized_at


def ri_sequence(A: FuzzyAutomaton, k: int) -> list[QuasiOrderMatrix]:
    """[Q_0, ..., Q_k]; members after stabilization repeat the stable matrix."""
    return _iterate(A, MethodTag.RI, k)[0]


def li_sequence(A: FuzzyAutomaton, k: int) -> list[QuasiOrderMatrix]:
    """[P_0, ..., P_k]; dual of :func:`ri_sequence`."""
    return _iterate(A, MethodTag.LI, k)[0]


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    # infimum is idempotent, so repeated vectors contribute nothing
    return np.unique(arr, axis=0)


def _hat_from_vectors(A: FuzzyAutomaton, method: MethodTag, vectors: np.ndarray) -> np.ndarray:
    code = A.lattice.kind.code
    if method is MethodTag.WRI:
        # Qhat(i, j) = min_u tau_u(j) -> tau_u(i)
        Tt = np.ascontiguousarray(vectors.T)
        return kernels.left_residual(Tt, Tt, code)
    # Phat(i, j) = min_u sigma_u(i) -> sigma_u(j)
    return kernels.right_residual(vectors, vectors, code)


def _levels(A, method, k, cap):
    return tau_levels(A, k, cap) if method is MethodTag.WRI else sigma_levels(A, k, cap)


def _weak_matrix(A: FuzzyAutomaton, method: MethodTag, k: int, cap: int | None = None) -> QuasiOrderMatrix:
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    vectors = _unique_rows(np.concatenate(_levels(A, method, k, cap), axis=0))
    return _validated(_hat_from_vectors(A, method, vectors), A.lattice)


def wri_matrix(A: FuzzyAutomaton, k: int, cap: int | None = None) -> QuasiOrderMatrix:
    """Meet of tau_u/tau_u over all words u with |u| <= k."""
    return _weak_matrix(A, MethodTag.WRI, k, cap)


def wli_matrix(A: FuzzyAutomaton, k: int, cap: int | None = None) -> QuasiOrderMatrix:
    r"""Meet of sigma_u\sigma_u over all words u with |u| <= k."""
    return _weak_matrix(A, MethodTag.WLI, k, cap)


def weak_sequence(A: FuzzyAutomaton, method, k: int, cap: int | None = None) -> list[QuasiOrderMatrix]:
    """[M_0, ..., M_k] for WRI or WLI, built level by level with a running meet."""
    method = MethodTag(method)
    if method not in (MethodTag.WRI, MethodTag.WLI):
        raise ValueError(f"{method.value} is not a weakly invariant method")
    out = []
    current = None
    for level in _levels(A, method, k, cap):
        part = _hat_from_vectors(A, method, _unique_rows(level))
        current = part if current is None else np.minimum(current, part)
        out.append(_validated(current, A.lattice))
    return out


def method_matrix(A: FuzzyAutomaton, method, k: int, cap: int | None = None) -> QuasiOrderMatrix:
    """The k-th matrix of the chosen procedure."""
    method = MethodTag(method)
    if method is MethodTag.RI:
        return ri_sequence(A, k)[-1]
    if method is MethodTag.LI:
        return li_sequence(A, k)[-1]
    if method is MethodTag.WRI:
        return wri_matrix(A, k, cap)
    return wli_matrix(A, k, cap)


def greatest_invariant(A: FuzzyAutomaton, method, max_steps: int) -> QuasiOrderMatrix | None:
    """Iterate RI or LI until two consecutive members agree.

    Returns the stable matrix, or None if it was not reached within
    ``max_steps`` successor computations (over the product structure the
    sequence may never stabilize).
    """
    method = MethodTag(method)
    if method not in (MethodTag.RI, MethodTag.LI):
        raise ValueError("greatest_invariant is defined for ri and li only")
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    step = _ri_step if method is MethodTag.RI else _li_step
    eps = A.lattice.epsilon
    D = _stack(A)
    current = _start(A, method)
    for _ in range(max_steps):
        nxt = step(A, current, D)
        if np.all(np.abs(nxt - current) <= eps):
            return _validated(current, A.lattice)
        current = nxt
    return None


@dataclass
class ReductionReport:
    method: MethodTag
    k: int
    d_sequence: list[int]
    stabilized_at: int | None
    original_states: int
    reduced_states: int
    equivalence_checked_to: int
    factorized: int | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["method"] = self.method.value
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "ReductionReport":
        fields = dict(doc)
        fields["method"] = MethodTag(fields["method"])
        fields["d_sequence"] = [int(d) for d in fields["d_sequence"]]
        return cls(**{name: fields[name] for name in cls.__dataclass_fields__ if name in fields})


def reduce(A: FuzzyAutomaton, method, k: int, factorize: bool = False, cap: int | None = None):
    """k-reduce ``A``; returns (reduced automaton, ReductionReport).

    The reduced automaton is always checked to be k-equivalent to ``A``;
    a failure raises EquivalenceCheckFailed.
    """
    method = MethodTag(method)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    stabilized_at = None
    if method in (MethodTag.RI, MethodTag.LI):
        members, stabilized_at = _iterate(A, method, k)
        Q = members[-1]
        d_sequence = [M.d for M in members]
    else:
        Q = _weak_matrix(A, method, k, cap)
        d_sequence = [Q.d]

    r = None
    if factorize:
        L, R = r_factorize(Q)
        r = L.cols
        reduced = factor_automaton(A, L, R)
    else:
        reduced = row_automaton(A, Q)

    check = k_equivalent(A, reduced, k, cap)
    if not check.equal:
        raise EquivalenceCheckFailed(
            f"{method.value} reduction at k={k} differs on {''.join(check.witness) or 'the empty word'}: "
            f"{check.value_a!r} vs {check.value_b!r}"
        )
    report = ReductionReport(
        method=method,
        k=k,
        d_sequence=d_sequence,
        stabilized_at=stabilized_at,
        original_states=A.n,
        reduced_states=reduced.n,
        equivalence_checked_to=k,
        factorized=r,
    )
    return reduced, report
