"""Pure numpy kernels; same contract as the compiled ``_ckernels`` module.

Every function takes contiguous float64 arrays and the integer lattice code
(0 boolean, 1 Gödel, 2 Łukasiewicz, 3 product) and returns a fresh array.
"""
import numpy as np

# cap on the size of the broadcast temporaries, in float64 entries
_BLOCK = 1 << 22


def _tensor(a, b, code):
    if code == 2:
        return np.maximum(np.minimum(a, b) - (1.0 - np.maximum(a, b)), 0.0)
    if code == 3:
        return a * b
    return np.minimum(a, b)


def _residuum(a, b, code):
    if code == 2:
        return np.minimum(1.0 - a + b, 1.0)
    below = a <= b
    if code == 3:
        return np.where(below, 1.0, np.divide(b, a, out=np.ones(np.broadcast(a, b).shape), where=~below))
    return np.where(below, 1.0, b)


def _row_block(rows, inner, cols):
    per_row = max(inner * cols, 1)
    return max(1, min(rows, _BLOCK // per_row))


def mat_mul(A, B, code):
    p, s = A.shape
    q = B.shape[1]
    out = np.empty((p, q))
    step = _row_block(p, s, q)
    for lo in range(0, p, step):
        blk = _tensor(A[lo:lo + step, :, None], B[None, :, :], code)
        out[lo:lo + step] = blk.max(axis=1) if s else 0.0
    return out


def right_residual(M, N, code):
    # out[j, k] = min_i M[i, j] -> N[i, k]
    r, p = M.shape
    q = N.shape[1]
    out = np.empty((p, q))
    step = _row_block(p, r, q)
    for lo in range(0, p, step):
        blk = _residuum(M[:, lo:lo + step, None], N[:, None, :], code)
        out[lo:lo + step] = blk.min(axis=0) if r else 1.0
    return out


def left_residual(N, M, code):
    # out[i, j] = min_k M[j, k] -> N[i, k]
    p, q = N.shape
    r = M.shape[0]
    out = np.empty((p, r))
    step = _row_block(p, r, q)
    for lo in range(0, p, step):
        blk = _residuum(M[None, :, :], N[lo:lo + step, None, :], code)
        out[lo:lo + step] = blk.min(axis=2) if q else 1.0
    return out


def distinct_rows(M, eps):
    n = M.shape[0]
    step = _row_block(n, n, M.shape[1])
    same = np.empty((n, n), dtype=bool)
    for lo in range(0, n, step):
        same[lo:lo + step] = np.all(np.abs(M[lo:lo + step, None, :] - M[None, :, :]) <= eps, axis=2)
    reps = []
    for i, row in enumerate(same.tolist()):
        if not any(row[r] for r in reps):
            reps.append(i)
    return tuple(reps)


def ri_step(Q, D, code):
    out = Q.copy()
    for d in D:
        out = np.minimum(out, left_residual(mat_mul(d, Q, code), d, code))
    return out


def li_step(P, D, code):
    out = P.copy()
    for d in D:
        out = np.minimum(out, right_residual(d, mat_mul(P, d, code), code))
    return out


def transitivity_violation(M, code, eps):
    sq = mat_mul(M, M, code)
    over = np.argwhere(sq > M + eps)
    if over.size:
        i, j = (int(v) for v in over[0])
        return (i, j, float(sq[i, j]))
    return None
