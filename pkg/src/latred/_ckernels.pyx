# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled max-tensor product and min-residuum kernels.

Lattice codes: 0 boolean, 1 Gödel, 2 Łukasiewicz, 3 product. Results are
bit-identical to the numpy fallback: each entry is produced by the same
floating point expression and max/min are order independent.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline double _tensor(double a, double b, int code) noexcept nogil:
    cdef double c, lo, hi
    if code == 2:
        # lo - (1 - hi) rounds once (1 - hi is exact when the result is
        # positive) and keeps 1 an exact identity
        lo = a if a <= b else b
        hi = b if a <= b else a
        c = lo - (1.0 - hi)
        return c if c > 0.0 else 0.0
    if code == 3:
        return a * b
    return a if a <= b else b


cdef inline double _residuum(double a, double b, int code) noexcept nogil:
    cdef double c
    if code == 2:
        c = 1.0 - a + b
        return c if c < 1.0 else 1.0
    if code == 3:
        # the divisor is a only where a > b >= 0, so the quotient matches b / a
        c = b / (a if a > b else 1.0)
        return 1.0 if a <= b else c
    return 1.0 if a <= b else b


# Inner loops are elementwise updates along a contiguous row so that the
# compiler can unswitch on ``code`` and vectorize the selects.

def mat_mul(const double[:, ::1] A, const double[:, ::1] B, int code):
    cdef Py_ssize_t p = A.shape[0], s = A.shape[1], q = B.shape[1]
    cdef Py_ssize_t i, j, t
    cdef double v, a
    out = np.zeros((p, q), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(p):
            for t in range(s):
                a = A[i, t]
                for j in range(q):
                    v = _tensor(a, B[t, j], code)
                    o[i, j] = v if v > o[i, j] else o[i, j]
    return out


def right_residual(const double[:, ::1] M, const double[:, ::1] N, int code):
    # out[j, k] = min_i M[i, j] -> N[i, k]
    cdef Py_ssize_t r = M.shape[0], p = M.shape[1], q = N.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double v, m
    out = np.ones((p, q), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(r):
            for j in range(p):
                m = M[i, j]
                for k in range(q):
                    v = _residuum(m, N[i, k], code)
                    o[j, k] = v if v < o[j, k] else o[j, k]
    return out


def left_residual(const double[:, ::1] N, const double[:, ::1] M, int code):
    # out[i, j] = min_k M[j, k] -> N[i, k], swept over k with M transposed
    cdef Py_ssize_t p = N.shape[0], q = N.shape[1], r = M.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double v, b
    Mt_arr = np.ascontiguousarray(np.asarray(M).T)
    cdef const double[:, ::1] Mt = Mt_arr
    out = np.ones((p, r), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(p):
            for k in range(q):
                b = N[i, k]
                for j in range(r):
                    v = _residuum(Mt[k, j], b, code)
                    o[i, j] = v if v < o[i, j] else o[i, j]
    return out


def distinct_rows(const double[:, ::1] M, double eps):
    """Indices of the first occurrence of each distinct row, rows compared entrywise within eps."""
    cdef Py_ssize_t n = M.shape[0], q = M.shape[1]
    cdef Py_ssize_t i, r, t, nreps = 0
    cdef bint same, found
    reps = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] rp = reps
    with nogil:
        for i in range(n):
            found = False
            for r in range(nreps):
                same = True
                for t in range(q):
                    if M[i, t] - M[rp[r], t] > eps or M[rp[r], t] - M[i, t] > eps:
                        same = False
                        break
                if same:
                    found = True
                    break
            if not found:
                rp[nreps] = i
                nreps += 1
    return tuple(int(v) for v in reps[:nreps])


def ri_step(const double[:, ::1] Q, const double[:, :, ::1] D, int code):
    """Q ^ meet_x (D[x].Q)/D[x] in one pass."""
    cdef Py_ssize_t m = D.shape[0], n = Q.shape[0]
    cdef Py_ssize_t x, i, j, k, t
    cdef double v, a, b
    out = np.array(Q, dtype=np.float64, copy=True)
    dq_arr = np.empty((n, n), dtype=np.float64)
    dt_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[:, ::1] dq = dq_arr
    cdef double[:, ::1] dt = dt_arr
    with nogil:
        for x in range(m):
            for i in range(n):
                for j in range(n):
                    dq[i, j] = 0.0
                    dt[j, i] = D[x, i, j]
                for t in range(n):
                    a = D[x, i, t]
                    for j in range(n):
                        v = _tensor(a, Q[t, j], code)
                        dq[i, j] = v if v > dq[i, j] else dq[i, j]
            # (dq / D[x])(i, j) = min_k D[x, j, k] -> dq[i, k]
            for i in range(n):
                for k in range(n):
                    b = dq[i, k]
                    for j in range(n):
                        v = _residuum(dt[k, j], b, code)
                        o[i, j] = v if v < o[i, j] else o[i, j]
    return out


def li_step(const double[:, ::1] P, const double[:, :, ::1] D, int code):
    r"""P ^ meet_x D[x]\(P.D[x]) in one pass."""
    cdef Py_ssize_t m = D.shape[0], n = P.shape[0]
    cdef Py_ssize_t x, i, j, k, t
    cdef double v, a
    out = np.array(P, dtype=np.float64, copy=True)
    pd_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[:, ::1] pd = pd_arr
    with nogil:
        for x in range(m):
            for i in range(n):
                for j in range(n):
                    pd[i, j] = 0.0
                for t in range(n):
                    a = P[i, t]
                    for j in range(n):
                        v = _tensor(a, D[x, t, j], code)
                        pd[i, j] = v if v > pd[i, j] else pd[i, j]
            # (D[x] \ pd)(j, k) = min_i D[x, i, j] -> pd[i, k]
            for i in range(n):
                for j in range(n):
                    a = D[x, i, j]
                    for k in range(n):
                        v = _residuum(a, pd[i, k], code)
                        o[j, k] = v if v < o[j, k] else o[j, k]
    return out


def transitivity_violation(const double[:, ::1] M, int code, double eps):
    """First (i, j, (M.M)(i, j)) with (M.M)(i, j) > M(i, j) + eps, or None."""
    cdef Py_ssize_t n = M.shape[0], i, j, t
    cdef double v, a
    row_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] row = row_arr
    for i in range(n):
        with nogil:
            for j in range(n):
                row[j] = 0.0
            for t in range(n):
                a = M[i, t]
                for j in range(n):
                    v = _tensor(a, M[t, j], code)
                    row[j] = v if v > row[j] else row[j]
        for j in range(n):
            if row[j] > M[i, j] + eps:
                return (i, j, row[j])
    return None
