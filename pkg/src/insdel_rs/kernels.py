"""Hot loops: determinant zero-tests over GF(q^3), and LCS dynamic programs.

Each kernel exists twice.  The ``*_nb`` functions are numba-compiled loops;
the ``*_np`` functions vectorise the same computation with numpy.  The public
wrappers pick one through :func:`insdel_rs._backend.resolve`.

Tower elements enter as coordinate triples over the base field, which is
described by its ``ADD``/``SUB``/``MUL`` tables.  ``G`` holds the reductions
of g^3 and g^4 (rows 0 and 1) in the basis {1, g, g^2}.
"""

import numpy as np

from ._backend import njit, resolve


def _tmul(a0, a1, a2, b0, b1, b2, ADD, MUL, G):
    # Works elementwise on numpy arrays as well as on scalars under numba.
    d0 = MUL[a0, b0]
    d1 = ADD[MUL[a0, b1], MUL[a1, b0]]
    d2 = ADD[ADD[MUL[a0, b2], MUL[a1, b1]], MUL[a2, b0]]
    d3 = ADD[MUL[a1, b2], MUL[a2, b1]]
    d4 = MUL[a2, b2]
    c0 = ADD[ADD[d0, MUL[d3, G[0, 0]]], MUL[d4, G[1, 0]]]
    c1 = ADD[ADD[d1, MUL[d3, G[0, 1]]], MUL[d4, G[1, 1]]]
    c2 = ADD[ADD[d2, MUL[d3, G[0, 2]]], MUL[d4, G[1, 2]]]
    return c0, c1, c2


_tmul_nb = njit(_tmul)


def tower_mul(a, b, ADD, MUL, G):
    """Vectorised product of coordinate arrays shaped ``(..., 3)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    c = _tmul(a[..., 0], a[..., 1], a[..., 2], b[..., 0], b[..., 1], b[..., 2], ADD, MUL, G)
    return np.stack(np.broadcast_arrays(*c), axis=-1)


def tower_sub(a, b, SUB):
    a = np.asarray(a)
    b = np.asarray(b)
    return SUB[a, b]


def tower_add(a, b, ADD):
    return ADD[np.asarray(a), np.asarray(b)]


# --------------------------------------------------------------------------
# k = 2: det V_{I,J} = (a1 - a2)(b2 - b3) - (a2 - a3)(b1 - b2)
# with a = alpha_I, b = alpha_J.  D12[t] = alpha_{t1} - alpha_{t2} and
# D23[t] = alpha_{t2} - alpha_{t3} per triple t.


def _verify_k2_nb_impl(D12, D23, trip, ADD, MUL, G, limit, stop):
    T = trip.shape[0]
    out = np.zeros((limit, 2), dtype=np.int64)
    checked = 0
    nviol = 0
    for a in range(T):
        i0 = trip[a, 0]
        i1 = trip[a, 1]
        i2 = trip[a, 2]
        x0 = D12[a, 0]
        x1 = D12[a, 1]
        x2 = D12[a, 2]
        u0 = D23[a, 0]
        u1 = D23[a, 1]
        u2 = D23[a, 2]
        for b in range(T):
            agree = 0
            if trip[b, 0] == i0:
                agree += 1
            if trip[b, 1] == i1:
                agree += 1
            if trip[b, 2] == i2:
                agree += 1
            if agree > 1:
                continue
            checked += 1
            p = _tmul_nb(x0, x1, x2, D23[b, 0], D23[b, 1], D23[b, 2], ADD, MUL, G)
            r = _tmul_nb(u0, u1, u2, D12[b, 0], D12[b, 1], D12[b, 2], ADD, MUL, G)
            if p[0] == r[0] and p[1] == r[1] and p[2] == r[2]:
                if nviol < limit:
                    out[nviol, 0] = a
                    out[nviol, 1] = b
                nviol += 1
                if stop and nviol >= limit:
                    return checked, nviol, out
    return checked, nviol, out


_verify_k2_nb = njit(_verify_k2_nb_impl)


def _verify_k2_np(D12, D23, trip, ADD, MUL, G, limit, stop):
    out = np.zeros((limit, 2), dtype=np.int64)
    checked = 0
    nviol = 0
    for a in range(trip.shape[0]):
        qual = (trip == trip[a]).sum(axis=1) <= 1
        p = tower_mul(D12[a], D23, ADD, MUL, G)
        r = tower_mul(D23[a], D12, ADD, MUL, G)
        bad = np.flatnonzero(qual & (p == r).all(axis=1))
        if stop and nviol + bad.size >= limit:
            bad = bad[: limit - nviol]
            checked += int(qual[: bad[-1] + 1].sum())
            out[nviol:limit, 0] = a
            out[nviol:limit, 1] = bad
            return checked, limit, out
        checked += int(qual.sum())
        room = max(0, min(limit - nviol, bad.size))
        out[nviol : nviol + room, 0] = a
        out[nviol : nviol + room, 1] = bad[:room]
        nviol += bad.size
    return checked, nviol, out


# --------------------------------------------------------------------------
# general k: rank test of the (2k-1) x (2k-1) matrix by division-free
# elimination (row_r <- pivot * row_r - lead_r * row_c keeps the rank).
# POW[i, d] = alpha_i^d for d < k.


def _general_singular(M, s, ADD, SUB, MUL, G):
    for c in range(s):
        piv = -1
        for r in range(c, s):
            if M[r, c, 0] != 0 or M[r, c, 1] != 0 or M[r, c, 2] != 0:
                piv = r
                break
        if piv < 0:
            return True
        if piv != c:
            for col in range(s):
                for z in range(3):
                    tmp = M[c, col, z]
                    M[c, col, z] = M[piv, col, z]
                    M[piv, col, z] = tmp
        p0 = M[c, c, 0]
        p1 = M[c, c, 1]
        p2 = M[c, c, 2]
        for r in range(c + 1, s):
            a0 = M[r, c, 0]
            a1 = M[r, c, 1]
            a2 = M[r, c, 2]
            if a0 == 0 and a1 == 0 and a2 == 0:
                continue
            for col in range(c, s):
                x = _tmul_nb(p0, p1, p2, M[r, col, 0], M[r, col, 1], M[r, col, 2], ADD, MUL, G)
                y = _tmul_nb(a0, a1, a2, M[c, col, 0], M[c, col, 1], M[c, col, 2], ADD, MUL, G)
                M[r, col, 0] = SUB[x[0], y[0]]
                M[r, col, 1] = SUB[x[1], y[1]]
                M[r, col, 2] = SUB[x[2], y[2]]
    return False


_general_singular_nb = njit(_general_singular)


def _fill_matrix(M, POW, tup_i, tup_j, s, k):
    for t in range(s):
        for z in range(3):
            M[t, 0, z] = POW[tup_i[t], 0, z]
        for d in range(1, k):
            for z in range(3):
                M[t, d, z] = POW[tup_i[t], d, z]
                M[t, k - 1 + d, z] = POW[tup_j[t], d, z]


_fill_matrix_nb = njit(_fill_matrix)


def _verify_general_nb_impl(POW, tuples, k, ADD, SUB, MUL, G, limit, stop):
    T = tuples.shape[0]
    s = tuples.shape[1]
    M = np.zeros((s, s, 3), dtype=np.int64)
    out = np.zeros((limit, 2), dtype=np.int64)
    checked = 0
    nviol = 0
    for a in range(T):
        for b in range(T):
            agree = 0
            for t in range(s):
                if tuples[a, t] == tuples[b, t]:
                    agree += 1
            if agree > k - 1:
                continue
            checked += 1
            _fill_matrix_nb(M, POW, tuples[a], tuples[b], s, k)
            if _general_singular_nb(M, s, ADD, SUB, MUL, G):
                if nviol < limit:
                    out[nviol, 0] = a
                    out[nviol, 1] = b
                nviol += 1
                if stop and nviol >= limit:
                    return checked, nviol, out
    return checked, nviol, out


_verify_general_nb = njit(_verify_general_nb_impl)


def _batch_singular_np(M, ADD, SUB, MUL, G):
    """Rank test on a batch ``M`` of shape (B, s, s, 3); modifies ``M``."""
    B, s = M.shape[0], M.shape[1]
    rows = np.arange(B)
    singular = np.zeros(B, dtype=bool)
    for c in range(s):
        nz = M[:, c:, c, :].any(axis=-1)
        singular |= ~nz.any(axis=1)
        piv = c + nz.argmax(axis=1)
        top = M[rows, c].copy()
        M[rows, c] = M[rows, piv]
        M[rows, piv] = top
        pivot = M[:, c, c, :][:, None, :]
        for r in range(c + 1, s):
            lead = M[:, r, c, :][:, None, :]
            x = tower_mul(pivot, M[:, r, c:, :], ADD, MUL, G)
            y = tower_mul(lead, M[:, c, c:, :], ADD, MUL, G)
            M[:, r, c:, :] = SUB[x, y]
    return singular


def _verify_general_np(POW, tuples, k, ADD, SUB, MUL, G, limit, stop):
    T, s = tuples.shape
    out = np.zeros((limit, 2), dtype=np.int64)
    checked = 0
    nviol = 0
    for a in range(T):
        qual = np.flatnonzero((tuples == tuples[a]).sum(axis=1) <= k - 1)
        if qual.size == 0:
            continue
        J = tuples[qual]
        M = np.empty((qual.size, s, s, 3), dtype=np.int64)
        M[:, :, 0, :] = POW[tuples[a], 0][None]
        M[:, :, 1:k, :] = POW[tuples[a], 1:k][None]
        M[:, :, k:, :] = POW[J][:, :, 1:k, :]
        bad = np.flatnonzero(_batch_singular_np(M, ADD, SUB, MUL, G))
        if stop and nviol + bad.size >= limit:
            bad = bad[: limit - nviol]
            checked += int(bad[-1]) + 1
            out[nviol:limit, 0] = a
            out[nviol:limit, 1] = qual[bad]
            return checked, limit, out
        checked += qual.size
        room = max(0, min(limit - nviol, bad.size))
        out[nviol : nviol + room, 0] = a
        out[nviol : nviol + room, 1] = qual[bad[:room]]
        nviol += bad.size
    return checked, nviol, out


def verify_k2(D12, D23, trip, ADD, MUL, G, limit=1, stop=True, backend=None):
    """Scan ordered triple pairs in lexicographic order for vanishing determinants.

    Returns ``(pairs_checked, violations_found, first_witness_indices)``.
    """
    fn = _verify_k2_nb if resolve(backend) == "numba" else _verify_k2_np
    checked, nviol, out = fn(D12, D23, trip, ADD, MUL, G, limit, stop)
    return int(checked), int(nviol), out[: min(nviol, limit)]


def verify_general(POW, tuples, k, ADD, SUB, MUL, G, limit=1, stop=True, backend=None):
    fn = _verify_general_nb if resolve(backend) == "numba" else _verify_general_np
    checked, nviol, out = fn(POW, tuples, k, ADD, SUB, MUL, G, limit, stop)
    return int(checked), int(nviol), out[: min(nviol, limit)]


def singular_batch(M, ADD, SUB, MUL, G, backend=None):
    """Rank test of every matrix in ``M`` (B, s, s, 3); ``M`` is not modified."""
    M = np.array(M, dtype=np.int64, copy=True)
    if resolve(backend) == "numpy":
        return _batch_singular_np(M, ADD, SUB, MUL, G)
    return np.array([_general_singular_nb(M[b], M.shape[1], ADD, SUB, MUL, G) for b in range(M.shape[0])], dtype=bool)


# --------------------------------------------------------------------------
# longest common subsequence


def _lcs_buf(a, b, prev, cur):
    m = b.shape[0]
    for j in range(m + 1):
        prev[j] = 0
    for i in range(a.shape[0]):
        ai = a[i]
        cur[0] = 0
        for j in range(m):
            if ai == b[j]:
                cur[j + 1] = prev[j] + 1
            elif prev[j + 1] >= cur[j]:
                cur[j + 1] = prev[j + 1]
            else:
                cur[j + 1] = cur[j]
        for j in range(m + 1):
            prev[j] = cur[j]
    return prev[m]


_lcs_buf_nb = njit(_lcs_buf)


def _lcs_pair_impl(a, b):
    prev = np.zeros(b.shape[0] + 1, dtype=np.int64)
    cur = np.zeros(b.shape[0] + 1, dtype=np.int64)
    return _lcs_buf_nb(a, b, prev, cur)


_lcs_pair_nb = njit(_lcs_pair_impl)


def _lcs_many_nb_impl(W, y):
    out = np.empty(W.shape[0], dtype=np.int64)
    prev = np.zeros(y.shape[0] + 1, dtype=np.int64)
    cur = np.zeros(y.shape[0] + 1, dtype=np.int64)
    for r in range(W.shape[0]):
        out[r] = _lcs_buf_nb(W[r], y, prev, cur)
    return out


_lcs_many_nb = njit(_lcs_many_nb_impl)


def _lcs_rows_np(A, B):
    """Row-wise LCS of two equally long batches of words."""
    n_rows = A.shape[0]
    m = B.shape[1]
    prev = np.zeros((n_rows, m + 1), dtype=np.int64)
    for i in range(A.shape[1]):
        cur = np.zeros_like(prev)
        eq = A[:, i : i + 1] == B
        diag = prev[:, :-1] + 1
        up = prev[:, 1:]
        for j in range(m):
            cur[:, j + 1] = np.where(eq[:, j], diag[:, j], np.maximum(up[:, j], cur[:, j]))
        prev = cur
    return prev[:, m]


def lcs_pair(a, b, backend=None):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if resolve(backend) == "numba":
        return int(_lcs_pair_nb(a, b))
    if a.size == 0 or b.size == 0:
        return 0
    return int(_lcs_rows_np(a[None, :], b[None, :])[0])


def lcs_many(W, y, backend=None):
    """LCS of every row of ``W`` against the single word ``y``."""
    W = np.asarray(W, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if W.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if resolve(backend) == "numba":
        return _lcs_many_nb(W, y)
    if W.shape[1] == 0 or y.size == 0:
        return np.zeros(W.shape[0], dtype=np.int64)
    return _lcs_rows_np(W, np.broadcast_to(y, (W.shape[0], y.size)))


def _first_confusable_nb_impl(W, threshold):
    N, n = W.shape
    prev = np.zeros(n + 1, dtype=np.int64)
    cur = np.zeros(n + 1, dtype=np.int64)
    for i in range(N):
        for j in range(i + 1, N):
            # an LCS of length L needs at least L matching symbol pairs
            hits = 0
            for x in range(n):
                wx = W[i, x]
                for z in range(n):
                    if wx == W[j, z]:
                        hits += 1
            if hits < threshold:
                continue
            if _lcs_buf_nb(W[i], W[j], prev, cur) >= threshold:
                return i, j
    return -1, -1


_first_confusable_nb = njit(_first_confusable_nb_impl)


def _first_confusable_np(W, threshold):
    N = W.shape[0]
    for i in range(N - 1):
        rest = W[i + 1 :]
        hits = (rest[:, :, None] == W[i][None, None, :]).sum(axis=(1, 2))
        cand = np.flatnonzero(hits >= threshold)
        if cand.size == 0:
            continue
        L = _lcs_rows_np(rest[cand], np.broadcast_to(W[i], (cand.size, W.shape[1])))
        good = np.flatnonzero(L >= threshold)
        if good.size:
            return i, i + 1 + int(cand[good[0]])
    return -1, -1


def first_confusable(W, threshold, backend=None):
    """First pair ``i < j`` (row-major) with ``lcs(W[i], W[j]) >= threshold``, or ``None``."""
    W = np.ascontiguousarray(W, dtype=np.int64)
    if resolve(backend) == "numba":
        i, j = _first_confusable_nb(W, threshold)
    else:
        i, j = _first_confusable_np(W, threshold)
    return None if i < 0 else (int(i), int(j))
