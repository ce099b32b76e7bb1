# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled echelon kernel over the Gaussian integers (int64, overflow-checked).

Same contract as ``zsym._kernel_py.echelon``: canonical reduced rows with a
positive integer pivot and unit content. Any int64 overflow raises
``OverflowError``; the dispatcher then reruns the bigint Python kernel, so
results stay exact.
"""
import numpy as np
cimport numpy as cnp

from libc.stdlib cimport llabs

ctypedef long long i64

cdef extern from *:
    """
    static inline int zs_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int zs_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int zs_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int zs_mul(i64 a, i64 b, i64 *r) nogil
    int zs_add(i64 a, i64 b, i64 *r) nogil
    int zs_sub(i64 a, i64 b, i64 *r) nogil


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    a = llabs(a)
    b = llabs(b)
    while b:
        a, b = b, a % b
    return a


cdef int _content_divide(i64[::1] re, i64[::1] im, Py_ssize_t n) nogil:
    cdef i64 g = 0
    cdef Py_ssize_t k
    for k in range(n):
        if re[k]:
            g = _gcd(g, re[k])
        if im[k]:
            g = _gcd(g, im[k])
        if g == 1:
            return 0
    if g > 1:
        for k in range(n):
            re[k] //= g
            im[k] //= g
    return 0


cdef int _eliminate(i64[::1] tre, i64[::1] tim, i64[::1] pre, i64[::1] pim,
                    Py_ssize_t col, Py_ssize_t n) nogil:
    """t <- P*t - t[col]*p ; returns 1 on overflow."""
    cdef i64 P = pre[col]
    cdef i64 ta = tre[col]
    cdef i64 tb = tim[col]
    cdef i64 x, y, sa, sb, u, v
    cdef Py_ssize_t k
    for k in range(n):
        if P != 1:
            if zs_mul(P, tre[k], &x) or zs_mul(P, tim[k], &y):
                return 1
        else:
            x = tre[k]
            y = tim[k]
        if pre[k] or pim[k]:
            # s = (ta + tb i)(pre + pim i)
            if zs_mul(ta, pre[k], &u) or zs_mul(tb, pim[k], &v) or zs_sub(u, v, &sa):
                return 1
            if zs_mul(ta, pim[k], &u) or zs_mul(tb, pre[k], &v) or zs_add(u, v, &sb):
                return 1
            if zs_sub(x, sa, &x) or zs_sub(y, sb, &y):
                return 1
        tre[k] = x
        tim[k] = y
    tre[col] = 0
    tim[col] = 0
    _content_divide(tre, tim, n)
    return 0


cdef int _eliminate_sparse(i64[::1] tre, i64[::1] tim, i64[::1] pre, i64[::1] pim,
                           Py_ssize_t[::1] nz, Py_ssize_t cnt, Py_ssize_t col) nogil:
    """t <- t - t[col]*p for a pivot row with pivot 1, touching only p's nonzero columns."""
    cdef i64 ta = tre[col]
    cdef i64 tb = tim[col]
    cdef i64 u, v, sa, sb
    cdef Py_ssize_t q, k
    for q in range(cnt):
        k = nz[q]
        if zs_mul(ta, pre[k], &u) or zs_mul(tb, pim[k], &v) or zs_sub(u, v, &sa):
            return 1
        if zs_mul(ta, pim[k], &u) or zs_mul(tb, pre[k], &v) or zs_add(u, v, &sb):
            return 1
        if zs_sub(tre[k], sa, &tre[k]) or zs_sub(tim[k], sb, &tim[k]):
            return 1
    tre[col] = 0
    tim[col] = 0
    return 0


cdef Py_ssize_t _support(i64[::1] re, i64[::1] im, Py_ssize_t[::1] nz, Py_ssize_t n) nogil:
    cdef Py_ssize_t k, cnt = 0
    for k in range(n):
        if re[k] or im[k]:
            nz[cnt] = k
            cnt += 1
    return cnt


cdef int _make_pivot(i64[::1] re, i64[::1] im, Py_ssize_t col, Py_ssize_t n) nogil:
    cdef i64 x = re[col]
    cdef i64 y = im[col]
    cdef i64 a, b, u, v
    cdef Py_ssize_t k
    if y != 0:
        for k in range(n):
            a = re[k]
            b = im[k]
            if a == 0 and b == 0:
                continue
            # (a + bi)(x - yi) = (ax + by) + (bx - ay) i
            if zs_mul(a, x, &u) or zs_mul(b, y, &v) or zs_add(u, v, &re[k]):
                return 1
            if zs_mul(b, x, &u) or zs_mul(a, y, &v) or zs_sub(u, v, &im[k]):
                return 1
    elif x < 0:
        for k in range(n):
            re[k] = -re[k]
            im[k] = -im[k]
    _content_divide(re, im, n)
    return 0


def echelon_dense(cnp.int64_t[:, ::1] re_in, cnp.int64_t[:, ::1] im_in):
    """Canonical echelon basis of the rows of ``re_in + i*im_in``.

    Returns ``(pivots, re, im)`` with ``re``/``im`` of shape (rank, ncols),
    rows ordered by pivot column.
    """
    cdef Py_ssize_t nrows = re_in.shape[0]
    cdef Py_ssize_t ncols = re_in.shape[1]
    cdef Py_ssize_t cap = min(nrows, ncols)
    prow_re_arr = np.zeros((max(cap, 1), ncols), dtype=np.int64)
    prow_im_arr = np.zeros((max(cap, 1), ncols), dtype=np.int64)
    slot_arr = np.full(ncols, -1, dtype=np.intp)
    nz_arr = np.zeros((max(cap, 1), ncols), dtype=np.intp)
    nzc_arr = np.zeros(max(cap, 1), dtype=np.intp)
    colof_arr = np.zeros(max(cap, 1), dtype=np.intp)
    tre_arr = np.zeros(ncols, dtype=np.int64)
    tim_arr = np.zeros(ncols, dtype=np.int64)
    cdef i64[:, ::1] pr = prow_re_arr
    cdef i64[:, ::1] pi = prow_im_arr
    cdef Py_ssize_t[::1] slot_of = slot_arr
    cdef Py_ssize_t[::1] col_of = colof_arr
    cdef Py_ssize_t[:, ::1] nz = nz_arr
    cdef Py_ssize_t[::1] nzc = nzc_arr
    cdef i64[::1] tre = tre_arr
    cdef i64[::1] tim = tim_arr
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t r, c, s, lead, k
    cdef bint nonzero
    cdef int err = 0

    with nogil:
        for r in range(nrows):
            nonzero = False
            for k in range(ncols):
                tre[k] = re_in[r, k]
                tim[k] = im_in[r, k]
                if tre[k] or tim[k]:
                    nonzero = True
            if not nonzero:
                continue
            for c in range(ncols):
                s = slot_of[c]
                if s >= 0 and (tre[c] or tim[c]):
                    if pr[s, c] == 1:
                        if _eliminate_sparse(tre, tim, pr[s], pi[s], nz[s], nzc[s], c):
                            err = 1
                            break
                    elif _eliminate(tre, tim, pr[s], pi[s], c, ncols):
                        err = 1
                        break
            if err:
                break
            lead = -1
            for k in range(ncols):
                if tre[k] or tim[k]:
                    lead = k
                    break
            if lead < 0:
                continue
            if _make_pivot(tre, tim, lead, ncols):
                err = 1
                break
            for s in range(rank):
                if pr[s, lead] or pi[s, lead]:
                    if _eliminate(pr[s], pi[s], tre, tim, lead, ncols):
                        err = 1
                        break
                    nzc[s] = _support(pr[s], pi[s], nz[s], ncols)
            if err:
                break
            for k in range(ncols):
                pr[rank, k] = tre[k]
                pi[rank, k] = tim[k]
            nzc[rank] = _support(pr[rank], pi[rank], nz[rank], ncols)
            slot_of[lead] = rank
            col_of[rank] = lead
            rank += 1
    if err:
        raise OverflowError("int64 overflow in compiled echelon kernel")
    order = np.argsort(colof_arr[:rank], kind="stable")
    pivots = [int(x) for x in colof_arr[:rank][order]]
    return pivots, prow_re_arr[:rank][order], prow_im_arr[:rank][order]


def echelon_rows(list rows, Py_ssize_t ncols):
    """``echelon_dense`` on sparse dict rows ``{col: (re, im)}``, returning dict rows.

    Python integers outside int64 raise ``OverflowError`` on conversion.
    """
    cdef list live = [r for r in rows if r]
    cdef Py_ssize_t nrows = len(live)
    re_arr = np.zeros((nrows, ncols), dtype=np.int64)
    im_arr = np.zeros((nrows, ncols), dtype=np.int64)
    cdef i64[:, ::1] re = re_arr
    cdef i64[:, ::1] im = im_arr
    cdef Py_ssize_t i, k
    cdef dict row
    for i in range(nrows):
        row = live[i]
        for key, val in row.items():
            k = key
            re[i, k] = val[0]
            im[i, k] = val[1]
    pivots, ore_arr, oim_arr = echelon_dense(re_arr, im_arr)
    cdef i64[:, ::1] ore = ore_arr
    cdef i64[:, ::1] oim = oim_arr
    cdef list out = []
    cdef dict d
    for i in range(len(pivots)):
        d = {}
        for k in range(ncols):
            if ore[i, k] or oim[i, k]:
                d[k] = (ore[i, k], oim[i, k])
        out.append((pivots[i], d))
    return out
