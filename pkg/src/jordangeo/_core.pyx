# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_core_py``."""


def matmul(list a, list b, zero):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t m = len(<list>b[0]) if inner else 0
    cdef Py_ssize_t i, j, k
    cdef list ai, row, out = []
    cdef list bt = [[(<list>b[k])[j] for k in range(inner)] for j in range(m)]
    cdef list bj
    for i in range(n):
        ai = <list>a[i]
        row = []
        for j in range(m):
            bj = <list>bt[j]
            acc = zero
            for k in range(inner):
                x = ai[k]
                if x:
                    acc = acc + x * bj[k]
            row.append(acc)
        out.append(row)
    return out


def row_reduce(list rows, Py_ssize_t pivot_limit, is_unit, inv):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(<list>rows[0]) if nrows else 0
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pivot_cols = [], pivot_vals = []
    cdef Py_ssize_t swaps = 0
    cdef list prow, row
    for c in range(pivot_limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if is_unit((<list>rows[i])[c]):
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            swaps += 1
        prow = <list>rows[r]
        pv = prow[c]
        pivot_vals.append(pv)
        s = inv(pv)
        for j in range(ncols):
            prow[j] = prow[j] * s
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
            f = row[c]
            if not f:
                continue
            for j in range(ncols):
                x = prow[j]
                if x:
                    row[j] = row[j] - f * x
        pivot_cols.append(c)
        r += 1
    return pivot_cols, pivot_vals, swaps
