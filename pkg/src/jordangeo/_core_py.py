"""Pure-Python kernels: dense matrix product and unit-pivot Gauss-Jordan.

Entries are arbitrary ring elements supporting ``+ - *`` and truthiness.
Must stay call-compatible with the compiled ``_core`` module.
"""


def matmul(a, b, zero):
    n = len(a)
    inner = len(b)
    m = len(b[0]) if inner else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(m):
            acc = zero
            for k in range(inner):
                x = ai[k]
                if x:
                    acc = acc + x * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def row_reduce(rows, pivot_limit, is_unit, inv):
    """Reduce ``rows`` in place to reduced row echelon form.

    Only the first ``pivot_limit`` columns are eligible as pivot columns and
    a pivot must be a unit; a column with no unit below the current row is
    skipped.  Returns ``(pivot_cols, pivot_vals, swaps)`` where
    ``pivot_vals`` are the pivot entries before normalisation.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivot_cols = []
    pivot_vals = []
    swaps = 0
    r = 0
    for c in range(pivot_limit):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if is_unit(rows[i][c]):
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            swaps += 1
        prow = rows[r]
        pv = prow[c]
        pivot_vals.append(pv)
        s = inv(pv)
        for j in range(ncols):
            prow[j] = prow[j] * s
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
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
