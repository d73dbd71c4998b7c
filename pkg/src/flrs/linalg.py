"""Dense exact linear algebra over a finite field.

Matrices are lists of rows of integer-encoded field elements; ``F`` is any
object with ``add``, ``sub``, ``mul`` and ``inv`` (a :class:`~flrs.gf.GF` or
:class:`~flrs.gf.PrimeField`).  Pivoting takes the first nonzero entry.
"""
from __future__ import annotations


def rref(M, F, ncols=None):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``; ``M`` is not modified.

    If ``ncols`` is given, pivots are only searched in the first ``ncols``
    columns (the remaining ones are carried along, e.g. a right-hand side).
    """
    R = [list(row) for row in M]
    if not R:
        return R, []
    width = len(R[0])
    ncols = width if ncols is None else ncols
    mul, sub, inv = F.mul, F.sub, F.inv
    pivots = []
    r = 0
    nrows = len(R)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        prow = R[r]
        s = inv(prow[c])
        if s != 1:
            prow = R[r] = [mul(s, x) for x in prow]
        for i in range(nrows):
            if i != r:
                row = R[i]
                f = row[c]
                if f:
                    R[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, F) -> int:
    return len(rref(M, F)[1])


def kernel_basis(M, F, ncols=None):
    """Basis of the right kernel ``{v : M v = 0}``.

    ``ncols`` must be given when ``M`` has no rows.
    """
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(M, F)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row_idx, pc in enumerate(pivots):
            v[pc] = F.neg(R[row_idx][free])
        basis.append(v)
    return basis


def solve(M, rhs, F, ncols=None):
    """All solutions of ``M x = rhs``.

    Returns ``(particular, kernel)`` where ``particular`` is ``None`` when the
    system is inconsistent, and ``kernel`` is a basis of ``ker(M)``.
    """
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [0] * ncols, kernel_basis(M, F, ncols)
    aug = [list(row) + [b] for row, b in zip(M, rhs)]
    R, pivots = rref(aug, F, ncols=ncols)
    kernel = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row_idx, pc in enumerate(pivots):
            v[pc] = F.neg(R[row_idx][free])
        kernel.append(v)
    for row in R[len(pivots):]:
        if row[ncols]:
            return None, kernel
    x = [0] * ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = R[row_idx][ncols]
    return x, kernel


def mat_vec(M, v, F):
    mul, add = F.mul, F.add
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out


def mat_mul(A, B, F):
    cols = list(zip(*B))
    return [mat_vec([list(c) for c in cols], row, F) for row in A]


def transpose(M):
    return [list(col) for col in zip(*M)]
