"""Dense linear algebra over a finite field on lists of integer codes."""

from __future__ import annotations

from .galois import Field


def rref(field: Field, rows) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped, so ``len(result)`` is the rank.
    """
    F = field
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][col])
        mat[r] = [F.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(field: Field, rows) -> int:
    return len(rref(field, rows)[0])


def same_row_space(field: Field, a, b) -> bool:
    return rref(field, a)[0] == rref(field, b)[0]


def inverse(field: Field, rows) -> list[list[int]] | None:
    """Inverse of a square matrix, or None if it is singular."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    red, piv = rref(field, aug)
    if len(red) < n or piv[n - 1] != n - 1:
        return None
    return [r[n:] for r in red]


def vec_mat(field: Field, vec, mat) -> list[int]:
    """Row vector times matrix."""
    F = field
    out = [0] * (len(mat[0]) if mat else 0)
    for c, row in zip(vec, mat):
        if c == 0:
            continue
        for j, v in enumerate(row):
            if v:
                out[j] = F.add(out[j], F.mul(c, v))
    return out
