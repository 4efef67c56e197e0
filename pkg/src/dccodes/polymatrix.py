"""Polynomial matrices over F[z]: the generator-matrix type and module algebra."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .galois import MAX_ORDER, Field, Poly, parse_poly, poly_gcd, subfield_embedding


class GeneratorMatrix:
    """A ``k x n`` matrix over ``F[z]`` stored as ``G = sum(z^nu G_nu)``.

    ``coeffs[nu]`` is the constant matrix ``G_nu``; trailing zero layers are
    dropped so that ``len(coeffs) - 1`` is the largest entry degree.
    """

    def __init__(self, field: Field, coeffs):
        arr = np.asarray(coeffs, dtype=np.int64)
        if arr.ndim != 3:
            raise ValueError("expected an array of shape (layers, k, n)")
        last = arr.shape[0]
        while last > 1 and not arr[last - 1].any():
            last -= 1
        self.field = field
        self.coeffs = arr[:last].copy()
        self.coeffs.setflags(write=False)

    @classmethod
    def from_polys(cls, field: Field, rows) -> "GeneratorMatrix":
        rows = [list(r) for r in rows]
        k, n = len(rows), len(rows[0])
        deg = max((max(e.degree for e in r) for r in rows), default=0)
        deg = max(int(deg) if deg != float("-inf") else 0, 0)
        arr = np.zeros((deg + 1, k, n), dtype=np.int64)
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                for d, c in enumerate(e.coeffs):
                    arr[d, i, j] = c
        return cls(field, arr)

    @property
    def k(self) -> int:
        return self.coeffs.shape[1]

    @property
    def n(self) -> int:
        return self.coeffs.shape[2]

    def layer(self, nu: int) -> np.ndarray:
        if 0 <= nu < len(self.coeffs):
            return self.coeffs[nu]
        return np.zeros((self.k, self.n), dtype=np.int64)

    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.field, [int(c) for c in self.coeffs[:, i, j]])

    def rows(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.k)]

    @property
    def row_degrees(self) -> tuple[int, ...]:
        degs = []
        for i in range(self.k):
            nz = np.nonzero(self.coeffs[:, i, :].any(axis=1))[0]
            degs.append(int(nz[-1]) if len(nz) else -1)
        return tuple(degs)

    @property
    def memory(self) -> int:
        return max(self.row_degrees)

    def leading_row_matrix(self) -> list[list[int]]:
        """Row ``i`` is the coefficient of ``z^{deg row i}`` in row ``i``."""
        return [
            [int(v) for v in self.coeffs[d, i]] if d >= 0 else [0] * self.n
            for i, d in enumerate(self.row_degrees)
        ]

    def row_weights(self) -> list[int]:
        return [int(np.count_nonzero(self.coeffs[:, i, :])) for i in range(self.k)]

    def left_multiply(self, T) -> "GeneratorMatrix":
        """``T @ G`` for a constant ``k' x k`` matrix ``T``."""
        out = [linalg_matmul(self.field, T, layer.tolist()) for layer in self.coeffs]
        return GeneratorMatrix(self.field, out)

    def __eq__(self, other):
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.coeffs.shape == other.coeffs.shape
            and bool((self.coeffs == other.coeffs).all())
        )

    def __repr__(self):
        return f"GeneratorMatrix(k={self.k}, n={self.n}, degree={len(self.coeffs) - 1})"

    def format(self, var: str = "z") -> str:
        """One row per line, entries tab-separated, in the polynomial text format."""
        return "\n".join(
            "\t".join(e.format(var) for e in row) for row in self.rows()
        )


def linalg_matmul(field: Field, A, B) -> list[list[int]]:
    return [linalg.vec_mat(field, row, B) for row in A]


def parse_matrix(field: Field, text: str, var: str = "z") -> GeneratorMatrix:
    rows = []
    for line in text.strip().splitlines():
        if line.strip():
            rows.append([parse_poly(field, cell, var) for cell in line.split("\t")])
    return GeneratorMatrix.from_polys(field, rows)


def poly_det(field: Field, mat) -> Poly:
    """Determinant of a square matrix of polynomials.

    Laplace expansion along rows memoised on the set of used columns, so the
    cost is ``O(2^k k)`` polynomial products.
    """
    k = len(mat)
    zero = Poly(field)
    # minors[mask] = det of the first popcount(mask) rows on columns `mask`
    minors = {0: Poly(field, (1,))}
    for row in range(k):
        nxt = {}
        for mask, sub in minors.items():
            if sub.is_zero():
                continue
            sign_count = 0
            for col in range(k - 1, -1, -1):
                bit = 1 << col
                if mask & bit:
                    sign_count += 1
                    continue
                entry = mat[row][col]
                if entry.is_zero():
                    continue
                term = entry * sub
                if sign_count % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt.get(key, zero) + term
        minors = nxt
    return minors.get((1 << k) - 1, zero)


def maximal_minors(G: GeneratorMatrix):
    """Yield ``(columns, det)`` for every ``k x k`` minor."""
    rows = G.rows()
    for cols in combinations(range(G.n), G.k):
        yield cols, poly_det(G.field, [[r[c] for c in cols] for r in rows])


PROJECTION_ORDER = 1024


def _projection_field(G: GeneratorMatrix):
    """An extension of ``G.field`` with at least ``PROJECTION_ORDER`` elements
    and the coefficients of ``G`` mapped into it.

    Random projections over a tiny field share roots too often to be useful;
    gcds of polynomials over ``F`` do not change under field extension.
    """
    F = G.field
    t = 1
    while F.q**t < PROJECTION_ORDER and F.q ** (t + 1) <= MAX_ORDER:
        t += 1
    if t == 1:
        return F, G.coeffs
    R = Field(F.p, F.e * t)
    emb = subfield_embedding(F, R)
    table = np.array([emb[c] for c in range(F.q)], dtype=np.int64)
    return R, table[G.coeffs]


def projected_minor_gcd(G: GeneratorMatrix, trials: int = 4, seed: int = 0) -> Poly:
    """gcd of ``det(G P)`` over random constant ``n x k`` matrices ``P``.

    By Cauchy-Binet each ``det(G P)`` is a combination of the maximal minors,
    so the true minor gcd divides the result: a constant here proves the minor
    gcd is constant, while a nonconstant result proves nothing.
    """
    F, coeffs = _projection_field(G)
    rng = np.random.default_rng(seed)
    g = Poly(F)
    for _ in range(trials):
        P = rng.integers(0, F.q, size=(G.n, G.k)).tolist()
        layers = [linalg_matmul(F, layer.tolist(), P) for layer in coeffs]
        square = GeneratorMatrix(F, layers).rows()
        g = poly_gcd(g, poly_det(F, square))
        if g.degree == 0:
            break
    return g


def minors_gcd(G: GeneratorMatrix, early_exit: bool = True) -> Poly:
    """Monic gcd of all maximal minors (zero polynomial if all vanish).

    With ``early_exit`` a constant gcd of random projections is accepted
    first, then the scan stops as soon as the running gcd is constant.
    """
    if early_exit:
        g = projected_minor_gcd(G)
        if g.degree == 0:
            return g
    g = Poly(G.field)
    for _, d in maximal_minors(G):
        if d.is_zero():
            continue
        g = poly_gcd(g, d)
        if early_exit and g.degree == 0:
            break
    return g


def max_minor_degree(G: GeneratorMatrix, stop_at=None):
    """Largest degree of a maximal minor; ``None`` if they all vanish.

    Stops early once a minor reaches ``stop_at`` (a known upper bound).
    """
    best = None
    for _, d in maximal_minors(G):
        if d.is_zero():
            continue
        if best is None or d.degree > best:
            best = d.degree
            if stop_at is not None and best >= stop_at:
                break
    return best


def hermite_form(G: GeneratorMatrix) -> list[list[Poly]]:
    """Canonical row echelon form of the row module over ``F[z]``.

    Unimodular row operations only; pivots are monic and entries above a
    pivot are reduced modulo it.  Zero rows are dropped.  Two matrices
    generate the same ``F[z]``-module exactly when their forms agree.
    """
    rows = G.rows()
    nrows, ncols = len(rows), G.n
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            live = [i for i in range(r, nrows) if not rows[i][col].is_zero()]
            if not live:
                break
            piv = min(live, key=lambda i: rows[i][col].degree)
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][col].is_zero():
                    continue
                q = rows[i][col] // rows[r][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                if not rows[i][col].is_zero():
                    done = False
            if done:
                break
        if rows[r][col].is_zero():
            continue
        inv = G.field.inv(rows[r][col].lead)
        rows[r] = [e.scale(inv) for e in rows[r]]
        for i in range(r):
            q = rows[i][col] // rows[r][col]
            if not q.is_zero():
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r] if any(not e.is_zero() for e in row)]


def same_module(A: GeneratorMatrix, B: GeneratorMatrix) -> bool:
    """Do ``A`` and ``B`` have the same row module over ``F[z]``?"""
    return hermite_form(A) == hermite_form(B)
