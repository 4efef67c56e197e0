import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from dccodes.galois import Field, Poly, subfield_embedding
from dccodes.polymatrix import (
    GeneratorMatrix,
    hermite_form,
    max_minor_degree,
    maximal_minors,
    minors_gcd,
    parse_matrix,
    poly_det,
    projected_minor_gcd,
    same_module,
)

F3 = Field(3)


def _leibniz(field, mat):
    k = len(mat)
    total = Poly(field)
    for perm in itertools.permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = Poly(field, (1,))
        for i, j in enumerate(perm):
            term = term * mat[i][j]
        total = total - term if inversions % 2 else total + term
    return total


poly3 = st.lists(st.integers(0, 2), max_size=3).map(lambda c: Poly(F3, c))


@given(st.integers(1, 4).flatmap(lambda k: st.lists(st.lists(poly3, min_size=k, max_size=k),
                                                       min_size=k, max_size=k)))
@settings(max_examples=40, deadline=None)
def test_poly_det_matches_leibniz(mat):
    assert poly_det(F3, mat) == _leibniz(F3, mat)


def test_text_round_trip():
    F = Field(2, 3)
    G = GeneratorMatrix(F, np.random.default_rng(1).integers(0, 8, size=(3, 2, 4)))
    assert parse_matrix(F, G.format("z")) == G
    assert G.row_degrees == (2, 2)


def test_rank_deficient_minors():
    F = Field(2)
    G = GeneratorMatrix.from_polys(F, [[Poly(F, (1,)), Poly(F, (0, 1))],
                                       [Poly(F, (0, 1)), Poly(F, (0, 0, 1))]])
    assert minors_gcd(G).is_zero()
    assert max_minor_degree(G) is None


def _random_unimodular(field, k, rng):
    """Product of elementary row operations with polynomial multipliers."""
    U = [[Poly(field, (1,) if i == j else ()) for j in range(k)] for i in range(k)]
    for _ in range(3):
        i, j = rng.choice(k, size=2, replace=False)
        mult = Poly(field, [int(v) for v in rng.integers(0, field.q, size=2)])
        U[i] = [a + mult * b for a, b in zip(U[i], U[j])]
    return U


def _matmul(field, U, rows):
    k, n = len(U), len(rows[0])
    out = []
    for i in range(k):
        out.append([sum((U[i][l] * rows[l][j] for l in range(k)), Poly(field)) for j in range(n)])
    return out


def test_module_equality_invariant_under_unimodular_transforms():
    rng = np.random.default_rng(7)
    F = Field(2, 2)
    for _ in range(5):
        G = GeneratorMatrix(F, rng.integers(0, 4, size=(2, 2, 4)))
        U = _random_unimodular(F, 2, rng)
        H = GeneratorMatrix.from_polys(F, _matmul(F, U, G.rows()))
        assert same_module(G, H)
        assert hermite_form(G) == hermite_form(H)
        assert minors_gcd(G) == minors_gcd(H)
    # multiplying a row by z changes the module
    G = GeneratorMatrix(F, rng.integers(1, 4, size=(1, 2, 4)))
    rows = G.rows()
    shifted = GeneratorMatrix.from_polys(F, [[rows[0][j].shift(1) for j in range(4)], rows[1]])
    assert not same_module(G, shifted)


def test_projection_gcd_is_a_multiple_of_the_minor_gcd():
    rng = np.random.default_rng(3)
    F = Field(2)
    checked = 0
    for _ in range(20):
        G = GeneratorMatrix(F, rng.integers(0, 2, size=(3, 2, 4)))
        g = minors_gcd(G, early_exit=False)
        h = projected_minor_gcd(G)
        if g.is_zero():
            assert h.is_zero()
            continue
        R = h.field
        emb = subfield_embedding(F, R)
        g_ext = Poly(R, [emb[c] for c in g.coeffs])
        assert (h % g_ext).is_zero()
        if g.degree == 0:
            assert h.degree == 0
        checked += 1
    assert checked > 5
