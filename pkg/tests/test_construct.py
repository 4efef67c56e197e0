import pytest

from dccodes import linalg
from dccodes.algebra import Automorphism, build_context
from dccodes.analysis import block_distance_exhaustive
from dccodes.construct import (
    bch_zero_set,
    build_code,
    build_ghat,
    coeff_code,
    ideal_basis,
    longest_cyclic_run,
    make_spec,
    max_b,
    rs_config,
    validate_S,
)
from dccodes.errors import KTooLarge, NNotDividing, NotRSConfig, RangeError, SpecInvalid
from dccodes.galois import Field, parse_poly
from dccodes.polymatrix import same_module
from dccodes.specfile import bch_ex52

import reference_data as ref


def test_rs_k2_matrix_matches_reference(gf8):
    spec = rs_config(gf8, 2, 2)
    assert spec.S == (5, 6) and spec.b == 2 and spec.k == 2
    assert spec.c == spec.ctx.from_poly(parse_poly(gf8, ref.RS_K2_C))
    assert build_code(spec) == ref.rs_k2_matrix(gf8)


def test_rs_k3_matrices_match_reference(gf8):
    spec = rs_config(gf8, 3, 1)
    assert spec.S == (4, 5, 6) and spec.b == 1
    assert spec.c == spec.ctx.from_poly(parse_poly(gf8, ref.RS_K3_C))
    assert spec.rs_poly == parse_poly(gf8, ref.RS_K3_F)
    G = build_code(spec)
    Gh = build_ghat(spec)
    assert G == ref.matrix(gf8, ref.RS_K3_G)
    assert Gh == ref.matrix(gf8, ref.RS_K3_GHAT)
    assert Gh.row_weights() == [10, 10, 10]
    assert G.row_weights() == [14, 14, 14]
    assert same_module(G, Gh)


def test_rs_sigma_orbits(gf8):
    spec = rs_config(gf8, 2, 2)
    ctx, sigma = spec.ctx, spec.sigma
    ok, witness = validate_S(ctx, sigma, spec.S, 3)
    assert not ok and witness == (3, 6)
    assert max_b(ctx, sigma, spec.S) == 2


def test_overlapping_S_is_rejected_with_witness():
    ctx = build_context(Field(2), 7)
    with pytest.raises(SpecInvalid) as err:
        make_spec(ctx, Automorphism.identity(ctx), [0], 1, b=1)
    assert err.value.witness == (1, 0)


def test_spec_range_checks(gf8):
    ctx = build_context(gf8, 7)
    sigma = Automorphism(ctx, ctx.x.scale(gf8.exp(2)))
    with pytest.raises(SpecInvalid):
        make_spec(ctx, sigma, [5, 6], 3)  # m > b
    with pytest.raises(SpecInvalid):
        make_spec(ctx, sigma, [5, 6], 0)
    with pytest.raises(NNotDividing):
        rs_config(gf8, 2, n=5)
    with pytest.raises(KTooLarge):
        rs_config(gf8, 4)
    with pytest.raises(NotRSConfig):
        build_ghat(make_spec(ctx, sigma, [5, 6], 1))


def test_small_examples_cover_all_idempotents():
    ctx = build_context(Field(2, 2), 15)
    spec = make_spec(ctx, Automorphism(ctx, ctx.x.scale(ctx.field.exp(1))), [0, 3, 8], 2)
    assert spec.b == 2 and spec.k == 5
    ctx = build_context(Field(2), 31)
    spec = make_spec(ctx, Automorphism(ctx, ctx.monomial(3)), [2, 4], 2)
    assert spec.b == 2 and spec.k == 10


def test_rs_with_proper_divisor_length():
    F = Field(2, 4)
    spec = rs_config(F, 2, 1, n=5)
    assert spec.n == 5 and spec.b == 1 and spec.k == 2
    G = build_code(spec)
    assert G.row_degrees == (1, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_coefficient_codes_are_idempotent_ideals(gf8, k):
    spec = rs_config(gf8, k)
    for mu in range(spec.b + 1):
        for nu in range(mu, spec.b + 1):
            cc = coeff_code(spec, mu, nu)
            assert cc.dimension == (nu - mu + 1) * k
            assert cc.generator * cc.generator == cc.generator
            assert linalg.same_row_space(gf8, cc.matrix.tolist(), ideal_basis(cc.generator))
    with pytest.raises(RangeError):
        coeff_code(spec, 0, spec.b + 1)


def test_rs_block_distances_are_mds(gf8):
    spec = rs_config(gf8, 2)
    basis, _ = linalg.rref(gf8, coeff_code(spec, 0, 0).matrix.tolist())
    assert block_distance_exhaustive(gf8, basis) == 6


def test_bch_zero_runs():
    spec = bch_ex52(5)
    bounds = tuple(bch_zero_set(spec, 0, nu).bound for nu in range(6))
    assert bounds == ref.BCH_DLIST_BOUND
    # sigma is weight preserving, so C_{mu,mu+nu} has the distance of C_{0,nu}
    for mu in range(1, 4):
        for nu in range(2):
            rows = coeff_code(spec, mu, mu + nu).matrix.tolist()
            assert block_distance_exhaustive(spec.field, rows) == ref.BCH_DLIST_EXACT_HEAD[nu]
    assert longest_cyclic_run({30, 0, 1, 5}, 31) == 3
    assert longest_cyclic_run(set(range(7)), 7) == 7
