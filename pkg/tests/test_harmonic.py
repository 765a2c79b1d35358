"""Convolution algebras I_pi(G x G): projections, dimensions, commutativity."""

import numpy as np
import pytest

from gl2rep.errors import BudgetExceeded
from gl2rep.gl2 import GL2Irrep, enumerate_irreps, params
from gl2rep.harmonic import (
    GroupFunction,
    build_I_pi,
    commutativity_check,
    convolve,
    convolve_literal,
    delta_identity,
    orbit_indicator,
    pair_context,
    xi_function,
    xi_idempotent,
)
from gl2rep.cyclotomic import reduce_root_sum
from gl2rep.tensor import ind_decompose, is_gelfand_triple_product


def _as_cyclotomic(ctx, coords):
    weights = [0] * ctx.rs
    for e, c in enumerate(coords):
        weights[e] += int(c)
    return reduce_root_sum(ctx.rs, weights)


def test_budget():
    with pytest.raises(BudgetExceeded):
        pair_context(4)


def test_delta_scaled_by_group_order_is_the_unit():
    ctx = pair_context(2)
    unit = delta_identity(ctx, ctx.n2)
    f = orbit_indicator(ctx, 5)
    assert convolve(unit, f) == f
    assert convolve(f, unit) == f


def test_tensor_convolution_matches_literal_definition():
    ctx = pair_context(2)
    rng = np.random.default_rng(4)
    for _ in range(3):
        a = GroupFunction(ctx, rng.integers(-3, 4, size=(ctx.K, ctx.phi)).astype(np.int64))
        b = GroupFunction(ctx, rng.integers(-3, 4, size=(ctx.K, ctx.phi)).astype(np.int64))
        assert convolve(a, b) == convolve_literal(a, b)


def test_convolution_of_class_functions_is_a_class_function():
    # values of the convolution are constant on H-orbits: evaluate the
    # literal definition at every element and cross-check exact values
    ctx = pair_context(2)
    rng = np.random.default_rng(8)
    f = GroupFunction(ctx, rng.integers(-2, 3, size=(ctx.K, ctx.phi)).astype(np.int64))
    g = GroupFunction(ctx, rng.integers(-2, 3, size=(ctx.K, ctx.phi)).astype(np.int64))
    conv = convolve(f, g)
    literal_den = f.den * g.den * ctx.n2
    for x in range(ctx.n2):
        acc = np.zeros(ctx.phi, dtype=object)
        for y in range(ctx.n2):
            u = ctx.pair_mul(ctx.pair_inv(y), x)
            acc += np.einsum(
                "c,d,cde->e",
                f.coords[ctx.orb[y]].astype(object),
                g.coords[ctx.orb[u]].astype(object),
                ctx.reduction.astype(object),
            )
        conv_num, conv_den = conv.value(x)
        literal_num = _as_cyclotomic(ctx, acc)
        assert literal_num * conv_den == conv_num * literal_den


@pytest.mark.parametrize("q", [2, 3])
def test_xi_idempotency(q):
    pr = params(q)
    for pi in enumerate_irreps(pr)[:4]:
        assert xi_idempotent(pi, q)


@pytest.mark.parametrize("q", [2, 3])
def test_dimensions_match_squared_multiplicities(q):
    pr = params(q)
    for pi in enumerate_irreps(pr):
        basis = build_I_pi(pi, q)
        assert len(basis) == sum(m * m for _, m in ind_decompose(pi, pr))


def test_known_dimensions():
    pr = params(3)
    assert len(build_I_pi(GL2Irrep.U(pr, 0), 3)) == 8  # q^2 - 1
    assert len(build_I_pi(GL2Irrep.X(pr, 1), 3)) == 14  # (q-1)(q^2-q+1)
    pr2 = params(2)
    assert len(build_I_pi(GL2Irrep.U(pr2, 0), 2)) == 3


@pytest.mark.parametrize("q", [2, 3])
def test_commutativity_agrees_with_multiplicity_freeness(q):
    pr = params(q)
    for pi in enumerate_irreps(pr):
        basis = build_I_pi(pi, q)
        assert commutativity_check(basis) == is_gelfand_triple_product(pi, pr)


def test_commutativity_false_for_steinberg_q3():
    basis = build_I_pi(GL2Irrep.V(params(3), 0), 3)
    assert len(basis) == 22
    assert not commutativity_check(basis)


def test_centrality_inside_L_pi_at_q2():
    # for a commutative I_pi, its elements commute with all of
    # L_pi = xi * L(G') * xi; spanning functions of L_pi are projected deltas
    ctx = pair_context(2)
    pr = params(2)
    reduction = ctx.reduction.astype(object)

    def dense_convolve(a, b):
        out = np.zeros((ctx.n2, ctx.phi), dtype=object)
        for x in range(ctx.n2):
            acc = np.zeros(ctx.phi, dtype=object)
            for y in range(ctx.n2):
                u = ctx.pair_mul(ctx.pair_inv(y), x)
                acc += np.einsum("c,d,cde->e", a[y], b[u], reduction)
            out[x] = acc
        return out

    for pi in enumerate_irreps(pr):
        if not is_gelfand_triple_product(pi, pr):
            continue
        xi = xi_function(pi, ctx)
        xi_dense = np.array([xi.coords[ctx.orb[x]] for x in range(ctx.n2)], dtype=object)
        basis = build_I_pi(pi, 2)
        f_dense = np.array(
            [basis[0].coords[ctx.orb[x]] for x in range(ctx.n2)], dtype=object
        )
        for x0 in range(0, ctx.n2, 7):
            delta = np.zeros((ctx.n2, ctx.phi), dtype=object)
            delta[x0, 0] = 1
            g_dense = dense_convolve(dense_convolve(xi_dense, delta), xi_dense)
            left = dense_convolve(f_dense, g_dense)
            right = dense_convolve(g_dense, f_dense)
            assert np.array_equal(left, right), pi.label()
