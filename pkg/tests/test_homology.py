"""Exact Betti numbers: hand-checked small complexes, invariance under
basis change, and the dimension duality between the two total complexes."""

from fractions import Fraction

import pytest

from twilledlr import catalog
from twilledlr.bv import volume_connection, volume_invariance
from twilledlr.homology import (chain_betti_from_operators, duality_dims,
                                totalize_bicomplex)
from twilledlr.scalars import LinearMap, identity_matrix, mat_mul, solve

F = Fraction
VOLUME = [n for n in catalog.names() if catalog.get(n).volume is not None]


def test_chain_betti_hand():
    # 0 -> Q^2 -> Q^2 -> 0 with rank-1 differential
    d = [[F(0), F(0)], [F(1), F(0)]]
    assert chain_betti_from_operators([d], [2, 2]) == [1, 1]
    # zero differential keeps everything
    z = [[F(0), F(0)], [F(0), F(0)]]
    assert chain_betti_from_operators([z], [2, 2]) == [2, 2]


def test_chain_betti_rejects_non_complex():
    d0 = [[F(1)]]
    d1 = [[F(1)]]
    with pytest.raises(AssertionError):
        chain_betti_from_operators([d0, d1], [1, 1, 1])


def _inverse(mat):
    n = len(mat)
    cols = []
    for j in range(n):
        rhs = [F(1) if i == j else F(0) for i in range(n)]
        cols.append(solve([row[:] for row in mat], rhs))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def test_betti_invariant_under_basis_change():
    # conjugate every operator of a known complex by unimodular matrices
    d = [[F(0), F(0), F(1)], [F(0), F(0), F(0)], [F(0), F(0), F(0)]]
    base = chain_betti_from_operators([d, [[F(0)] * 3] * 3], [3, 3, 3])
    P0 = [[F(1), F(2), F(0)], [F(0), F(1), F(3)], [F(0), F(0), F(1)]]
    P1 = [[F(1), F(0), F(-1)], [F(0), F(1), F(0)], [F(5), F(0), F(1)]]
    P2 = identity_matrix(3)
    new_d0 = mat_mul(P1, mat_mul(d, _inverse(P0)))
    new_d1 = mat_mul(P2, mat_mul([[F(0)] * 3] * 3, _inverse(P1)))
    assert chain_betti_from_operators([new_d0, new_d1], [3, 3, 3]) == base


def test_totalize_single_column_reduces_to_chain():
    # a bicomplex concentrated in p = 0 is just the q-direction complex
    d = [[F(0), F(1)], [F(0), F(0)]]
    lm = LinearMap([0, 1], [0, 1], d)
    sizes = {(0, 0): 2, (0, 1): 2}
    betti = totalize_bicomplex(sizes, {}, {(0, 0): lm})
    assert betti == chain_betti_from_operators([d], [2, 2])


def _volume_pairs():
    out = []
    for name in VOLUME:
        entry = catalog.get(name)
        out.append((name, entry.twilled, entry.volume))
    sl2 = catalog.get("sl2-trivial-dual")
    out.append(("sl2-trivial-dual", sl2.twilled, sl2.twilled.algebra.unit()))
    return out


@pytest.mark.parametrize("name,T,omega", _volume_pairs())
def test_duality_of_total_dimensions(name, T, omega):
    assert volume_invariance(T, omega)
    C = volume_connection(T, omega)
    res = duality_dims(T, C)
    assert res["7.12"], res
    assert sum(res["generator-side"]) == sum(res["transported-side"])


def test_sl2_duality_hand_oracle():
    T = catalog.get("sl2-trivial-dual").twilled
    C = volume_connection(T, T.algebra.unit())
    res = duality_dims(T, C)
    assert res["generator-side"] == [1, 3, 3, 2, 3, 3, 1]
    assert res["transported-side"] == [1, 3, 3, 2, 3, 3, 1]
