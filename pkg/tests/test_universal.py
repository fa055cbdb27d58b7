"""Truncated enveloping object: noncommutative normal form, the induced
action of the dual structure, and the complexes built from it."""

import pytest

from twilledlr import catalog
from twilledlr.bv import generator_from_connection, volume_connection
from twilledlr.lie_rinehart import connection_to_right
from twilledlr.scalars import mat_is_zero, mat_mul
from twilledlr.universal import (MonomialOverflow, NotTwilledError,
                                 TruncUniversal, flatness_check_u,
                                 rinehart_complex, standard_complex,
                                 tilde_epsilon)

TWILLED = [n for n in catalog.names() if catalog.get(n).expected_twilled]
PERTURBED = [n for n in catalog.names() if catalog.get(n).expected_failure]


def test_normal_form_reorders_through_the_bracket():
    # [H, E] = 2E: the product E * H rewrites to H E - 2 E
    L = catalog.get("sl2-trivial-dual").twilled.left
    U = TruncUniversal(L, 3)
    A = L.algebra
    HE = U.mult(U.generator(1), U.generator(0))
    assert HE == {(0, 1): A.unit(), (1,): A.from_rational(-2)}
    # coefficients move left through the anchor; zero anchors keep them put
    t = U.scale(A.from_rational(3), U.generator(2))
    assert U.mult(U.generator(0), t)[(0, 2)] == A.from_rational(3)


def test_anchor_twists_coefficients():
    L = catalog.get("jet-line").twilled.left  # anchor t d/dt
    U = TruncUniversal(L, 2)
    A = L.algebra
    t = A.basis(1)
    # E * t = t E + E(t) = t E + t
    out = U.mult(U.generator(0), U.scalar(t))
    assert out == {(0,): t, (): t}


def test_monomial_overflow():
    L = catalog.get("abelian").twilled.left
    U = TruncUniversal(L, 1)
    with pytest.raises(MonomialOverflow):
        U.mult(U.generator(0), U.generator(0))


def test_tilde_epsilon_filters_monomials():
    u = {(0, 1): (1,), (2,): (1,), (): (1,)}
    assert tilde_epsilon(u, 2) == {(0, 1): (1,), (): (1,)}


@pytest.mark.parametrize("name", TWILLED)
def test_action_routes_flatness_square_zero(name):
    entry = catalog.get(name)
    res = flatness_check_u(entry.twilled, cutoff=3)
    assert res["6.4"], res


@pytest.mark.parametrize("name", PERTURBED)
def test_incompatible_pairs_are_rejected_with_labels(name):
    entry = catalog.get(name)
    with pytest.raises(NotTwilledError) as exc:
        flatness_check_u(entry.twilled, cutoff=3)
    assert entry.expected_failure in exc.value.args[0]


@pytest.mark.parametrize("name", ["abelian", "matched-rank1", "jet-line",
                                  "solvable-pair", "sl2-trivial-dual"])
def test_rinehart_complex_square_zero(name):
    L = catalog.get(name).twilled.left
    rc = rinehart_complex(L, cutoff=3)
    maps = rc["maps"]
    for j in range(2, L.rank + 1):
        prod = mat_mul(maps[j - 1].matrix, maps[j].matrix)
        assert mat_is_zero(prod), j


@pytest.mark.parametrize("name", [n for n in TWILLED
                                  if catalog.get(n).volume is not None])
def test_standard_complex_matches_generator_blocks(name):
    entry = catalog.get(name)
    T = entry.twilled
    C = volume_connection(T, entry.volume)
    Rc = connection_to_right(C)
    maps = standard_complex(T.left, Rc, cutoff=3)
    G = generator_from_connection(T, C)
    for k in range(1, T.left.rank + 1):
        assert maps[k].matrix == G.maps[(0, k)].matrix, k
