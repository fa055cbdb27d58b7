"""Exterior algebra bookkeeping against hand-worked signs."""

from fractions import Fraction

from twilledlr.catalog import rational_algebra, truncated_poly
from twilledlr.forms import (FreeModule, ext_monomial, merge_sign, remove_at,
                             shuffles, sort_sign, top_pairing, wedge)

F = Fraction


def test_merge_sign_hand():
    assert merge_sign((0,), (1,)) == (1, (0, 1))
    assert merge_sign((1,), (0,)) == (-1, (0, 1))
    assert merge_sign((0,), (0,)) == (0, None)
    assert merge_sign((0, 2), (1,)) == (-1, (0, 1, 2))
    assert merge_sign((), (0, 1)) == (1, (0, 1))


def test_sort_sign_hand():
    assert sort_sign((0, 1, 2)) == (1, (0, 1, 2))
    assert sort_sign((1, 0)) == (-1, (0, 1))
    assert sort_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_sign((0, 0)) == (0, None)


def test_shuffles_partition():
    subset = (0, 1, 2, 3)
    pairs = list(shuffles(subset, 2))
    assert len(pairs) == 6
    for item in pairs:
        sgn, left, right = item
        assert tuple(sorted(left + right)) == subset
        assert sgn in (1, -1)


def test_remove_at():
    assert remove_at((3, 5, 7), 1) == (3, 7)


def test_wedge_anticommutes():
    A = rational_algebra()
    M = FreeModule(A, 3, ("a", "b", "c"))
    x = ext_monomial(M, (0,))
    y = ext_monomial(M, (1,))
    xy = wedge(x, y)
    yx = wedge(y, x)
    assert xy.add(yx).is_zero()
    assert not xy.is_zero()
    assert wedge(x, x).is_zero()


def test_top_pairing_hand():
    A = truncated_poly(2)
    M = FreeModule(A, 2, ("a", "b"))
    x = ext_monomial(M, (0,))
    y = ext_monomial(M, (1,))
    # a ^ b = top cell with coefficient 1
    assert top_pairing(x, y) == A.unit()
    assert top_pairing(y, x) == tuple(-c for c in A.unit())
