"""Exact linear algebra and structure-constant algebra, against
hand-computed values."""

from fractions import Fraction

import pytest

from twilledlr.scalars import (CommAlgebra, algebra_validate,
                               derivation_commutator, derivation_validate,
                               kernel_basis, rank, solve, zero_derivation)
from twilledlr.catalog import (poly_derivation, rational_algebra,
                               truncated_poly)

F = Fraction


def test_rank_hand():
    assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank([[F(1), F(2)], [F(3), F(4)]]) == 2
    assert rank([[F(0), F(0)], [F(0), F(0)]]) == 0
    # 3x3 with one dependent row: r3 = r1 + r2
    m = [[F(1), F(0), F(2)], [F(0), F(1), F(-1)], [F(1), F(1), F(1)]]
    assert rank(m) == 2


def test_kernel_hand():
    kb = kernel_basis([[F(1), F(2)], [F(2), F(4)]])
    assert len(kb) == 1
    x, y = kb[0]
    assert x + 2 * y == 0 and (x, y) != (0, 0)


def test_solve_hand():
    sol = solve([[F(2), F(1)], [F(1), F(3)]], [F(5), F(10)])
    assert sol == (F(1), F(3))
    assert solve([[F(1), F(1)], [F(1), F(1)]], [F(0), F(1)]) is None


def test_solve_fractional():
    sol = solve([[F(1, 2)]], [F(1, 3)])
    assert sol == (F(2, 3),)


def test_truncated_poly_mult():
    A = truncated_poly(3)
    t = A.basis(1)
    t2 = A.basis(2)
    assert A.mul(t, t) == t2
    assert A.mul(t, t2) == A.zero()
    assert A.mul(A.unit(), t2) == t2
    assert all(ok for _, ok, _ in algebra_validate(A))


def test_rational_algebra_valid():
    A = rational_algebra()
    assert all(ok for _, ok, _ in algebra_validate(A))
    assert A.mul(A.unit(), A.unit()) == A.unit()


def test_inverse():
    A = truncated_poly(2)
    one_plus_t = tuple(a + b for a, b in zip(A.unit(), A.basis(1)))
    inv = A.inverse(one_plus_t)
    # (1+t)(1-t) = 1 - t^2 = 1 in Q[t]/(t^2)
    assert inv == tuple(a - b for a, b in zip(A.unit(), A.basis(1)))
    assert A.inverse(A.basis(1)) is None


def test_poly_derivation_hand():
    A = truncated_poly(3)
    D = poly_derivation(A, (0, 1))        # t d/dt
    assert D.apply(A.basis(1)) == A.basis(1)          # t
    assert D.apply(A.basis(2)) == tuple(2 * c for c in A.basis(2))
    assert D.apply(A.unit()) == A.zero()
    assert all(ok for _, ok, _ in derivation_validate(D))


def test_derivation_commutator():
    A = truncated_poly(3)
    D1 = poly_derivation(A, (0, 1))        # t d/dt
    D2 = poly_derivation(A, (0, 0, 1))     # t^2 d/dt
    C = derivation_commutator(D1, D2)
    # [t d/dt, t^2 d/dt] = t^2 d/dt
    assert C.matrix == D2.matrix
    assert all(ok for _, ok, _ in derivation_validate(C))
    assert zero_derivation(A).is_zero()


def test_algebra_validate_catches_noncommutative():
    A = rational_algebra()
    bad = CommAlgebra(2, ("1", "x"), (
        ((F(1), F(0)), (F(0), F(1))),
        ((F(1), F(0)), (F(0), F(0))),
    ))
    labels = {l: ok for l, ok, _ in algebra_validate(bad)}
    assert not labels["commutative"]
    assert all(ok for _, ok, _ in algebra_validate(A))
