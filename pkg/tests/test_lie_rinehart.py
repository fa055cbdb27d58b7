"""Structure validation, the complex differential, and connections."""

import random

from twilledlr import catalog
from twilledlr.catalog import rational_algebra
from twilledlr.homology import complex_betti
from twilledlr.lie_rinehart import (CoeffA, connection_to_right, curvature,
                                    is_flat, lr_validate, make_lr,
                                    operator_matrix, right_flat_check,
                                    right_to_connection)
from twilledlr.scalars import zero_derivation
from twilledlr.twilled import twilled_sum


def _labels(report):
    return {l: ok for l, ok, _ in report}


def test_lr_validate_sl2():
    L = catalog.get("sl2-trivial-dual").twilled.left
    report = lr_validate(L, rng=random.Random(0))
    assert all(ok for _, ok, _ in report)


def test_lr_validate_catches_broken_jacobi():
    A = rational_algebra()
    z = (A.zero(),) * 3
    ex = (A.unit(), A.zero(), A.zero())
    ez = (A.zero(), A.zero(), A.unit())
    mx = (tuple(-c for c in A.unit()), A.zero(), A.zero())
    mz = (A.zero(), A.zero(), tuple(-c for c in A.unit()))
    # [x,y] = z, [y,z] = x, [z,x] = x: antisymmetric but not Jacobi
    bracket = [[z, ez, mx], [mz, z, ex], [ex, mx, z]]
    L = make_lr(A, 3, [zero_derivation(A)] * 3, bracket, ("x", "y", "z"))
    labels = _labels(lr_validate(L, rng=random.Random(0)))
    assert labels["bracket-antisymmetry"]
    assert not labels["jacobi"]


def test_ce_square_zero_on_sum():
    # the sum carries nontrivial anchors and brackets over Q[t]/(t^3)
    L = twilled_sum(catalog.get("jet-line").twilled)
    space = CoeffA(L.algebra, L.anchor)
    ops = operator_matrix(L, space)
    betti = complex_betti([ops[p] for p in range(L.rank)])
    assert len(betti) == L.rank + 1
    assert all(b >= 0 for b in betti)


def test_sl2_trivial_coefficients_betti():
    L = catalog.get("sl2-trivial-dual").twilled.left
    space = CoeffA(L.algebra, L.anchor)
    ops = operator_matrix(L, space)
    betti = complex_betti([ops[p] for p in range(L.rank)])
    # semisimple rank-3 bracket: only the ends survive
    assert betti == [1, 0, 0, 1]


def test_curvature_flags_nonflat_connection():
    entry = catalog.get("nonflat-witness")
    C = entry.connections["nonflat"]
    assert not is_flat(C)
    assert any(not v.is_zero() for v in curvature(C).values())


def test_flat_connection_and_right_roundtrip():
    entry = catalog.get("jet-line")
    for name, C in entry.connections.items():
        assert is_flat(C)
        Rc = connection_to_right(C)
        back = right_to_connection(Rc)
        assert back.table == C.table
        assert all(ok for _, ok, _ in right_flat_check(Rc))
