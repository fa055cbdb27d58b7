"""Built-in instances: small pairs over Q and truncated polynomial rings.

Each entry records the pair, any distinguished volume form or connection
on the top exterior power of the left module, and the expected verdicts
(which compatibility condition a perturbed instance breaks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import CommAlgebra, Derivation, Q0, Q1, qv, zero_derivation
from .forms import FreeModule
from .lie_rinehart import Connection, LieRinehart, abelian_lr, make_lr
from .twilled import AlmostTwilled


def rational_algebra() -> CommAlgebra:
    return CommAlgebra(1, ("1",), ((qv(1),),))


def truncated_poly(n: int) -> CommAlgebra:
    """Q[t]/(t^n) on the basis 1, t, .., t^(n-1)."""
    names = tuple("1" if k == 0 else f"t{k}" if k > 1 else "t" for k in range(n))
    table = tuple(tuple(
        tuple(Q1 if k == i + j else Q0 for k in range(n)) if i + j < n
        else (Q0,) * n
        for j in range(n)) for i in range(n))
    return CommAlgebra(n, names, table)


def poly_derivation(A: CommAlgebra, p) -> Derivation:
    """p(t) d/dt on a truncated polynomial ring; p given as coefficients."""
    n = A.dim
    pv = tuple(Fraction(c) for c in p) + (Q0,) * (n - len(p))
    cols = []
    for k in range(n):
        # D(t^k) = k t^(k-1) p(t)
        if k == 0:
            cols.append(A.zero())
        else:
            tk1 = A.basis(k - 1)
            cols.append(tuple(Fraction(k) * c for c in A.mul(tk1, pv)))
    from .scalars import derivation_from_columns
    return derivation_from_columns(A, cols)


def zero_table(A: CommAlgebra, rows: int, mod_rank: int) -> tuple:
    z = tuple(A.zero() for _ in range(mod_rank))
    return tuple(tuple(z for _ in range(mod_rank)) for _ in range(rows))


def _with(table, i, j, coords):
    rows = [list(r) for r in table]
    rows[i][j] = tuple(coords)
    return tuple(tuple(r) for r in rows)


@dataclass
class CatalogEntry:
    name: str
    twilled: AlmostTwilled
    expected_twilled: bool
    expected_failure: str | None = None   # compatibility label when not twilled
    volume: tuple | None = None           # Avec, when an invariant one exists
    connections: dict = field(default_factory=dict)
    expected_betti: list | None = None
    note: str = ""


def _unit_coords(A, rank, i):
    return tuple(A.unit() if j == i else A.zero() for j in range(rank))


def build_abelian() -> CatalogEntry:
    A = rational_algebra()
    left = abelian_lr(A, 1, ("x",))
    right = abelian_lr(A, 1, ("xi",))
    T = AlmostTwilled(left, right, zero_table(A, 1, 1), zero_table(A, 1, 1))
    return CatalogEntry("abelian", T, True, volume=A.unit(),
                        expected_betti=[1, 2, 1],
                        note="everything zero; rank 1 + 1 over Q")


def build_matched_rank1() -> CatalogEntry:
    A = rational_algebra()
    left = abelian_lr(A, 1, ("x",))
    right = abelian_lr(A, 1, ("xi",))
    act_lr = _with(zero_table(A, 1, 1), 0, 0, _unit_coords(A, 1, 0))
    T = AlmostTwilled(left, right, act_lr, zero_table(A, 1, 1))
    return CatalogEntry("matched-rank1", T, True, volume=A.unit(),
                        note="x acts on xi by identity, converse zero")


def _solvable(A, names):
    """Rank-2 structure with [b0, b1] = b1 and zero anchors."""
    z = (A.zero(), A.zero())
    e1 = (A.zero(), A.unit())
    neg = (A.zero(), tuple(-c for c in A.unit()))
    bracket = [[z, e1], [neg, z]]
    return make_lr(A, 2, [zero_derivation(A)] * 2, bracket, names)


def build_solvable_pair(perturbed: bool = False) -> CatalogEntry:
    A = rational_algebra()
    left = _solvable(A, ("x", "y"))
    right = abelian_lr(A, 1, ("xi",))
    act_lr = _with(zero_table(A, 2, 1), 0, 0, (A.unit(),))
    act_rl = zero_table(A, 1, 2)
    if perturbed:
        act_rl = _with(act_rl, 0, 1, (A.unit(), A.zero()))
    T = AlmostTwilled(left, right, act_lr, act_rl)
    if perturbed:
        return CatalogEntry("solvable-pair-perturbed", T, False, "1.7.3",
                            note="xi moves y to x, breaking the bracket "
                                 "derivation rule of the right action")
    return CatalogEntry("solvable-pair", T, True, volume=A.unit(),
                        note="nonabelian rank-2 left structure, inert rank-1 right")


def build_cosolvable_pair(perturbed: bool = False) -> CatalogEntry:
    A = rational_algebra()
    left = abelian_lr(A, 1, ("x",))
    right = _solvable(A, ("xi", "eta"))
    act_rl = _with(zero_table(A, 2, 1), 0, 0, (A.unit(),))
    act_lr = zero_table(A, 1, 2)
    if perturbed:
        act_lr = _with(act_lr, 0, 1, (A.unit(), A.zero()))
    T = AlmostTwilled(left, right, act_lr, act_rl)
    if perturbed:
        return CatalogEntry("cosolvable-pair-perturbed", T, False, "1.7.2",
                            note="x moves eta to xi, breaking the bracket "
                                 "derivation rule of the left action")
    return CatalogEntry("cosolvable-pair", T, True,
                        note="mirror of solvable-pair; no invariant volume")


def build_jet_line(variant: str = "plain") -> CatalogEntry:
    A = truncated_poly(3)
    t = A.basis(1)
    t2 = A.basis(2)
    left = make_lr(A, 1, [poly_derivation(A, (0, 1))],
                   [[(A.zero(),)]], ("E",))
    right = make_lr(A, 1, [poly_derivation(A, (0, 0, 1))],
                    [[(A.zero(),)]], ("xi",))
    act_lr = zero_table(A, 1, 1)
    if variant == "plain":
        act_rl = (((tuple(-c for c in t),),),)
        T = AlmostTwilled(left, right, act_lr, act_rl)
        volM = FreeModule(A, 1, ("vol",))
        minus_one = tuple(-c for c in A.unit())
        conns = {
            "invariant": Connection(left, volM, (((minus_one,),),)),
            "noninvariant": Connection(left, volM, (((A.zero(),),),)),
        }
        return CatalogEntry("jet-line", T, True, connections=conns,
                            note="truncated jets; flat connections exist but "
                                 "no invariant volume form")
    if variant == "perturbed":
        act_rl = (((tuple(a - b for a, b in zip(A.unit(), t)),),),)
        T = AlmostTwilled(left, right, act_lr, act_rl)
        return CatalogEntry("jet-line-perturbed", T, False, "1.7.1",
                            note="constant term added to the right action "
                                 "breaks the mixed anchor identity")
    # invariant volume variant
    act_rl = (((t2,),),)
    act_lr = (((A.unit(),),),)
    T = AlmostTwilled(left, right, act_lr, act_rl)
    omega = tuple(a + b for a, b in zip(A.unit(), t))
    return CatalogEntry("jet-line-invariant", T, True, volume=omega,
                        note="actions adjusted so 1 + t is an invariant volume")


def build_nonflat_witness() -> CatalogEntry:
    A = truncated_poly(2)
    t = A.basis(1)
    left = make_lr(A, 2, [poly_derivation(A, (0, 1)), zero_derivation(A)],
                   [[(A.zero(), A.zero())] * 2] * 2, ("E1", "E2"))
    right = abelian_lr(A, 1, ("xi",))
    T = AlmostTwilled(left, right, zero_table(A, 2, 1), zero_table(A, 1, 2))
    volM = FreeModule(A, 1, ("vol",))
    nonflat = Connection(left, volM, (((A.zero(),),), ((t,),)))
    return CatalogEntry("nonflat-witness", T, True, volume=A.unit(),
                        connections={"nonflat": nonflat},
                        note="curved connection on the top exterior power; "
                             "its operator does not square to zero")


def build_sl2_trivial_dual() -> CatalogEntry:
    A = rational_algebra()
    z3 = (A.zero(),) * 3
    two = A.from_rational(2)
    m_two = A.from_rational(-2)
    one = A.unit()
    m_one = A.from_rational(-1)
    # basis H, E, F: [H,E]=2E, [H,F]=-2F, [E,F]=H
    bracket = [
        [z3, (A.zero(), two, A.zero()), (A.zero(), A.zero(), m_two)],
        [(A.zero(), m_two, A.zero()), z3, (one, A.zero(), A.zero())],
        [(A.zero(), A.zero(), two), (m_one, A.zero(), A.zero()), z3],
    ]
    left = make_lr(A, 3, [zero_derivation(A)] * 3, bracket, ("H", "E", "F"))
    right = abelian_lr(A, 3, ("a", "b", "c"))
    T = AlmostTwilled(left, right, zero_table(A, 3, 3), zero_table(A, 3, 3))
    return CatalogEntry("sl2-trivial-dual", T, True,
                        note="simple rank-3 left structure with inert dual")


_BUILDERS = {
    "abelian": build_abelian,
    "matched-rank1": build_matched_rank1,
    "solvable-pair": lambda: build_solvable_pair(False),
    "solvable-pair-perturbed": lambda: build_solvable_pair(True),
    "cosolvable-pair": lambda: build_cosolvable_pair(False),
    "cosolvable-pair-perturbed": lambda: build_cosolvable_pair(True),
    "jet-line": lambda: build_jet_line("plain"),
    "jet-line-perturbed": lambda: build_jet_line("perturbed"),
    "jet-line-invariant": lambda: build_jet_line("invariant"),
    "nonflat-witness": build_nonflat_witness,
    "sl2-trivial-dual": build_sl2_trivial_dual,
}


def names() -> list:
    return list(_BUILDERS)


def get(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(name)
    return _BUILDERS[name]()


def all_entries() -> list:
    return [get(n) for n in names()]
