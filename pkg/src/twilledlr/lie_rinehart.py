"""Lie-Rinehart pairs (A, L): validation, differentials, connections.

A Lie-Rinehart structure is a free A-module L with an anchor (one
derivation of A per basis element) and an antisymmetric bracket table.
The differential of the associated complex Alt_A(L, M) is assembled as
an exact matrix for any coefficient space carrying an A-module
structure and an action of the L-basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .scalars import (Avec, CommAlgebra, Derivation, LinearMap, Q0, Q1,
                      derivation_add, derivation_commutator, derivation_from_columns,
                      derivation_scale, derivation_validate, random_avec,
                      vec_add, vec_is_zero, vec_scale, vec_sub)
from .forms import (FreeModule, ModuleElement, ext_monomial, remove_at,
                    sort_sign, wedge)


@dataclass(frozen=True)
class LieRinehart:
    algebra: CommAlgebra
    module: FreeModule
    anchor: tuple              # one Derivation per module basis element
    bracket_table: tuple       # r x r, coords (tuple of Avec) of [f_i, f_j]

    @property
    def rank(self) -> int:
        return self.module.rank

    def bracket_basis(self, i: int, j: int) -> ModuleElement:
        return ModuleElement(self.module, self.bracket_table[i][j])

    def act_on_A(self, x: ModuleElement, a: Avec) -> Avec:
        A = self.algebra
        out = A.zero()
        for i, xi in enumerate(x.coords):
            if not vec_is_zero(xi):
                out = vec_add(out, A.mul(xi, self.anchor[i].apply(a)))
        return out

    def anchor_operator(self, x: ModuleElement) -> Derivation:
        A = self.algebra
        cols = [self.act_on_A(x, A.basis(j)) for j in range(A.dim)]
        return derivation_from_columns(A, cols)

    def bracket(self, x: ModuleElement, y: ModuleElement) -> ModuleElement:
        """[x, y] on general elements, by the Leibniz extension."""
        A = self.algebra
        out = self.module.zero_elem()
        for i, ai in enumerate(x.coords):
            if vec_is_zero(ai):
                continue
            for j, bj in enumerate(y.coords):
                if not vec_is_zero(bj):
                    out = out.add(self.bracket_basis(i, j).scale(A.mul(ai, bj)))
        for j, bj in enumerate(y.coords):
            t = self.act_on_A(x, bj)
            if not vec_is_zero(t):
                out = out.add(self.module.basis_elem(j).scale(t))
        for i, ai in enumerate(x.coords):
            t = self.act_on_A(y, ai)
            if not vec_is_zero(t):
                out = out.add(self.module.basis_elem(i).scale(
                    vec_scale(Fraction(-1), t)))
        return out


def make_lr(A: CommAlgebra, rank: int, anchor, bracket, names=()) -> LieRinehart:
    module = FreeModule(A, rank, tuple(names))
    table = tuple(tuple(tuple(bracket[i][j]) for j in range(rank)) for i in range(rank))
    return LieRinehart(A, module, tuple(anchor), table)


def abelian_lr(A: CommAlgebra, rank: int, names=()) -> LieRinehart:
    from .scalars import zero_derivation
    z = tuple(A.zero() for _ in range(rank))
    return make_lr(A, rank, [zero_derivation(A)] * rank,
                   [[z for _ in range(rank)] for _ in range(rank)], names)


def random_elems(L: LieRinehart, rng, count: int):
    out = []
    for _ in range(count):
        out.append(ModuleElement(L.module, tuple(
            random_avec(L.algebra, rng) for _ in range(L.rank))))
    return out


def lr_validate(L: LieRinehart, rng=None, samples: int = 8) -> list:
    """Checks: anchors are derivations, bracket antisymmetric, anchor is a
    bracket homomorphism, Jacobi holds (Leibniz-extended), Leibniz rule."""
    A = L.algebra
    out = []
    bad = None
    for i, d in enumerate(L.anchor):
        for label, ok, w in derivation_validate(d):
            if not ok:
                bad = (i, label, w)
    out.append(("anchor-derivations", bad is None, bad))

    bad = None
    for i in range(L.rank):
        for j in range(L.rank):
            lhs = L.bracket_table[i][j]
            rhs = tuple(vec_scale(Fraction(-1), c) for c in L.bracket_table[j][i])
            if lhs != rhs:
                bad = (i, j)
    out.append(("bracket-antisymmetry", bad is None, bad))

    bad = None
    for i in range(L.rank):
        for j in range(L.rank):
            comm = derivation_commutator(L.anchor[i], L.anchor[j])
            target = L.anchor_operator(L.bracket_basis(i, j))
            if comm.matrix != target.matrix:
                bad = (i, j)
    out.append(("anchor-homomorphism", bad is None, bad))

    bad = None
    elems = [L.module.basis_elem(i) for i in range(L.rank)]
    if rng is not None:
        elems += random_elems(L, rng, samples)
    basis = [L.module.basis_elem(i) for i in range(L.rank)]
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            for k in range(j + 1, L.rank):
                x, y, z = basis[i], basis[j], basis[k]
                s = L.bracket(L.bracket(x, y), z)
                s = s.add(L.bracket(L.bracket(y, z), x))
                s = s.add(L.bracket(L.bracket(z, x), y))
                if not s.is_zero():
                    bad = (i, j, k)
    if rng is not None:
        for t in range(samples):
            x, y, z = random_elems(L, rng, 3)
            s = L.bracket(L.bracket(x, y), z)
            s = s.add(L.bracket(L.bracket(y, z), x))
            s = s.add(L.bracket(L.bracket(z, x), y))
            if not s.is_zero():
                bad = ("random", t)
    out.append(("jacobi", bad is None, bad))

    bad = None
    if rng is not None:
        for t in range(samples):
            x, y = random_elems(L, rng, 2)
            a = random_avec(A, rng)
            lhs = L.bracket(x, y.scale(a))
            rhs = L.bracket(x, y).scale(a).add(y.scale(L.act_on_A(x, a)))
            if lhs.coords != rhs.coords:
                bad = ("random", t)
    out.append(("bracket-leibniz", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# coefficient spaces and the complex differential
# ---------------------------------------------------------------------------

class AModuleSpace:
    """Finite Q-basis coefficient space with A-action and an L-basis action.

    Vectors are dicts key -> Fraction.
    """
    keys: list

    def scale(self, a: Avec, vec: dict) -> dict:
        raise NotImplementedError

    def act(self, i: int, vec: dict) -> dict:
        raise NotImplementedError

    def basis_vec(self, key) -> dict:
        return {key: Q1}


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, Q0) + c
    return {k: c for k, c in out.items() if c != 0}


def vscale(c: Fraction, u: dict) -> dict:
    return {k: c * x for k, x in u.items() if c * x != 0}


class CoeffA(AModuleSpace):
    """The algebra itself, acted on through a list of derivations."""

    def __init__(self, A: CommAlgebra, derivations):
        self.A = A
        self.derivations = tuple(derivations)
        self.keys = list(range(A.dim))

    def scale(self, a, vec):
        out = {}
        for k, c in vec.items():
            prod = self.A.mul(a, self.A.basis(k))
            for e, x in enumerate(prod):
                if x != 0:
                    out[e] = out.get(e, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}

    def act(self, i, vec):
        out = {}
        for k, c in vec.items():
            img = self.derivations[i].apply(self.A.basis(k))
            for e, x in enumerate(img):
                if x != 0:
                    out[e] = out.get(e, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}

    def to_avec(self, vec) -> Avec:
        return tuple(vec.get(e, Q0) for e in range(self.A.dim))

    def from_avec(self, a: Avec) -> dict:
        return {e: c for e, c in enumerate(a) if c != 0}


class FreeModuleSpace(AModuleSpace):
    """Free A-module with a connection: act(i) = anchor on coefficients plus
    a table entry per basis element."""

    def __init__(self, M: FreeModule, anchors, table):
        # table[i][j]: coords of the image of basis j under action of i
        self.M = M
        self.A = M.algebra
        self.anchors = tuple(anchors)
        self.table = table
        self.keys = [(j, e) for j in range(M.rank) for e in range(self.A.dim)]

    def scale(self, a, vec):
        out = {}
        for (j, e), c in vec.items():
            prod = self.A.mul(a, self.A.basis(e))
            for e2, x in enumerate(prod):
                if x != 0:
                    k = (j, e2)
                    out[k] = out.get(k, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}

    def act(self, i, vec):
        out = {}
        for (j, e), c in vec.items():
            img = self.anchors[i].apply(self.A.basis(e))
            for e2, x in enumerate(img):
                if x != 0:
                    k = (j, e2)
                    out[k] = out.get(k, Q0) + c * x
            moved = self.table[i][j]  # coords: tuple of Avec
            for j2, av in enumerate(moved):
                prod = self.A.mul(self.A.basis(e), av)
                for e2, x in enumerate(prod):
                    if x != 0:
                        k = (j2, e2)
                        out[k] = out.get(k, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}

    def to_elem(self, vec) -> ModuleElement:
        coords = [list(self.A.zero()) for _ in range(self.M.rank)]
        for (j, e), c in vec.items():
            coords[j][e] += c
        return ModuleElement(self.M, tuple(tuple(r) for r in coords))

    def from_elem(self, x: ModuleElement) -> dict:
        return {(j, e): c for j, av in enumerate(x.coords)
                for e, c in enumerate(av) if c != 0}


def ce_operator(L: LieRinehart, space: AModuleSpace, p: int) -> LinearMap:
    """Matrix of the degree-p differential of Alt_A^p(L, space).

    On arguments (x_1 .. x_n), n = p + 1, the value is
    (-1)^n [ sum_i (-1)^(i-1) x_i . f(.. x_i^ ..)
           + sum_(j<k) (-1)^(j+k) f([x_j, x_k], .. x_j^ .. x_k^ ..) ].
    """
    r = L.rank
    src_keys = [(s, k) for s in combinations(range(r), p) for k in space.keys]
    dst_keys = [(s, k) for s in combinations(range(r), p + 1) for k in space.keys]
    src_index = {k: i for i, k in enumerate(src_keys)}
    dst_index = {k: i for i, k in enumerate(dst_keys)}
    matrix = [[Q0] * len(src_keys) for _ in dst_keys]
    n = p + 1
    glob = Fraction(-1) ** n

    def emit(t_subset, col, vec):
        for k, c in vec.items():
            matrix[dst_index[(t_subset, k)]][col] += glob * c

    for t_subset in combinations(range(r), n):
        for pos in range(n):
            s_subset = remove_at(t_subset, pos)
            sgn = Fraction(-1) ** pos
            for k in space.keys:
                col = src_index[(s_subset, k)]
                emit(t_subset, col, vscale(sgn, space.act(t_subset[pos], {k: Q1})))
        for a in range(n):
            for b in range(a + 1, n):
                gamma = L.bracket_table[t_subset[a]][t_subset[b]]
                rest = tuple(x for idx, x in enumerate(t_subset) if idx not in (a, b))
                sgn0 = Fraction(-1) ** (a + b)
                for s, cs in enumerate(gamma):
                    if vec_is_zero(cs):
                        continue
                    s2, merged = sort_sign((s,) + rest)
                    if s2 == 0:
                        continue
                    for k in space.keys:
                        col = src_index[(merged, k)]
                        vec = space.scale(cs, {k: Q1})
                        emit(t_subset, col, vscale(sgn0 * s2, vec))
    return LinearMap(src_keys, dst_keys, matrix)


def operator_matrix(L: LieRinehart, space: AModuleSpace, max_p=None) -> dict:
    """All differentials p -> p+1 of Alt_A(L, space) as LinearMaps."""
    top = L.rank if max_p is None else max_p
    return {p: ce_operator(L, space, p) for p in range(top)}


# ---------------------------------------------------------------------------
# connections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Connection:
    lr: LieRinehart
    module: FreeModule
    table: tuple  # rank x module.rank, coords of nabla_i m_j

    def space(self) -> FreeModuleSpace:
        return FreeModuleSpace(self.module, self.lr.anchor, self.table)

    def apply(self, i: int, x: ModuleElement) -> ModuleElement:
        sp = self.space()
        return sp.to_elem(sp.act(i, sp.from_elem(x)))

    def apply_along(self, d: ModuleElement, x: ModuleElement) -> ModuleElement:
        # A-linear in the direction
        out = self.module.zero_elem()
        for i, ai in enumerate(d.coords):
            if not vec_is_zero(ai):
                out = out.add(self.apply(i, x).scale(ai))
        return out


def curvature(C: Connection) -> dict:
    """F(i,j) m_k as ModuleElements, keyed (i, j, k); i < j."""
    L = C.lr
    out = {}
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            for k in range(C.module.rank):
                m = C.module.basis_elem(k)
                f = C.apply(i, C.apply(j, m))
                f = f.add(C.apply(j, C.apply(i, m)).scale(
                    vec_scale(Fraction(-1), L.algebra.unit())))
                f = f.add(C.apply_along(L.bracket_basis(i, j), m).scale(
                    vec_scale(Fraction(-1), L.algebra.unit())))
                out[(i, j, k)] = f
    return out


def is_flat(C: Connection) -> bool:
    return all(v.is_zero() for v in curvature(C).values())


# ---------------------------------------------------------------------------
# right connections on A
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RightConnection:
    """Right (A, L)-connection on A, determined by c_i = 1 * f_i."""
    lr: LieRinehart
    values: tuple  # one Avec per L basis element

    def act_basis(self, a: Avec, i: int) -> Avec:
        A = self.lr.algebra
        return vec_sub(A.mul(a, self.values[i]), self.lr.anchor[i].apply(a))


def right_connection_extend(Rc: RightConnection, a: Avec, x: ModuleElement) -> Avec:
    """a * x for a general module element; asserts both reduction orders agree."""
    L = Rc.lr
    A = L.algebra
    out = A.zero()
    for i, bi in enumerate(x.coords):
        if vec_is_zero(bi):
            continue
        # coefficient-on-argument rule
        t1 = vec_sub(A.mul(bi, Rc.act_basis(a, i)),
                     A.mul(L.anchor[i].apply(bi), a))
        # coefficient-on-element rule: (a b_i) * f_i with the product split
        ab = A.mul(a, bi)
        t2 = vec_sub(A.mul(a, Rc.act_basis(bi, i)),
                     A.mul(L.anchor[i].apply(a), bi))
        assert t1 == t2 == vec_sub(A.mul(ab, Rc.values[i]),
                                   vec_add(A.mul(a, L.anchor[i].apply(bi)),
                                           A.mul(bi, L.anchor[i].apply(a))))
        out = vec_add(out, t1)
    return out


def right_flat_check(Rc: RightConnection) -> list:
    """(a*x)*y - (a*y)*x = a*[x,y] on basis pairs and algebra basis elements."""
    L = Rc.lr
    A = L.algebra
    bad = None
    for e in range(A.dim):
        a = A.basis(e)
        for i in range(L.rank):
            for j in range(L.rank):
                lhs = vec_sub(Rc.act_basis(Rc.act_basis(a, i), j),
                              Rc.act_basis(Rc.act_basis(a, j), i))
                rhs = right_connection_extend(Rc, a, L.bracket_basis(i, j))
                if lhs != rhs:
                    bad = (e, i, j)
    return [("right-module", bad is None, bad)]


def _lie_coeff_top(L: LieRinehart, i: int) -> Avec:
    """Coefficient of the bracket Lie derivative of the top wedge monomial."""
    n = L.rank
    A = L.algebra
    top = tuple(range(n))
    total = A.zero()
    from .forms import ExteriorElement, ext_from_module_elem
    for pos in range(n):
        rest = remove_at(top, pos)
        moved = ext_from_module_elem(L.bracket_basis(i, top[pos]))
        # wedge moved back into position pos
        left = ext_monomial(L.module, top[:pos])
        right = ext_monomial(L.module, top[pos + 1:])
        w = wedge(wedge(left, moved), right)
        total = vec_add(total, w.coords.get(top, A.zero()))
    return total


def connection_to_right(C: Connection) -> RightConnection:
    """Connection on the top exterior power (rank-1 module) to right connection."""
    L = C.lr
    assert C.module.rank == 1
    vals = []
    for i in range(L.rank):
        g = C.table[i][0][0]  # nabla_i vol = g vol
        vals.append(vec_sub(_lie_coeff_top(L, i), g))
    return RightConnection(L, tuple(vals))


def right_to_connection(Rc: RightConnection) -> Connection:
    L = Rc.lr
    vol = FreeModule(L.algebra, 1, ("vol",))
    table = tuple(
        ((vec_sub(_lie_coeff_top(L, i), Rc.values[i]),),)
        for i in range(L.rank))
    return Connection(L, vol, table)
