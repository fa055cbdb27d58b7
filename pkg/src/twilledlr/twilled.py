"""Pairs of Lie-Rinehart structures over one algebra with mutual actions.

The three compatibility conditions between the actions are checked
exactly; the associated double complex is assembled as matrices and its
three square-zero/anticommutation identities are verified per bidegree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .scalars import (Avec, LinearMap, Q0, Q1, mat_mul, mat_add, mat_is_zero,
                      random_avec, vec_add, vec_is_zero, vec_scale, vec_sub)
from .forms import FreeModule, ModuleElement, remove_at, sort_sign
from .lie_rinehart import (AModuleSpace, CoeffA, Connection, FreeModuleSpace,
                           LieRinehart, ce_operator, curvature, lr_validate,
                           make_lr, random_elems)


@dataclass(frozen=True)
class AlmostTwilled:
    left: LieRinehart    # (A, L')
    right: LieRinehart   # (A, L'')
    act_lr: tuple        # r' x r'': coords in right module of x_i . xi_j
    act_rl: tuple        # r'' x r': coords in left module of xi_j . x_i

    @property
    def algebra(self):
        return self.left.algebra

    def lr_connection(self) -> Connection:
        """L' acting on L'' as a connection."""
        return Connection(self.left, self.right.module, self.act_lr)

    def rl_connection(self) -> Connection:
        return Connection(self.right, self.left.module, self.act_rl)

    def act_lr_elem(self, x: ModuleElement, xi: ModuleElement) -> ModuleElement:
        return self.lr_connection().apply_along(x, xi)

    def act_rl_elem(self, xi: ModuleElement, x: ModuleElement) -> ModuleElement:
        return self.rl_connection().apply_along(xi, x)


def almost_twilled_validate(T: AlmostTwilled, rng=None, samples: int = 8) -> list:
    """Both structures valid and both mutual actions flat (module axioms)."""
    out = []
    for label, ok, w in lr_validate(T.left, rng, samples):
        out.append(("left-" + label, ok, w))
    for label, ok, w in lr_validate(T.right, rng, samples):
        out.append(("right-" + label, ok, w))

    for name, conn in (("lr", T.lr_connection()), ("rl", T.rl_connection())):
        bad = None
        for key, v in curvature(conn).items():
            if not v.is_zero():
                bad = key
        out.append((f"module-axiom-{name}", bad is None, bad))

    if rng is not None:
        bad = None
        for t in range(samples):
            x, y = random_elems(T.left, rng, 2)
            xi = random_elems(T.right, rng, 1)[0]
            lhs = T.act_lr_elem(T.left.bracket(x, y), xi)
            rhs = T.act_lr_elem(x, T.act_lr_elem(y, xi))
            rhs = rhs.add(T.act_lr_elem(y, T.act_lr_elem(x, xi)).scale(
                vec_scale(Fraction(-1), T.algebra.unit())))
            if lhs.coords != rhs.coords:
                bad = ("lr", t)
            xi2, eta = random_elems(T.right, rng, 2)
            z = random_elems(T.left, rng, 1)[0]
            lhs = T.act_rl_elem(T.right.bracket(xi2, eta), z)
            rhs = T.act_rl_elem(xi2, T.act_rl_elem(eta, z))
            rhs = rhs.add(T.act_rl_elem(eta, T.act_rl_elem(xi2, z)).scale(
                vec_scale(Fraction(-1), T.algebra.unit())))
            if lhs.coords != rhs.coords:
                bad = ("rl", t)
        out.append(("module-axiom-random", bad is None, bad))
    return out


def compat_check(T: AlmostTwilled, rng=None, samples: int = 8) -> list:
    """The three mixed compatibility identities; report keyed 1.7.1-1.7.3."""
    A = T.algebra
    L1, L2 = T.left, T.right

    xs = [L1.module.basis_elem(i) for i in range(L1.rank)]
    xis = [L2.module.basis_elem(j) for j in range(L2.rank)]
    if rng is not None:
        xs += random_elems(L1, rng, samples)
        xis += random_elems(L2, rng, samples)

    out = []
    bad = None
    algebra_elems = [A.basis(e) for e in range(A.dim)]
    for xi in xis:
        for x in xs:
            for a in algebra_elems:
                lhs = vec_sub(L2.act_on_A(xi, L1.act_on_A(x, a)),
                              L1.act_on_A(x, L2.act_on_A(xi, a)))
                rhs = vec_sub(L1.act_on_A(T.act_rl_elem(xi, x), a),
                              L2.act_on_A(T.act_lr_elem(x, xi), a))
                if lhs != rhs:
                    bad = (xi.coords, x.coords, a)
    out.append(("1.7.1", bad is None, bad))

    bad = None
    for x in xs:
        for xi in xis:
            for eta in xis:
                lhs = T.act_lr_elem(x, L2.bracket(xi, eta))
                rhs = L2.bracket(T.act_lr_elem(x, xi), eta)
                rhs = rhs.add(L2.bracket(xi, T.act_lr_elem(x, eta)))
                rhs = rhs.add(T.act_lr_elem(T.act_rl_elem(xi, x), eta).scale(
                    vec_scale(Fraction(-1), A.unit())))
                rhs = rhs.add(T.act_lr_elem(T.act_rl_elem(eta, x), xi))
                if lhs.coords != rhs.coords:
                    bad = (x.coords, xi.coords, eta.coords)
    out.append(("1.7.2", bad is None, bad))

    bad = None
    for xi in xis:
        for x in xs:
            for y in xs:
                lhs = T.act_rl_elem(xi, L1.bracket(x, y))
                rhs = L1.bracket(T.act_rl_elem(xi, x), y)
                rhs = rhs.add(L1.bracket(x, T.act_rl_elem(xi, y)))
                rhs = rhs.add(T.act_rl_elem(T.act_lr_elem(x, xi), y).scale(
                    vec_scale(Fraction(-1), A.unit())))
                rhs = rhs.add(T.act_rl_elem(T.act_lr_elem(y, xi), x))
                if lhs.coords != rhs.coords:
                    bad = (xi.coords, x.coords, y.coords)
    out.append(("1.7.3", bad is None, bad))
    return out


def twilled_sum(T: AlmostTwilled) -> LieRinehart:
    """Direct-sum module with the mixed bracket; left structure comes first."""
    A = T.algebra
    r1, r2 = T.left.rank, T.right.rank
    r = r1 + r2
    z = A.zero()

    def embed_left(coords):
        return tuple(coords) + tuple(z for _ in range(r2))

    def embed_right(coords):
        return tuple(z for _ in range(r1)) + tuple(coords)

    bracket = [[None] * r for _ in range(r)]
    for i in range(r1):
        for j in range(r1):
            bracket[i][j] = embed_left(T.left.bracket_table[i][j])
    for i in range(r2):
        for j in range(r2):
            bracket[r1 + i][r1 + j] = embed_right(T.right.bracket_table[i][j])
    for i in range(r1):
        for j in range(r2):
            lr = T.act_lr[i][j]            # x_i . xi_j in L''
            rl = T.act_rl[j][i]            # xi_j . x_i in L'
            mixed = tuple(vec_scale(Fraction(-1), c) for c in rl) + tuple(lr)
            bracket[i][r1 + j] = mixed
            bracket[r1 + j][i] = tuple(vec_scale(Fraction(-1), c) for c in mixed)

    anchor = tuple(T.left.anchor) + tuple(T.right.anchor)
    names = tuple(T.left.module.basis_names) + tuple(T.right.module.basis_names)
    return make_lr(A, r, anchor, bracket, names)


# ---------------------------------------------------------------------------
# forms with form values, and the double complex
# ---------------------------------------------------------------------------

class FormSpace(AModuleSpace):
    """Alt_A^p(source, values) as a coefficient space for an outside action.

    The acting basis element i differentiates values through value_act
    and moves arguments through src_act (a table of coords per source
    basis element).
    """

    def __init__(self, source: FreeModule, p: int, values: AModuleSpace,
                 value_act, src_act):
        self.source = source
        self.p = p
        self.values = values
        self.value_act = value_act
        self.src_act = src_act
        self.subsets = list(combinations(range(source.rank), p))
        self.keys = [(s, vk) for s in self.subsets for vk in values.keys]

    def scale(self, a, vec):
        out = {}
        for (s, vk), c in vec.items():
            for vk2, c2 in self.values.scale(a, {vk: Q1}).items():
                k = (s, vk2)
                out[k] = out.get(k, Q0) + c * c2
        return {k: c for k, c in out.items() if c != 0}

    def act(self, i, vec):
        out = {}
        for (t, vk), c in vec.items():
            for vk2, c2 in self.value_act(i, {vk: Q1}).items():
                k = (t, vk2)
                out[k] = out.get(k, Q0) + c * c2
            for u in self.subsets:
                for pos in range(self.p):
                    moved = self.src_act[i][u[pos]]
                    for s, cs in enumerate(moved):
                        if vec_is_zero(cs):
                            continue
                        sgn, merged = sort_sign(u[:pos] + (s,) + u[pos + 1:])
                        if sgn == 0 or merged != t:
                            continue
                        for vk2, c2 in self.values.scale(cs, {vk: Q1}).items():
                            k = (u, vk2)
                            out[k] = out.get(k, Q0) - sgn * c * c2
        return {k: c for k, c in out.items() if c != 0}


def _remap(lm: LinearMap, key_fn, src_keys, dst_keys, scalar=Q1) -> LinearMap:
    src_index = {k: i for i, k in enumerate(src_keys)}
    dst_index = {k: i for i, k in enumerate(dst_keys)}
    matrix = [[Q0] * len(src_keys) for _ in dst_keys]
    for i, dk in enumerate(lm.dst_keys):
        for j, sk in enumerate(lm.src_keys):
            c = lm.matrix[i][j]
            if c != 0:
                matrix[dst_index[key_fn(dk)]][src_index[key_fn(sk)]] = scalar * c
    return LinearMap(list(src_keys), list(dst_keys), matrix)


def bicomplex_keys(T: AlmostTwilled, p: int, q: int) -> list:
    """Canonical basis of the (p, q) spot: (outer subset, inner subset, e)."""
    r1, r2 = T.left.rank, T.right.rank
    m = T.algebra.dim
    return [(s, t, e)
            for s in combinations(range(r2), q)
            for t in combinations(range(r1), p)
            for e in range(m)]


def bicomplex_build(T: AlmostTwilled) -> dict:
    """All differentials of the double complex on Alt^q(L'', Alt^p(L', A)).

    Returns {"dsecond": {(p,q): LinearMap (p,q)->(p,q+1)},
             "dprime":  {(p,q): LinearMap (p,q)->(p+1,q)}}.
    The (p,q)-raising operator carries the extra sign (-1)^q so the two
    operators anticommute.
    """
    A = T.algebra
    r1, r2 = T.left.rank, T.right.rank
    dsecond, dprime = {}, {}
    for p in range(r1 + 1):
        inner = FormSpace(T.left.module, p, CoeffA(A, T.left.anchor),
                          CoeffA(A, T.right.anchor).act, T.act_rl)
        for q in range(r2):
            lm = ce_operator(T.right, inner, q)
            # ce keys are (outer_subset, (inner_subset, e))
            dsecond[(p, q)] = _remap(
                lm, lambda k: (k[0], k[1][0], k[1][1]),
                bicomplex_keys(T, p, q), bicomplex_keys(T, p, q + 1))
    for q in range(r2 + 1):
        outer = FormSpace(T.right.module, q, CoeffA(A, T.right.anchor),
                          CoeffA(A, T.left.anchor).act, T.act_lr)
        for p in range(r1):
            lm = ce_operator(T.left, outer, p)
            dprime[(p, q)] = _remap(
                lm, lambda k: (k[1][0], k[0], k[1][1]),
                bicomplex_keys(T, p, q), bicomplex_keys(T, p + 1, q),
                scalar=Fraction(-1) ** q)
    return {"dsecond": dsecond, "dprime": dprime}


def bicomplex_check(T: AlmostTwilled, bc=None) -> list:
    """Square-zero and anticommutation identities, per bidegree."""
    if bc is None:
        bc = bicomplex_build(T)
    r1, r2 = T.left.rank, T.right.rank
    ds, dp = bc["dsecond"], bc["dprime"]
    out = []
    bad = None
    for p in range(r1 - 1):
        for q in range(r2 + 1):
            if not mat_is_zero(mat_mul(dp[(p + 1, q)].matrix, dp[(p, q)].matrix)):
                bad = (p, q)
    out.append(("1.15.1", bad is None, bad))
    bad = None
    for p in range(r1 + 1):
        for q in range(r2 - 1):
            if not mat_is_zero(mat_mul(ds[(p, q + 1)].matrix, ds[(p, q)].matrix)):
                bad = (p, q)
    out.append(("1.15.2", bad is None, bad))
    bad = None
    for p in range(r1):
        for q in range(r2):
            anti = mat_add(mat_mul(dp[(p, q + 1)].matrix, ds[(p, q)].matrix),
                           mat_mul(ds[(p + 1, q)].matrix, dp[(p, q)].matrix))
            if not mat_is_zero(anti):
                bad = (p, q)
    out.append(("1.15.3", bad is None, bad))
    return out


def theorem115_harness(T: AlmostTwilled, rng=None) -> dict:
    """Three independently computed verdicts that must coincide, plus a
    dimension comparison of the two cohomologies when they pass."""
    from .homology import totalize_bicomplex, chain_betti_from_operators

    compat = compat_check(T, rng)
    v_compat = all(ok for _, ok, _ in compat)

    sum_lr = twilled_sum(T)
    sum_report = lr_validate(sum_lr, rng)
    v_sum = all(ok for _, ok, _ in sum_report)

    bc = bicomplex_build(T)
    bc_report = bicomplex_check(T, bc)
    v_bc = all(ok for _, ok, _ in bc_report)

    result = {
        "compat": compat, "sum": sum_report, "bicomplex": bc_report,
        "verdicts": (v_compat, v_sum, v_bc),
        "agree": v_compat == v_sum == v_bc,
        "betti_total": None, "betti_sum": None, "betti_match": None,
    }
    if v_compat and v_sum and v_bc:
        sizes = {(p, q): len(bicomplex_keys(T, p, q))
                 for p in range(T.left.rank + 1) for q in range(T.right.rank + 1)}
        result["betti_total"] = totalize_bicomplex(sizes, bc["dprime"], bc["dsecond"])
        A = T.algebra
        from math import comb
        dims = [comb(sum_lr.rank, p) * A.dim for p in range(sum_lr.rank + 1)]
        ops = [ce_operator(sum_lr, CoeffA(A, sum_lr.anchor), p).matrix
               for p in range(sum_lr.rank)]
        result["betti_sum"] = chain_betti_from_operators(ops, dims)
        result["betti_match"] = result["betti_total"] == result["betti_sum"]
    return result
