"""Truncated universal object of a Lie-Rinehart structure.

Elements are A-combinations of ordered monomials in the module basis
(Poincare-Birkhoff-Witt normal form, nondecreasing indices), cut off at
a fixed monomial length.  Products that would leave the truncation raise
MonomialOverflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .scalars import (Avec, LinearMap, Q0, Q1, vec_add, vec_is_zero,
                      vec_scale, vec_sub)
from .forms import remove_at, sort_sign
from .lie_rinehart import AModuleSpace, LieRinehart, RightConnection, ce_operator
from .twilled import AlmostTwilled, compat_check, twilled_sum


class MonomialOverflow(Exception):
    pass


class NotTwilledError(ValueError):
    pass


@dataclass
class TruncUniversal:
    """Truncated enveloping object; elements are dicts monomial -> Avec."""
    lr: LieRinehart
    cutoff: int

    def __post_init__(self):
        self.A = self.lr.algebra
        self.monomials = []
        for length in range(self.cutoff + 1):
            self.monomials.extend(
                combinations_with_replacement(range(self.lr.rank), length))
        self.keys = [(mono, e) for mono in self.monomials
                     for e in range(self.A.dim)]

    def zero(self) -> dict:
        return {}

    def one(self) -> dict:
        return {(): self.A.unit()}

    def scalar(self, a: Avec) -> dict:
        return {(): a}

    def generator(self, i: int) -> dict:
        return {(i,): self.A.unit()}

    def add(self, u: dict, v: dict) -> dict:
        out = dict(u)
        for mono, a in v.items():
            out[mono] = vec_add(out[mono], a) if mono in out else a
        return {m: a for m, a in out.items() if not vec_is_zero(a)}

    def scale(self, a: Avec, u: dict) -> dict:
        return {m: self.A.mul(a, b) for m, b in u.items()
                if not vec_is_zero(self.A.mul(a, b))}

    def gen_times_mono(self, g: int, mono: tuple) -> dict:
        """Normal form of f_g * mono."""
        if not mono or g <= mono[0]:
            if len(mono) + 1 > self.cutoff:
                raise MonomialOverflow((g,) + mono)
            return {(g,) + mono: self.A.unit()}
        m0, rest = mono[0], mono[1:]
        out = self.gen_times(m0, self.gen_times_mono(g, rest))
        gamma = self.lr.bracket_table[g][m0]
        for s, cs in enumerate(gamma):
            if vec_is_zero(cs):
                continue
            for mo, b in self.gen_times_mono(s, rest).items():
                c = self.A.mul(cs, b)
                out[mo] = vec_add(out[mo], c) if mo in out else c
        return {m: a for m, a in out.items() if not vec_is_zero(a)}

    def gen_times(self, g: int, elem: dict) -> dict:
        """f_g * elem, moving coefficients left: f_g a = a f_g + f_g(a)."""
        out = {}
        for mono, a in elem.items():
            for mo, b in self.gen_times_mono(g, mono).items():
                c = self.A.mul(a, b)
                out[mo] = vec_add(out[mo], c) if mo in out else c
            da = self.lr.anchor[g].apply(a)
            if not vec_is_zero(da):
                out[mono] = vec_add(out[mono], da) if mono in out else da
        return {m: a for m, a in out.items() if not vec_is_zero(a)}

    def mult(self, u: dict, v: dict) -> dict:
        out = {}
        vmax = max((len(m) for m in v), default=0)
        for mono, a in u.items():
            if len(mono) + vmax > self.cutoff:
                raise MonomialOverflow((mono, vmax))
            acc = v
            for g in reversed(mono):
                acc = self.gen_times(g, acc)
            for mo, b in self.scale(a, acc).items():
                out[mo] = vec_add(out[mo], b) if mo in out else b
        return {m: a for m, a in out.items() if not vec_is_zero(a)}

    def epsilon(self, u: dict) -> Avec:
        """Counit onto A; kills the left ideal generated by the module."""
        return u.get((), self.A.zero())


class USpace(AModuleSpace):
    """Truncated universal object as a coefficient space; the action of
    the right structure is the twisted one defined below."""

    def __init__(self, T: AlmostTwilled, U: TruncUniversal):
        self.T = T
        self.U = U
        self.A = U.A
        self.keys = list(U.keys)

    def scale(self, a, vec):
        out = {}
        for (mono, e), c in vec.items():
            for e2, x in enumerate(self.A.mul(a, self.A.basis(e))):
                if x != 0:
                    k = (mono, e2)
                    out[k] = out.get(k, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}

    def act(self, j, vec):
        out = {}
        for (mono, e), c in vec.items():
            img = xi_action(self.T, self.U, j, {mono: self.A.basis(e)})
            for mono2, a in img.items():
                for e2, x in enumerate(a):
                    if x != 0:
                        k = (mono2, e2)
                        out[k] = out.get(k, Q0) + c * x
        return {k: c for k, c in out.items() if c != 0}


def require_twilled(T: AlmostTwilled, rng=None):
    report = compat_check(T, rng)
    if not all(ok for _, ok, _ in report):
        raise NotTwilledError([lbl for lbl, ok, _ in report if not ok])


def xi_action(T: AlmostTwilled, U: TruncUniversal, j: int, w: dict) -> dict:
    """Action of the j-th right basis element on the truncated object,
    by the recursion through the leading factor."""
    out = {}
    A = U.A
    for mono, a in w.items():
        img = _xi_mono(T, U, j, mono)
        term = U.scale(a, img)
        da = T.right.anchor[j].apply(a)
        if not vec_is_zero(da):
            term = U.add(term, {mono: da})
        out = U.add(out, term)
    return out


def _xi_mono(T: AlmostTwilled, U: TruncUniversal, j: int, mono: tuple) -> dict:
    if not mono:
        return {}
    x0, rest = mono[0], mono[1:]
    # (xi . x0) (rest)
    moved = T.act_rl[j][x0]
    out = {}
    tail = {rest: U.A.unit()}
    for s, cs in enumerate(moved):
        if vec_is_zero(cs):
            continue
        out = U.add(out, U.scale(cs, U.gen_times(s, tail)))
    # - (x0 . xi) . rest, with the right-element coefficients pulled out
    back = T.act_lr[x0][j]
    for j2, cj in enumerate(back):
        if vec_is_zero(cj):
            continue
        inner = xi_action(T, U, j2, tail)
        out = U.add(out, U.scale(vec_scale(Fraction(-1), cj), inner))
    # + x0 (xi . rest)
    out = U.add(out, U.gen_times(x0, xi_action(T, U, j, tail)))
    return out


def xi_action_via_sum(T: AlmostTwilled, U: TruncUniversal, j: int,
                      w: dict) -> dict:
    """Independent route: commutator in the object of the sum structure,
    then projection killing every monomial with a right factor."""
    sum_lr = twilled_sum(T)
    US = TruncUniversal(sum_lr, U.cutoff + 1)
    r1 = T.left.rank
    xi = US.generator(r1 + j)
    comm = US.add(US.mult(xi, w), US.scale(
        vec_scale(Fraction(-1), US.A.unit()), US.mult(w, xi)))
    return tilde_epsilon(comm, r1)


def tilde_epsilon(u: dict, r1: int) -> dict:
    """Keep only monomials entirely inside the left structure."""
    return {m: a for m, a in u.items() if all(g < r1 for g in m)}


def flatness_check_u(T: AlmostTwilled, cutoff: int = 3, rng=None) -> dict:
    """Route agreement of the action, its flatness, and square-zero of the
    induced differential on forms with truncated coefficients."""
    require_twilled(T, rng)
    U = TruncUniversal(T.left, cutoff)
    A = U.A

    bad = None
    for mono in U.monomials:
        for e in range(A.dim):
            w = {mono: A.basis(e)}
            for j in range(T.right.rank):
                if xi_action(T, U, j, w) != xi_action_via_sum(T, U, j, w):
                    bad = (mono, e, j)
    routes_agree = bad is None

    bad = None
    for mono in U.monomials:
        for e in range(A.dim):
            w = {mono: A.basis(e)}
            for j1 in range(T.right.rank):
                for j2 in range(T.right.rank):
                    lhs = {}
                    gamma = T.right.bracket_table[j1][j2]
                    for j3, cj in enumerate(gamma):
                        if not vec_is_zero(cj):
                            lhs = U.add(lhs, U.scale(cj, xi_action(T, U, j3, w)))
                    rhs = xi_action(T, U, j1, xi_action(T, U, j2, w))
                    rhs = U.add(rhs, U.scale(
                        vec_scale(Fraction(-1), A.unit()),
                        xi_action(T, U, j2, xi_action(T, U, j1, w))))
                    if lhs != rhs:
                        bad = (mono, e, j1, j2)
    flat = bad is None

    space = USpace(T, U)
    bad = None
    for q in range(T.right.rank - 1):
        d1 = ce_operator(T.right, space, q)
        d2 = ce_operator(T.right, space, q + 1)
        from .scalars import mat_is_zero, mat_mul
        if not mat_is_zero(mat_mul(d2.matrix, d1.matrix)):
            bad = q
    square_zero = bad is None

    return {"routes-agree": routes_agree, "flat": flat,
            "square-zero": square_zero,
            "6.4": routes_agree and flat and square_zero}


# ---------------------------------------------------------------------------
# complexes built from the truncated object
# ---------------------------------------------------------------------------

def rinehart_complex(L: LieRinehart, cutoff: int = 3) -> dict:
    """Spaces U_(<= cutoff - j) tensor Lambda^j with the standard
    differential; returns the LinearMaps d_j: j -> j-1."""
    A = L.algebra
    r = L.rank
    spaces = {}
    for j in range(r + 1):
        U = TruncUniversal(L, cutoff - j)
        spaces[j] = (U, [(mono, t, e) for mono in U.monomials
                         for t in combinations(range(r), j)
                         for e in range(A.dim)])
    maps = {}
    for j in range(1, r + 1):
        U_src, src = spaces[j]
        U_dst, dst = spaces[j - 1]
        dst_index = {k: i for i, k in enumerate(dst)}
        matrix = [[Q0] * len(src) for _ in dst]
        for col, (mono, t, e) in enumerate(src):
            u = {mono: A.basis(e)}
            img = {}
            for pos in range(j):
                prod = U_dst.mult(u, U_dst.generator(t[pos]))
                rest = remove_at(t, pos)
                for mo, a in prod.items():
                    for e2, x in enumerate(a):
                        if x != 0:
                            k = (mo, rest, e2)
                            img[k] = img.get(k, Q0) + ((-1) ** pos) * x
            for p1 in range(j):
                for p2 in range(p1 + 1, j):
                    gamma = L.bracket_table[t[p1]][t[p2]]
                    rest = tuple(x for idx, x in enumerate(t)
                                 if idx not in (p1, p2))
                    sgn0 = (-1) ** (p1 + p2)
                    for s, cs in enumerate(gamma):
                        if vec_is_zero(cs):
                            continue
                        sg, merged = sort_sign((s,) + rest)
                        if sg == 0:
                            continue
                        for mo, a in U_dst.scale(cs, u).items():
                            for e2, x in enumerate(a):
                                if x != 0:
                                    k = (mo, merged, e2)
                                    img[k] = img.get(k, Q0) + sgn0 * sg * x
            for k, c in img.items():
                if c != 0:
                    matrix[dst_index[k]][col] += c
        maps[j] = LinearMap(src, dst, matrix)
    return {"spaces": spaces, "maps": maps}


def collapse_right(U: TruncUniversal, Rc: RightConnection, u: dict) -> Avec:
    """1 * u through the right action of the truncated object on A."""
    A = U.A
    out = A.zero()
    for mono, a in u.items():
        val = a
        for g in mono:
            val = Rc.act_basis(val, g)
        out = vec_add(out, val)
    return out


def standard_complex(L: LieRinehart, Rc: RightConnection, cutoff: int = 3) -> dict:
    """Forms with the differential obtained by tensoring the standard
    complex with A over the truncated object, computed through the
    truncated arithmetic and collapsed by the right action."""
    A = L.algebra
    r = L.rank
    U = TruncUniversal(L, cutoff)
    maps = {}
    for j in range(1, r + 1):
        src = [(t, e) for t in combinations(range(r), j) for e in range(A.dim)]
        dst = [(t, e) for t in combinations(range(r), j - 1)
               for e in range(A.dim)]
        dst_index = {k: i for i, k in enumerate(dst)}
        matrix = [[Q0] * len(src) for _ in dst]
        for col, (t, e) in enumerate(src):
            u = U.scalar(A.basis(e))
            for pos in range(j):
                prod = U.mult(u, U.generator(t[pos]))
                a = collapse_right(U, Rc, prod)
                rest = remove_at(t, pos)
                for e2, x in enumerate(a):
                    if x != 0:
                        matrix[dst_index[(rest, e2)]][col] += ((-1) ** pos) * x
            for p1 in range(j):
                for p2 in range(p1 + 1, j):
                    gamma = L.bracket_table[t[p1]][t[p2]]
                    rest = tuple(x for idx, x in enumerate(t)
                                 if idx not in (p1, p2))
                    sgn0 = (-1) ** (p1 + p2)
                    for s, cs in enumerate(gamma):
                        if vec_is_zero(cs):
                            continue
                        sg, merged = sort_sign((s,) + rest)
                        if sg == 0:
                            continue
                        a = collapse_right(U, Rc, U.scale(cs, u))
                        for e2, x in enumerate(a):
                            if x != 0:
                                matrix[dst_index[(merged, e2)]][col] += \
                                    sgn0 * sg * x
        maps[j] = LinearMap(src, dst, matrix)
    return maps
