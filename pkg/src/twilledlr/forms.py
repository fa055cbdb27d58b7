"""Free modules, exterior algebra and alternating multilinear forms.

Basis subsets are strictly increasing tuples of indices.  An exterior
element of a rank-r free module is a dict mapping such subsets to
algebra coefficient vectors.  A (bigraded) form stores its values on
pairs (outer subset, inner subset); singly graded forms use () inner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .scalars import Avec, CommAlgebra, Q0, Q1, vec_add, vec_is_zero, vec_scale


@dataclass(frozen=True)
class FreeModule:
    algebra: CommAlgebra
    rank: int
    basis_names: tuple = ()

    def zero_elem(self):
        return ModuleElement(self, tuple(self.algebra.zero() for _ in range(self.rank)))

    def basis_elem(self, i: int):
        coords = tuple(self.algebra.unit() if j == i else self.algebra.zero()
                       for j in range(self.rank))
        return ModuleElement(self, coords)


@dataclass(frozen=True)
class ModuleElement:
    module: FreeModule
    coords: tuple  # rank-many Avec

    def add(self, other):
        return ModuleElement(self.module, tuple(
            vec_add(a, b) for a, b in zip(self.coords, other.coords)))

    def scale(self, a: Avec):
        A = self.module.algebra
        return ModuleElement(self.module, tuple(A.mul(a, c) for c in self.coords))

    def is_zero(self) -> bool:
        return all(vec_is_zero(c) for c in self.coords)


# ---------------------------------------------------------------------------
# subset combinatorics
# ---------------------------------------------------------------------------

def merge_sign(s: tuple, t: tuple):
    """Sign of sorting the concatenation s+t into increasing order.

    Returns (sign, merged) with sign 0 when s and t overlap.
    """
    if set(s) & set(t):
        return 0, None
    seq = list(s) + list(t)
    sign = 1
    # count inversions across the boundary; s and t are increasing
    for x in s:
        for y in t:
            if x > y:
                sign = -sign
    return sign, tuple(sorted(seq))


def sort_sign(seq):
    """Sign of sorting an arbitrary index sequence; (0, None) on repeats."""
    if len(set(seq)) != len(seq):
        return 0, None
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def shuffles(subset: tuple, k: int):
    """Yield (sign, left, right) over splits of subset into sizes (k, len-k)."""
    s = tuple(subset)
    for left in combinations(s, k):
        right = tuple(x for x in s if x not in left)
        sign = 1
        for x in left:
            for y in right:
                if x > y:
                    sign = -sign
        yield sign, left, right


def remove_at(t: tuple, pos: int) -> tuple:
    return t[:pos] + t[pos + 1:]


# ---------------------------------------------------------------------------
# exterior elements
# ---------------------------------------------------------------------------

@dataclass
class ExteriorElement:
    """Element of the exterior algebra of a free module, A coefficients."""
    module: FreeModule
    coords: dict = field(default_factory=dict)  # subset -> Avec

    def cleaned(self):
        self.coords = {k: v for k, v in self.coords.items() if not vec_is_zero(v)}
        return self

    def add_term(self, subset: tuple, a: Avec):
        if subset in self.coords:
            self.coords[subset] = vec_add(self.coords[subset], a)
        else:
            self.coords[subset] = a
        return self

    def add(self, other):
        out = ExteriorElement(self.module, dict(self.coords))
        for k, v in other.coords.items():
            out.add_term(k, v)
        return out.cleaned()

    def scale(self, a: Avec):
        A = self.module.algebra
        return ExteriorElement(self.module,
                               {k: A.mul(a, v) for k, v in self.coords.items()}).cleaned()

    def qscale(self, c: Fraction):
        return ExteriorElement(self.module,
                               {k: vec_scale(c, v) for k, v in self.coords.items()}).cleaned()

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.coords.values())


def ext_zero(module: FreeModule) -> ExteriorElement:
    return ExteriorElement(module, {})


def ext_from_module_elem(x: ModuleElement) -> ExteriorElement:
    out = ext_zero(x.module)
    for i, c in enumerate(x.coords):
        if not vec_is_zero(c):
            out.add_term((i,), c)
    return out


def ext_monomial(module: FreeModule, subset: tuple) -> ExteriorElement:
    return ExteriorElement(module, {tuple(subset): module.algebra.unit()})


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    A = x.module.algebra
    out = ext_zero(x.module)
    for s, a in x.coords.items():
        for t, b in y.coords.items():
            sign, merged = merge_sign(s, t)
            if sign == 0:
                continue
            c = A.mul(a, b)
            if sign < 0:
                c = vec_scale(Fraction(-1), c)
            out.add_term(merged, c)
    return out.cleaned()


def top_pairing(x: ExteriorElement, y: ExteriorElement) -> Avec:
    """Coefficient of the top wedge monomial in x ^ y."""
    top = tuple(range(x.module.rank))
    w = wedge(x, y)
    return w.coords.get(top, x.module.algebra.zero())


# ---------------------------------------------------------------------------
# bigraded alternating forms
# ---------------------------------------------------------------------------

@dataclass
class BigradedForm:
    """A-multilinear alternating form on (outer, inner) slots with free target.

    values maps (outer subset, inner subset) to target coordinates
    (a tuple of Avec of length target.rank).  Singly graded forms take
    source_inner=None and inner subset ().
    """
    source_outer: FreeModule
    source_inner: object  # FreeModule or None
    target: FreeModule
    q: int
    p: int
    values: dict = field(default_factory=dict)

    def value(self, s_outer: tuple, s_inner: tuple = ()):
        v = self.values.get((tuple(s_outer), tuple(s_inner)))
        if v is None:
            return self.target.zero_elem()
        return ModuleElement(self.target, v)

    def add_value(self, s_outer, s_inner, elem: ModuleElement):
        key = (tuple(s_outer), tuple(s_inner))
        if key in self.values:
            cur = ModuleElement(self.target, self.values[key])
            self.values[key] = cur.add(elem).coords
        else:
            self.values[key] = elem.coords
        return self

    def is_zero(self) -> bool:
        return all(all(vec_is_zero(c) for c in v) for v in self.values.values())


def eval_form(f: BigradedForm, outer_args, inner_args=()):
    """Evaluate on module elements by A-multilinear alternating extension."""
    A = f.target.algebra
    acc = f.target.zero_elem()
    for o_sign, o_subset, o_coeff in _expand(A, outer_args):
        for i_sign, i_subset, i_coeff in _expand(A, inner_args):
            v = f.value(o_subset, i_subset)
            if v.is_zero():
                continue
            c = A.mul(o_coeff, i_coeff)
            if o_sign * i_sign < 0:
                c = vec_scale(Fraction(-1), c)
            acc = acc.add(v.scale(c))
    return acc


def _expand(A: CommAlgebra, args):
    """Yield (sign, sorted index tuple, coefficient) over basis expansions."""
    choices = [(1, (), A.unit())]
    for x in args:
        nxt = []
        for sign, idx, coeff in choices:
            for i, ci in enumerate(x.coords):
                if vec_is_zero(ci):
                    continue
                nxt.append((sign, idx + (i,), A.mul(coeff, ci)))
        choices = nxt
    for sign, idx, coeff in choices:
        s2, sorted_idx = sort_sign(idx)
        if s2 == 0:
            continue
        yield sign * s2, sorted_idx, coeff


def form_product(f: BigradedForm, g: BigradedForm, mul_values) -> BigradedForm:
    """Shuffle product of bigraded forms.

    mul_values(vf, vg) multiplies target values (e.g. algebra product or
    module action).  Carries the interchange sign (-1)^(p_f * q_g).
    """
    out = BigradedForm(f.source_outer, f.source_inner, f.target,
                       f.q + g.q, f.p + g.p, {})
    inter = -1 if (f.p * g.q) % 2 else 1
    for (so_f, si_f), vf in f.values.items():
        for (so_g, si_g), vg in g.values.items():
            s1, so = merge_sign(so_f, so_g)
            if s1 == 0:
                continue
            s2, si = merge_sign(si_f, si_g)
            if s2 == 0:
                continue
            prod = mul_values(vf, vg)
            sign = s1 * s2 * inter
            elem = ModuleElement(out.target, prod)
            if sign < 0:
                elem = elem.scale(vec_scale(Fraction(-1), out.target.algebra.unit()))
            out.add_value(so, si, elem)
    out.values = {k: v for k, v in out.values.items()
                  if not all(vec_is_zero(c) for c in v)}
    return out


def adjoint_iso(x: ExteriorElement, k: int) -> BigradedForm:
    """Degree-k exterior element to the (rank - k)-form  w -> x ^ w  in top degree.

    The target is the rank-1 free module on the top wedge monomial.
    """
    L = x.module
    n = L.rank
    vol_module = FreeModule(L.algebra, 1, ("vol",))
    out = BigradedForm(L, None, vol_module, n - k, 0, {})
    for t in combinations(range(n), n - k):
        c = top_pairing(x, ext_monomial(L, t))
        if not vec_is_zero(c):
            out.add_value(t, (), ModuleElement(vol_module, (c,)))
    return out


def lie_action_on_form(anchor_act, module_act, f: BigradedForm) -> BigradedForm:
    """Lie derivative of a singly graded A-valued form along a module element.

    anchor_act(a) applies the acting element to an algebra element;
    module_act(i) returns the acting element applied to outer basis i,
    as a ModuleElement of f.source_outer.
    """
    A = f.target.algebra
    out = BigradedForm(f.source_outer, f.source_inner, f.target, f.q, f.p, {})
    for subset in combinations(range(f.source_outer.rank), f.q):
        v = f.value(subset)
        acc = ModuleElement(f.target, tuple(anchor_act(c) for c in v.coords))
        for pos, i in enumerate(subset):
            moved = module_act(i)
            args = [f.source_outer.basis_elem(j) for j in remove_at(subset, pos)]
            args.insert(pos, moved)
            acc = acc.add(eval_form(f, args).scale(
                vec_scale(Fraction(-1), A.unit())))
        if not acc.is_zero():
            out.add_value(subset, (), acc)
    return out
