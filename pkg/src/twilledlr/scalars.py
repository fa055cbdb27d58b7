"""Exact rational scalars: finite-dimensional commutative Q-algebras,
derivations, and fraction-free linear algebra.

Algebra elements are tuples of Fraction of length ``algebra.dim``.
Matrices are lists of rows (lists of Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Q0 = Fraction(0)
Q1 = Fraction(1)

Avec = tuple  # tuple[Fraction, ...], coordinates in the algebra basis


def qv(*entries) -> Avec:
    return tuple(Fraction(e) for e in entries)


def vec_add(a: Avec, b: Avec) -> Avec:
    return tuple(x + y for x, y in zip(a, b, strict=True))

def vec_sub(a: Avec, b: Avec) -> Avec:
    return tuple(x - y for x, y in zip(a, b, strict=True))

def vec_scale(c: Fraction, a: Avec) -> Avec:
    return tuple(c * x for x in a)

def vec_is_zero(a: Avec) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class CommAlgebra:
    """Commutative unital Q-algebra given by structure constants.

    mult_table[i][j] is the coordinate vector of e_i * e_j.
    """
    dim: int
    basis_names: tuple
    mult_table: tuple  # dim x dim table of Avec
    unit_index: int = 0

    def zero(self) -> Avec:
        return (Q0,) * self.dim

    def unit(self) -> Avec:
        return self.basis(self.unit_index)

    def basis(self, i: int) -> Avec:
        return tuple(Q1 if j == i else Q0 for j in range(self.dim))

    def from_rational(self, q) -> Avec:
        return vec_scale(Fraction(q), self.unit())

    def mul(self, a: Avec, b: Avec) -> Avec:
        out = [Q0] * self.dim
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                c = ai * bj
                for k, t in enumerate(self.mult_table[i][j]):
                    if t != 0:
                        out[k] += c * t
        return tuple(out)

    def is_invertible(self, a: Avec) -> bool:
        return self.inverse(a) is not None

    def inverse(self, a: Avec):
        # solve a*x = 1 by linear algebra in the regular representation
        m = self.dim
        rows = [[self.mul(a, self.basis(j))[i] for j in range(m)] for i in range(m)]
        rhs = list(self.unit())
        sol = solve(rows, rhs)
        if sol is None:
            return None
        return tuple(sol)


def algebra_validate(A: CommAlgebra) -> list:
    """Return list of (label, ok, witness) for commutativity, associativity, unit."""
    out = []
    m = A.dim
    bad = None
    for i in range(m):
        for j in range(m):
            if A.mult_table[i][j] != A.mult_table[j][i]:
                bad = (i, j)
    out.append(("commutative", bad is None, bad))
    bad = None
    for i in range(m):
        for j in range(m):
            for k in range(m):
                lhs = A.mul(A.mul(A.basis(i), A.basis(j)), A.basis(k))
                rhs = A.mul(A.basis(i), A.mul(A.basis(j), A.basis(k)))
                if lhs != rhs:
                    bad = (i, j, k)
    out.append(("associative", bad is None, bad))
    bad = None
    u = A.unit()
    for i in range(m):
        if A.mul(u, A.basis(i)) != A.basis(i):
            bad = i
    out.append(("unital", bad is None, bad))
    return out


@dataclass(frozen=True)
class Derivation:
    """Q-linear derivation of a CommAlgebra; matrix[i][j] = coeff of e_i in D(e_j)."""
    algebra: CommAlgebra
    matrix: tuple  # dim x dim of Fraction

    def apply(self, a: Avec) -> Avec:
        m = self.algebra.dim
        return tuple(
            sum((self.matrix[i][j] * a[j] for j in range(m)), Q0) for i in range(m)
        )

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.matrix)


def derivation_from_columns(A: CommAlgebra, images) -> Derivation:
    """Build a derivation from the images D(e_j), given as Avec per basis index."""
    m = A.dim
    mat = tuple(tuple(images[j][i] for j in range(m)) for i in range(m))
    return Derivation(A, mat)


def zero_derivation(A: CommAlgebra) -> Derivation:
    return Derivation(A, tuple((Q0,) * A.dim for _ in range(A.dim)))


def derivation_validate(D: Derivation) -> list:
    A = D.algebra
    out = []
    bad = None
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = D.apply(A.mul(A.basis(i), A.basis(j)))
            rhs = vec_add(A.mul(D.apply(A.basis(i)), A.basis(j)),
                          A.mul(A.basis(i), D.apply(A.basis(j))))
            if lhs != rhs:
                bad = (i, j)
    out.append(("leibniz", bad is None, bad))
    ok = vec_is_zero(D.apply(A.unit()))
    out.append(("kills-unit", ok, None if ok else A.unit()))
    return out


def derivation_commutator(D1: Derivation, D2: Derivation) -> Derivation:
    A = D1.algebra
    m = A.dim
    cols = []
    for j in range(m):
        e = A.basis(j)
        cols.append(vec_sub(D1.apply(D2.apply(e)), D2.apply(D1.apply(e))))
    return derivation_from_columns(A, cols)


def derivation_scale(a: Avec, D: Derivation) -> Derivation:
    """The derivation b -> a * D(b)."""
    A = D.algebra
    cols = [A.mul(a, D.apply(A.basis(j))) for j in range(A.dim)]
    return derivation_from_columns(A, cols)


def derivation_add(D1: Derivation, D2: Derivation) -> Derivation:
    A = D1.algebra
    mat = tuple(tuple(x + y for x, y in zip(r1, r2))
                for r1, r2 in zip(D1.matrix, D2.matrix))
    return Derivation(A, mat)


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def _integer_rows(mat):
    """Clear denominators rowwise; returns integer rows (plain ints)."""
    out = []
    for row in mat:
        den = 1
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def row_echelon(mat):
    """Fraction-free (Bareiss) row echelon of a rational matrix.

    Returns (echelon_rows, pivot_cols); echelon rows are integer rows.
    """
    m = _integer_rows(mat)
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    piv_r = 0
    prev = 1
    pivot_cols = []
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        p = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            for c in range(n_cols):
                # Bareiss update: exact integer division by previous pivot
                m[r][c] = (p * m[r][c] - fr * m[piv_r][c]) // prev
        prev = p
        pivot_cols.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return m[:piv_r], pivot_cols


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    return len(row_echelon(mat)[1])


def kernel_basis(mat):
    """Basis of the right kernel {x : mat @ x = 0}, as Fraction vectors."""
    if not mat:
        return []
    n_cols = len(mat[0])
    ech, piv = row_echelon(mat)
    piv_set = set(piv)
    free = [c for c in range(n_cols) if c not in piv_set]
    basis = []
    for f in free:
        sol = [Q0] * n_cols
        sol[f] = Q1
        for r in range(len(piv) - 1, -1, -1):
            pc = piv[r]
            s = sum((Fraction(ech[r][c]) * sol[c] for c in range(pc + 1, n_cols)), Q0)
            sol[pc] = -s / ech[r][pc]
        basis.append(tuple(sol))
    return basis


def solve(mat, rhs):
    """One solution x of mat @ x = rhs, or None. Exact."""
    if not mat:
        return None
    n_cols = len(mat[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    ech, piv = row_echelon(aug)
    # inconsistent if a pivot lands in the rhs column
    if piv and piv[-1] == n_cols:
        return None
    sol = [Q0] * n_cols
    for r in range(len(piv) - 1, -1, -1):
        pc = piv[r]
        s = sum((Fraction(ech[r][c]) * sol[c] for c in range(pc + 1, n_cols)), Q0)
        sol[pc] = (Fraction(ech[r][n_cols]) - s) / ech[r][pc]
    return tuple(sol)


def mat_mul(a, b):
    n, k = len(a), len(b)
    p = len(b[0]) if k else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Q0) for j in range(p)]
            for i in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_is_zero(a) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def zero_matrix(n_rows, n_cols):
    return [[Q0] * n_cols for _ in range(n_rows)]


def identity_matrix(n):
    return [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)]


@dataclass
class LinearMap:
    """Exact linear map between Q-spaces with named basis keys."""
    src_keys: list
    dst_keys: list
    matrix: list  # len(dst_keys) x len(src_keys)

    def apply(self, coeffs: dict) -> dict:
        src_index = {k: i for i, k in enumerate(self.src_keys)}
        out = {}
        for k, c in coeffs.items():
            j = src_index[k]
            for i, row in enumerate(self.matrix):
                if row[j] != 0:
                    key = self.dst_keys[i]
                    out[key] = out.get(key, Q0) + c * row[j]
        return {k: v for k, v in out.items() if v != 0}


# small seeded generator of algebra elements, used by property checks
def random_avec(A: CommAlgebra, rng) -> Avec:
    return tuple(Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(A.dim))
