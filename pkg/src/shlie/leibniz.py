"""
Leibniz complexes of left Sh^Lie-modules.

Module-slot convention: for x in M and a in A, [a, x] = rho_a(x) and
[x, a] = -rho_a(x). Tensor bases of M (x) A^(x)m are ordered
lexicographically by slot indices, M slot most significant.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from .category import (
    HomElement,
    compose,
    enumerate_split_tuples,
    format_split_tuple,
    generator_dij,
    generator_matrix,
    hom_dimension,
    postcomposition_matrix,
    source_of,
    target_of,
)
from .complexes import FiniteChainComplex, verify_d_squared
from .linalg import QQ, SparseMatrix, _norm, rank

MODULE_CONVENTION = "[a,x]=rho_a(x); [x,a]=-rho_a(x)"


class InvalidStructure(ValueError):
    """Structure constants or a module action violate a defining identity."""


# ------------------------------------------------------------ algebra data


class LieAlgebraData:
    """Structure constants c[i, j, k]: [e_i, e_j] = sum_k c[i, j, k] e_k."""

    def __init__(self, dim, constants, name=""):
        self.dim = dim
        self.name = name
        self.c = {}
        for (i, j, k), v in constants.items():
            if not all(0 <= x < dim for x in (i, j, k)):
                raise InvalidStructure("index (%d, %d, %d) out of range for dim %d" % (i, j, k, dim))
            v = _norm(v)
            if v:
                self.c[i, j, k] = v
        self._table = {}
        for (i, j, k), v in self.c.items():
            self._table.setdefault((i, j), {})[k] = v
        self.validate()

    @classmethod
    def from_brackets(cls, dim, brackets, name=""):
        """brackets: {(i, j): {k: coeff}}; the (j, i) entries are filled in by antisymmetry."""
        c = {}
        for (i, j), coeffs in brackets.items():
            for k, v in coeffs.items():
                v = _norm(v)
                for key, val in (((i, j, k), v), ((j, i, k), -v)):
                    if key in c and c[key] != val:
                        raise InvalidStructure("antisymmetry: [e%d,e%d] given inconsistently" % (i, j))
                    c[key] = val
        return cls(dim, c, name)

    def validate(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if self.c.get((i, j, k), 0) != -self.c.get((j, i, k), 0):
                        raise InvalidStructure("antisymmetry fails: c[%d,%d,%d] != -c[%d,%d,%d]" % (i, j, k, j, i, k))
        for i, j, l in product(range(d), repeat=3):
            # [[e_i, e_j], e_l] + [[e_j, e_l], e_i] + [[e_l, e_i], e_j]
            total = {}
            for a, b, cc in ((i, j, l), (j, l, i), (l, i, j)):
                for k, v in self.bracket_basis(a, b).items():
                    for mm, w in self.bracket_basis(k, cc).items():
                        total[mm] = total.get(mm, 0) + v * w
            bad = {mm: v for mm, v in total.items() if v}
            if bad:
                mm = min(bad)
                raise InvalidStructure("Jacobi fails for (e%d, e%d, e%d): component %d is %s" % (i, j, l, mm, bad[mm]))

    def bracket_basis(self, i, j):
        return self._table.get((i, j), {})

    def bracket(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, v in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * v
        return {k: _norm(v) for k, v in out.items() if v}

    def is_abelian(self):
        return not self.c

    def change_basis(self, P, name=None):
        """Same algebra in the basis f_i = sum_a P[a][i] e_a (P invertible, rational)."""
        from sympy import Matrix, Rational

        Pm = Matrix(P)
        Pinv = Pm.inv()
        d = self.dim
        c = {}
        for i in range(d):
            for j in range(d):
                vec = {}
                for a in range(d):
                    for b in range(d):
                        w = Pm[a, i] * Pm[b, j]
                        if w:
                            for k, v in self.bracket_basis(a, b).items():
                                vec[k] = vec.get(k, 0) + w * Rational(v)
                for k in range(d):
                    val = sum((Pinv[k, e] * vec.get(e, 0) for e in range(d)), Rational(0))
                    if val:
                        c[i, j, k] = Fraction(int(val.p), int(val.q))
        return LieAlgebraData(d, c, name or (self.name + "'"))


class ModuleData:
    """rho[i] is the action matrix of e_i on M."""

    def __init__(self, dim, action, algebra=None, name=""):
        self.dim = dim
        self.action = list(action)
        self.name = name
        for i, r in enumerate(self.action):
            if r.shape != (dim, dim):
                raise InvalidStructure("action of e%d has shape %s, expected %s" % (i, r.shape, (dim, dim)))
        if algebra is not None:
            self.validate(algebra)

    def validate(self, A):
        if len(self.action) != A.dim:
            raise InvalidStructure("module gives %d action matrices for an algebra of dim %d" % (len(self.action), A.dim))
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = SparseMatrix.zero(self.dim, self.dim)
                for k, v in A.bracket_basis(i, j).items():
                    lhs = lhs + v * self.action[k]
                rhs = self.action[i] @ self.action[j] - self.action[j] @ self.action[i]
                if lhs != rhs:
                    raise InvalidStructure("module identity rho([e%d,e%d]) = [rho(e%d), rho(e%d)] fails" % (i, j, i, j))

    def act(self, i, v):
        out = {}
        for (r, c), w in self.action[i].entries.items():
            x = v.get(c)
            if x:
                out[r] = out.get(r, 0) + w * x
        return {k: _norm(v) for k, v in out.items() if v}


def abelian_algebra(d):
    return LieAlgebraData(d, {}, "abelian%d" % d)


def nonabelian2():
    """Two-dimensional [e0, e1] = e0."""
    return LieAlgebraData.from_brackets(2, {(0, 1): {0: 1}}, "aff1")


def sl2():
    """Basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}, "sl2")


def heisenberg():
    return LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}}, "heis3")


def trivial_module(A):
    return ModuleData(1, [SparseMatrix.zero(1, 1) for _ in range(A.dim)], A, "k")


def adjoint_module(A):
    mats = []
    for i in range(A.dim):
        mats.append(SparseMatrix(A.dim, A.dim, {(k, j): v for j in range(A.dim)
                                                for k, v in A.bracket_basis(i, j).items()}))
    return ModuleData(A.dim, mats, A, "ad")


# ------------------------------------------------------------ functors


class FunctorRep:
    """A finitely supported left Sh^Lie-module.

    dims[m] = dim T([m]) for m <= N, zero above. Actions of basis split
    tuples [a] -> [b] (b < a <= N) come from `action`, a callable
    blocks -> SparseMatrix, and are memoized.
    """

    def __init__(self, N, dims, action, name="", truncated=False):
        if len(dims) != N + 1:
            raise ValueError("need dims for [0]..[%d]" % N)
        self.N = N
        self.dims = list(dims)
        self._action = action
        self._memo = {}
        self.name = name
        self.truncated = truncated

    def dim(self, m):
        return self.dims[m] if 0 <= m <= self.N else 0

    def act_basis(self, blocks):
        a, b = source_of(blocks), target_of(blocks)
        if a > self.N or self.dim(a) == 0 or self.dim(b) == 0:
            return SparseMatrix.zero(self.dim(b), self.dim(a))
        if a == b:
            return SparseMatrix.identity(self.dim(a))
        got = self._memo.get(blocks)
        if got is None:
            got = self._action(blocks)
            if got.shape != (self.dim(b), self.dim(a)):
                raise ValueError("action of %s has shape %s" % (format_split_tuple(blocks), got.shape))
            self._memo[blocks] = got
        return got

    def act(self, phi):
        """T(phi) extended linearly over a HomElement."""
        phi = HomElement.coerce(phi)
        out = SparseMatrix.zero(self.dim(phi.target), self.dim(phi.source))
        for blocks, c in phi.terms.items():
            out = out + c * self.act_basis(blocks)
        return out

    def materialize(self):
        for a in range(1, self.N + 1):
            for b in range(a):
                for blocks in enumerate_split_tuples(a, b):
                    self.act_basis(blocks)
        return self

    def __repr__(self):
        return "FunctorRep(%s, N=%d, dims=%s)" % (self.name, self.N, self.dims)


def check_functoriality(T, samples=None, rng=None):
    """Compare T(phi o psi) with T(phi) T(psi) on composable basis pairs.

    Exhaustive when samples is None; otherwise `samples` random pairs.
    Returns a list of failing (phi, psi) pairs.
    """
    pairs = []
    for a in range(T.N + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                pairs.append((a, b, c))
    bad = []

    def check(phi, psi):
        if T.act(compose(phi, psi)) != T.act_basis(phi) @ T.act_basis(psi):
            bad.append((format_split_tuple(phi), format_split_tuple(psi)))

    if samples is None:
        for a, b, c in pairs:
            for psi in enumerate_split_tuples(a, b):
                for phi in enumerate_split_tuples(b, c):
                    check(phi, psi)
    else:
        rng = rng or random.Random(0)
        for _ in range(samples):
            a, b, c = rng.choice(pairs)
            check(rng.choice(enumerate_split_tuples(b, c)), rng.choice(enumerate_split_tuples(a, b)))
    return bad


def projective_functor(n):
    """P_n = Hom([n], -) with postcomposition actions."""
    dims = [hom_dimension(n, m) for m in range(n + 1)]
    return FunctorRep(n, dims, lambda blocks: postcomposition_matrix(blocks, n), "P%d" % n)


def atomic_functor(n, N=None):
    """k concentrated at [n]; every non-identity morphism acts by zero."""
    N = n if N is None else N
    if N < n:
        raise ValueError("support bound below n")
    dims = [1 if m == n else 0 for m in range(N + 1)]
    return FunctorRep(N, dims, lambda blocks: SparseMatrix.zero(dims[target_of(blocks)], dims[source_of(blocks)]),
                      "atomic%d" % n)


def _tensor_index(slots, d):
    idx = slots[0]
    for s in slots[1:]:
        idx = idx * d + s
    return idx


def _tensor_slots(m, e, d):
    return list(product(range(e), *([range(d)] * m)))


def _eval_block(block, slots, A, M):
    """Evaluate the comb `block` on the basis vectors picked out by `slots`."""
    if block[0] == 0:
        vec = {slots[0]: 1}
        for label in block[1:]:
            # [x, a] = -rho_a(x)
            vec = {k: -v for k, v in M.act(slots[label], vec).items()}
        return vec
    assert 0 not in block, block
    vec = {slots[block[0]]: 1}
    for label in block[1:]:
        vec = A.bracket(vec, {slots[label]: 1})
    return vec


def loday_action(blocks, A, M):
    a, b = source_of(blocks), target_of(blocks)
    d, e = A.dim, M.dim
    entries = {}
    for col, slots in enumerate(_tensor_slots(a, e, d)):
        per_block = [list(_eval_block(B, slots, A, M).items()) for B in blocks]
        for choice in product(*per_block):
            coeff = 1
            for _, v in choice:
                coeff *= v
            row = _tensor_index([k for k, _ in choice], d)
            entries[row, col] = entries.get((row, col), 0) + coeff
    return SparseMatrix(e * d**b, e * d**a, entries)


def loday_functor(A, M, N):
    """[m] -> M (x) A^(x)m for m <= N, truncated to zero above N."""
    M.validate(A)
    dims = [M.dim * A.dim**m for m in range(N + 1)]
    return FunctorRep(N, dims, lambda blocks: loday_action(blocks, A, M),
                      "loday(%s,%s)" % (A.name, M.name), truncated=True)


# ------------------------------------------------------------ complexes


def leibniz_complex(T):
    """C_m = T([m]), d_m = sum_{i<j<=m} (-1)^j T(d_{i,j})."""
    diffs = []
    for m in range(1, T.N + 1):
        d = SparseMatrix.zero(T.dim(m - 1), T.dim(m))
        for i, j in combinations(range(m + 1), 2):
            d = d + (-1) ** j * T.act_basis(generator_dij(m, i, j))
        diffs.append(d)
    c = FiniteChainComplex(T.dims, diffs, "Leib(%s)" % T.name)
    check = verify_d_squared(c)
    if not check:
        raise InvalidStructure("d^2 != 0 for %s at %s; not a functor" % (T.name, check.witness))
    return c


def projective_complex(n):
    """Leibniz complex of P_n: C_m = Hom([n],[m]), d = sum (-1)^j (d_ij)_*."""
    diffs = []
    for m in range(1, n + 1):
        d = SparseMatrix.zero(hom_dimension(n, m - 1), hom_dimension(n, m))
        for i, j in combinations(range(m + 1), 2):
            d = d + (-1) ** j * generator_matrix(n, m, i, j)
        diffs.append(d)
    return FiniteChainComplex([hom_dimension(n, m) for m in range(n + 1)], diffs, "Leib(P%d)" % n)


def direct_leibniz_complex(A, M, N):
    """Loday's complex M (x) A^(x)m straight from structure constants."""
    M.validate(A)
    d, e = A.dim, M.dim
    dims = [e * d**m for m in range(N + 1)]
    diffs = []
    for m in range(1, N + 1):
        entries = {}
        for col, slots in enumerate(_tensor_slots(m, e, d)):
            x, a = slots[0], slots[1:]
            for i, j in combinations(range(1, m + 1), 2):
                sign = (-1) ** j
                for k, v in A.bracket_basis(a[i - 1], a[j - 1]).items():
                    new = list(a)
                    new[i - 1] = k
                    del new[j - 1]
                    key = (_tensor_index([x] + new, d), col)
                    entries[key] = entries.get(key, 0) + sign * v
            for j in range(1, m + 1):
                rest = a[:j - 1] + a[j:]
                for (r, c), v in M.action[a[j - 1]].entries.items():
                    if c == x:
                        key = (_tensor_index([r] + list(rest), d), col)
                        entries[key] = entries.get(key, 0) - (-1) ** j * v
        diffs.append(SparseMatrix(dims[m - 1], dims[m], entries))
    return FiniteChainComplex(dims, diffs, "CL(%s,%s)" % (A.name, M.name))


def h0_via_tensor(T, field=QQ):
    """dim T([0]) / Im(T(d_01)), i.e. t (x) T."""
    if T.N < 1:
        return T.dim(0)
    return T.dim(0) - rank(T.act_basis(generator_dij(1, 0, 1)), field)
