"""
Exact sparse linear algebra over the rationals or a prime field.

Matrices always hold exact rationals (ints or Fractions). The field only
enters when a rank/kernel is computed: over a prime field the entries are
reduced mod p first.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd

DEFAULT_PRIME = 32003


def _norm(x):
    # store integral values as plain ints: much faster in elimination
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Rationals:
    name = "rationals"
    characteristic = 0

    def convert(self, x):
        return _norm(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p=DEFAULT_PRIME):
        p = int(p)
        if p < 3 or p % 2 == 0 or any(p % q == 0 for q in range(3, int(p**0.5) + 1, 2)):
            raise ValueError("need an odd prime, got %s" % p)
        self.p = p
        self.characteristic = p
        self.name = "prime:%d" % p

    def convert(self, x):
        x = Fraction(x)
        den = x.denominator % self.p
        if den == 0:
            raise ZeroDivisionError("denominator %d vanishes mod %d" % (x.denominator, self.p))
        return x.numerator * pow(den, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()


def parse_field(text):
    """'rationals' | 'prime' | 'prime:p'"""
    text = text.strip().lower()
    if text in ("rationals", "q", "qq"):
        return QQ
    if text == "prime":
        return PrimeField()
    if text.startswith("prime:"):
        return PrimeField(int(text.split(":", 1)[1]))
    raise ValueError("unknown field %r" % text)


class CompositeNotZero(ValueError):
    def __init__(self, row, col, value, degree=None):
        self.row, self.col, self.value, self.degree = row, col, value, degree
        where = "" if degree is None else " in degree %s" % degree
        super().__init__("composite of differentials is nonzero%s: entry (%d, %d) = %s"
                         % (where, row, col, value))


class SparseMatrix:
    """A row_count x col_count matrix with exact entries; zeros are never stored.

    Treat instances as immutable.
    """

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, nrows, ncols))
                v = _norm(v)
                if v:
                    clean[r, c] = v
        self.entries = clean

    @classmethod
    def _raw(cls, nrows, ncols, entries):
        # trusted constructor: entries already normalized and nonzero
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.entries = nrows, ncols, entries
        return m

    @classmethod
    def zero(cls, nrows, ncols):
        return cls._raw(nrows, ncols, {})

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def from_columns(cls, nrows, columns):
        """columns: sequence of {row: value} dicts."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[i, j] = v
        return cls(nrows, len(columns), entries)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def to_dense(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def rows(self):
        out = defaultdict(dict)
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def columns(self):
        out = defaultdict(dict)
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self):
        return SparseMatrix._raw(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    T = property(transpose)

    def is_zero(self):
        return not self.entries

    def first_nonzero(self):
        if not self.entries:
            return None
        key = min(self.entries)
        return key + (self.entries[key],)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        right = other.rows()
        acc = defaultdict(int)
        for (i, k), a in self.entries.items():
            row = right.get(k)
            if row:
                for j, b in row.items():
                    acc[i, j] += a * b
        return SparseMatrix._raw(self.nrows, other.ncols, {key: _norm(v) for key, v in acc.items() if v})

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        acc = dict(self.entries)
        for key, v in other.entries.items():
            s = acc.get(key, 0) + v
            if s:
                acc[key] = _norm(s)
            else:
                acc.pop(key, None)
        return SparseMatrix._raw(self.nrows, self.ncols, acc)

    def __neg__(self):
        return SparseMatrix._raw(self.nrows, self.ncols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = _norm(c)
        if not c:
            return SparseMatrix.zero(self.nrows, self.ncols)
        return SparseMatrix._raw(self.nrows, self.ncols, {k: _norm(v * c) for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self.entries.items())))

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.nrows, self.ncols, len(self.entries))


# ---------------------------------------------------------------- elimination


def _integer_rows(m):
    rows = []
    for row in m.rows().values():
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        if den != 1:
            row = {j: int(v * den) for j, v in row.items()}
        rows.append(row)
    return rows


def _modp_rows(m, field):
    rows = []
    for row in m.rows().values():
        row = {j: field.convert(v) for j, v in row.items()}
        row = {j: v for j, v in row.items() if v}
        if row:
            rows.append(row)
    return rows


def _eliminate(rows, p=None):
    """Return the rank of the row system, destroying `rows`.

    Pivot choice is Markowitz-like: shortest remaining row, then the column
    of that row with fewest entries. Over QQ (p None) rows are integral and
    updated fraction-free, then divided by their content.
    """
    active = dict(enumerate(rows))
    colmap = defaultdict(set)
    for i, row in active.items():
        for j in row:
            colmap[j].add(i)
    rank = 0
    while active:
        i = min(active, key=lambda k: len(active[k]))
        row = active.pop(i)
        for j in row:
            colmap[j].discard(i)
        c = min(row, key=lambda j: (len(colmap[j]), j))
        a = row[c]
        if p is not None:
            inv = pow(a, -1, p)
        for k in list(colmap[c]):
            other = active[k]
            b = other[c]
            if p is None:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                new = {j: v * fa for j, v in other.items()}
                for j, v in row.items():
                    new[j] = new.get(j, 0) - fb * v
            else:
                f = b * inv % p
                new = dict(other)
                for j, v in row.items():
                    new[j] = (new.get(j, 0) - f * v) % p
            new = {j: v for j, v in new.items() if v}
            if p is None and new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
            for j in other:
                if j not in new:
                    colmap[j].discard(k)
            for j in new:
                colmap[j].add(k)
            if new:
                active[k] = new
            else:
                del active[k]
        rank += 1
    return rank


def rank(m, field=QQ):
    if not m.entries:
        return 0
    if isinstance(field, PrimeField):
        return _eliminate(_modp_rows(m, field), field.p)
    return _eliminate(_integer_rows(m))


def _div(a, b, field):
    if isinstance(field, PrimeField):
        return a * pow(b, -1, field.p) % field.p
    return _norm(Fraction(a) / b)


def kernel_basis(m, field=QQ):
    """A basis of {v : m v = 0}, as a list of {col: value} dicts."""
    p = field.p if isinstance(field, PrimeField) else None
    reduce = (lambda v: v % p) if p else _norm
    rows = [{j: field.convert(v) for j, v in r.items()} for r in m.rows().values()]
    rows = [{j: v for j, v in r.items() if v} for r in rows]
    pivots = {}  # pivot col -> fully reduced row with pivot value 1
    for row in rows:
        for c, prow in pivots.items():
            if c in row:
                f = row[c]
                for j, v in prow.items():
                    row[j] = reduce(row.get(j, 0) - f * v)
                row = {j: v for j, v in row.items() if v}
        if not row:
            continue
        c = min(row)
        a = row[c]
        row = {j: _div(v, a, field) for j, v in row.items()}
        for pc, prow in pivots.items():
            if c in prow:
                f = prow[c]
                for j, v in row.items():
                    prow[j] = reduce(prow.get(j, 0) - f * v)
                for j in [j for j, v in prow.items() if not v]:
                    del prow[j]
        pivots[c] = row
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = {free: 1}
        for c, prow in pivots.items():
            x = prow.get(free)
            if x:
                v[c] = reduce(-x)
        basis.append(v)
    return basis


def homology_dimension(d_out, d_in, field=QQ):
    """dim ker(d_out) - rank(d_in), after re-checking d_out d_in = 0."""
    if d_out.ncols != d_in.nrows:
        raise ValueError("shape mismatch: d_out is %s, d_in is %s" % (d_out.shape, d_in.shape))
    witness = (d_out @ d_in).first_nonzero()
    if witness is not None:
        raise CompositeNotZero(*witness)
    return d_out.ncols - rank(d_out, field) - rank(d_in, field)


def smith_invariants(m):
    """Nonzero invariant factors of an integer matrix (ascending)."""
    if any(isinstance(v, Fraction) for v in m.entries.values()):
        raise ValueError("Smith normal form needs an integer matrix")
    if not m.entries:
        return []
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    factors = invariant_factors(Matrix(m.to_dense()), domain=ZZ)
    return sorted(abs(int(f)) for f in factors if f)


def integral_homology(d_out, d_in):
    """(free rank, torsion coefficients) of ker(d_out)/im(d_in) over the integers."""
    betti = homology_dimension(d_out, d_in, QQ)
    torsion = [f for f in smith_invariants(d_in) if f > 1]
    return betti, torsion
