"""Bounded chain complexes of finite free modules."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import QQ, SparseMatrix, integral_homology, rank


@dataclass
class DSquaredCheck:
    ok: bool
    witness: tuple | None = None  # (degree, row, col, value) of d_{m-1} d_m

    def __bool__(self):
        return self.ok


class FiniteChainComplex:
    """C_0, ..., C_top with d_m: C_m -> C_{m-1} stored as differentials[m - 1]."""

    def __init__(self, dims, differentials, name=""):
        self.dims = list(dims)
        self.differentials = list(differentials)
        self.name = name
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValueError("need %d differentials, got %d"
                             % (max(len(self.dims) - 1, 0), len(self.differentials)))
        for m, d in enumerate(self.differentials, start=1):
            if d.shape != (self.dims[m - 1], self.dims[m]):
                raise ValueError("d_%d has shape %s, expected %s"
                                 % (m, d.shape, (self.dims[m - 1], self.dims[m])))

    @property
    def top(self):
        return len(self.dims) - 1

    def d(self, m):
        """d_m, or a zero matrix of the right shape outside the stored range."""
        if 1 <= m <= self.top:
            return self.differentials[m - 1]
        rows = self.dims[m - 1] if 1 <= m <= len(self.dims) else 0
        cols = self.dims[m] if 0 <= m <= self.top else 0
        return SparseMatrix.zero(rows, cols)

    def euler_characteristic(self):
        return sum((-1) ** m * x for m, x in enumerate(self.dims))

    def __repr__(self):
        return "FiniteChainComplex(%s dims=%s)" % (self.name, self.dims)


def verify_d_squared(c):
    for m in range(2, c.top + 1):
        prod = c.d(m - 1) @ c.d(m)
        hit = prod.first_nonzero()
        if hit is not None:
            return DSquaredCheck(False, (m,) + hit)
    return DSquaredCheck(True)


class DSquaredError(ValueError):
    pass


def homology(c, field=QQ):
    """Homology dimensions in degrees 0..top."""
    check = verify_d_squared(c)
    if not check:
        raise DSquaredError("d^2 != 0 in %s: degree, row, col, value = %s" % (c.name or "complex", check.witness))
    ranks = [0] + [rank(d, field) for d in c.differentials] + [0]
    out = [c.dims[m] - ranks[m] - ranks[m + 1] for m in range(len(c.dims))]
    if sum((-1) ** m * h for m, h in enumerate(out)) != c.euler_characteristic():
        raise AssertionError("rank-nullity inconsistency in %s" % c.name)
    return out


def integral_homology_of(c):
    """[(free rank, torsion coefficients)] per degree, via Smith normal form."""
    check = verify_d_squared(c)
    if not check:
        raise DSquaredError("d^2 != 0: %s" % (check.witness,))
    return [integral_homology(c.d(m), c.d(m + 1)) for m in range(len(c.dims))]
