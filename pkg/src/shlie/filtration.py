"""
The tuple filtration of the Leibniz complex of P_n and its graded pieces.

Forgetting the bars sends a split tuple to a tuple (0, k_1, ..., k_n); the
span of split tuples whose tuple is >= u (lexicographically) is a
subcomplex, and gr_u is spanned by those with tuple exactly u.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .category import compose_basis, format_split_tuple, generator_dij, split_tuple_error, target_of
from .complexes import FiniteChainComplex
from .linalg import SparseMatrix


def forget_bars(blocks):
    return tuple(x for b in blocks for x in b)


def tuples(n):
    """Tuple(n) in ascending lex order."""
    return [(0,) + p for p in permutations(range(1, n + 1))]


def admissible_cuts(u):
    """Indices i >= 1 with u[j] > u[i] for every j > i."""
    cuts = []
    low = None
    for i in range(len(u) - 1, 0, -1):
        if low is None or u[i] < low:
            cuts.append(i)
            low = u[i]
    return cuts[::-1]


def cut_at(u, cuts):
    bounds = [0] + sorted(cuts) + [len(u)]
    return tuple(tuple(u[a:b]) for a, b in zip(bounds, bounds[1:]))


def cuts_of(blocks):
    out, pos = [], 0
    for b in blocks[:-1]:
        pos += len(b)
        out.append(pos)
    return tuple(out)


def split_tuples_over(u):
    """Every split tuple b with forget_bars(b) == u, one per subset of cuts."""
    cuts = admissible_cuts(u)
    out = []
    for k in range(len(cuts) + 1):
        for S in combinations(cuts, k):
            b = cut_at(u, S)
            assert split_tuple_error(b) is None, b
            out.append(b)
    return out


@dataclass
class LeadingTermVerdict:
    ok: bool
    blocks: tuple
    i: int
    j: int
    same_stage: list   # terms with tuple == u, as (blocks, coeff)
    below: list        # terms with tuple < u
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_leading_term(b, i, j):
    """Check the leading-term behaviour of (d_{i,j})_* on the basis element b."""
    m = target_of(b)
    u = forget_bars(b)
    terms = compose_basis(generator_dij(m, i, j), b)
    same = [(t, c) for t, c in terms.items() if forget_bars(t) == u]
    below = [(t, c) for t, c in terms.items() if forget_bars(t) < u]
    msg = ""
    if below:
        msg = "term below stage: %s" % format_split_tuple(below[0][0])
    elif j == i + 1:
        merged = b[:i] + (b[i] + b[i + 1],) + b[i + 2:]
        if same != [(merged, 1)]:
            msg = "expected leading term +(%s), got %s" % (
                format_split_tuple(merged), [(format_split_tuple(t), c) for t, c in same])
    elif same:
        msg = "unexpected same-stage term %s" % format_split_tuple(same[0][0])
    return LeadingTermVerdict(not msg, b, i, j, same, below, msg)


def graded_complex(u):
    """gr_u: degree m spanned by split tuples over u with m cuts.

    d(B_0|...|B_m) = sum_{i<m} (-1)^(i+1) (B_0|...|B_i B_{i+1}|...|B_m).
    """
    n = len(u) - 1
    cuts = admissible_cuts(u)
    bases = [[cut_at(u, S) for S in combinations(cuts, m)] for m in range(len(cuts) + 1)]
    index = [{b: k for k, b in enumerate(bs)} for bs in bases]
    diffs = []
    for m in range(1, len(bases)):
        entries = {}
        for col, b in enumerate(bases[m]):
            for i in range(m):
                merged = b[:i] + (b[i] + b[i + 1],) + b[i + 2:]
                entries[index[m - 1][merged], col] = (-1) ** (i + 1)
        diffs.append(SparseMatrix(len(bases[m - 1]), len(bases[m]), entries))
    c = FiniteChainComplex([len(bs) for bs in bases], diffs, "gr%s" % (u,))
    c.bases = bases
    c.n = n
    return c


def expected_graded_homology(u):
    """Acyclic when Cuts(u) is nonempty (always for n >= 1); gr_(0) is k in degree 0."""
    return [0] * (len(admissible_cuts(u)) + 1) if len(u) > 1 else [1]


def simplex_complex(elements):
    """Augmented chain complex of the simplex on `elements`: subsets of size k in degree k."""
    elements = sorted(elements)
    bases = [list(combinations(elements, k)) for k in range(len(elements) + 1)]
    index = [{s: k for k, s in enumerate(bs)} for bs in bases]
    diffs = []
    for k in range(1, len(bases)):
        entries = {}
        for col, s in enumerate(bases[k]):
            for j in range(k):
                entries[index[k - 1][s[:j] + s[j + 1:]], col] = (-1) ** j
        diffs.append(SparseMatrix(len(bases[k - 1]), len(bases[k]), entries))
    c = FiniteChainComplex([len(bs) for bs in bases], diffs, "simplex%s" % (tuple(elements),))
    c.bases = bases
    return c


def graded_isomorphism(u):
    """Check that b -> (-1)^m cuts_of(b) is a chain isomorphism gr_u -> simplex(Cuts(u)).

    Under the plain bijection merging B_i, B_{i+1} (sign (-1)^(i+1)) matches
    deleting the (i+1)-th cut (sign (-1)^i), so the two differentials differ
    by an overall sign and the degree twist absorbs it.
    Returns (ok, reason).
    """
    gr = graded_complex(u)
    sx = simplex_complex(admissible_cuts(u))
    if gr.dims != sx.dims:
        return False, "dims %s vs %s" % (gr.dims, sx.dims)
    perms = []
    for m, bs in enumerate(gr.bases):
        pos = {s: k for k, s in enumerate(sx.bases[m])}
        sign = (-1) ** m
        perms.append(SparseMatrix(len(bs), len(bs), {(pos[cuts_of(b)], k): sign for k, b in enumerate(bs)}))
    for m in range(1, len(gr.dims)):
        if sx.d(m) @ perms[m] != perms[m - 1] @ gr.d(m):
            return False, "differentials disagree in degree %d" % m
    return True, ""
