"""
Tor over Sh^Lie with coefficients in t, via the normalized bar complex.

A degree-p chain is 0 = m_0 < m_1 < ... < m_p <= N together with basis
links phi_i in Hom([m_i], [m_{i-1}]) and a basis vector of T([m_p]); the
t factor sits at [0]. Hom([m], [m]) is spanned by the identity, so dropping
identity links is the same as asking the objects to increase strictly.

Faces, with sign (-1)^i:
  d_0      acts by t on phi_1; t([m_1]) = 0 for m_1 >= 1, so it vanishes;
  d_i      replaces phi_i, phi_{i+1} by their composite (0 < i < p);
  d_p      applies T(phi_p) to the vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from .category import _compose_terms, enumerate_split_tuples, generator_matrix, hom_dimension
from .complexes import FiniteChainComplex, homology, verify_d_squared
from .leibniz import leibniz_complex
from .linalg import QQ, SparseMatrix, rank


def t_dimensions(N, field=QQ):
    """dim of coker(Hom([k],[1]) -> Hom([k],[0])) under (d_01)_*, for k = 0..N."""
    return [hom_dimension(k, 0) - rank(generator_matrix(k, 1, 0, 1), field) for k in range(N + 1)]


def object_chains(N, p):
    """Strictly increasing 0 = m_0 < ... < m_p <= N."""
    for mids in combinations(range(1, N + 1), p):
        yield (0,) + mids


def bar_basis(T, p):
    out = []
    for objs in object_chains(T.N, p):
        if not T.dim(objs[-1]):
            continue
        hom_lists = [enumerate_split_tuples(objs[i], objs[i - 1]) for i in range(1, p + 1)]
        for links in product(*hom_lists):
            for x in range(T.dim(objs[-1])):
                out.append((objs, links, x))
    return out


def bar_complex(T, p_max=None):
    p_max = T.N if p_max is None else min(p_max, T.N)
    bases = [bar_basis(T, p) for p in range(p_max + 1)]
    index = [{chain: k for k, chain in enumerate(b)} for b in bases]
    diffs = []
    for p in range(1, p_max + 1):
        entries = {}
        target = index[p - 1]
        cols_of = {}
        for col, (objs, links, x) in enumerate(bases[p]):
            # inner faces
            for i in range(1, p):
                sign = -1 if i % 2 else 1
                new_objs = objs[:i] + objs[i + 1:]
                for chi, c in _compose_terms(links[i - 1], links[i]):
                    new_links = links[:i - 1] + (chi,) + links[i + 1:]
                    key = (target[new_objs, new_links, x], col)
                    entries[key] = entries.get(key, 0) + sign * c
            # last face
            phi = links[-1]
            cols = cols_of.get(phi)
            if cols is None:
                cols = cols_of[phi] = T.act_basis(phi).columns()
            sign = -1 if p % 2 else 1
            for y, v in cols.get(x, {}).items():
                key = (target[objs[:-1], links[:-1], y], col)
                entries[key] = entries.get(key, 0) + sign * v
        diffs.append(SparseMatrix(len(bases[p - 1]), len(bases[p]), entries))
    return FiniteChainComplex([len(b) for b in bases], diffs, "Bar(t,%s)" % T.name)


def _pad(seq, length):
    return (list(seq) + [0] * length)[:length]


def tor_dimensions(T, i_max, field=QQ):
    """Tor_i(t, T) for i = 0..i_max (zero above the support bound)."""
    return _pad(homology(bar_complex(T, i_max + 1), field), i_max + 1)


@dataclass
class Comparison:
    functor: str
    field: str
    leibniz: list
    tor: list
    agree: list
    d_squared: dict
    caveat: str = ""
    dumps: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return all(self.agree) and all(self.d_squared.values())


def _dump(c):
    return {"dims": c.dims,
            "differentials": [sorted((r, col, v) for (r, col), v in d.entries.items()) for d in c.differentials]}


def compare_tor_leibniz(T, i_max, field=QQ):
    """Leibniz homology against Tor(t, T) degree by degree."""
    leib_c = leibniz_complex(T)
    bar_c = bar_complex(T)
    checks = {"leibniz": bool(verify_d_squared(leib_c)), "bar": bool(verify_d_squared(bar_c))}
    leib = _pad(homology(leib_c, field), i_max + 1)
    tor = _pad(homology(bar_c, field), i_max + 1)
    agree = [a == b for a, b in zip(leib, tor)]
    caveat = ""
    if T.truncated:
        caveat = ("functor truncated at N=%d; both sides are exact for the truncated functor, "
                  "degree %d is only a lower bound for the untruncated one" % (T.N, T.N))
    out = Comparison(T.name, field.name, leib, tor, agree, checks, caveat)
    if not out.ok:
        out.dumps = {"leibniz": _dump(leib_c), "bar": _dump(bar_c)}
    return out
