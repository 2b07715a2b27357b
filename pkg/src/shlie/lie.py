"""
Left-comb basis of the Lie operad.

A comb is a tuple of distinct labels (l0, l1, ..., lk) with l0 minimal; it
stands for the iterated bracket [...[[x_l0, x_l1], x_l2], ..., x_lk].
A Lie combination is a dict {comb: coefficient} over one label set.
Binary trees are written as nested pairs with int leaves, e.g. ((1, 2), (0, 3)).
"""

from __future__ import annotations

from itertools import combinations
from math import factorial

Comb = tuple


def make_comb(labels):
    labels = tuple(labels)
    if not labels:
        raise ValueError("empty comb")
    if len(set(labels)) != len(labels):
        raise ValueError("repeated label in %s" % (labels,))
    if labels[0] != min(labels):
        raise ValueError("comb %s does not start with its minimum" % (labels,))
    return labels


def lie_dimension(n):
    """Number of basis combs on n labels."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(n - 1)


def basis_combs(labels):
    from itertools import permutations

    labels = sorted(labels)
    first, rest = labels[0], labels[1:]
    return [(first,) + p for p in permutations(rest)]


def _sorted(terms):
    return {k: terms[k] for k in sorted(terms)}


def _bracket_ordered(u, v, out, coeff=1):
    # u[0] < v[0]; accumulates coeff * [u, v] into out
    v0, rest = v[0], v[1:]
    m = len(rest)
    idx = range(m)
    for k in range(m + 1):
        sign = -coeff if k % 2 else coeff
        for S in combinations(idx, k):
            chosen = tuple(rest[s] for s in reversed(S))
            others = tuple(rest[t] for t in idx if t not in S)
            term = u + chosen + (v0,) + others
            c = out.get(term, 0) + sign
            if c:
                out[term] = c
            else:
                del out[term]
    return out


def bracket_combs(u, v):
    """Basis expansion of [u, v] for combs with disjoint labels."""
    if set(u) & set(v):
        raise ValueError("combs %s and %s share labels" % (u, v))
    if u[0] < v[0]:
        return _sorted(_bracket_ordered(u, v, {}))
    return _sorted(_bracket_ordered(v, u, {}, -1))


def bracket(x, y):
    """Bilinear bracket of two Lie combinations."""
    out = {}
    for u, a in x.items():
        for v, b in y.items():
            if u[0] < v[0]:
                _bracket_ordered(u, v, out, a * b)
            else:
                _bracket_ordered(v, u, out, -a * b)
    return _sorted(out)


def fold_comb(pieces):
    """[...[[p0, p1], p2], ..., pk] for combs p_i whose first labels increase.

    This is a left comb with comb-valued leaves; because p0 carries the
    smallest label every bracket is in the u[0] < v[0] case.
    """
    acc = {pieces[0]: 1}
    for piece in pieces[1:]:
        out = {}
        for u, a in acc.items():
            assert u[0] < piece[0], (u, piece)
            _bracket_ordered(u, piece, out, a)
        acc = out
    return acc


def tree_labels(t):
    if isinstance(t, int):
        return [t]
    left, right = t
    return tree_labels(left) + tree_labels(right)


def expand_tree(t):
    labels = tree_labels(t)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate leaf label in %s" % (t,))
    return _expand(t)


def _expand(t):
    if isinstance(t, int):
        return {(t,): 1}
    left, right = t
    return bracket(_expand(left), _expand(right))


def comb_tree(comb):
    t = comb[0]
    for label in comb[1:]:
        t = (t, label)
    return t


# ------------------------------------------------------------ tensor oracle


def _comb_words(comb):
    words = {(comb[0],): 1}
    for label in comb[1:]:
        nxt = {}
        for w, c in words.items():
            nxt[w + (label,)] = nxt.get(w + (label,), 0) + c
            nxt[(label,) + w] = nxt.get((label,) + w, 0) - c
        words = nxt
    return words


def tensor_expand(x):
    """Image in the tensor algebra, with [a, b] = ab - ba."""
    out = {}
    for comb, c in x.items():
        for w, d in _comb_words(comb).items():
            s = out.get(w, 0) + c * d
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return _sorted(out)


def word_product(x, y):
    out = {}
    for w, a in x.items():
        for v, b in y.items():
            s = out.get(w + v, 0) + a * b
            if s:
                out[w + v] = s
            else:
                del out[w + v]
    return out


def word_commutator(x, y):
    out = dict(word_product(x, y))
    for w, c in word_product(y, x).items():
        s = out.get(w, 0) - c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return _sorted(out)


def combs_from_words(words):
    """Decode a multilinear Lie polynomial back into combs.

    In the expansion of a comb the only word starting with its minimal
    label is the comb itself, so comb coefficients are read off the words
    starting with the global minimum.
    """
    if not words:
        return {}
    low = min(min(w) for w in words)
    return _sorted({w: c for w, c in words.items() if w[0] == low})
