from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from shlie.lie import (
    basis_combs,
    bracket,
    bracket_combs,
    comb_tree,
    combs_from_words,
    expand_tree,
    lie_dimension,
    make_comb,
    tensor_expand,
    word_commutator,
)

# [x0, x1] with [x2, x3, x4, x5] expanded in the comb basis, computed by hand
EIGHT_TERMS = {
    (0, 1, 2, 3, 4, 5): 1,
    (0, 1, 3, 2, 4, 5): -1,
    (0, 1, 4, 2, 3, 5): -1,
    (0, 1, 5, 2, 3, 4): -1,
    (0, 1, 4, 3, 2, 5): 1,
    (0, 1, 5, 3, 2, 4): 1,
    (0, 1, 5, 4, 2, 3): 1,
    (0, 1, 5, 4, 3, 2): -1,
}


def add(*xs):
    out = {}
    for sign, x in xs:
        for k, v in x.items():
            out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def test_bracket_example_with_eight_terms():
    assert bracket_combs((0, 1), (2, 3, 4, 5)) == EIGHT_TERMS


def test_bracket_small_cases():
    assert bracket_combs((0,), (1,)) == {(0, 1): 1}
    assert bracket_combs((1,), (0,)) == {(0, 1): -1}
    # [x3, [x0, x1]] = -[[x0, x1], x3]
    assert bracket_combs((3,), (0, 1)) == {(0, 1, 3): -1}
    # [x0, [x1, x2]] = [[x0, x1], x2] - [[x0, x2], x1]
    assert bracket_combs((0,), (1, 2)) == {(0, 1, 2): 1, (0, 2, 1): -1}


def test_bracket_rejects_shared_labels():
    with pytest.raises(ValueError):
        bracket_combs((0, 1), (1, 2))


def test_make_comb():
    assert make_comb([2, 5, 3]) == (2, 5, 3)
    for bad in ([], [1, 0], [0, 1, 0]):
        with pytest.raises(ValueError):
            make_comb(bad)


def test_expand_tree_examples():
    assert expand_tree(7) == {(7,): 1}
    assert expand_tree(((0, 2), 1)) == {(0, 2, 1): 1}
    # [[x1, x2], [x0, x3]] = -[[x0, x3], [x1, x2]]
    assert expand_tree(((1, 2), (0, 3))) == {(0, 3, 1, 2): -1, (0, 3, 2, 1): 1}
    with pytest.raises(ValueError):
        expand_tree(((0, 1), 1))


def test_expand_tree_matches_oracle_on_that_example():
    t = ((1, 2), (0, 3))
    words = word_commutator(
        word_commutator({(1,): 1}, {(2,): 1}), word_commutator({(0,): 1}, {(3,): 1}))
    assert tensor_expand(expand_tree(t)) == words
    assert combs_from_words(words) == expand_tree(t)


def test_tensor_expand_examples():
    assert tensor_expand({(0, 1): 1}) == {(0, 1): 1, (1, 0): -1}
    assert tensor_expand({(0, 2, 1): 1}) == {(0, 2, 1): 1, (2, 0, 1): -1, (1, 0, 2): -1, (1, 2, 0): 1}


def test_jacobi_vanishes_in_tensor_algebra():
    jac = add((1, expand_tree(((1, 2), 3))), (-1, expand_tree(((1, 3), 2))), (-1, expand_tree((1, (2, 3)))))
    assert jac == {}
    assert tensor_expand(jac) == {}


def test_lie_dimension():
    assert [lie_dimension(n) for n in (1, 3, 5)] == [1, 2, 24]
    assert all(len(basis_combs(range(n))) == lie_dimension(n) for n in range(1, 7))
    with pytest.raises(ValueError):
        lie_dimension(0)


def test_combs_are_triangular_in_words():
    # a comb's expansion contains itself once and no other word starting with its minimum
    for comb in basis_combs(range(5)):
        words = tensor_expand({comb: 1})
        assert words[comb] == 1
        assert [w for w in words if w[0] == 0] == [comb]


def test_combs_are_linearly_independent():
    # distinct basis combs give distinct leading words with coefficient 1
    from shlie.linalg import SparseMatrix, rank

    combs = basis_combs(range(5))
    words = sorted({w for c in combs for w in tensor_expand({c: 1})})
    index = {w: i for i, w in enumerate(words)}
    m = SparseMatrix(len(words), len(combs),
                     {(index[w], j): v for j, c in enumerate(combs) for w, v in tensor_expand({c: 1}).items()})
    assert rank(m) == len(combs)


def test_comb_tree_round_trip():
    for comb in basis_combs(range(4)):
        assert expand_tree(comb_tree(comb)) == {comb: 1}


def split_pairs(n):
    labels = range(n)
    for k in range(1, n):
        for left in combinations(labels, k):
            right = [x for x in labels if x not in left]
            for u in basis_combs(left):
                for v in basis_combs(right):
                    yield u, v


def test_bracket_oracle_exhaustive_five_labels():
    for n in range(2, 6):
        for u, v in split_pairs(n):
            expected = word_commutator(tensor_expand({u: 1}), tensor_expand({v: 1}))
            assert tensor_expand(bracket_combs(u, v)) == expected, (u, v)


def test_antisymmetry_exhaustive_five_labels():
    for u, v in split_pairs(5):
        assert bracket_combs(u, v) == {k: -c for k, c in bracket_combs(v, u).items()}


@st.composite
def disjoint_combs(draw):
    n = draw(st.integers(2, 9))
    perm = draw(st.permutations(range(n)))
    k = draw(st.integers(1, n - 1))
    left, right = sorted(perm[:k]), sorted(perm[k:])
    u = (left[0],) + tuple(draw(st.permutations(left[1:])))
    v = (right[0],) + tuple(draw(st.permutations(right[1:])))
    return u, v


@settings(max_examples=150, deadline=None)
@given(disjoint_combs())
def test_bracket_oracle_random(pair):
    u, v = pair
    expected = word_commutator(tensor_expand({u: 1}), tensor_expand({v: 1}))
    assert tensor_expand(bracket_combs(u, v)) == expected
    assert combs_from_words(expected) == bracket_combs(u, v)


def test_bracket_is_bilinear():
    x = {(0, 1, 2): 2, (0, 2, 1): -1}
    y = {(3, 4): 3}
    expected = add((6, bracket_combs((0, 1, 2), (3, 4))), (-3, bracket_combs((0, 2, 1), (3, 4))))
    assert bracket(x, y) == expected
    assert bracket(y, x) == {k: -c for k, c in expected.items()}
