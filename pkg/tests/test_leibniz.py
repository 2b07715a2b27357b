import random

import pytest

from shlie.category import generator_dij, parse_split_tuple
from shlie.complexes import homology, verify_d_squared
from shlie.leibniz import (
    InvalidStructure,
    LieAlgebraData,
    ModuleData,
    abelian_algebra,
    adjoint_module,
    atomic_functor,
    check_functoriality,
    direct_leibniz_complex,
    h0_via_tensor,
    heisenberg,
    leibniz_complex,
    loday_action,
    loday_functor,
    nonabelian2,
    projective_complex,
    projective_functor,
    sl2,
    trivial_module,
)
from shlie.linalg import SparseMatrix

S = parse_split_tuple


def test_structure_validation():
    with pytest.raises(InvalidStructure, match="antisymmetry"):
        LieAlgebraData(2, {(0, 1, 0): 1})
    # [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 breaks Jacobi
    with pytest.raises(InvalidStructure, match="Jacobi"):
        LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    A = nonabelian2()
    # rho([e0, e1]) = rho(e0) must equal the commutator [rho(e0), rho(e1)] = 0
    with pytest.raises(InvalidStructure, match="module identity"):
        ModuleData(1, [SparseMatrix.identity(1), SparseMatrix.zero(1, 1)], A)
    # e1 acting by 1 on k is a character of aff1 (it vanishes on [A, A] = <e0>)
    ModuleData(1, [SparseMatrix.zero(1, 1), SparseMatrix.identity(1)], A)


def test_named_algebras_are_valid():
    for A in (abelian_algebra(3), nonabelian2(), sl2(), heisenberg()):
        A.validate()
        adjoint_module(A).validate(A)
    assert sl2().bracket({0: 1}, {1: 1}) == {2: 1}
    assert nonabelian2().bracket({1: 1}, {0: 1}) == {0: -1}


def test_loday_action_examples():
    A = nonabelian2()
    M = adjoint_module(A)
    # (0,1|2) on x (x) a1 (x) a2 -> [x, a1] (x) a2 = -rho_{a1}(x) (x) a2
    act = loday_action(S("0,1|2"), A, M)
    # x = e1 (in M), a1 = e0, a2 = e1: rho_{e0}(e1) = [e0, e1] = e0, so -e0 (x) e1
    col = 1 * 4 + 0 * 2 + 1
    assert act.columns()[col] == {0 * 2 + 1: -1}
    # (0|1,2) on x (x) e0 (x) e1 with trivial M -> x (x) [e0, e1] = x (x) e0
    act = loday_action(S("0|1,2"), A, trivial_module(A))
    assert act.columns()[0 * 2 + 1] == {0: 1}


def test_abelian_loday_functor_has_zero_differential():
    A = abelian_algebra(2)
    c = leibniz_complex(loday_functor(A, trivial_module(A), 4))
    assert all(d.is_zero() for d in c.differentials)
    assert homology(c) == [1, 2, 4, 8, 16]


def test_projective_functor_matches_projective_complex():
    for n in range(5):
        assert leibniz_complex(projective_functor(n)).differentials == projective_complex(n).differentials


def test_atomic_functor():
    c = leibniz_complex(atomic_functor(2))
    assert c.dims == [0, 0, 1]
    assert homology(c) == [0, 0, 1]
    assert atomic_functor(0).dims == [1]
    assert check_functoriality(atomic_functor(2, 3)) == []
    with pytest.raises(ValueError):
        atomic_functor(3, 2)


def test_functoriality_exhaustive():
    assert check_functoriality(projective_functor(3)) == []
    for A in (nonabelian2(), sl2()):
        assert check_functoriality(loday_functor(A, trivial_module(A), 3)) == []
    A = nonabelian2()
    assert check_functoriality(loday_functor(A, adjoint_module(A), 3)) == []


def random_invertible(rng, d):
    from sympy import Matrix

    while True:
        P = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        if Matrix(P).det() != 0:
            return P


@pytest.mark.parametrize("base", [nonabelian2, sl2, heisenberg])
def test_functoriality_random_structure_constants(base):
    # random changes of basis give "random-looking" valid structure constants
    rng = random.Random(hash(base.__name__) % 1000)
    for _ in range(2):
        A = base().change_basis(random_invertible(rng, base().dim))
        for M in (trivial_module(A), adjoint_module(A)):
            T = loday_functor(A, M, 3 if A.dim == 2 else 2)
            assert check_functoriality(T, samples=60, rng=rng) == []
            assert direct_leibniz_complex(A, M, T.N).differentials == leibniz_complex(T).differentials


def test_homology_is_basis_independent():
    rng = random.Random(5)
    A = sl2()
    B = A.change_basis(random_invertible(rng, 3))
    h = [homology(direct_leibniz_complex(X, trivial_module(X), 3)) for X in (A, B)]
    assert h[0] == h[1] == [1, 0, 0, 21]


def test_concrete_lie_algebras():
    A = abelian_algebra(2)
    assert homology(direct_leibniz_complex(A, trivial_module(A), 4))[:4] == [1, 2, 4, 8]
    A = nonabelian2()
    assert homology(direct_leibniz_complex(A, trivial_module(A), 3))[:2] == [1, 1]
    A = sl2()
    assert homology(direct_leibniz_complex(A, trivial_module(A), 3))[1] == 0
    # with adjoint coefficients the degree-0 homology is A / [A, A]
    A = nonabelian2()
    assert homology(direct_leibniz_complex(A, adjoint_module(A), 2))[0] == 1


def test_direct_and_functor_paths_agree():
    for A in (abelian_algebra(2), nonabelian2(), sl2(), heisenberg()):
        for M in (trivial_module(A), adjoint_module(A)):
            N = 3 if A.dim == 2 else 2
            T = loday_functor(A, M, N)
            assert direct_leibniz_complex(A, M, N).differentials == leibniz_complex(T).differentials


def test_h0_formula_examples():
    assert h0_via_tensor(atomic_functor(0)) == 1
    assert [h0_via_tensor(projective_functor(n)) for n in range(1, 5)] == [0, 0, 0, 0]
    A = sl2()
    assert h0_via_tensor(loday_functor(A, trivial_module(A), 3)) == 1


def test_d01_acts_as_the_bracket_into_the_module():
    A = nonabelian2()
    M = adjoint_module(A)
    T = loday_functor(A, M, 1)
    # x (x) a -> [x, a] = -rho_a(x); columns x (x) a ordered e0e0, e0e1, e1e0, e1e1
    # e0 (x) e1 -> -[e1, e0] = e0 and e1 (x) e0 -> -[e0, e1] = -e0
    mat = T.act_basis(generator_dij(1, 0, 1))
    assert mat.to_dense() == [[0, 1, -1, 0], [0, 0, 0, 0]]
    assert verify_d_squared(leibniz_complex(T))
