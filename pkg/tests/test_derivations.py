from fractions import Fraction

import pytest

from gnl import derivations as der
from gnl import family
from gnl.errors import InputError
from gnl.family import FamilyLayout
from gnl.liealg import abelian, heisenberg
from gnl.linalg import identity, inverse, matmul

import oracles


def _tensor(L):
    br = {(L.labels[i], L.labels[j]): {L.labels[k]: c for k, c in v.items()} for (i, j), v in L.table.items()}
    return oracles.bracket_tensor(L.labels, br)


@pytest.mark.parametrize("L", [abelian(2), abelian(3), heisenberg(1), heisenberg(2), family.structure(1)],
                         ids=["ab2", "ab3", "h1", "h2", "n1"])
def test_dimension_matches_dense_oracle(L):
    assert der.derivation_space(L).dim == oracles.derivation_dim(_tensor(L))


def test_known_dimensions():
    assert der.derivation_space(abelian(2)).dim == 4
    assert der.derivation_space(heisenberg(1)).dim == 6


# frozen from the dense oracle (n=1 is recomputed above)
DER_DIMS = {1: 36, 2: 73}


@pytest.mark.parametrize("n", [1, 2])
def test_family_structure(n):
    L = family.structure(n)
    out = der.verify_family(L, FamilyLayout(n))
    assert out["dim_der"] == DER_DIMS[n]
    assert out["gl_lift_rank"] == n * n
    assert out["pass"], out


def test_family_structure_n3():
    out = der.verify_family(family.structure(3), FamilyLayout(3))
    assert out["dim_der"] == 128
    assert out["pass"], out


def test_basis_elements_are_derivations():
    L = family.structure(2)
    for D in der.derivation_space(L).matrices:
        assert der.is_derivation(L, D)


def test_commutator_closes():
    L = family.structure(1)
    B = der.derivation_space(L).matrices
    for i in range(0, len(B), 5):
        for j in range(1, len(B), 7):
            assert der.is_derivation(L, der.commutator(B[i], B[j]))


def test_lift_is_derivation_for_any_matrix():
    L = family.structure(3)
    lay = FamilyLayout(3)
    A = [[1, 2, 0], [Fraction(1, 2), -1, 3], [0, 0, 4]]
    assert der.is_derivation(L, der.lift_gl(lay, A))


def test_levi_split_rejects_non_derivation():
    L = family.structure(1)
    D = [[Fraction(0)] * L.n for _ in range(L.n)]
    D[0][1] = Fraction(1)
    with pytest.raises(InputError):
        der.levi_split(L, FamilyLayout(1), D)


def test_triangular_rejects_outside_der1():
    lay = FamilyLayout(1)
    with pytest.raises(InputError):
        der.check_triangular(lay, identity(lay.dim))


@pytest.mark.parametrize("n", range(1, 6))
def test_grading_multiplicities(n):
    d = family.dims(n)
    D = der.grading_derivation(family.structure(n), family.canonical_grading(n))
    assert der.eigen_multiplicities(D) == {1: d.d1, 2: d.d2, 3: d.d3}


def _exp_nilpotent(N):
    n = len(N)
    out = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = [[x / k for x in row] for row in matmul(term, N)]
        if not any(x for row in term for x in row):
            break
        out = [[a + b for a, b in zip(r, s)] for r, s in zip(out, term)]
    return out


def test_conjugated_grading_derivation():
    # phi = exp(D1) for a nilpotent derivation D1 is an automorphism; the
    # conjugate of the grading derivation keeps the eigenvalue multiplicities
    n = 2
    L = family.structure(n)
    lay = FamilyLayout(n)
    nilp = []
    for D in der.derivation_space(L).matrices:
        D1 = der.levi_split(L, lay, D).D1
        if all(D1[i][i] == 0 for i in range(L.n)) and any(x for row in D1 for x in row):
            nilp.append(D1)
    assert nilp
    N = [[sum(M[r][c] for M in nilp[:3]) for c in range(L.n)] for r in range(L.n)]
    phi = _exp_nilpotent(N)
    G = der.grading_derivation(L, family.canonical_grading(n))
    conj = matmul(matmul(phi, G), inverse(phi))
    assert conj != G
    assert der.is_derivation(L, conj)
    d = family.dims(n)
    assert der.eigen_multiplicities(conj) == {1: d.d1, 2: d.d2, 3: d.d3}


def test_multiplicities_reject_other_spectra():
    with pytest.raises(InputError):
        der.eigen_multiplicities([[Fraction(4)]])
    with pytest.raises(InputError):
        der.eigen_multiplicities([[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]])


def test_split_of_grading_derivation():
    L = family.structure(1)
    lay = FamilyLayout(1)
    s = der.levi_split(L, lay, der.grading_derivation(L, family.canonical_grading(1)))
    assert s.A == [[1]]
    diag = der.diagonal(lay, s.D1)
    assert diag == {"e1": 0, "a": 1, "b": 1, "x": 1, "u": 2, "y": 2, "c": 2, "x1": 1,
                    "u1": 2, "y1": 2, "f": 3, "h": 3}
    assert der.check_diagonal_relations(lay, s.D1)


def test_lift_split_is_trivial():
    L = family.structure(2)
    lay = FamilyLayout(2)
    DA = der.lift_gl(lay, [[1, 2], [3, 4]])
    s = der.levi_split(L, lay, DA)
    assert not any(x for row in s.D1 for x in row)


def test_direct_sum_and_ideal():
    # Der_0 ^ Der_1 = 0: a lift with D(E) inside W has A = 0 and so vanishes;
    # Der_1 is an ideal: [D, D1] maps E into W
    n = 2
    L = family.structure(n)
    lay = FamilyLayout(n)
    B = der.derivation_space(L).matrices
    for i in range(n):
        for j in range(n):
            DA = der.lift_gl(lay, der.elementary(n, i, j))
            assert not der.in_der1(lay, DA)
    D1s = [der.levi_split(L, lay, D).D1 for D in B]
    for D in B[::4]:
        for D1 in D1s[::5]:
            C = der.commutator(D, D1)
            assert der.is_derivation(L, C)
            assert der.in_der1(lay, C)


def test_check_multiplicities_on_supplied_matrix():
    L = family.structure(1)
    G = der.grading_derivation(L, family.canonical_grading(1))
    assert der.check_multiplicities(L, G, 1)["pass"]
    wrong = [row[:] for row in G]
    wrong[0][0] = Fraction(2)
    rep = der.check_multiplicities(L, wrong, 1)
    assert not rep["pass"] and not rep["is_derivation"]
