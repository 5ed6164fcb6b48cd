import random
from math import comb

import pytest

from gnl import bigpoly, cohomology, family
from gnl.errors import CapacityError
from gnl.grading import Grading
from gnl.liealg import StructureConstants, abelian, heisenberg

import oracles
from test_grading import random_graded

# frozen from oracles.ce_betti on n(1) (about 20 s to recompute)
N1_BETTI = [1, 6, 22, 55, 111, 159, 172, 159, 111, 55, 22, 6, 1]


def _tensor(L):
    br = {(L.labels[i], L.labels[j]): {L.labels[k]: c for k, c in v.items()} for (i, j), v in L.table.items()}
    return oracles.bracket_tensor(L.labels, br)


def test_h1():
    b = cohomology.betti(heisenberg(1))
    assert b.b == [1, 2, 2, 1] and b.total == 6
    assert b.total == bigpoly.length(bigpoly.expand([((1,), 2), ((2,), 1)]))


def test_h2_equality_case():
    b = cohomology.betti(heisenberg(2))
    assert b.b == oracles.heisenberg_betti(2) == [1, 4, 5, 5, 4, 1]
    assert b.total == 20 == bigpoly.length(bigpoly.expand([((1,), 4), ((2,), 1)]))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_heisenberg_closed_form(m):
    assert cohomology.betti(heisenberg(m)).b == oracles.heisenberg_betti(m)


@pytest.mark.parametrize("N", range(1, 11))
def test_abelian(N):
    b = cohomology.betti(abelian(N))
    assert b.b == [comb(N, k) for k in range(N + 1)]
    assert b.total == 2 ** N


def _check_complex(L):
    for k in range(L.n - 1):
        dk = cohomology.ce_differential(L, k)
        dk1 = cohomology.ce_differential(L, k + 1)
        assert (dk1 @ dk).is_zero()
    b = cohomology.betti(L)
    assert b.euler == 0
    assert b.b == b.b[::-1]
    return b


def test_complex_on_n1():
    L = family.structure(1)
    b = _check_complex(L)
    assert b.b == N1_BETTI


@pytest.mark.parametrize("seed", range(12))
def test_complex_on_random_graded(seed):
    rng = random.Random(seed)
    L, _ = random_graded(rng, rng.randint(1, 3), rng.randint(2, 8))
    b = _check_complex(L)
    assert b.b == oracles.ce_betti(_tensor(L))


def test_filiform_against_oracle():
    # 5-dimensional filiform [e1, ei] = e(i+1): 3-step at the top, not 2-step
    labels = [f"e{i}" for i in range(1, 6)]
    L = StructureConstants(labels, {("e1", f"e{i}"): {f"e{i + 1}": 1} for i in range(2, 5)})
    b = _check_complex(L)
    assert b.b == oracles.ce_betti(_tensor(L))


def test_bound_on_n1():
    chk = cohomology.check_ds_bound(family.structure(1), family.canonical_grading(1))
    assert chk.total_betti == 880
    assert chk.length == 476 and chk.holds
    assert chk.center_dim == 5 and chk.trc_holds


def test_bound_heisenberg_fine_grading():
    h = heisenberg(2)
    G = Grading(1, {"p1": (1,), "p2": (1,), "q1": (1,), "q2": (1,), "z": (2,)})
    chk = cohomology.check_ds_bound(h, G)
    assert chk.total_betti == chk.length == 20


def test_dimension_cap():
    with pytest.raises(CapacityError):
        cohomology.betti(abelian(15))
    assert cohomology.betti(abelian(15), max_dim=15).total == 2 ** 15
