import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gnl import family, liealg
from gnl.errors import InputError, NotNilpotentError
from gnl.liealg import StructureConstants, abelian, heisenberg


def test_heisenberg_basics():
    h = heisenberg(2)
    assert h.n == 5
    assert liealg.check_jacobi(h) == []
    assert liealg.center(h).dim == 1
    assert liealg.lower_central_series(h)[1] == 2
    assert liealg.lower_central_series(abelian(4))[1] == 1


def test_antisymmetric_input():
    L = StructureConstants(["p1", "q1", "z"], {("q1", "p1"): {"z": -1}})
    assert L == heisenberg(1)
    with pytest.raises(InputError):
        StructureConstants(["p", "q", "z"], {("p", "q"): {"z": 1}, ("q", "p"): {"z": 1}})
    with pytest.raises(InputError):
        StructureConstants(["p", "p"])
    with pytest.raises(InputError):
        StructureConstants(["p", "q"], {("p", "p"): {"q": 1}})


def test_corrupted_family_reports_the_triple():
    L = family.structure(1)
    br = {(L.labels[i], L.labels[j]): {L.labels[k]: c for k, c in v.items()} for (i, j), v in L.table.items()}
    br[("c", "x")] = {"h": 1}
    bad = StructureConstants(L.labels, br)
    assert [tuple(bad.labels[i] for i in t) for t in liealg.check_jacobi(bad)] == [("a", "b", "x")]


def test_changing_one_bracket_value_can_keep_jacobi():
    # [a,c] = f instead of h is still a Lie algebra: every triple through
    # [a,c] has a repeated entry
    L = family.structure(1)
    br = {(L.labels[i], L.labels[j]): {L.labels[k]: c for k, c in v.items()} for (i, j), v in L.table.items()}
    br[("a", "c")] = {"f": 1}
    assert liealg.check_jacobi(StructureConstants(L.labels, br)) == []


def test_not_nilpotent():
    # [x, y] = y: the lower central series stops at span(y)
    L = StructureConstants(["x", "y"], {("x", "y"): {"y": 1}})
    with pytest.raises(NotNilpotentError):
        liealg.lower_central_series(L)


def test_json_round_trip(tmp_path):
    L = StructureConstants(["a", "b", "c"], {("a", "b"): {"c": Fraction(3, 7)}})
    path = tmp_path / "l.json"
    path.write_text(json.dumps(L.to_json()))
    assert StructureConstants.load(path) == L
    assert L.to_json()["brackets"][0]["terms"][0]["c"] == "3/7"


@pytest.mark.parametrize("text", ["{", '{"dim": 2}', '{"dim": 2, "basis": ["a"], "brackets": []}'])
def test_malformed_json(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(InputError):
        StructureConstants.load(path)


def _random_invertible(rng, n):
    while True:
        P = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        try:
            liealg.inverse(P)
            return P
        except InputError:
            pass


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.integers(1, 2))
def test_basis_change_invariants(seed, m):
    rng = random.Random(seed)
    L = heisenberg(m)
    P = _random_invertible(rng, L.n)
    M = liealg.change_basis(L, P)
    assert liealg.check_jacobi(M) == []
    assert liealg.center(M).dim == liealg.center(L).dim
    assert liealg.lower_central_series(M)[1] == 2
    # the center of M in new coordinates maps onto the center of L
    assert liealg.map_subspace(liealg.center(M), P) == liealg.center(L)


def test_family_triple_scan():
    # the only basis triples with a nonzero double bracket come from [[b,a],a] = h
    for n in range(1, 6):
        L = family.structure(n)
        hits = set()
        for t in range(L.n):
            for v in range(L.n):
                tv = L.bracket_basis(t, v)
                for w in range(L.n):
                    if L.bracket_sparse(tv, {w: 1}):
                        hits.add((L.labels[t], L.labels[v], L.labels[w]))
        assert hits == {("a", "b", "a"), ("b", "a", "a")}
