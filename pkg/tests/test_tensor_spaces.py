import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qnl.errors import NotSkew, ParseError, ZeroTensor
from qnl.exact_linalg import is_zero, matrix, rank, zeros
from qnl.tensor_spaces import (KEYS, DualNet, MixedMap, Net, PhiMap, TwoForm, TwoFormDual,
                               coords_of_skew, dims, dual_net_from_json, lambda_part,
                               mixed_map_from_json, net_from_json, net_from_terms, pairing,
                               point_rank, skew4, split_skew, unflatten, wedge_pair,
                               wedge_pair_dual)

import oracles

six = st.lists(st.integers(-9, 9), min_size=6, max_size=6)


def random_net(rng, n, bound=5, cls=Net):
    comps = []
    for _ in KEYS:
        C = zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                C[i, j] = C[j, i] = Fraction(rng.randint(-bound, bound))
        comps.append(C)
    return cls(n, tuple(comps))


def test_skew_view_convention():
    M = skew4([1, 2, 3, 4, 5, 6])
    assert M[0, 1] == 1 and M[1, 0] == -1 and M[2, 3] == 6
    assert coords_of_skew(M) == (1, 2, 3, 4, 5, 6)
    with pytest.raises(NotSkew):
        coords_of_skew(matrix([[1, 0, 0, 0]] * 4))


@settings(max_examples=80, deadline=None)
@given(six, six)
def test_wedge_matches_permutation_oracle(a, b):
    assert wedge_pair(TwoForm(a), TwoForm(b)) == oracles.wedge(a, b)
    assert wedge_pair_dual(TwoFormDual(a), TwoFormDual(b)) == oracles.wedge(a, b)


@settings(max_examples=60, deadline=None)
@given(six)
def test_self_wedge_is_twice_the_pfaffian(a):
    w = TwoForm(a)
    assert wedge_pair(w, w) == 2 * oracles.pfaffian_by_matchings(oracles.skew_of(a))
    assert (wedge_pair(w, w) == 0) == (rank(w.skew()) <= 2)


def test_pairing_on_basis():
    for i, k in enumerate(KEYS):
        for j, l in enumerate(KEYS):
            assert pairing(TwoFormDual.basis(k), TwoForm.basis(l)) == (1 if i == j else 0)


def test_two_form_arithmetic_and_json():
    a = TwoForm({"e12": "1/2", "e34": 3})
    assert a["e12"] == Fraction(1, 2) and (a - a).is_zero()
    assert TwoForm.from_json(a.to_json()) == a
    with pytest.raises(ParseError):
        TwoForm({"e15": 1})
    with pytest.raises(ParseError):
        TwoForm.from_json([1, 2])


def test_flatten_matches_entrywise_oracle():
    rng = random.Random(3)
    for n in (1, 2, 3):
        A = random_net(rng, n)
        ref = oracles.net_matrix(n, [C.tolist() for C in A.components])
        assert A.flatten().tolist() == ref


def test_flatten_unflatten_round_trip():
    rng = random.Random(5)
    for n in (1, 2, 4):
        A = random_net(rng, n)
        assert unflatten(A.flatten(), n) == A
        D = random_net(rng, n, cls=DualNet)
        assert unflatten(D.flatten(), n, DualNet) == D


def test_split_skew_recovers_parts():
    rng = random.Random(7)
    n = 3
    A = random_net(rng, n)
    # a pure Lambda element: symmetric 4x4 blocks, antisymmetric in (i, j)
    L = zeros(4 * n, 4 * n)
    S = matrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
    S = S + S.T
    L[0:4, 4:8] = S
    L[4:8, 0:4] = -S
    Sn, Ln = split_skew(A.flatten() + L, n)
    assert Sn == A
    assert np.array_equal(Ln.matrix, L)
    assert len(Ln.coordinates()) == 10 * n * (n - 1) // 2
    assert lambda_part(A.flatten(), n).is_zero()
    with pytest.raises(ValueError):
        unflatten(A.flatten() + L, n)


def test_net_from_terms_and_transform():
    w = TwoFormDual({"e12": 1, "e34": 1})
    A = net_from_terms(2, [([1, 0], w), ([1, 1], w)])
    assert A.components[0].tolist() == [[2, 1], [1, 1]]
    g = matrix([[1, 1], [0, 1]])
    At = A.transform(g)
    G = np.kron(g, np.eye(4, dtype=int).astype(object))
    assert np.array_equal(At.flatten(), G.T.dot(A.flatten()).dot(G))


def test_mixed_and_phi_maps():
    e = TwoFormDual.basis("e13")
    C = MixedMap(2, 1, [[e], [e.scale(2)]])
    assert C.flatten().shape == (8, 4)
    assert MixedMap.from_matrix(C.flatten()) == C
    P = PhiMap.zero(2)
    assert P.m == 2 and is_zero(P.flatten())
    with pytest.raises(ValueError):
        PhiMap.from_matrix(C.flatten())
    assert mixed_map_from_json(C.to_json()) == C
    assert mixed_map_from_json(P.to_json()).m == 2


def test_json_parsers():
    rng = random.Random(9)
    A = random_net(rng, 2)
    assert net_from_json(json.loads(json.dumps(A.to_json()))) == A
    D = random_net(rng, 2, cls=DualNet)
    assert dual_net_from_json(D.to_json()) == D
    bad = [{"format": "other", "n": 1, "components": {}},
           {"n": 0, "components": {}},
           {"n": 1},
           {"n": 1, "components": {"e99": [["1"]]}},
           {"n": 2, "components": {"e12": [["1", "2"], ["3", "4"]]}},
           {"n": 1, "components": {"e12": [["x"]]}},
           []]
    for obj in bad:
        with pytest.raises(ParseError):
            net_from_json(obj)
    with pytest.raises(ParseError):
        dual_net_from_json(A.to_json())


def test_point_rank():
    assert point_rank(matrix([[1, 0, 0, 0], [2, 0, 0, 0]])) == 1
    assert point_rank(matrix([[1, 0, 0, 0], [0, 1, 0, 0]])) == 2
    with pytest.raises(ZeroTensor):
        point_rank(zeros(2, 4))


def test_dims_against_independent_formulas():
    for n in range(1, 51):
        d = dims(n)
        for key, f in oracles.DIMS.items():
            assert d[key] == f(n)
        assert d["dim_S_n"] == 6 * n * (n + 1) // 2
    assert dims(3)["moduli_dim"] == 21 and dims(2)["expected_dim_Z"] == 32
    with pytest.raises(ValueError):
        dims(0)
