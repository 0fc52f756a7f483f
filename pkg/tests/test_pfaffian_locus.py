import random

import numpy as np
import pytest
import sympy

from qnl.errors import ParseError
from qnl.exact_linalg import det, is_zero, pfaffian, rank
from qnl.pfaffian_locus import (BLOCK_KEYS, QuadBlockSkew, degeneracy_check, m_locus_member,
                                pfaffian_quartic, random_block, random_member_solve,
                                random_quadric, random_structured, random_two_form_block,
                                reduce_structured, reducing_congruence, structured_family)
from qnl.tensor_spaces import TwoFormDual, wedge_pair_dual

import oracles


def test_quartic_matches_pointwise_pfaffian():
    rng = random.Random(1)
    for _ in range(100):
        dim = rng.randint(1, 3)
        B = random_block(dim, rng, bound=4)
        q = pfaffian_quartic(B)
        for _ in range(20):
            x = [rng.randint(-5, 5) for _ in range(dim)]
            assert q(x) == pfaffian(B.at(x))


def test_quartic_matches_sympy_expansion():
    rng = random.Random(2)
    B = random_block(3, rng, bound=4)
    xs = sympy.symbols("x0:3")
    ref = oracles.quartic_pfaffian({k: B[k].entries.tolist() for k in BLOCK_KEYS}, xs)
    poly = sympy.Poly(ref, *xs)
    got = {e: c for e, c in pfaffian_quartic(B).coefficients.items()}
    want = {e: c for e, c in zip(poly.monoms(), poly.coeffs())}
    assert {e: sympy.Rational(c.numerator, c.denominator) for e, c in got.items()} == want


def test_flatten_is_the_net_matrix():
    rng = random.Random(3)
    B = random_block(2, rng)
    ref = oracles.net_matrix(2, [B[k].entries.tolist() for k in BLOCK_KEYS])
    assert B.flatten().tolist() == ref


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_structured_family_members_are_degenerate(m):
    rng = random.Random(m)
    for _ in range(25):
        B = random_structured(m, rng)
        r = degeneracy_check(B)
        assert r.member and r.degenerate and r.consistent
        assert r.size == 4 * (m + 1)


def test_structured_family_at_zero_parameters():
    rng = random.Random(4)
    A12, A13, A14 = (random_quadric(2, rng) for _ in range(3))
    B = structured_family(A12, A13, A14, 0, 0)
    for k in ("A23", "A24", "A34"):
        assert is_zero(B[k].entries)
    assert m_locus_member(B)


def test_reduction_by_congruence():
    rng = random.Random(5)
    A12, A13, A14 = (random_quadric(3, rng) for _ in range(3))
    lam, gam = 3, -2
    B = structured_family(A12, A13, A14, lam, gam)
    R = reduce_structured(B, gam)
    assert is_zero(R["A34"].entries)
    assert np.array_equal(R["A24"].entries, (A14.scale(lam)).entries)
    assert np.array_equal(R["A23"].entries, (A13.scale(lam)).entries)
    assert R["A12"] == A12 and R["A13"] == A13 and R["A14"] == A14
    # the congruence acts as I_H (x) T on the flattened matrix
    T = np.kron(np.eye(3, dtype=int).astype(object), reducing_congruence(gam))
    assert np.array_equal(R.flatten(), T.T.dot(B.flatten()).dot(T))
    assert rank(R.flatten()) == rank(B.flatten())


def test_random_members_by_kernel_solve():
    rng = random.Random(6)
    for m in (1, 2):
        for _ in range(5):
            assert m_locus_member(random_member_solve(m, rng))


def test_random_blocks_are_not_members():
    rng = random.Random(7)
    assert not any(m_locus_member(random_block(2, rng)) for _ in range(10))


def test_single_two_form_three_way_equivalence():
    rng = random.Random(8)
    for _ in range(500):
        B = random_two_form_block(rng, bound=1)
        w = TwoFormDual([B[k].entries[0, 0] for k in BLOCK_KEYS])
        decomposable = wedge_pair_dual(w, w) == 0
        r = degeneracy_check(B)
        assert r.member == decomposable == r.degenerate


def test_member_with_invertible_matrix():
    # a member of the locus over H_2 whose 8 x 8 matrix is invertible
    B = QuadBlockSkew.from_json(oracles.PFAFFIAN_WITNESS)
    xs = sympy.symbols("x0:2")
    ref = oracles.quartic_pfaffian({k: B[k].entries.tolist() for k in BLOCK_KEYS}, xs)
    assert ref == 0 and m_locus_member(B)
    assert oracles.sym_det(B.flatten()) == oracles.PFAFFIAN_WITNESS_DET == det(B.flatten())
    r = degeneracy_check(B)
    assert r.member and not r.degenerate and not r.consistent


def test_json_round_trip_and_errors():
    rng = random.Random(9)
    B = random_block(2, rng)
    again = QuadBlockSkew.from_json(B.to_json())
    assert all(a == b for a, b in zip(again.blocks, B.blocks))
    for bad in ({"m_plus_1": 0}, {"m_plus_1": 2, "A12": [["1"]]}, {}):
        with pytest.raises(ParseError):
            QuadBlockSkew.from_json(bad)
    with pytest.raises(ValueError):
        QuadBlockSkew(2, tuple(random_quadric(3, rng).entries for _ in BLOCK_KEYS))
    assert m_locus_member(QuadBlockSkew.zero(3))
