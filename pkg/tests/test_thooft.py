import random
from fractions import Fraction

import pytest

from qnl.errors import NotDecomposable, ParseError, SamePoint, SingularInput, ZeroForm
from qnl.exact_linalg import kernel, rank
from qnl.nets import LineP3, barth_rank
from qnl.tensor_spaces import TwoForm, TwoFormDual, wedge_pair_dual
from qnl.thooft import (THooftDatum, build_thooft, fixtures, form_of_line, inverse_form,
                        is_decomposable, l_pair, line_of, lines_disjoint, random_decomposable,
                        random_thooft)

import oracles

E12_34 = TwoFormDual({"e12": 1, "e34": 1})
E12 = TwoFormDual.basis("e12")
E34 = TwoFormDual.basis("e34")


def test_decomposability():
    assert is_decomposable(E12)
    assert not is_decomposable(E12_34)
    rng = random.Random(1)
    for _ in range(20):
        w = random_decomposable(rng, 50)
        assert oracles.wedge(w.coords, w.coords) == 0


def test_line_of_is_the_kernel():
    line = line_of(E12)
    # e^1 ^ e^2 vanishes on span(e3, e4)
    assert set(line.pluecker.coords) <= {0, 1, -1}
    assert line.pluecker["e34"] != 0
    with pytest.raises(ZeroForm):
        line_of(TwoFormDual.zero())
    with pytest.raises(NotDecomposable):
        line_of(E12_34)


def test_form_of_line_round_trip():
    rng = random.Random(2)
    for _ in range(10):
        w = random_decomposable(rng, 20)
        l = line_of(w)
        w2 = form_of_line(l)
        assert rank(kernel(w2.skew()).T) == 2
        assert lines_disjoint(l, line_of(w2)) is False


def test_disjointness():
    assert lines_disjoint(line_of(E12), line_of(E34))
    assert not lines_disjoint(line_of(E12), line_of(TwoFormDual.basis("e13")))


def test_build_rejects_non_decomposable():
    d = THooftDatum(2, [([1, 0], E12_34)])
    with pytest.raises(NotDecomposable):
        build_thooft(d)
    with pytest.raises(ValueError):
        build_thooft(THooftDatum(2, [([1, 0], E12)]), n=3)


def test_datum_json_round_trip():
    d = random_thooft(3, 4, seed=1, bound=30)
    again = THooftDatum.from_json(d.to_json())
    assert build_thooft(again) == build_thooft(d)
    with pytest.raises(ParseError):
        THooftDatum.from_json({"n": 2})


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_random_thooft_general_position(n):
    d = random_thooft(n, n + 1, seed=n, bound=100)
    lines = d.lines()
    assert all(lines_disjoint(lines[i], lines[j])
               for i in range(len(lines)) for j in range(i + 1, len(lines)))
    assert barth_rank(build_thooft(d)) == (2 * n + 2, True)


def test_random_thooft_is_seeded():
    assert random_thooft(3, 4, seed=9).to_json() == random_thooft(3, 4, seed=9).to_json()


def test_fixture_nets():
    fx = fixtures()
    for name, (n, r) in oracles.FIXTURE_RANKS.items():
        assert fx[name].n == n
        assert barth_rank(fx[name]) == (r, True)


# ---------------------------------------------------------------- L(a, b)

def test_inverse_form():
    a = TwoForm({"e12": 1, "e34": 1})
    ai = inverse_form(a)
    prod = a.skew().dot(ai.skew())
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(4) for j in range(4))
    with pytest.raises(SingularInput):
        inverse_form(TwoForm.basis("e12"))


def test_l_pair_rational_lines():
    a = TwoForm({"e12": 1, "e34": 1})
    b = TwoFormDual({"e12": 1, "e34": -1})
    rep = l_pair(a, b)
    assert rep.status == "pair" and not rep.degenerate
    for w, line in zip(rep.forms, rep.lines):
        assert wedge_pair_dual(w, w) == 0
        assert isinstance(line, LineP3)
    l1, l2 = rep.lines
    assert l1.pluecker.coords != l2.pluecker.coords
    ai = inverse_form(a)
    assert rep.c2 == wedge_pair_dual(ai, ai)


def test_l_pair_degenerate_cases():
    a = TwoForm({"e12": 1, "e34": 1})
    ai = inverse_form(a)
    with pytest.raises(SamePoint):
        l_pair(a, ai.scale(3))
    with pytest.raises(SingularInput):
        l_pair(a, TwoFormDual.zero())
    # c1^2 - c2 c0 = 8 is not a rational square
    irr = l_pair(a, TwoFormDual({"e12": 1, "e13": 1, "e34": -1, "e24": 1}))
    assert (irr.status, irr.c2, irr.c1, irr.c0) == ("irrational", 2, 0, -4)
    assert irr.degenerate and not irr.lines


def test_l_pair_double_root():
    a = TwoForm({"e12": 1, "e34": 1})
    b = TwoFormDual({"e12": 1, "e34": 1}) + TwoFormDual.basis("e13")
    rep = l_pair(a, b)
    assert (rep.status, rep.c2, rep.c1, rep.c0) == ("double", 2, -2, 2)
    assert rep.to_json()["quadratic"] == {"c2": "2", "c1": "-2", "c0": "2"}
