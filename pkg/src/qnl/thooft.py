"""t'Hooft nets, decomposable forms and the line pair L(a, b).

A decomposable w in Lambda^2 V^dual has rank two; its line is P(ker w).
Two such lines are disjoint exactly when the forms wedge to a nonzero
multiple of the volume form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .errors import NotDecomposable, ParseError, SamePoint, SingularInput, ZeroForm
from .exact_linalg import fmt, inverse, kernel, rank, scalar, SingularMatrix
from .nets import LineP3, barth_rank
from .tensor_spaces import (Net, TwoForm, TwoFormDual, net_from_terms, wedge_pair,
                            wedge_pair_dual)


# ---------------------------------------------------------------- data

@dataclass(frozen=True, eq=False)
class THooftDatum:
    n: int
    terms: tuple

    def __post_init__(self):
        terms = []
        for h, w in self.terms:
            h = tuple(scalar(x) for x in h)
            if len(h) != self.n:
                raise ValueError(f"h must have length {self.n}")
            if not isinstance(w, TwoFormDual):
                w = TwoFormDual(w)
            terms.append((h, w))
        object.__setattr__(self, "terms", tuple(terms))

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"h": [fmt(x) for x in h], "w": w.to_json()}
                                       for h, w in self.terms]}

    @classmethod
    def from_json(cls, obj) -> "THooftDatum":
        try:
            n = obj["n"]
            terms = [(t["h"], TwoFormDual.from_json(t["w"])) for t in obj["terms"]]
            return cls(n, terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad t'Hooft datum: {exc}") from exc

    def lines(self) -> list:
        return [line_of(w) for _, w in self.terms]


def is_decomposable(w: TwoFormDual) -> bool:
    return wedge_pair_dual(w, w) == 0


def build_thooft(d: THooftDatum, n: int | None = None) -> Net:
    """sum_t h_t^2 (x) w_t."""
    n = d.n if n is None else n
    if n != d.n:
        raise ValueError(f"datum has n={d.n}")
    for _, w in d.terms:
        if w.is_zero() or not is_decomposable(w):
            raise NotDecomposable(f"w = {w.to_json()} is not a nonzero decomposable form")
    return net_from_terms(n, d.terms)


def line_of(w: TwoFormDual) -> LineP3:
    """The line P(ker w) of a decomposable dual form."""
    if w.is_zero():
        raise ZeroForm("zero form has no line")
    if not is_decomposable(w):
        raise NotDecomposable("form is not decomposable")
    K = kernel(w.skew())
    return LineP3.from_points(K[:, 0], K[:, 1])


def lines_disjoint(l1: LineP3, l2: LineP3) -> bool:
    return wedge_pair(l1.pluecker, l2.pluecker) != 0


def form_of_line(line: LineP3) -> TwoFormDual:
    """A decomposable dual form whose kernel is the line."""
    K = kernel(line.span.T)
    f, g = K[:, 0], K[:, 1]
    return TwoFormDual([f[a] * g[b] - f[b] * g[a] for a, b in
                        ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))])


# ---------------------------------------------------------------- L(a, b)

@dataclass(frozen=True)
class LinePairReport:
    """Outcome of l_pair.

    status is "pair" (two rational lines), "double" (vanishing
    discriminant) or "irrational" (roots outside Q).  The binary quadratic
    c2 l^2 + 2 c1 l mu + c0 mu^2 is always reported.
    """

    status: str
    c2: Fraction
    c1: Fraction
    c0: Fraction
    lines: tuple = ()
    forms: tuple = ()

    @property
    def degenerate(self) -> bool:
        return self.status != "pair"

    def to_json(self) -> dict:
        return {"status": self.status,
                "quadratic": {"c2": fmt(self.c2), "c1": fmt(self.c1), "c0": fmt(self.c0)},
                "lines": [l.to_json() for l in self.lines]}


def _rational_sqrt(x: Fraction):
    from math import isqrt

    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def inverse_form(a: TwoForm) -> TwoFormDual:
    try:
        return TwoFormDual.from_skew(inverse(a.skew()))
    except SingularMatrix as exc:
        raise SingularInput("a is not invertible") from exc


def l_pair(a: TwoForm, b: TwoFormDual) -> LinePairReport:
    """Lines where the pencil spanned by a^-1 and b meets the Grassmannian."""
    ai = inverse_form(a)
    if b.is_zero():
        raise SingularInput("b is zero")
    if rank(np.array([list(ai.coords), list(b.coords)], dtype=object)) < 2:
        raise SamePoint("<a^-1> = <b>")
    c2 = wedge_pair_dual(ai, ai)
    c1 = wedge_pair_dual(ai, b)
    c0 = wedge_pair_dual(b, b)
    disc = c1 * c1 - c2 * c0
    if disc == 0:
        return LinePairReport("double", c2, c1, c0)
    r = _rational_sqrt(disc)
    if r is None:
        return LinePairReport("irrational", c2, c1, c0)
    roots = []
    if c2 == 0:
        roots.append((Fraction(1), Fraction(0)))
        roots.append((c0, -2 * c1))
    else:
        roots.append(((-c1 + r), c2))
        roots.append(((-c1 - r), c2))
    forms = tuple(ai.scale(l) + b.scale(mu) for l, mu in roots)
    lines = tuple(line_of(w) for w in forms)
    return LinePairReport("pair", c2, c1, c0, lines, forms)


# ---------------------------------------------------------------- random data

def random_decomposable(rng: random.Random, bound: int = 1000) -> TwoFormDual:
    while True:
        f = [rng.randint(-bound, bound) for _ in range(4)]
        g = [rng.randint(-bound, bound) for _ in range(4)]
        w = TwoFormDual([f[a] * g[b] - f[b] * g[a] for a, b in
                         ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))])
        if not w.is_zero():
            return w


def random_thooft(n: int, terms: int, seed: int, bound: int = 1000,
                  max_retries: int = 32) -> THooftDatum:
    """Seeded datum with pairwise-disjoint lines whose net has rank 2n+2.

    The rank check applies only when terms >= n+1.
    """
    rng = random.Random(seed)
    for _ in range(max_retries):
        ws = [random_decomposable(rng, bound) for _ in range(terms)]
        if any(wedge_pair_dual(ws[i], ws[j]) == 0
               for i in range(terms) for j in range(i + 1, terms)):
            continue
        hs = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(terms)]
        d = THooftDatum(n, list(zip(hs, ws)))
        if terms >= n + 1 and not barth_rank(build_thooft(d))[1]:
            continue
        return d
    raise RuntimeError("no datum in general position within the retry cap")


# ---------------------------------------------------------------- fixtures

def _load(name: str) -> dict:
    return json.loads(resources.files("qnl.data").joinpath(name).read_text())


def fixtures() -> dict:
    """The nets A1 (n=3) and A2 (n=5)."""
    from .tensor_spaces import net_from_json

    data = _load("thooft_fixtures.json")
    return {k: net_from_json(data[k]["net"]) for k in ("A1", "A2")}
