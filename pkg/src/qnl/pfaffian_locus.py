"""Nets whose 4x4 skew matrix of quadrics has identically vanishing Pfaffian.

A net B over H_{m+1} is written through its six quadrics A12, ..., A34;
B(x) is the skew matrix of their values at x and
Pf B(x) = A12 A34 - A13 A24 + A14 A23.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParseError
from .exact_linalg import (QuadraticFormMatrix, QuarticForm, as_matrix, eye, fmt, kernel,
                           matrix, rank, scalar, zeros)
from .tensor_spaces import Net, skew4

BLOCK_KEYS = ("A12", "A13", "A14", "A23", "A24", "A34")


@dataclass(frozen=True, eq=False)
class QuadBlockSkew:
    """Six symmetric (m+1) x (m+1) blocks A12, A13, A14, A23, A24, A34."""

    dim: int
    blocks: tuple

    def __post_init__(self):
        blocks = self.blocks
        if isinstance(blocks, dict):
            blocks = [blocks[k] for k in BLOCK_KEYS]
        blocks = tuple(b if isinstance(b, QuadraticFormMatrix) else QuadraticFormMatrix(b)
                       for b in blocks)
        if len(blocks) != 6 or any(b.dim != self.dim for b in blocks):
            raise ValueError(f"need six symmetric {self.dim}x{self.dim} blocks")
        object.__setattr__(self, "blocks", blocks)

    def __getitem__(self, key: str) -> QuadraticFormMatrix:
        return self.blocks[BLOCK_KEYS.index(key)]

    def at(self, x) -> np.ndarray:
        """B(x), the skew 4x4 matrix of values."""
        return skew4([b(x) for b in self.blocks])

    def as_net(self) -> Net:
        return Net(self.dim, tuple(b.entries for b in self.blocks))

    def flatten(self) -> np.ndarray:
        return self.as_net().flatten()

    def congruence(self, T) -> "QuadBlockSkew":
        """The blocks of T^T B T for a scalar 4x4 matrix T acting on V."""
        T = as_matrix(T)
        out = [zeros(self.dim, self.dim) for _ in range(6)]
        for k, b in enumerate(self.blocks):
            S = skew4([1 if t == k else 0 for t in range(6)])
            C = T.T.dot(S).dot(T)
            for t, (a, c) in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
                if C[a, c]:
                    out[t] = out[t] + b.entries * C[a, c]
        return QuadBlockSkew(self.dim, tuple(out))

    def to_json(self) -> dict:
        body = {"m_plus_1": self.dim}
        for k, b in zip(BLOCK_KEYS, self.blocks):
            body[k] = [[fmt(v) for v in row] for row in b.entries]
        return body

    @classmethod
    def from_json(cls, obj) -> "QuadBlockSkew":
        try:
            dim = obj["m_plus_1"]
            if not isinstance(dim, int) or dim < 1:
                raise ValueError("m_plus_1 must be a positive integer")
            return cls(dim, tuple(as_matrix(obj[k]) for k in BLOCK_KEYS))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad block matrix: {exc}") from exc

    @classmethod
    def zero(cls, dim: int) -> "QuadBlockSkew":
        return cls(dim, tuple(zeros(dim, dim) for _ in BLOCK_KEYS))


def pfaffian_quartic(B: QuadBlockSkew) -> QuarticForm:
    P = QuarticForm.product
    return P(B["A12"], B["A34"]) - P(B["A13"], B["A24"]) + P(B["A14"], B["A23"])


def m_locus_member(B: QuadBlockSkew) -> bool:
    return pfaffian_quartic(B).is_zero()


def structured_family(A12, A13, A14, lam, gamma) -> QuadBlockSkew:
    """A23 = lam A13, A24 = gamma A12 + lam A14, A34 = gamma A13."""
    A12, A13, A14 = (a if isinstance(a, QuadraticFormMatrix) else QuadraticFormMatrix(a)
                     for a in (A12, A13, A14))
    lam, gamma = scalar(lam), scalar(gamma)
    return QuadBlockSkew(A12.dim, (A12, A13, A14, A13.scale(lam),
                                   A12.scale(gamma) + A14.scale(lam), A13.scale(gamma)))


def reducing_congruence(gamma) -> np.ndarray:
    """T with T^T B T = B' for the structured family: adds gamma * e1 to e4."""
    T = eye(4)
    T[0, 3] = scalar(gamma)
    return T


def reduce_structured(B: QuadBlockSkew, gamma) -> QuadBlockSkew:
    """B' with A34 = 0 and A24 = lam A14."""
    return B.congruence(reducing_congruence(gamma))


@dataclass(frozen=True)
class DegeneracyReport:
    member: bool
    big_rank: int
    size: int

    @property
    def degenerate(self) -> bool:
        return self.big_rank < self.size

    @property
    def consistent(self) -> bool:
        """member implies degenerate."""
        return not self.member or self.degenerate

    def to_json(self) -> dict:
        return {"member": self.member, "big_rank": self.big_rank, "size": self.size,
                "degenerate": self.degenerate}


def degeneracy_check(B: QuadBlockSkew) -> DegeneracyReport:
    return DegeneracyReport(m_locus_member(B), rank(B.flatten()), 4 * B.dim)


# ---------------------------------------------------------------- sampling

def random_quadric(dim: int, rng: random.Random, bound: int = 9) -> QuadraticFormMatrix:
    E = zeros(dim, dim)
    for i in range(dim):
        for j in range(i, dim):
            v = Fraction(rng.randint(-bound, bound))
            E[i, j] = E[j, i] = v
    return QuadraticFormMatrix(E)


def random_block(dim: int, rng: random.Random, bound: int = 9) -> QuadBlockSkew:
    return QuadBlockSkew(dim, tuple(random_quadric(dim, rng, bound) for _ in BLOCK_KEYS))


def random_structured(m: int, rng: random.Random, bound: int = 9) -> QuadBlockSkew:
    dim = m + 1
    A12, A13, A14 = (random_quadric(dim, rng, bound) for _ in range(3))
    return structured_family(A12, A13, A14, rng.randint(-bound, bound), rng.randint(-bound, bound))


def _sym_units(dim: int):
    for i in range(dim):
        for j in range(i, dim):
            E = zeros(dim, dim)
            E[i, j] = E[j, i] = Fraction(1)
            yield E


# complementary pairs of blocks and the sign of their product in the Pfaffian
_PAIRS = (("A12", "A34", 1), ("A13", "A24", -1), ("A14", "A23", 1))


def random_member_solve(m: int, rng: random.Random, bound: int = 9) -> QuadBlockSkew:
    """Fix one block of each complementary pair at random; solve for the rest.

    The Pfaffian is linear in the three free blocks, so the members with
    the fixed blocks form the kernel of a linear map to quartic coefficients.
    A random integer combination of a kernel basis is returned.
    """
    dim = m + 1
    fixed, free = {}, []
    for a, b, sign in _PAIRS:
        if rng.random() < 0.5:
            a, b = b, a
        fixed[a] = random_quadric(dim, rng, bound)
        free.append((b, a, sign))
    units = list(_sym_units(dim))
    monos = list(QuarticForm(dim).monomial_basis())
    cols = []
    for name, partner, sign in free:
        for E in units:
            q = QuarticForm.product(QuadraticFormMatrix(E), fixed[partner])
            cols.append([sign * q.coefficients.get(e, 0) for e in monos])
    K = kernel(matrix(cols).T)
    coeffs = [rng.randint(-bound, bound) for _ in range(K.shape[1])]
    vec = K.dot(matrix([coeffs]).T)[:, 0] if K.shape[1] else [Fraction(0)] * len(cols)
    blocks = dict(fixed)
    u = len(units)
    for t, (name, _, _) in enumerate(free):
        S = zeros(dim, dim)
        for c, E in enumerate(units):
            S = S + E * vec[t * u + c]
        blocks[name] = QuadraticFormMatrix(S)
    return QuadBlockSkew(dim, tuple(blocks[k] for k in BLOCK_KEYS))


def random_two_form_block(rng: random.Random, bound: int = 3) -> QuadBlockSkew:
    """m = 0: a single two-form as a 1 x 1 block matrix."""
    return QuadBlockSkew(1, tuple(matrix([[rng.randint(-bound, bound)]]) for _ in BLOCK_KEYS))
