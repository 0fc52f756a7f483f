"""Exact scalars, dense matrices and the small polynomial containers.

Scalars are :class:`fractions.Fraction`.  A Matrix is a 2-D numpy array of
dtype ``object`` whose entries are Fractions; numpy supplies products,
slicing and stacking while every arithmetic step stays exact.  Ranks,
kernels and inverses go through fraction-free integer elimination in
``qnl._backend``.

A :class:`PrimeField` may be passed as ``field`` to rank/kernel/inverse for
fast randomized checks; results then hold over GF(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

import numpy as np

from . import _backend
from .errors import NotSkew, OddDimension, SingularMatrix

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_PRIME = 4294967291  # largest prime below 2**32


# ---------------------------------------------------------------- scalars

def scalar(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, np.integer):
        return Fraction(int(x))
    raise TypeError(f"cannot read {x!r} as an exact scalar")


def fmt(x) -> str:
    """Serialize as "p" or "p/q" in lowest terms."""
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for an odd prime p > 2**31."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        from sympy import isprime

        if self.p <= 2**31 or not isprime(self.p):
            raise ValueError(f"need an odd prime above 2**31, got {self.p}")

    def reduce(self, x) -> int:
        return reduce_mod(x, self.p)


def reduce_mod(x, p: int) -> int:
    """Image of a rational in GF(p)."""
    x = scalar(x)
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return x.numerator * pow(den, -1, p) % p


# ---------------------------------------------------------------- matrices

def matrix(rows: Iterable[Iterable]) -> np.ndarray:
    rows = [[scalar(v) for v in r] for r in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(ZERO)
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def as_matrix(M) -> np.ndarray:
    if isinstance(M, np.ndarray) and M.dtype == object and M.ndim == 2:
        return M
    return matrix(M)


def freeze(M: np.ndarray) -> np.ndarray:
    M.setflags(write=False)
    return M


def block_diag(*blocks) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def is_zero(M) -> bool:
    return all(v == 0 for v in np.asarray(M, dtype=object).flat)


def is_skew(M) -> bool:
    M = as_matrix(M)
    return M.shape[0] == M.shape[1] and is_zero(M + M.T)


def to_strings(M) -> list:
    return [[fmt(v) for v in row] for row in as_matrix(M)]


def _integer_rows(M: np.ndarray) -> list:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in M:
        den = 1
        for v in row:
            den = math.lcm(den, v.denominator)
        out.append([v.numerator * (den // v.denominator) for v in row])
    return out


def _modular_rows(M: np.ndarray, fld: PrimeField) -> list:
    return [[fld.reduce(v) for v in row] for row in M]


# ---------------------------------------------------------------- elimination

def rank(M, field: PrimeField | None = None) -> int:
    """Exact rank over Q, or over GF(p) when a PrimeField is given."""
    M = as_matrix(M)
    r, c = M.shape
    if r == 0 or c == 0:
        return 0
    if field is not None:
        return _backend.rank_mod_p(_modular_rows(M, field), c, field.p)
    return _backend.bareiss_rank(_integer_rows(M), c)


def rref(M) -> tuple[np.ndarray, list]:
    """Reduced row echelon form over Q and the pivot columns."""
    M = as_matrix(M)
    r, c = M.shape
    if r == 0 or c == 0:
        return M.copy(), []
    R, piv, d = _backend.bareiss_rref(_integer_rows(M), c)
    out = zeros(r, c)
    for i in range(len(piv)):
        out[i, :] = [Fraction(v, d) for v in R[i]]
    return out, piv


def _rref_mod(M, fld):
    r, c = M.shape
    R, piv = _backend.rref_mod_p(_modular_rows(M, fld), c, fld.p)
    return R, piv


def kernel(M, field: PrimeField | None = None) -> np.ndarray:
    """Null-space basis as columns (cols - rank of them).

    Over GF(p) the entries are ints in [0, p) stored as Fractions.
    """
    M = as_matrix(M)
    r, c = M.shape
    if r == 0:
        return eye(c)
    if field is None:
        R, piv = rref(M)
        get = lambda i, j: R[i, j]
        neg = lambda v: -v
    else:
        R, piv = _rref_mod(M, field)
        get = lambda i, j: Fraction(R[i][j])
        neg = lambda v: Fraction((-int(v)) % field.p)
    free = [j for j in range(c) if j not in set(piv)]
    out = zeros(c, len(free))
    for k, fj in enumerate(free):
        out[fj, k] = ONE
        for i, pj in enumerate(piv):
            out[pj, k] = neg(get(i, fj))
    return out


def inverse(M, field: PrimeField | None = None) -> np.ndarray:
    M = as_matrix(M)
    n, c = M.shape
    if n != c:
        raise ValueError("inverse needs a square matrix")
    if n == 0:
        return zeros(0, 0)
    aug = np.concatenate([M, eye(n)], axis=1)
    if field is None:
        R, piv = rref(aug)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise SingularMatrix(f"rank below {n}")
        return R[:, n:].copy()
    R, piv = _rref_mod(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix(f"rank below {n} mod {field.p}")
    return matrix([row[n:] for row in R])


def det(M) -> Fraction:
    """Determinant by Bareiss elimination on row-scaled integers."""
    M = as_matrix(M)
    n, c = M.shape
    if n != c:
        raise ValueError("det needs a square matrix")
    rows = _integer_rows(M)
    scale = 1
    for row in M:
        den = 1
        for v in row:
            den = math.lcm(den, v.denominator)
        scale *= den
    return Fraction(_backend.bareiss_det(rows), scale)


# ---------------------------------------------------------------- pfaffians

def _check_skew_even(M):
    M = as_matrix(M)
    n = M.shape[0]
    if M.shape[0] != M.shape[1] or not is_skew(M):
        raise NotSkew("matrix is not skew-symmetric")
    if any(M[i, i] != 0 for i in range(n)):
        raise NotSkew("nonzero diagonal")
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    return M


def _pf_expand(M, idx):
    if not idx:
        return ONE
    i = idx[0]
    total = ZERO
    for pos in range(1, len(idx)):
        j = idx[pos]
        a = M[i, j]
        if a == 0:
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        sgn = -1 if pos % 2 == 0 else 1
        total += sgn * a * _pf_expand(M, rest)
    return total


def pfaffian_expand(M) -> Fraction:
    """Pfaffian by expansion along the first row."""
    M = _check_skew_even(M)
    return _pf_expand(M, tuple(range(M.shape[0])))


def pfaffian_elim(M) -> Fraction:
    """Pfaffian by skew-congruent elimination (Parlett-Reid style)."""
    A = _check_skew_even(M).copy()
    n = A.shape[0]
    pf = ONE
    for k in range(0, n - 1, 2):
        piv = None
        for j in range(k + 1, n):
            if A[k, j] != 0:
                piv = j
                break
        if piv is None:
            return ZERO
        if piv != k + 1:
            A[[k + 1, piv], :] = A[[piv, k + 1], :]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
            pf = -pf
        a = A[k, k + 1]
        pf *= a
        for i in range(k + 2, n):
            # clear row/column i against the pivot pair (k, k+1)
            ci = -A[k, i] / a
            di = A[k + 1, i] / a
            if ci != 0:
                A[i, :] += ci * A[k + 1, :]
                A[:, i] += ci * A[:, k + 1]
            if di != 0:
                A[i, :] += di * A[k, :]
                A[:, i] += di * A[:, k]
    return pf


def pfaffian(M) -> Fraction:
    """Pfaffian with Pf([[0, 1], [-1, 0]]) = 1."""
    M = as_matrix(M)
    if M.shape[0] <= 8:
        return pfaffian_expand(M)
    return pfaffian_elim(M)


# ---------------------------------------------------------------- forms

@dataclass(frozen=True, eq=False)
class QuadraticFormMatrix:
    """Symmetric dim x dim matrix of a quadratic form."""

    entries: np.ndarray

    def __post_init__(self):
        E = as_matrix(self.entries)
        if E.shape[0] != E.shape[1] or not is_zero(E - E.T):
            raise ValueError("quadratic form matrix must be symmetric")
        object.__setattr__(self, "entries", freeze(E.copy()))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __call__(self, x) -> Fraction:
        x = [scalar(v) for v in x]
        E = self.entries
        return sum((E[i, j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim)), ZERO)

    def __eq__(self, other):
        return isinstance(other, QuadraticFormMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(tuple(self.entries.flat))

    def scale(self, c) -> "QuadraticFormMatrix":
        return QuadraticFormMatrix(self.entries * scalar(c))

    def __add__(self, other):
        return QuadraticFormMatrix(self.entries + other.entries)

    def monomials(self) -> dict:
        """Coefficients keyed by exponent tuples of total degree 2."""
        out: dict = {}
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                c = self.entries[i, j] * (1 if i == j else 2)
                if c:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    out[tuple(e)] = out.get(tuple(e), ZERO) + c
        return out

    @staticmethod
    def zero(n: int) -> "QuadraticFormMatrix":
        return QuadraticFormMatrix(zeros(n, n))


@dataclass(frozen=True)
class QuarticForm:
    """Homogeneous quartic: exponent tuple -> nonzero coefficient."""

    dim: int
    coefficients: Mapping[tuple, Fraction] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.coefficients).items():
            k = tuple(k)
            if len(k) != self.dim or sum(k) != 4 or min(k, default=0) < 0:
                raise ValueError(f"bad quartic exponent {k}")
            v = scalar(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "coefficients", clean)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x) -> Fraction:
        x = [scalar(v) for v in x]
        total = ZERO
        for e, c in self.coefficients.items():
            t = c
            for xi, k in zip(x, e):
                if k:
                    t *= xi ** k
            total += t
        return total

    def __add__(self, other: "QuarticForm") -> "QuarticForm":
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, ZERO) + v
        return QuarticForm(self.dim, out)

    def __neg__(self):
        return QuarticForm(self.dim, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    @staticmethod
    def product(a: QuadraticFormMatrix, b: QuadraticFormMatrix) -> "QuarticForm":
        if a.dim != b.dim:
            raise ValueError("dimension mismatch")
        out: dict = {}
        ma, mb = a.monomials(), b.monomials()
        for ea, ca in ma.items():
            for eb, cb in mb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, ZERO) + ca * cb
        return QuarticForm(a.dim, out)

    def monomial_basis(self):
        """All degree-4 exponent tuples, in a fixed order."""
        for combo in combinations_with_replacement(range(self.dim), 4):
            e = [0] * self.dim
            for i in combo:
                e[i] += 1
            yield tuple(e)
