"""Barth's conditions, block decompositions and jumping lines of nets.

For a net A with flattened matrix F (skew, 4n x 4n) of rank 2n+2:

* W is spanned by the first 2n+2 independent columns of F (index set U),
  q = F[U, U] is the induced skew form on W;
* the fibre of a at v in V is the (2n+2) x n matrix
  a(v) = q^-1 F[U, X_v] with X_v = {h_i (x) v};
* the monad H(-1) -a-> W (x) O -a^T q-> H^dual(1) restricted to a line gives
  the splitting type through section counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (BadSplitting, DegenerateRestriction, NotInS, RankPrecondition,
                     SingularBlock, SingularMatrix, ZeroForm)
from .exact_linalg import (PrimeField, as_matrix, inverse, is_zero, kernel, matrix, rank,
                           reduce_mod, rref, scalar, zeros)
from .tensor_spaces import PAIRS, MixedMap, Net, TwoForm, split_skew, wedge_pair


# ---------------------------------------------------------------- splittings

@dataclass(frozen=True, eq=False)
class Splitting:
    """H_{m+1} + H_m = H_{2m+1} as an index partition, optionally after a base change."""

    n: int
    first: tuple
    second: tuple
    base_change: np.ndarray | None = None

    def __post_init__(self):
        first, second = tuple(self.first), tuple(self.second)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)
        if self.n % 2 == 0:
            raise BadSplitting("n must be odd")
        m = (self.n - 1) // 2
        if len(first) != m + 1 or len(second) != m:
            raise BadSplitting(f"need parts of sizes {m + 1} and {m}")
        if sorted(first + second) != list(range(self.n)):
            raise BadSplitting("index sets must partition 0..n-1")
        if self.base_change is not None:
            g = as_matrix(self.base_change)
            if g.shape != (self.n, self.n) or rank(g) < self.n:
                raise BadSplitting("base change must be invertible n x n")
            object.__setattr__(self, "base_change", g)

    @property
    def m(self) -> int:
        return (self.n - 1) // 2


def xi0(m: int) -> Splitting:
    """Contiguous split {0..m} | {m+1..2m}."""
    return Splitting(2 * m + 1, tuple(range(m + 1)), tuple(range(m + 1, 2 * m + 1)))


def _apply(A: Net, xi: Splitting) -> Net:
    if A.n != xi.n:
        raise BadSplitting(f"splitting is for n={xi.n}, net has n={A.n}")
    if xi.base_change is not None:
        A = A.transform(xi.base_change)
    return A.restrict(xi.first + xi.second)


def block_decompose(A: Net, xi: Splitting):
    """(A1, A2, A3): the H_{m+1} net, the mixed part and the H_m net."""
    B = _apply(A, xi)
    m = xi.m
    top, bot = range(m + 1), range(m + 1, 2 * m + 1)
    A1 = B.restrict(top)
    A3 = B.restrict(bot)
    A2 = MixedMap(m + 1, m, [[B.coefficient(i, j) for j in bot] for i in top])
    return A1, A2, A3


def assemble_blocks(A1: Net, A2: MixedMap, A3: Net) -> Net:
    """Inverse of block_decompose for the trivial splitting."""
    p, m = A1.n, A3.n
    if A2.rows != p or A2.cols != m:
        raise BadSplitting("block shapes do not fit")
    comps = []
    for k in range(6):
        C = zeros(p + m, p + m)
        C[:p, :p] = A1.components[k]
        C[p:, p:] = A3.components[k]
        for i in range(p):
            for j in range(m):
                v = A2.entries[i][j].coords[k]
                C[i, p + j] = v
                C[p + j, i] = v
        comps.append(C)
    return Net(p + m, tuple(comps))


def schur_residual(A: Net, xi: Splitting) -> np.ndarray:
    """A3 + A2^T A1^-1 A2 in flattened form; zero iff rank A = rank A1."""
    A1, A2, A3 = block_decompose(A, xi)
    C = A2.flatten()
    return A3.flatten() + C.T.dot(_corner_inverse(A1, "A1")).dot(C)


def _corner_inverse(B: Net, name: str) -> np.ndarray:
    try:
        return inverse(B.flatten())
    except SingularMatrix as exc:
        raise SingularBlock(f"{name} is not invertible") from exc


def pair_to_net(B: Net, C: MixedMap) -> Net:
    """The net [[B, C], [-C^T, -C^T B^-1 C]]; the corner must lie in S."""
    X = -C.flatten().T.dot(_corner_inverse(B, "B")).dot(C.flatten())
    S, L = split_skew(X, C.cols)
    if not L.is_zero():
        raise NotInS("C^T B^-1 C has a nonzero Lambda-part", L)
    return assemble_blocks(B, C, S)


@dataclass
class XmReport:
    """Conditions (i)-(iii) for a pair (B, C); witnesses are points of P^3 mod p."""

    lambda_part: object
    subbundle_ok: bool
    rho_ok: bool
    samples: int
    seed: int
    prime: int
    generic_rank: int
    witness_ii: tuple | None = None
    witness_iii: tuple | None = None

    @property
    def in_s(self) -> bool:
        return self.lambda_part.is_zero()

    @property
    def passed(self) -> bool:
        return self.in_s and self.subbundle_ok and self.rho_ok


def _columns_at(M, n, v, p):
    """Columns h (x) v of a flattened map, reduced mod p."""
    return [[sum(v[x] * M[r][4 * i + x] for x in range(4)) % p for i in range(n)]
            for r in range(len(M))]


def xm_membership(B: Net, C: MixedMap, samples: int = 32, seed: int = 0,
                  field: PrimeField | None = None) -> XmReport:
    """Exact test of (i); sampled fibre tests of (ii) and (iii).

    (ii) asks that v -> [B | C](- (x) v) has the same rank at every sample.
    (iii) asks that rho(v): H_m -> E_v is injective, where E_v is
    ker(a_B(v)^T B) / im(a_B(v)) and rho(v) h = B^-1 C (h (x) v).
    """
    from . import _backend

    if C.rows != B.n:
        raise BadSplitting("C must have B.n rows")
    Binv = _corner_inverse(B, "B")
    Cf = C.flatten()
    L = split_skew(Cf.T.dot(Binv).dot(Cf), C.cols)[1]
    fld = field or PrimeField()
    p = fld.p
    BC = _mod_matrix(np.concatenate([B.flatten(), Cf], axis=1), p)
    BiC = _mod_matrix(Binv.dot(Cf), p)
    k, m = B.n, C.cols
    rng = random.Random(seed)
    ranks, wit_iii = [], None
    for _ in range(samples):
        v = [rng.randrange(p) for _ in range(4)]
        if not any(v):
            v[0] = 1
        left = _columns_at([row[:4 * k] for row in BC], k, v, p)
        right = _columns_at([row[4 * k:] for row in BC], m, v, p)
        ranks.append((_backend.rank_mod_p([l + r for l, r in zip(left, right)], k + m, p), tuple(v)))
        if m and wit_iii is None:
            av = [[v[r % 4] if r // 4 == i else 0 for i in range(k)] for r in range(4 * k)]
            rv = _columns_at(BiC, m, v, p)
            full = _backend.rank_mod_p([a + b for a, b in zip(av, rv)], k + m, p)
            if full - _backend.rank_mod_p(av, k, p) < m:
                wit_iii = tuple(v)
    top = max((r for r, _ in ranks), default=0)
    low = [v for r, v in ranks if r < top]
    return XmReport(L, not low, wit_iii is None, samples, seed, p, top,
                    low[0] if low else None, wit_iii)


# ---------------------------------------------------------------- Barth (i)

def barth_rank(A: Net):
    r = rank(A.flatten())
    return r, r == 2 * A.n + 2


def _require_rank(A: Net):
    r, ok = barth_rank(A)
    if not ok:
        raise RankPrecondition(f"rank {r} != {2 * A.n + 2}")


# ---------------------------------------------------------------- monad

@dataclass(frozen=True, eq=False)
class MonadData:
    n: int
    columns: tuple
    W_basis: np.ndarray
    a_coeffs: tuple
    q: np.ndarray

    def a_at(self, v) -> np.ndarray:
        v = [scalar(x) for x in v]
        out = zeros(2 * self.n + 2, self.n)
        for c, a in zip(v, self.a_coeffs):
            if c:
                out = out + a * c
        return out

    def fibre_matrix(self, v) -> np.ndarray:
        """n x (2n+2) matrix of the dual map at v."""
        return self.a_at(v).T.dot(self.q)

    def identity_coefficients(self) -> list:
        """The ten n x n coefficients of v -> a(v)^T q a(v)."""
        out = []
        a, q = self.a_coeffs, self.q
        for x in range(4):
            for y in range(x, 4):
                M = a[x].T.dot(q).dot(a[y])
                if x != y:
                    M = M + a[y].T.dot(q).dot(a[x])
                out.append(M)
        return out

    def identity_holds(self) -> bool:
        return all(is_zero(M) for M in self.identity_coefficients())


def monad_assemble(A: Net) -> MonadData:
    _require_rank(A)
    F = A.flatten()
    _, piv = rref(F)
    cols = tuple(piv)
    q = F[np.ix_(cols, cols)]
    qinv = inverse(q)
    a = []
    for x in range(4):
        X = [4 * i + x for i in range(A.n)]
        a.append(qinv.dot(F[np.ix_(cols, X)]))
    return MonadData(A.n, cols, F[:, cols], tuple(a), q)


# ---------------------------------------------------------------- Barth (ii)

@dataclass
class SurjectivityVerdict:
    status: str
    samples: int
    seed: int
    prime: int
    witness: tuple | None = None
    failures: int = 0
    failure_bound: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _mod_matrix(M, p):
    return [[reduce_mod(x, p) for x in row] for row in M]


def _fibre_rank_mod(a_mod, q_mod, v, n, p):
    from . import _backend

    w = len(q_mod)
    av = [[sum(v[x] * a_mod[x][r][c] for x in range(4)) % p for c in range(n)] for r in range(w)]
    fib = [[sum(av[r][i] * q_mod[r][c] for r in range(w)) % p for c in range(w)] for i in range(n)]
    return _backend.rank_mod_p(fib, w, p)


def barth_surjectivity(A: Net, samples: int = 64, seed: int = 0,
                       field: PrimeField | None = None) -> SurjectivityVerdict:
    """Sample fibre ranks of a^T q at random points of P^3 over GF(p).

    A pass means every sampled fibre had rank n.  A proper degeneracy locus
    is hit by one uniform sample with probability at most n/p.
    """
    _require_rank(A)
    fld = field or PrimeField()
    p = fld.p
    md = monad_assemble(A)
    try:
        a_mod = [_mod_matrix(a, p) for a in md.a_coeffs]
        q_mod = _mod_matrix(md.q, p)
    except ZeroDivisionError:
        return SurjectivityVerdict("inconclusive", 0, seed, p)
    rng = random.Random(seed)
    witness, failures = None, 0
    for _ in range(samples):
        v = [rng.randrange(p) for _ in range(4)]
        if not any(v):
            v[0] = 1
        if _fibre_rank_mod(a_mod, q_mod, v, A.n, p) < A.n:
            failures += 1
            if witness is None:
                witness = tuple(v)
    status = "pass" if failures == 0 and samples > 0 else ("inconclusive" if samples == 0 else "fail_at_point")
    return SurjectivityVerdict(status, samples, seed, p, witness, failures, A.n / p)


def barth_surjectivity_sweep(A: Net, p: int) -> SurjectivityVerdict:
    """Check every point of P^3 over a small prime field."""
    from sympy import isprime

    if not isprime(p):
        raise ValueError("p must be prime")
    _require_rank(A)
    md = monad_assemble(A)
    try:
        a_mod = [_mod_matrix(a, p) for a in md.a_coeffs]
        q_mod = _mod_matrix(md.q, p)
    except ZeroDivisionError:
        return SurjectivityVerdict("inconclusive", 0, 0, p)
    witness, failures, count = None, 0, 0
    for lead in range(4):
        for tail in np.ndindex(*([p] * (3 - lead))):
            v = [0] * lead + [1] + list(tail)
            count += 1
            if _fibre_rank_mod(a_mod, q_mod, v, A.n, p) < A.n:
                failures += 1
                if witness is None:
                    witness = tuple(v)
    return SurjectivityVerdict("pass" if failures == 0 else "fail_at_point",
                               count, 0, p, witness, failures, 0.0)


# ---------------------------------------------------------------- Barth (iii)

def section_map(md: MonadData) -> np.ndarray:
    """W -> H^dual (x) V^dual, row 4i + x holds row i of a_x^T q."""
    w = 2 * md.n + 2
    M = zeros(4 * md.n, w)
    for x, a in enumerate(md.a_coeffs):
        B = a.T.dot(md.q)
        for i in range(md.n):
            M[4 * i + x, :] = B[i, :]
    return M


def vertical_kernel_dim(A: Net) -> int:
    """dim of {h : h (x) V lies in ker F}."""
    F = A.flatten()
    blocks = [F[:, [4 * i + x for i in range(A.n)]] for x in range(4)]
    return A.n - rank(np.concatenate(blocks, axis=0))


def barth_sections(A: Net):
    md = monad_assemble(A)
    S = section_map(md)
    return S.shape[1] - rank(S), vertical_kernel_dim(A)


# ---------------------------------------------------------------- lines

@dataclass(frozen=True, eq=False)
class LineP3:
    """A line in P^3 as a decomposable bivector plus two spanning points."""

    pluecker: TwoForm
    span: np.ndarray = field(repr=False)

    @classmethod
    def from_pluecker(cls, pi: TwoForm) -> "LineP3":
        if pi.is_zero():
            raise ZeroForm("zero bivector")
        if wedge_pair(pi, pi) != 0:
            raise ValueError("bivector is not decomposable")
        M = pi.skew()
        _, piv = rref(M)
        span = M[:, piv[:2]]
        return cls(pi, span)

    @classmethod
    def from_points(cls, u, v) -> "LineP3":
        u = [scalar(x) for x in u]
        v = [scalar(x) for x in v]
        pi = TwoForm([u[a] * v[b] - u[b] * v[a] for a, b in PAIRS])
        if pi.is_zero():
            raise ZeroForm("points are dependent")
        return cls(pi, matrix([[u[i], v[i]] for i in range(4)]))

    @property
    def points(self):
        return list(self.span[:, 0]), list(self.span[:, 1])

    def to_json(self) -> dict:
        return self.pluecker.to_json()


def transversal(p, l1: LineP3, l2: LineP3) -> LineP3:
    """The line through the point p meeting l1 and l2 (p on neither)."""
    p = [scalar(x) for x in p]
    u, v = l1.points
    normal = kernel(matrix([p, u, v]))
    if normal.shape[1] != 1:
        raise ValueError("p lies on l1")
    a, b = l2.points
    fa = sum(normal[i, 0] * a[i] for i in range(4))
    fb = sum(normal[i, 0] * b[i] for i in range(4))
    if fa == fb == 0:
        raise ValueError("l2 lies in the plane spanned by p and l1")
    return LineP3.from_points(p, [fb * a[i] - fa * b[i] for i in range(4)])


def contracted_form(A: Net, line: LineP3) -> np.ndarray:
    """Q_l = sum_k <e^k, pi(l)> C_k."""
    Q = zeros(A.n, A.n)
    for c, C in zip(line.pluecker.coords, A.components):
        if c:
            Q = Q + C * c
    return Q


def jump_order(A: Net, line: LineP3) -> int:
    """Corank of the net contracted with the line's bivector."""
    _require_rank(A)
    return A.n - rank(contracted_form(A, line))


def _restricted_a(md: MonadData, line: LineP3):
    u, v = line.points
    return md.a_at(u), md.a_at(v)


def _det_poly(Ru, Rv, t):
    """det(Ru + t Rv) as a sympy polynomial in t, by interpolation."""
    import sympy

    from .exact_linalg import det

    n = Ru.shape[0]
    pts = [(Fraction(k), det(Ru + Rv * Fraction(k))) for k in range(n + 1)]
    poly = sympy.interpolate([(sympy.Rational(x.numerator, x.denominator),
                               sympy.Rational(y.numerator, y.denominator)) for x, y in pts], t)
    return sympy.Poly(poly, t, domain="QQ")


def restriction_injective(md: MonadData, line: LineP3, seed: int = 0, trials: int = 6) -> bool:
    """Whether a(s u + t v) has rank n for every [s:t].

    Common roots of det(R a(t)) over random projections R contain every
    rank drop; a constant gcd certifies injectivity.  A residual gcd after
    ``trials`` projections is treated as a genuine drop.
    """
    import sympy

    n = md.n
    au, av = _restricted_a(md, line)
    if rank(av) < n or rank(au) < n:
        return False
    t = sympy.Symbol("t")
    rng = random.Random(seed)
    g = None
    for _ in range(trials):
        R = matrix([[rng.randint(-9, 9) for _ in range(2 * n + 2)] for _ in range(n)])
        d = _det_poly(R.dot(au), R.dot(av), t)
        g = d if g is None else sympy.gcd(g, d)
        if not g.is_zero and g.degree() == 0:
            return True
    return False


def section_count(md: MonadData, line: LineP3, k: int) -> int:
    """dim ker(H0(W(k)) -> H0(H^dual(k+1))) on the line."""
    au, av = _restricted_a(md, line)
    Bu, Bv = au.T.dot(md.q), av.T.dot(md.q)
    n, w = md.n, 2 * md.n + 2
    M = zeros(n * (k + 2), w * (k + 1))
    for j in range(k + 1):
        M[n * j:n * (j + 1), w * j:w * (j + 1)] = Bu
        M[n * (j + 1):n * (j + 2), w * j:w * (j + 1)] = Bv
    return M.shape[1] - rank(M)


def restriction_h0(A: Net, line: LineP3, k: int, seed: int = 0) -> int:
    """h0(E|l(k)) from the restricted monad."""
    if k < 0:
        raise ValueError("k must be non-negative")
    md = monad_assemble(A)
    au, av = _restricted_a(md, line)
    rng = random.Random(seed)
    for _ in range(k + 2):
        s, t = rng.randint(-50, 50), rng.randint(-50, 50)
        if s == t == 0:
            s = 1
        if rank(au * s + av * t) < A.n:
            raise DegenerateRestriction(f"a drops rank at [{s}:{t}]")
    if not restriction_injective(md, line, seed):
        raise DegenerateRestriction("a drops rank somewhere on the line")
    return section_count(md, line, k) - A.n * k


def expected_h0(d: int, k: int) -> int:
    """h0(O(d+k) + O(k-d)) for d >= 0."""
    return max(2 * k + 2, d + k + 1)
