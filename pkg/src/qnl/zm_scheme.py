"""The pairs (D, phi) of Z_m, the Delta-fixtures and the fibre systems M, M~.

Theta(D, phi) = Phi^T D Phi on flattened matrices.  A pair lies in the
closure of Z_m when the Lambda-part of Theta vanishes; D must also be
invertible for a point of Z_m itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from typing import Sequence

import numpy as np

from .errors import BadShape, SingularD, SingularMatrix
from .exact_linalg import (as_matrix, block_diag, eye, inverse, is_zero, kernel, matrix,
                           rank, scalar, zeros)
from .tensor_spaces import (KEYS, PAIRS, DualNet, PhiMap, TwoForm,
                            TwoFormDual, coords_of_skew, skew4, split_skew, unflatten)

# Row order of one H-block of a fibre system: e1^2, e1e2, ..., e4^2.
SYM_PAIRS = tuple((a, b) for a in range(4) for b in range(a, 4))
# Printed layout: e1e2, e3e4, e1e3, e1e4, e2e3, e2e4, e2^2, e3^2, e1^2, e4^2.
PRINTED_ROWS = ((0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3), (1, 1), (2, 2), (0, 0), (3, 3))
# Variable order inside one two-form of the printed systems.
VAR_PAIRS = ((0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3))


def _load(name: str) -> dict:
    return json.loads(resources.files("qnl.data").joinpath(name).read_text())


# ---------------------------------------------------------------- parameters

@dataclass(frozen=True)
class FixtureParams:
    """Scalars of the Delta-fixtures; defaults are the published values."""

    N: Fraction
    a: Fraction
    d: Fraction
    f: Fraction
    g: Fraction
    p: TwoForm
    q: TwoFormDual
    lam: Fraction
    r: TwoFormDual
    s: TwoFormDual

    @classmethod
    def default(cls) -> "FixtureParams":
        raw = _load("fixture_params.json")
        return cls(N=scalar(raw["N"]), a=scalar(raw["a"]), d=scalar(raw["d"]),
                   f=scalar(raw["f"]), g=scalar(raw["g"]),
                   p=TwoForm(raw["p"]), q=TwoFormDual(raw["q"]), lam=scalar(raw["lambda"]),
                   r=TwoFormDual(raw["r"]), s=TwoFormDual(raw["s"]))

    def override(self, **kw) -> "FixtureParams":
        conv = {}
        for k, v in kw.items():
            if v is None:
                continue
            if k in ("p",):
                conv[k] = v if isinstance(v, TwoForm) else TwoForm(v)
            elif k in ("q", "r", "s"):
                conv[k] = v if isinstance(v, TwoFormDual) else TwoFormDual(v)
            else:
                conv[k] = scalar(v)
        return replace(self, **conv)

    def relation_holds(self) -> bool:
        """r_i3 + r_i4 = s_i3 + s_i4 for i = 1, 2."""
        r, s = self.r, self.s
        return (r["e13"] + r["e14"] == s["e13"] + s["e14"]
                and r["e23"] + r["e24"] == s["e23"] + s["e24"])

    def symbols(self) -> dict:
        return {"1": Fraction(1), "N": self.N, "a": self.a, "d": self.d,
                "f": self.f, "g": self.g}


def _form(name: str, values: dict) -> np.ndarray:
    form = _load("delta_blocks.json")["forms"][name]
    coords = [sum((scalar(c) * values[sym] for sym, c in form.get(k, {}).items()), Fraction(0))
              for k in KEYS]
    return skew4(coords)


# ---------------------------------------------------------------- points

@dataclass(frozen=True, eq=False)
class ZPoint:
    """(D, phi); blocks records a direct-sum decomposition of H_m, if any."""

    D: DualNet
    phi: PhiMap
    blocks: tuple | None = None

    def __post_init__(self):
        if self.D.m != self.phi.m:
            raise BadShape("D and phi live over different H_m")
        blocks = self.blocks if self.blocks is not None else (self.D.m,)
        blocks = tuple(int(b) for b in blocks)
        if sum(blocks) != self.D.m or any(b < 1 for b in blocks):
            raise BadShape("blocks must partition m")
        object.__setattr__(self, "blocks", blocks)

    @property
    def m(self) -> int:
        return self.D.m

    @classmethod
    def from_matrices(cls, D, Phi, blocks=None) -> "ZPoint":
        D = as_matrix(D)
        m = D.shape[0] // 4
        return cls(unflatten(D, m, DualNet), PhiMap.from_matrix(Phi), blocks)

    def transform(self, g) -> "ZPoint":
        """Act by g in GL(H_m): D -> g D g^T, Phi -> g^-T Phi g (tensored with 1_V)."""
        g = as_matrix(g)
        G = np.kron(g, eye(4))
        Gi = np.kron(inverse(g), eye(4))
        return ZPoint.from_matrices(G.dot(self.D.flatten()).dot(G.T),
                                    Gi.T.dot(self.phi.flatten()).dot(G))


def theta(z: ZPoint) -> np.ndarray:
    P = z.phi.flatten()
    return P.T.dot(z.D.flatten()).dot(P)


def zhat_membership(z: ZPoint):
    """(Lambda-part of Theta vanishes, that Lambda-part)."""
    L = split_skew(theta(z), z.m)[1]
    return L.is_zero(), L


def in_zm(z: ZPoint) -> bool:
    return zhat_membership(z)[0] and rank(z.D.flatten()) == 4 * z.m


# ---------------------------------------------------------------- Delta fixtures

def _d2(params: FixtureParams, c=0, f=None, g=None):
    vals = params.symbols()
    vals.update(f=scalar(params.f if f is None else f), g=scalar(params.g if g is None else g))
    Dp = _form("D_prime", vals) + _form("D_prime_c", vals) * scalar(c)
    return [Dp, _form("D_dprime", vals)]


def _phi2(params: FixtureParams, eps=1, f=None, g=None):
    vals = params.symbols()
    vals.update(f=scalar(params.f if f is None else f), g=scalar(params.g if g is None else g))
    eps = scalar(eps)
    return [[_form("phi11", vals), _form("phi12", vals) * eps],
            [_form("phi21", vals) * eps, _form("phi22", vals)]]


def _phi3(params: FixtureParams):
    vals = params.symbols()
    f11, f12 = _form("phi11", vals), _form("phi12", vals)
    f21, f22 = _form("phi21", vals), _form("phi22", vals)
    lam = params.lam
    return [[f11, f12, params.r.skew()],
            [f21, f22, f21 * lam],
            [params.s.skew(), f12 * lam, f11]]


def _grid(blocks) -> np.ndarray:
    return np.concatenate([np.concatenate(row, axis=1) for row in blocks], axis=0)


def _assemble(D_blocks: list, phi_grids: list, sizes: tuple) -> ZPoint:
    D = block_diag(*D_blocks)
    Phi = block_diag(*[_grid(gr) for gr in phi_grids])
    return ZPoint.from_matrices(D, Phi, sizes)


def fixture_delta(m_minus_1: int, params: FixtureParams | None = None) -> ZPoint:
    """D^Delta and phi^Delta over H_{m-1}.

    Even m-1 = 2p gives p copies of (D2, phi2); odd m-1 = 2p+3 gives
    (D3, phi3) followed by p copies of (D2, phi2).
    """
    params = params or FixtureParams.default()
    if m_minus_1 < 2:
        raise BadShape("m-1 must be 2p (p >= 1) or 2p+3 (p >= 0)")
    D_blocks, grids, sizes = [], [], []
    if m_minus_1 % 2:
        vals = params.symbols()
        D_blocks += _d2(params) + [_form("D_prime", vals)]
        grids.append(_phi3(params))
        sizes.append(3)
        copies = (m_minus_1 - 3) // 2
    else:
        copies = m_minus_1 // 2
    for _ in range(copies):
        D_blocks += _d2(params)
        grids.append(_phi2(params))
        sizes.append(2)
    return _assemble(D_blocks, grids, tuple(sizes))


def fixture_delta_modified(c, eps, fs: Sequence, gs: Sequence,
                           params: FixtureParams | None = None) -> ZPoint:
    """The family D^Delta(c, f, g), phi^Delta(eps, f, g) over H_{2p}, p = len(fs)."""
    params = params or FixtureParams.default()
    if len(fs) != len(gs) or not fs:
        raise BadShape("need equal nonempty f and g vectors")
    D_blocks, grids = [], []
    for f, g in zip(fs, gs):
        D_blocks += _d2(params, c, f, g)
        grids.append(_phi2(params, eps, f, g))
    return _assemble(D_blocks, grids, (2,) * len(fs))


def fixture_case(case: str, p: int) -> int:
    """m-1 for the odd (2p) or even (2p+3) case."""
    if case == "odd":
        if p < 1:
            raise BadShape("odd case needs p >= 1")
        return 2 * p
    if case == "even":
        if p < 0:
            raise BadShape("even case needs p >= 0")
        return 2 * p + 3
    raise BadShape(f"unknown case {case!r}")


# ---------------------------------------------------------------- fibre systems

def _hat(coords_by_h: list) -> np.ndarray:
    """Stack skew 4x4 views into a 4k x 4 matrix."""
    return np.concatenate([skew4(c) for c in coords_by_h], axis=0)


def _variable_columns(blocks: tuple) -> list:
    """(role, h, pair) for each column: per block, chi variables then psi variables."""
    cols, start = [], 0
    for size in blocks:
        for role in ("chi", "psi"):
            for h in range(start, start + size):
                for pair in VAR_PAIRS:
                    cols.append((role, h, pair))
        start += size
    return cols


def fibre_system(theta0: TwoFormDual, alpha0: TwoForm, z: ZPoint) -> np.ndarray:
    """Matrix of the linear conditions on (chi, psi) making
    Phi^T D chi + psi^T alpha0 theta0 skew in every H-block.

    Rows: 10 per H-index in the order of SYM_PAIRS (diagonal entries E_aa,
    off-diagonal E_ab + E_ba).  Columns: see _variable_columns.
    """
    k = z.m
    P = z.phi.flatten()
    left = P.T.dot(z.D.flatten())                  # 4k x 4k
    prod = alpha0.skew().dot(theta0.skew())        # 4 x 4
    cols = _variable_columns(z.blocks)
    out = zeros(10 * k, 12 * k)
    for c, (role, h, (a, b)) in enumerate(cols):
        unit = zeros(4, 4)
        unit[a, b], unit[b, a] = 1, -1
        E = zeros(4 * k, 4)
        if role == "chi":
            E = left[:, 4 * h:4 * h + 4].dot(unit)
        else:
            E[4 * h:4 * h + 4, :] = unit.T.dot(prod)
        for i in range(k):
            blk = E[4 * i:4 * i + 4, :]
            for r, (x, y) in enumerate(SYM_PAIRS):
                v = blk[x, x] if x == y else blk[x, y] + blk[y, x]
                out[10 * i + r, c] = v
    return out


def fixture_system(case: str, p: int, params: FixtureParams | None = None) -> np.ndarray:
    params = params or FixtureParams.default()
    z = fixture_delta(fixture_case(case, p), params)
    return fibre_system(params.q, params.p, z)


def fixture_block_system(case: str, params: FixtureParams | None = None) -> np.ndarray:
    """The single-block system: 20 x 24 (odd) or 30 x 36 (even)."""
    return fixture_system(case, 1 if case == "odd" else 0, params)


def printed_view(M, k: int) -> np.ndarray:
    """Rows of a fibre system rearranged and negated as in the printed matrices."""
    M = as_matrix(M)
    perm = [10 * i + SYM_PAIRS.index(pair) for i in range(k) for pair in PRINTED_ROWS]
    return -M[perm, :]


# ---------------------------------------------------------------- printed data

def printed_blocks() -> dict:
    raw = _load("printed_mtilde.json")["blocks"]
    return {name: as_matrix(rows) for name, rows in raw.items()}


def _from_layout(layout) -> np.ndarray:
    B = printed_blocks()
    Z = zeros(10, 6)
    return _grid([[Z if name == "0" else B[name] for name in row] for row in layout])


def printed_mtilde() -> np.ndarray:
    """The 30 x 36 printed matrix."""
    return _from_layout(_load("printed_mtilde.json")["layout"]["Mtilde"])


def printed_m() -> np.ndarray:
    """The 20 x 24 upper-left part of the printed layout."""
    return _from_layout(_load("printed_mtilde.json")["layout"]["M"])


def join(*blocks) -> np.ndarray:
    return block_diag(*blocks)


def compare_printed(assembled, printed, k: int, chi_cols: int) -> dict:
    """Columnwise agreement of an assembled system with a printed one."""
    view = printed_view(assembled, k)
    printed = as_matrix(printed)
    return {"chi_match": bool(np.array_equal(view[:, :chi_cols], printed[:, :chi_cols])),
            "psi_match": bool(np.array_equal(view[:, chi_cols:], printed[:, chi_cols:])),
            "differing_entries": int(np.sum(view != printed))}


# ---------------------------------------------------------------- V(z, j)

@dataclass(frozen=True, eq=False)
class FiberSubspace:
    """Basis of V(z, j) inside H_m^dual (x) Lambda^2 V^dual (coordinates 6i + k)."""

    basis: np.ndarray
    beta: np.ndarray
    dinv_in_s: bool
    dinv_contained: bool | None
    phi_contained: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def in_dichotomy(self, m: int) -> bool:
        return self.dim in (2 * m, 2 * m + 1)


def _embedding(j, m: int) -> np.ndarray:
    J = np.asarray(j, dtype=object)
    if J.ndim == 1:
        idx = [int(x) for x in J]
        if len(set(idx)) != len(idx) or any(not 0 <= x < m for x in idx):
            raise BadShape("j must list distinct indices of H_m")
        out = zeros(m, len(idx))
        for c, i in enumerate(idx):
            out[i, c] = 1
        return out
    J = as_matrix(J)
    if J.shape[0] != m or rank(J) != J.shape[1]:
        raise BadShape("j must be an injective m x k matrix")
    return J


def _beta_matrix(left: np.ndarray, m: int) -> np.ndarray:
    """eta -> symmetric V-part of left . eta_hat, with left of shape 4k x 4m."""
    k = left.shape[0] // 4
    out = zeros(10 * k, 6 * m)
    for i in range(m):
        for t, (a, b) in enumerate(PAIRS):
            E = zeros(4 * k, 4)
            E[:, b] += left[:, 4 * i + a]
            E[:, a] -= left[:, 4 * i + b]
            for r in range(k):
                blk = E[4 * r:4 * r + 4, :]
                for s, (x, y) in enumerate(SYM_PAIRS):
                    out[10 * r + s, 6 * i + t] = blk[x, x] if x == y else blk[x, y] + blk[y, x]
    return out


def _eta_of_columns(M, m: int, h: int) -> list:
    """Coordinates of eta with eta_hat equal to columns 4h..4h+3 of M."""
    out = []
    for i in range(m):
        out.extend(coords_of_skew(M[4 * i:4 * i + 4, 4 * h:4 * h + 4]))
    return out


def fiber_subspace(D: DualNet, phi: PhiMap, j) -> FiberSubspace:
    """ker beta, beta(eta) = symmetric part of (phi j)^T D eta_hat."""
    m = D.m
    Df = D.flatten()
    try:
        Dinv = inverse(Df)
    except SingularMatrix as exc:
        raise SingularD("D is not invertible") from exc
    J = _embedding(j, m)
    PJ = phi.flatten().dot(np.kron(J, eye(4)))
    beta = _beta_matrix(PJ.T.dot(Df), m)
    basis = kernel(beta)

    dinv_in_s = split_skew(Dinv, m)[1].is_zero()
    dinv_contained = None
    if dinv_in_s:
        etas = matrix([_eta_of_columns(Dinv, m, h) for h in range(m)]).T
        dinv_contained = is_zero(beta.dot(etas))
    P = phi.flatten()
    image = [_eta_of_columns(P.dot(np.kron(J, eye(4))), m, c) for c in range(J.shape[1])]
    phi_contained = is_zero(beta.dot(matrix(image).T)) if image else True
    return FiberSubspace(basis, beta, dinv_in_s, dinv_contained, phi_contained)
