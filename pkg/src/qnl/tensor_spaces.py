"""Two-forms, nets and the block maps built from them.

Conventions used everywhere in the package:

* V has basis e1..e4 (indices 0..3); Lambda^2 coordinates are ordered
  (12, 13, 14, 23, 24, 34).
* The 4x4 view of a two-form carries +coord at (a, b) for a < b.
* In a flattened matrix the basis vector h_i (x) e_a sits at index 4*i + a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSkew, ParseError, ZeroTensor
from .exact_linalg import (ZERO, as_matrix, fmt, freeze, is_skew, is_zero, rank,
                           scalar, zeros)

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
KEYS = ("e12", "e13", "e14", "e23", "e24", "e34")
KEY_INDEX = {k: i for i, k in enumerate(KEYS)}


def skew4(coords: Sequence) -> np.ndarray:
    M = zeros(4, 4)
    for (a, b), v in zip(PAIRS, coords):
        v = scalar(v)
        M[a, b] = v
        M[b, a] = -v
    return M


def coords_of_skew(M) -> tuple:
    M = as_matrix(M)
    if M.shape != (4, 4) or not is_skew(M):
        raise NotSkew("expected a skew 4x4 matrix")
    return tuple(M[a, b] for a, b in PAIRS)


def _six(coords) -> tuple:
    if isinstance(coords, dict):
        unknown = set(coords) - set(KEYS)
        if unknown:
            raise ParseError(f"unknown two-form keys {sorted(unknown)}")
        coords = [coords.get(k, 0) for k in KEYS]
    coords = tuple(scalar(c) for c in coords)
    if len(coords) != 6:
        raise ValueError("a two-form has six coordinates")
    return coords


@dataclass(frozen=True)
class _TwoFormBase:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _six(self.coords))

    def skew(self) -> np.ndarray:
        return skew4(self.coords)

    @classmethod
    def from_skew(cls, M):
        return cls(coords_of_skew(M))

    @classmethod
    def basis(cls, key: str):
        c = [0] * 6
        c[KEY_INDEX[key]] = 1
        return cls(c)

    @classmethod
    def zero(cls):
        return cls((0,) * 6)

    def __getitem__(self, key: str) -> Fraction:
        return self.coords[KEY_INDEX[key]]

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = scalar(c)
        return type(self)(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def to_json(self) -> dict:
        return {k: fmt(v) for k, v in zip(KEYS, self.coords)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise ParseError("two-form must be an object keyed e12..e34")
        return cls(obj)


class TwoForm(_TwoFormBase):
    """Element of Lambda^2 V."""


class TwoFormDual(_TwoFormBase):
    """Element of Lambda^2 V^dual."""


def _wedge(a: Sequence, b: Sequence) -> Fraction:
    a12, a13, a14, a23, a24, a34 = a
    b12, b13, b14, b23, b24, b34 = b
    return a12 * b34 - a13 * b24 + a14 * b23 + a23 * b14 - a24 * b13 + a34 * b12


def wedge_pair(a: TwoForm, b: TwoForm) -> Fraction:
    """Coefficient of e1^e2^e3^e4 in a^b."""
    return _wedge(a.coords, b.coords)


def wedge_pair_dual(a: TwoFormDual, b: TwoFormDual) -> Fraction:
    return _wedge(a.coords, b.coords)


def pairing(w: TwoFormDual, a: TwoForm) -> Fraction:
    """<e_i^e_j, e^i^e^j> = 1 on basis pairs."""
    return sum((x * y for x, y in zip(w.coords, a.coords)), ZERO)


# ---------------------------------------------------------------- nets

def _sym_component(C, n: int) -> np.ndarray:
    C = as_matrix(C)
    if C.shape != (n, n):
        raise ValueError(f"component must be {n}x{n}")
    if not is_zero(C - C.T):
        raise ValueError("net components must be symmetric")
    return freeze(C.copy())


@dataclass(frozen=True, eq=False)
class _NetLike:
    n: int
    components: tuple

    form_cls = TwoFormDual
    kind = "net"

    def __post_init__(self):
        comps = self.components
        if isinstance(comps, dict):
            comps = [comps.get(k, zeros(self.n, self.n)) for k in KEYS]
        comps = tuple(_sym_component(c, self.n) for c in comps)
        if len(comps) != 6:
            raise ValueError("a net has six components")
        object.__setattr__(self, "components", comps)

    def __eq__(self, other):
        return (type(other) is type(self) and other.n == self.n
                and all(np.array_equal(a, b) for a, b in zip(self.components, other.components)))

    def __hash__(self):
        return hash((self.n, tuple(tuple(c.flat) for c in self.components)))

    @classmethod
    def zero(cls, n: int):
        return cls(n, tuple(zeros(n, n) for _ in KEYS))

    def coefficient(self, i: int, j: int):
        """Two-form coefficient of h_i h_j."""
        return self.form_cls(tuple(c[i, j] for c in self.components))

    def __add__(self, other):
        if type(other) is not type(self) or other.n != self.n:
            return NotImplemented
        return type(self)(self.n, tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, c):
        c = scalar(c)
        return type(self)(self.n, tuple(a * c for a in self.components))

    def flatten(self) -> np.ndarray:
        n = self.n
        M = zeros(4 * n, 4 * n)
        for k, (a, b) in enumerate(PAIRS):
            C = self.components[k]
            for i in range(n):
                for j in range(n):
                    v = C[i, j]
                    if v:
                        M[4 * i + a, 4 * j + b] += v
                        M[4 * i + b, 4 * j + a] -= v
        return M

    def transform(self, g) -> "_NetLike":
        """Base change on H: each component C becomes g^T C g."""
        g = as_matrix(g)
        return type(self)(g.shape[1], tuple(g.T.dot(C).dot(g) for C in self.components))

    def restrict(self, idx: Sequence[int]) -> "_NetLike":
        idx = list(idx)
        return type(self)(len(idx), tuple(C[np.ix_(idx, idx)] for C in self.components))

    def to_json(self) -> dict:
        out = {"n": self.n, "components": {k: [[fmt(v) for v in row] for row in C]
                                           for k, C in zip(KEYS, self.components)}}
        return out


class Net(_NetLike):
    """Element of S^2 H_n^dual (x) Lambda^2 V^dual."""

    form_cls = TwoFormDual
    kind = "net"

    def to_json(self) -> dict:
        return {"format": "qnl-net-v1", **super().to_json()}


class DualNet(_NetLike):
    """Element of S^2 H_m (x) Lambda^2 V; flattens to H^dual V^dual -> H V."""

    form_cls = TwoForm
    kind = "dual-net"

    @property
    def m(self) -> int:
        return self.n

    def to_json(self) -> dict:
        body = super().to_json()
        return {"kind": self.kind, "m": body["n"], "components": body["components"]}


def flatten(net: _NetLike) -> np.ndarray:
    """Skew 4n x 4n matrix of a net or dual net."""
    return net.flatten()


def unflatten(M, n: int, cls=Net) -> _NetLike:
    """Inverse of flatten; M must have zero Lambda-part."""
    M = as_matrix(M)
    S, L = split_skew(M, n)
    if not L.is_zero():
        raise ValueError("matrix has a nonzero Lambda-part")
    if cls is Net:
        return S
    return cls(n, S.components)


def net_from_terms(n: int, terms: Iterable, cls=Net) -> _NetLike:
    """Sum of h^2 (x) w over (h, w) pairs."""
    comps = [zeros(n, n) for _ in KEYS]
    for h, w in terms:
        h = [scalar(x) for x in h]
        if len(h) != n:
            raise ValueError(f"h must have length {n}")
        for k in range(6):
            c = w.coords[k]
            if c:
                for i in range(n):
                    if h[i]:
                        for j in range(n):
                            comps[k][i, j] += c * h[i] * h[j]
    return cls(n, tuple(comps))


@dataclass(frozen=True, eq=False)
class LambdaElement:
    """Element of Lambda^2 H^dual (x) S^2 V^dual as a 4m x 4m matrix.

    Block (i, j) is symmetric and block (j, i) is its negative.
    """

    m: int
    matrix: np.ndarray

    def __post_init__(self):
        M = as_matrix(self.matrix)
        if M.shape != (4 * self.m, 4 * self.m):
            raise ValueError("shape mismatch")
        object.__setattr__(self, "matrix", freeze(M.copy()))

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def block(self, i: int, j: int) -> np.ndarray:
        return self.matrix[4 * i:4 * i + 4, 4 * j:4 * j + 4]

    def coordinates(self) -> list:
        """The 10 * m(m-1)/2 independent entries, i < j, upper triangle of each block."""
        out = []
        for i in range(self.m):
            for j in range(i + 1, self.m):
                B = self.block(i, j)
                out.extend(B[a, b] for a in range(4) for b in range(a, 4))
        return out


def _h_transpose(M, n: int) -> np.ndarray:
    """Entry ((i,a),(j,b)) -> ((j,a),(i,b))."""
    T = M.reshape(n, 4, n, 4)
    return T.transpose(2, 1, 0, 3).reshape(4 * n, 4 * n)


def split_skew(M, n: int):
    """Canonical decomposition of a skew matrix into S- and Lambda-parts."""
    M = as_matrix(M)
    if M.shape != (4 * n, 4 * n) or not is_skew(M):
        raise NotSkew(f"expected a skew {4 * n}x{4 * n} matrix")
    Mt = _h_transpose(M, n)
    half = Fraction(1, 2)
    S = (M + Mt) * half
    L = (M - Mt) * half
    comps = []
    for a, b in PAIRS:
        C = zeros(n, n)
        for i in range(n):
            for j in range(n):
                C[i, j] = S[4 * i + a, 4 * j + b]
        comps.append(C)
    return Net(n, tuple(comps)), LambdaElement(n, L)


def lambda_part(M, n: int) -> LambdaElement:
    return split_skew(M, n)[1]


# ---------------------------------------------------------------- block maps

@dataclass(frozen=True, eq=False)
class MixedMap:
    """rows x cols array of TwoFormDual; flattens to (4 rows) x (4 cols)."""

    rows: int
    cols: int
    entries: tuple

    kind = "mixed-map"

    def __post_init__(self):
        ent = tuple(tuple(e if isinstance(e, TwoFormDual) else TwoFormDual(e) for e in row)
                    for row in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise ValueError("entry grid does not match the declared shape")
        object.__setattr__(self, "entries", ent)

    def __eq__(self, other):
        return type(other) is type(self) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    def flatten(self) -> np.ndarray:
        M = zeros(4 * self.rows, 4 * self.cols)
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                M[4 * i:4 * i + 4, 4 * j:4 * j + 4] = e.skew()
        return M

    @classmethod
    def from_matrix(cls, M):
        M = as_matrix(M)
        r, c = M.shape
        if r % 4 or c % 4:
            raise ValueError("dimensions must be multiples of 4")
        ent = [[TwoFormDual.from_skew(M[4 * i:4 * i + 4, 4 * j:4 * j + 4]) for j in range(c // 4)]
               for i in range(r // 4)]
        return cls(r // 4, c // 4, ent)

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls(rows, cols, [[TwoFormDual.zero()] * cols for _ in range(rows)])

    def to_json(self) -> dict:
        return {"kind": self.kind, "rows": self.rows, "cols": self.cols,
                "entries": [[e.to_json() for e in row] for row in self.entries]}


class PhiMap(MixedMap):
    """Square m x m array of TwoFormDual, an element of Phi_m."""

    kind = "phi-map"

    def __init__(self, m: int, entries):
        super().__init__(m, m, entries)

    @property
    def m(self) -> int:
        return self.rows

    @classmethod
    def from_matrix(cls, M):
        mm = MixedMap.from_matrix(M)
        if mm.rows != mm.cols:
            raise ValueError("Phi_m needs a square block grid")
        return cls(mm.rows, mm.entries)

    @classmethod
    def zero(cls, m: int):
        return cls(m, [[TwoFormDual.zero()] * m for _ in range(m)])

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m,
                "entries": [[e.to_json() for e in row] for row in self.entries]}


# ---------------------------------------------------------------- rank, dims

def point_rank(x) -> int:
    """Tensor rank of an n x 4 matrix representing a point of H^dual (x) V^dual."""
    x = as_matrix(x)
    if is_zero(x):
        raise ZeroTensor("zero tensor has no point rank")
    return rank(x)


def dims(n: int) -> dict:
    """Dimension counts; n plays the role of m for the Z and Lambda entries."""
    if n < 1:
        raise ValueError("n must be positive")
    return {
        "dim_S_n": 3 * n * (n + 1),
        "dim_Lambda_m": 5 * n * (n - 1),
        "barth_codim": 2 * n * n - 5 * n + 3,
        "expected_dim_MI": n * n + 8 * n - 3,
        "expected_dim_Z": 4 * n * (n + 2),
        "moduli_dim": 8 * n - 3,
    }


# ---------------------------------------------------------------- JSON

def _read_matrix(rows, n):
    try:
        M = as_matrix(rows)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    if M.shape != (n, n):
        raise ParseError(f"component must be {n}x{n}")
    return M


def _read_components(obj, n, cls):
    comps = obj.get("components")
    if not isinstance(comps, dict):
        raise ParseError("missing components")
    unknown = set(comps) - set(KEYS)
    if unknown:
        raise ParseError(f"unknown component keys {sorted(unknown)}")
    mats = [_read_matrix(comps[k], n) if k in comps else zeros(n, n) for k in KEYS]
    try:
        return cls(n, tuple(mats))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def net_from_json(obj) -> Net:
    if not isinstance(obj, dict):
        raise ParseError("net JSON must be an object")
    fmt_tag = obj.get("format", "qnl-net-v1")
    if fmt_tag != "qnl-net-v1":
        raise ParseError(f"unsupported format {fmt_tag!r}")
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise ParseError("n must be a positive integer")
    return _read_components(obj, n, Net)


def dual_net_from_json(obj) -> DualNet:
    if not isinstance(obj, dict) or obj.get("kind") != "dual-net":
        raise ParseError("expected kind 'dual-net'")
    m = obj.get("m")
    if not isinstance(m, int) or m < 1:
        raise ParseError("m must be a positive integer")
    return _read_components(obj, m, DualNet)


def mixed_map_from_json(obj) -> MixedMap:
    if not isinstance(obj, dict) or obj.get("kind") not in ("mixed-map", "phi-map"):
        raise ParseError("expected kind 'mixed-map' or 'phi-map'")
    try:
        entries = [[TwoFormDual.from_json(e) for e in row] for row in obj["entries"]]
        if obj["kind"] == "phi-map":
            return PhiMap(obj["m"], entries)
        return MixedMap(obj["rows"], obj["cols"], entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
