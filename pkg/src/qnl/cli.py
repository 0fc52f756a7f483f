"""Command line entry point; every command prints one JSON report.

Exit status: 0 when every check passes, 1 when one fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DegenerateRestriction, ParseError, QNLError
from .exact_linalg import PrimeField, fmt, rank

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Unusable command line input (exit status 2)."""


# ---------------------------------------------------------------- reports

def _plain(x):
    """JSON-friendly copy of nested results."""
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


class Report:
    def __init__(self, command: str, seed: int):
        self.command = command
        self.seed = seed
        self.checks: list = []
        self.inputs: list = []
        self.extra: dict = {}
        self._start = time.perf_counter()

    def add_input(self, label: str, payload) -> None:
        self.inputs.append([label, payload])

    def check(self, name: str, passed: bool, observed, expected, witness=None) -> None:
        entry = {"name": name, "pass": bool(passed), "observed": _plain(observed),
                 "expected": _plain(expected)}
        if witness is not None:
            entry["witness"] = _plain(witness)
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        blob = json.dumps(_plain(self.inputs), sort_keys=True, separators=(",", ":"))
        out = {"command": self.command,
               "inputs_digest": hashlib.sha256(blob.encode()).hexdigest(),
               "checks": self.checks,
               "seed": self.seed,
               "elapsed_ms": int((time.perf_counter() - self._start) * 1000)}
        out.update(_plain(self.extra))
        return out


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _field(text: str):
    if text == "rational":
        return None
    if text.startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except ValueError as exc:
            raise InputError(f"bad field {text!r}: {exc}") from exc
    raise InputError(f"field must be 'rational' or 'fp:PRIME', got {text!r}")


# ---------------------------------------------------------------- verify-barth

def cmd_verify_barth(args, rep: Report) -> None:
    from .nets import barth_rank, barth_sections, barth_surjectivity
    from .tensor_spaces import net_from_json

    obj = _read_json(args.path)
    rep.add_input("net", obj)
    rep.add_input("samples", args.samples)
    A = net_from_json(obj)
    r, ok = barth_rank(A)
    rep.check("barth_i_rank", ok, r, 2 * A.n + 2)
    if not ok:
        rep.check("barth_ii_surjectivity", False, "skipped", "pass", "rank precondition")
        rep.check("barth_iii_sections", False, "skipped", [0, 0], "rank precondition")
        return
    v = barth_surjectivity(A, samples=args.samples, seed=rep.seed, field=_field(args.field))
    rep.check("barth_ii_surjectivity", v.passed, v.status, "pass", v.witness)
    rep.extra["sampling"] = {"samples": v.samples, "prime": v.prime,
                             "failures": v.failures, "failure_bound": v.failure_bound}
    s, vert = barth_sections(A)
    rep.check("barth_iii_sections", s == 0 and vert == 0, [s, vert], [0, 0])


# ---------------------------------------------------------------- fixtures

def cmd_fixture_ranks(args, rep: Report) -> None:
    from .exact_linalg import rank as exact_rank
    from .zm_scheme import fixture_block_system, fixture_case, join, printed_m, printed_mtilde

    p = args.p
    rep.add_input("case", args.case)
    rep.add_input("p", p)
    m_minus_1 = fixture_case(args.case, p)
    M = fixture_block_system("odd")
    if args.case == "odd":
        assembled = join(*[M] * p)
        printed = join(*[printed_m()] * p)
        expected = 20 * p
    else:
        assembled = join(fixture_block_system("even"), *[M] * p)
        printed = join(printed_mtilde(), *[printed_m()] * p)
        expected = 30 + 20 * p
    ra, rp = exact_rank(assembled), exact_rank(printed)
    rep.extra["m_minus_1"] = m_minus_1
    rep.check("rank_assembled", ra == expected, ra, expected,
              {"shape": list(assembled.shape)})
    rep.check("rank_printed", rp == expected, rp, expected, {"shape": list(printed.shape)})


# ---------------------------------------------------------------- t'Hooft

def cmd_thooft_build(args, rep: Report) -> None:
    from .nets import barth_rank
    from .thooft import build_thooft, lines_disjoint, random_thooft

    rep.add_input("n", args.n)
    rep.add_input("terms", args.terms)
    d = random_thooft(args.n, args.terms, rep.seed)
    A = build_thooft(d)
    lines = d.lines()
    disjoint = all(lines_disjoint(lines[i], lines[j])
                   for i in range(len(lines)) for j in range(i + 1, len(lines)))
    rep.check("lines_pairwise_disjoint", disjoint, disjoint, True)
    r, ok = barth_rank(A)
    rep.check("barth_i_rank", ok, r, 2 * args.n + 2)
    rep.extra["datum"] = d.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(A.to_json(), indent=1) + "\n")
        rep.extra["net_path"] = args.out
    else:
        rep.extra["net"] = A.to_json()


def cmd_thooft_check(args, rep: Report) -> None:
    from .nets import barth_rank
    from .thooft import THooftDatum, build_thooft, is_decomposable, lines_disjoint

    obj = _read_json(args.path)
    rep.add_input("datum", obj)
    d = THooftDatum.from_json(obj)
    bad = [t for t, (_, w) in enumerate(d.terms) if w.is_zero() or not is_decomposable(w)]
    rep.check("decomposable_terms", not bad, len(d.terms) - len(bad), len(d.terms),
              {"bad_terms": bad} if bad else None)
    if bad:
        return
    lines = d.lines()
    meet = [[i, j] for i in range(len(lines)) for j in range(i + 1, len(lines))
            if not lines_disjoint(lines[i], lines[j])]
    rep.check("lines_pairwise_disjoint", not meet, not meet, True, meet or None)
    r, ok = barth_rank(build_thooft(d))
    rep.check("barth_i_rank", ok, r, 2 * d.n + 2)


# ---------------------------------------------------------------- Z_m

def _zpoint(args, rep: Report):
    from .tensor_spaces import dual_net_from_json, mixed_map_from_json, PhiMap
    from .zm_scheme import ZPoint, fixture_case, fixture_delta

    if args.path:
        obj = _read_json(args.path)
        rep.add_input("point", obj)
        if not isinstance(obj, dict) or "D" not in obj or "phi" not in obj:
            raise ParseError("point JSON needs 'D' and 'phi'")
        D = dual_net_from_json(obj["D"])
        phi = mixed_map_from_json(obj["phi"])
        if not isinstance(phi, PhiMap):
            phi = PhiMap.from_matrix(phi.flatten())
        return ZPoint(D, phi)
    if args.fixture:
        rep.add_input("fixture", [args.fixture, args.p])
        return fixture_delta(fixture_case(args.fixture, args.p))
    raise InputError("give a point file or --fixture odd|even")


def cmd_zm_membership(args, rep: Report) -> None:
    from .zm_scheme import zhat_membership

    z = _zpoint(args, rep)
    ok, L = zhat_membership(z)
    rep.check("lambda_part_zero", ok, "zero" if ok else L.to_json(), "zero")
    r = rank(z.D.flatten())
    rep.check("D_invertible", r == 4 * z.m, r, 4 * z.m)


def cmd_zm_fiber(args, rep: Report) -> None:
    from .zm_scheme import fiber_subspace

    z = _zpoint(args, rep)
    try:
        j = [int(x) for x in args.j.split(",")] if args.j else list(range(z.m))
    except ValueError as exc:
        raise InputError(f"bad --j {args.j!r}") from exc
    rep.add_input("j", j)
    fs = fiber_subspace(z.D, z.phi, j)
    rep.check("dimension_dichotomy", fs.in_dichotomy(z.m), fs.dim, [2 * z.m, 2 * z.m + 1])
    rep.check("phi_image_contained", fs.phi_contained, fs.phi_contained, True)
    if fs.dinv_in_s:
        rep.check("dinv_contained", fs.dinv_contained, fs.dinv_contained, True)
    rep.extra["dinv_in_s"] = fs.dinv_in_s


# ---------------------------------------------------------------- Pfaffian locus

def _blocks(args, rep: Report):
    from .pfaffian_locus import QuadBlockSkew

    obj = _read_json(args.path)
    rep.add_input("blocks", obj)
    return QuadBlockSkew.from_json(obj)


def cmd_pfaffian_member(args, rep: Report) -> None:
    from .pfaffian_locus import pfaffian_quartic

    B = _blocks(args, rep)
    q = pfaffian_quartic(B)
    nonzero = {"".join(map(str, e)): c for e, c in sorted(q.coefficients.items())}
    rep.check("pfaffian_vanishes", q.is_zero(), nonzero or "zero", "zero")


def cmd_pfaffian_degeneracy(args, rep: Report) -> None:
    from .pfaffian_locus import degeneracy_check, random_member_solve, random_structured

    if args.path:
        B = _blocks(args, rep)
        r = degeneracy_check(B)
        rep.check("member_implies_degenerate", r.consistent, r.to_json(), "member => degenerate")
        return
    if args.m < 0 or args.count < 1:
        raise InputError("need --m >= 0 and --count >= 1")
    if args.family == "solved" and args.m > 2:
        raise InputError("the solved family is sampled only for m <= 2")
    rep.add_input("family", args.family)
    rep.add_input("m", args.m)
    rep.add_input("count", args.count)
    rng = random.Random(rep.seed)
    gen = random_structured if args.family == "structured" else random_member_solve
    members = counter = 0
    witness = None
    for _ in range(args.count):
        B = gen(args.m, rng)
        r = degeneracy_check(B)
        members += r.member
        if not r.consistent:
            counter += 1
            witness = witness or B.to_json()
    rep.check("member_implies_degenerate", counter == 0,
              f"{args.count - counter}/{args.count}", f"{args.count}/{args.count}", witness)
    rep.extra["members"] = members


# ---------------------------------------------------------------- jumping lines

_BIVECTORS = {"e12": 0, "e13": 1, "e14": 2, "e23": 3, "e24": 4, "e34": 5}


def _line(text: str):
    from .nets import LineP3
    from .tensor_spaces import TwoForm

    if text in _BIVECTORS:
        c = [0] * 6
        c[_BIVECTORS[text]] = 1
        return LineP3.from_pluecker(TwoForm(c))
    parts = text.split(",")
    try:
        if len(parts) == 6:
            return LineP3.from_pluecker(TwoForm([Fraction(x) for x in parts]))
        if len(parts) == 8:
            v = [Fraction(x) for x in parts]
            return LineP3.from_points(v[:4], v[4:])
    except (ValueError, ZeroDivisionError, QNLError) as exc:
        raise InputError(f"bad line {text!r}: {exc}") from exc
    raise InputError("line is eIJ, six Pluecker coordinates or two points (8 numbers)")


def cmd_jump(args, rep: Report) -> None:
    from .nets import expected_h0, jump_order, restriction_h0
    from .tensor_spaces import net_from_json

    obj = _read_json(args.net)
    rep.add_input("net", obj)
    rep.add_input("line", args.line)
    A = net_from_json(obj)
    line = _line(args.line)
    d = jump_order(A, line)
    rep.check("jump_order", True, d, "computed")
    try:
        h0 = [restriction_h0(A, line, k, seed=rep.seed) for k in range(A.n + 1)]
    except DegenerateRestriction as exc:
        rep.check("oracle_agreement", False, "undefined", "agreement", str(exc))
        return
    want = [expected_h0(d, k) for k in range(A.n + 1)]
    rep.check("oracle_agreement", h0 == want, h0, want)


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine output (always on)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--field", default="rational", help="rational or fp:PRIME")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qnl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-barth", help="Barth conditions of a net file")
    p.add_argument("path")
    _common(p)
    p.set_defaults(func=cmd_verify_barth, name="verify-barth")

    p = sub.add_parser("fixtures", help="ranks of the fixture systems")
    fsub = p.add_subparsers(dest="action", required=True)
    q = fsub.add_parser("ranks")
    q.add_argument("--case", choices=("odd", "even"), default="odd")
    q.add_argument("--p", type=int, default=None)
    _common(q)
    q.set_defaults(func=cmd_fixture_ranks, name="fixtures ranks")

    p = sub.add_parser("thooft", help="t'Hooft data")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("build")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--terms", type=int, required=True)
    q.add_argument("--out")
    _common(q)
    q.set_defaults(func=cmd_thooft_build, name="thooft build")
    q = tsub.add_parser("check")
    q.add_argument("path")
    _common(q)
    q.set_defaults(func=cmd_thooft_check, name="thooft check")

    p = sub.add_parser("zm", help="points (D, phi)")
    zsub = p.add_subparsers(dest="action", required=True)
    for action, func in (("membership", cmd_zm_membership), ("fiber", cmd_zm_fiber)):
        q = zsub.add_parser(action)
        q.add_argument("path", nargs="?")
        q.add_argument("--fixture", choices=("odd", "even"))
        q.add_argument("--p", type=int, default=1)
        if action == "fiber":
            q.add_argument("--j", help="comma separated indices of H_m")
        _common(q)
        q.set_defaults(func=func, name=f"zm {action}")

    p = sub.add_parser("pfaffian", help="the Pfaffian locus")
    psub = p.add_subparsers(dest="action", required=True)
    q = psub.add_parser("member")
    q.add_argument("path")
    _common(q)
    q.set_defaults(func=cmd_pfaffian_member, name="pfaffian member")
    q = psub.add_parser("degeneracy")
    q.add_argument("path", nargs="?")
    q.add_argument("--family", choices=("structured", "solved"), default="structured")
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--m", type=int, default=1)
    _common(q)
    q.set_defaults(func=cmd_pfaffian_degeneracy, name="pfaffian degeneracy")

    p = sub.add_parser("jump", help="jump order of a line")
    p.add_argument("--net", required=True)
    p.add_argument("--line", required=True)
    _common(p)
    p.set_defaults(func=cmd_jump, name="jump")
    return parser


def _default_seed() -> int:
    raw = os.environ.get("QNL_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"QNL_SEED must be an integer, got {raw!r}") from exc


def run(argv=None) -> tuple[int, dict]:
    """Parse, dispatch and return (exit status, report or error object)."""
    args = build_parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        if getattr(args, "p", 0) is None:
            args.p = 1 if args.case == "odd" else 0
        rep = Report(args.name, seed)
        args.func(args, rep)
    except (ParseError, InputError) as exc:
        return EXIT_INPUT, {"command": args.name, "error": type(exc).__name__, "message": str(exc)}
    except QNLError as exc:
        rep.check(type(exc).__name__, False, "error", "no error", str(exc))
    return (EXIT_OK if rep.passed else EXIT_FAIL), rep.to_json()


def main(argv=None) -> int:
    code, out = run(argv)
    sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
