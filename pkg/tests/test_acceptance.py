"""Acceptance criteria, one test and one summary line each.

Run on its own with ``pytest tests/test_acceptance.py -q`` (add ``-s`` to see
the lines as they are produced; they are also repeated in the terminal
summary).  A criterion that is not met fails here with the observed values.
"""

import random
import time

import pytest

from conftest import record
from generators import minimal_rank_net, schur_ok
from qnl.exact_linalg import det, pfaffian, rank, zeros
from qnl.nets import (LineP3, barth_rank, barth_sections, block_decompose, expected_h0,
                      jump_order, pair_to_net, restriction_h0, transversal,
                      vertical_kernel_dim, xi0)
from qnl.pfaffian_locus import degeneracy_check, random_structured
from qnl.tensor_spaces import dims
from qnl.thooft import build_thooft, fixtures, lines_disjoint, random_thooft
from qnl.zm_scheme import (FixtureParams, fixture_block_system, fixture_case, fixture_delta,
                           fixture_system, join, printed_m, printed_mtilde, zhat_membership)

import oracles


def test_criterion_01_rank_of_m():
    t = time.perf_counter()
    M = fixture_block_system("odd", FixtureParams.default())
    r = rank(M)
    ms = (time.perf_counter() - t) * 1e3
    ok = M.shape == (20, 24) and r == 20 and ms < 1000
    record(1, "rank of assembled M", ok, f"shape {M.shape}, rank {r} (want 20), {ms:.0f} ms")
    assert ok


def test_criterion_02_rank_of_printed_mtilde():
    t = time.perf_counter()
    M = printed_mtilde()
    r = rank(M)
    ms = (time.perf_counter() - t) * 1e3
    ok = M.shape == (30, 36) and r == 30 and ms < 1000
    record(2, "rank of printed M~", ok, f"shape {M.shape}, rank {r} (want 30), {ms:.0f} ms")
    assert ok


def test_criterion_03_direct_sum_law():
    params = FixtureParams.default()
    got, want = [], []
    for p in range(1, 5):
        got.append(rank(fixture_system("odd", p, params)))
        want.append(20 * p)
    for p in range(0, 4):
        got.append(rank(fixture_system("even", p, params)))
        want.append(30 + 20 * p)
    printed = [rank(join(*[printed_m()] * p)) for p in range(1, 5)]
    printed += [rank(join(printed_mtilde(), *[printed_m()] * p)) for p in range(0, 4)]
    ok = got == want
    record(3, "direct-sum rank law", ok,
           f"assembled {got}, want {want}; printed joins {printed}")
    assert ok


def test_criterion_04_fixture_corners_invertible():
    fx = fixtures()
    sizes = []
    for name, m in (("A1", 1), ("A2", 2)):
        A1, _, _ = block_decompose(fx[name], xi0(m))
        F = A1.flatten()
        sizes.append((F.shape[0], rank(F)))
    ok = sizes == [(8, 8), (12, 12)]
    record(4, "A1(xi0) invertible for A(1), A(2)", ok, f"(size, rank) {sizes}")
    assert ok


def test_criterion_05_barth_on_fixtures():
    fx = fixtures()
    obs = {}
    for name, (n, r_want) in oracles.FIXTURE_RANKS.items():
        r, _ = barth_rank(fx[name])
        s, vert = barth_sections(fx[name])
        obs[name] = (r, r_want, s, vert)
    ok = all(r == rw and s == 0 and v == 0 for r, rw, s, v in obs.values())
    detail = "; ".join(f"{k}: rank {r} (want {rw}), section kernel {s}, vertical kernel {v}"
                       for k, (r, rw, s, v) in obs.items())
    record(5, "Barth conditions on A(1), A(2)", ok, detail)
    assert ok


def test_criterion_06_z_membership_of_fixtures():
    params = FixtureParams.default()
    assert params.relation_holds()
    results = {}
    for case, ps in (("odd", range(1, 5)), ("even", range(0, 4))):
        for p in ps:
            m1 = fixture_case(case, p)
            results[(case, m1)] = zhat_membership(fixture_delta(m1, params))[0]
    ok = all(results.values())
    failing = [f"{c} m-1={m}" for (c, m), v in results.items() if not v]
    record(6, "Z-membership of Delta-fixtures", ok,
           f"{sum(results.values())}/{len(results)} members"
           + (f"; not members: {', '.join(failing)}" if failing else ""))
    assert ok


def test_criterion_07_solution_space_dimension():
    params = FixtureParams.default()
    obs = []
    for case in ("odd", "even"):
        M = fixture_block_system(case, params)
        m1 = fixture_case(case, 1 if case == "odd" else 0)
        obs.append((case, m1, M.shape[1] - rank(M), 2 * m1))
    ok = all(k == w for _, _, k, w in obs)
    record(7, "kernel dimension of fixture systems", ok,
           "; ".join(f"{c} m-1={m}: {k} (want {w})" for c, m, k, w in obs))
    assert ok


def test_criterion_08_schur_property_suite():
    failures, total = 0, 0
    for m in (1, 2, 3):
        for s in range(200):
            A, B, C, _ = minimal_rank_net(m, 1000 * m + s)
            N = pair_to_net(B, C)
            total += 1
            if rank(N.flatten()) != 4 * (m + 1) or not schur_ok(N, m):
                failures += 1
    ok = failures == 0 and total == 600
    record(8, "Schur property suite", ok, f"{total - failures}/{total} pairs, m in 1..3")
    assert ok


def test_criterion_09_pfaffian_corollary():
    counter = {}
    for m in (1, 2, 3, 4):
        rng = random.Random(900 + m)
        bad = 0
        for _ in range(1000):
            r = degeneracy_check(random_structured(m, rng))
            bad += not (r.member and r.consistent)
        counter[m] = bad
    rng = random.Random(99)
    pf_bad = 0
    for _ in range(200):
        M = zeros(6, 6)
        for i in range(6):
            for j in range(i + 1, 6):
                v = rng.randint(-9, 9)
                M[i, j], M[j, i] = v, -v
        pf_bad += pfaffian(M) ** 2 != det(M)
    ok = not any(counter.values()) and pf_bad == 0
    record(9, "Pfaffian corollary (structured family)", ok,
           f"counterexamples per m {counter}; pfaffian^2 != det in {pf_bad}/200")
    assert ok


def _jump_cases(seed):
    n = (3, 5)[seed % 2]
    d = random_thooft(n, n + 1, seed=seed, bound=20)
    A, L = build_thooft(d), d.lines()
    rng = random.Random(seed)
    a, b = rng.randint(1, 5), rng.randint(1, 5)
    u, v = L[0].points
    p = [u[i] + a * v[i] for i in range(4)]
    u, v = L[1].points
    q = [u[i] - b * v[i] for i in range(4)]
    rand = LineP3.from_points([rng.randint(-9, 9) for _ in range(4)],
                              [rng.randint(-9, 9) for _ in range(4)])
    return A, [rand, L[2], LineP3.from_points(p, q), transversal(p, L[1], L[2])]


def test_criterion_10_jump_order_oracle():
    t = time.perf_counter()
    pairs = mismatches = 0
    orders = set()
    seed = 0
    while pairs < 60:
        A, lines = _jump_cases(seed)
        seed += 1
        for line in lines:
            d = jump_order(A, line)
            try:
                h0 = [restriction_h0(A, line, k) for k in range(A.n + 1)]
            except Exception:
                continue
            pairs += 1
            orders.add(d)
            mismatches += h0 != [expected_h0(d, k) for k in range(A.n + 1)]
    s = time.perf_counter() - t
    ok = mismatches == 0 and pairs >= 50 and s < 60
    record(10, "jump order vs restriction oracle", ok,
           f"{pairs - mismatches}/{pairs} agree, orders seen {sorted(orders)}, {s:.1f} s")
    assert ok


def test_criterion_11_thooft_generation():
    fails = {"disjoint": 0, "rank": 0, "jump": 0}
    jumps = []
    for seed in range(100):
        d = random_thooft(5, 6, seed=seed)
        A, L = build_thooft(d), d.lines()
        if not all(lines_disjoint(L[i], L[j]) for i in range(6) for j in range(i + 1, 6)):
            fails["disjoint"] += 1
        r, ok_rank = barth_rank(A)
        if not ok_rank:
            fails["rank"] += 1
            continue
        js = [jump_order(A, l) for l in L]
        jumps.extend(js)
        if min(js) < 1:
            fails["jump"] += 1
    ok = not any(fails.values())
    record(11, "t'Hooft generation, n = 5, 6 terms", ok,
           f"failures {fails}; construction-line jump orders seen {sorted(set(jumps))}")
    assert ok


def test_criterion_12_dimension_arithmetic():
    bad = []
    for n in range(1, 51):
        d = dims(n)
        for key, f in oracles.DIMS.items():
            if d[key] != f(n):
                bad.append((n, key))
    ok = not bad
    record(12, "dimension arithmetic, n <= 50", ok, f"{250 - len(bad)}/250 values agree")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
