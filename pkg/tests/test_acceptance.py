"""Acceptance checks. Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` to see the lines.
"""

import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from boobytrap import strategies as st
from boobytrap.abstractgame import value_euclidean
from boobytrap.bipartition import check_partition, equal_bipartition_two_connected, find_equal_split
from boobytrap.centroid import general_centroid, tree_centroid
from boobytrap.netmodel import cycle, path, random_tree, random_two_connected, star, symmetric_star
from boobytrap.oracle import best_response_attacker, best_response_defender, oracle_value
from boobytrap.simulate import play
from boobytrap.tables import ratio_sweep, symmetric_star_value
from boobytrap.values import classify_and_value, tree_bounds, value_cycle_or_path, value_star

from conftest import bundled

# pinned tolerances and budgets
CLOSED_FORM_SECONDS = 1.0
ORACLE_MESH = 40
ORACLE_DELTA = 0.02
ORACLE_EXPLOITABILITY = 1e-3
ORACLE_SECONDS = 120.0
BR_MESH = 60
BR_TOL = 0.01
TREE_COUNT = 1000
TREE_MAX_NODES = 40
TREE_BRUTE_MAX_COMPONENTS = 12
TREE_RATIO_CAP = 27 / 25 + 1e-9
SWEEP_PEAK_AT = 1 / 6
SWEEP_PEAK_AT_TOL = 1e-3
SWEEP_PEAK = 1.08
SWEEP_PEAK_TOL = 1e-6
TREE_SECONDS = 30.0
EQUALIZER_PROFILES = 200
EQUALIZER_TOL = 1e-9
MC_TRIALS = 100_000
MC_SECONDS = 10.0
HALF_TOL = 1e-9
RANDOM_TWO_CONNECTED = 200
SPLIT_GRID = 1000


@pytest.fixture
def report(capsys):
    def emit(number: int, label: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {label}" + (f" [{detail}]" if detail else ""))
        assert ok, detail

    return emit


def solved_instances():
    """(name, network, traps, exact value) for every instance with a closed form."""
    out = [
        ("path", path(), 1, 0.25),
        ("cycle", cycle(), 1, 0.25),
        ("cycle k=2", cycle(), 2, 0.125),
    ]
    out += [(f"symmetric star {n}", symmetric_star(n), 1, float(symmetric_star_value(n))) for n in (3, 4, 5)]
    out += [
        ("star 0.45/0.3/0.25", star([0.45, 0.3, 0.25]), 1, 0.45 * 0.55),
        ("star 0.5/0.3/0.2", star([0.5, 0.3, 0.2]), 1, 0.25),
        ("prism", bundled("prism"), 1, 0.25),
        ("loop_tail", bundled("loop_tail"), 1, 0.25),
    ]
    return out


def test_criterion_1_closed_forms(report):
    t0 = time.perf_counter()
    bad = []
    for k in range(1, 7):
        if value_euclidean(k, exact=True) != Fraction(k**k, (k + 1) ** (k + 1)):
            bad.append(f"euclidean k={k}")
        if value_cycle_or_path(k, exact=True) != Fraction(1, 4 * k):
            bad.append(f"cycle k={k}")
    for n in range(3, 13):
        want = Fraction(n, n * n + 4) if n % 2 == 0 else Fraction(n * n - 1, n * (n * n + 3))
        if symmetric_star_value(n) != want:
            bad.append(f"star n={n} formula")
        got = value_star(symmetric_star(n))
        if got.kind != "exact" or Fraction(got.value).limit_denominator(10**6) != want:
            bad.append(f"star n={n} solver")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < CLOSED_FORM_SECONDS
    report(1, "closed-form values are exact", ok, f"{elapsed:.3f}s; mismatches: {bad or 'none'}")


def test_criterion_2_oracle_matches_exact_values(report):
    t0 = time.perf_counter()
    rows, bad = [], []
    for name, net, k, exact in solved_instances():
        sol = oracle_value(net, k, ORACLE_MESH, ORACLE_EXPLOITABILITY / 10)
        delta = abs(sol.value - exact)
        rows.append(f"{name}: {sol.value:.4f} vs {exact:.4f}")
        if delta > ORACLE_DELTA or sol.exploitability > ORACLE_EXPLOITABILITY:
            bad.append(f"{name} delta={delta:.4f} expl={sol.exploitability:.1e}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < ORACLE_SECONDS
    report(2, f"oracle within {ORACLE_DELTA} at mesh {ORACLE_MESH}", ok, f"{elapsed:.1f}s; " + ("; ".join(bad) or "; ".join(rows)))


def test_criterion_3_best_reply_sandwich(report):
    instances = solved_instances() + [("path k=2", path(), 2, 0.125), ("cycle k=3", cycle(), 3, 1 / 12)]
    instances += [(f"symmetric star {n}", symmetric_star(n), 1, float(symmetric_star_value(n))) for n in range(6, 13)]
    bad = []
    for name, net, k, exact in instances:
        r = classify_and_value(net, k)
        if r.kind != "exact" or abs(r.value - exact) > 1e-9:
            bad.append(f"{name}: not reported exact")
            continue
        _, att = best_response_attacker(net, r.witness_defender, BR_MESH)
        _, dfd = best_response_defender(net, r.witness_attacker, BR_MESH, k)
        if att > exact + BR_TOL or dfd < exact - BR_TOL:
            bad.append(f"{name}: attacker {att:.4f}, defender {dfd:.4f}, value {exact:.4f}")
    report(3, f"best replies within {BR_TOL} at mesh {BR_MESH}", not bad, "; ".join(bad) or f"{len(instances)} instances")


def test_criterion_4_tree_bounds(report):
    t0 = time.perf_counter()
    worst, compared, bad = 0.0, 0, []
    for seed in range(TREE_COUNT):
        n = 2 + seed % (TREE_MAX_NODES - 1)
        net = random_tree(n, seed)
        r = tree_bounds(net)
        a = list(tree_centroid(net).profile)
        if r.kind == "bounds":
            _, lower = st.best_consolidation(a)
            if abs(lower - r.lower) > 1e-12:
                bad.append(f"seed {seed}: reported lower is not the best consolidation")
            if len(a) <= TREE_BRUTE_MAX_COMPONENTS:
                compared += 1
                if abs(lower - st.brute_force_consolidation(a)) > 1e-12:
                    bad.append(f"seed {seed}: suffix search misses the subset optimum")
            worst = max(worst, r.upper / r.lower)
            if r.upper / r.lower > TREE_RATIO_CAP:
                bad.append(f"seed {seed}: ratio {r.upper / r.lower}")
    sweep = ratio_sweep(6000)
    peak_at, peak = max(sweep, key=lambda t: t[1])
    if abs(peak_at - SWEEP_PEAK_AT) > SWEEP_PEAK_AT_TOL or abs(peak - SWEEP_PEAK) > SWEEP_PEAK_TOL:
        bad.append(f"sweep peaks at {peak_at} with {peak}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < TREE_SECONDS
    detail = f"{elapsed:.1f}s; worst ratio {worst:.6f}; {compared} brute-force comparisons; sweep peak {peak:.9f} at {peak_at:.6f}"
    report(4, "tree bounds and 27/25 ratio", ok, "; ".join(bad[:5]) or detail)


def test_criterion_5_partition_attacker_equalizes(report):
    rng = np.random.default_rng(2024)
    worst, done = 0.0, 0
    while done < EQUALIZER_PROFILES:
        n = int(rng.integers(3, 9))
        a = rng.uniform(0.05, 1.0, n)
        a = np.sort(a / a.sum())[::-1]
        if a[0] >= 0.5 - 1e-6:
            continue
        net = star(list(a))
        info = tree_centroid(net)
        att = st.attacker_partition_strategy(info, net)
        _, value = st.best_consolidation(list(info.profile))
        for comp, _ in info.components:
            for frag in comp.fragments:
                for t in (0.1, 0.5, 0.9, 1.0):
                    x = net.point(frag.arc, frag.lo + t * (frag.hi - frag.lo))
                    worst = max(worst, abs(st.attacker_expected_payoff(net, att, [x]) - value))
        done += 1
    report(5, "partition attacker is an equalizer", worst <= EQUALIZER_TOL, f"worst deviation {worst:.2e} over {done} profiles")


def test_criterion_6_monte_carlo(report):
    t0 = time.perf_counter()
    bad, lines = [], []
    c = cycle()
    r = play(c, st.defender_cycle(c, 2), st.attacker_cycle(c, 2), MC_TRIALS, seed=101)
    lines.append(f"cycle k=2 {r.mean:.5f}+/-{r.halfwidth:.5f}")
    if not r.contains(0.125):
        bad.append("cycle k=2")
    s5 = symmetric_star(5)
    r = play(s5, st.defender_odd_star(5, s5), st.attacker_partition_strategy(tree_centroid(s5), s5), MC_TRIALS, seed=102)
    lines.append(f"odd star 5 {r.mean:.5f}+/-{r.halfwidth:.5f}")
    if not r.contains(6 / 35):
        bad.append("odd star 5")
    s3 = symmetric_star(3)
    three = st.defender_three_arc_star([1 / 3, 1 / 3, 1 / 3])
    if not st.same_marginal(st.marginal(s3, three), st.marginal(s3, st.defender_odd_star(3, s3)), 1e-12):
        bad.append("three-arc and odd-star(3) distributions differ")
    r = play(s3, three, st.attacker_partition_strategy(tree_centroid(s3), s3), MC_TRIALS, seed=103)
    lines.append(f"three-arc {r.mean:.5f}+/-{r.halfwidth:.5f}")
    if not r.contains(2 / 9):
        bad.append("three-arc play")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < MC_SECONDS
    report(6, "Monte Carlo inside 99% intervals", ok, f"{elapsed:.2f}s; " + ("; ".join(bad) or "; ".join(lines)))


def test_criterion_7_structure(report):
    bad = []
    prism = bundled("prism")
    nets = [prism] + [random_two_connected(3 + s % 7, s % 5, s) for s in range(RANDOM_TWO_CONNECTED)]
    for i, net in enumerate(nets):
        halves = equal_bipartition_two_connected(net)
        if not check_partition(net, halves, HALF_TOL) or any(abs(h.measure - 0.5) > HALF_TOL for h in halves):
            bad.append(f"bipartition {i}")
    loop_tail, looped_triangle = bundled("loop_tail"), bundled("looped_triangle")
    if general_centroid(loop_tail) is not None or general_centroid(looped_triangle) is not None:
        bad.append("centroid found on loop_tail or looped_triangle")
    split = find_equal_split(loop_tail, SPLIT_GRID)
    if split is None or not check_partition(loop_tail, split):
        bad.append("no split on loop_tail")
    if find_equal_split(looped_triangle, SPLIT_GRID) is not None:
        bad.append("split found on looped_triangle")
    report(7, "bipartitions, centroids and equal splits", not bad, "; ".join(bad) or f"{len(nets)} bipartitions checked")


def test_criterion_8_no_experiments_to_reproduce(report):
    readme = (Path(__file__).resolve().parents[1] / "README.md").read_text()
    ok = "no published experiments" in readme
    report(8, "README states there are no empirical tables to reproduce", ok)
