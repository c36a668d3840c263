import numpy as np
import pytest
from scipy.stats import chisquare

from boobytrap import strategies as st
from boobytrap.centroid import tree_centroid
from boobytrap.netmodel import Fragment, Point, cycle, path, random_tree, subnetwork, symmetric_star
from boobytrap.simulate import _sample_many, play, sample_attacker, sample_defender, stream


def test_fixed_points_never_move():
    p = path()
    ds = st.DefenderStrategy(1, ((1.0, st.FixedPoints((p.point("a0", 0.3),))),))
    assert {tuple(sample_defender(p, ds, stream(1, b))) for b in range(20)} == {(p.point("a0", 0.3),)}


def test_uniform_region_is_flat():
    p = path()
    region = subnetwork(p, [Fragment("a0", 0.1, 0.3), Fragment("a0", 0.6, 0.8)])
    assert region.measure == pytest.approx(0.4)
    ds = st.DefenderStrategy(1, ((1.0, st.IndependentUniform(region, 1)),))
    off = _sample_many(p, ds, stream(3), 100_000).offset[:, 0]
    inside = np.where(off < 0.45, off - 0.1, off - 0.6 + 0.2)
    counts, _ = np.histogram(inside, bins=40, range=(0.0, 0.4))
    assert counts.sum() == 100_000
    assert chisquare(counts).pvalue > 1e-3


def test_comb_points_half_apart():
    p = path()
    pts = _sample_many(p, st.defender_path_comb(p, 2), stream(4), 1000)
    assert np.allclose(pts.offset[:, 1] - pts.offset[:, 0], 0.5)
    assert pts.offset[:, 0].max() < 0.5


def test_finite_mixture_frequencies():
    p = path()
    a, b = subnetwork(p, [Fragment("a0", 0.0, 0.2)]), subnetwork(p, [Fragment("a0", 0.2, 1.0)])
    mix = st.FiniteMixture(((0.2, a), (0.8, b)))
    draws = [sample_attacker(p, mix, stream(5, i)) for i in range(2000)]
    share = sum(d == a for d in draws) / 2000
    assert abs(share - 0.2) <= 3 * (0.2 * 0.8 / 2000) ** 0.5
    single = st.FiniteMixture(((1.0, a),))
    assert all(sample_attacker(p, single, stream(6, i)) == a for i in range(10))


def test_sliding_interval_has_constant_length():
    c = cycle()
    att = st.attacker_cycle(c, 2)
    for i in range(50):
        assert sample_attacker(c, att, stream(7, i)).measure == pytest.approx(0.25)


def test_play_examples():
    c = cycle()
    r = play(c, st.defender_cycle(c, 2), st.attacker_cycle(c, 2), 100_000, seed=21)
    assert r.contains(0.125)
    p = path()
    halves = st.attacker_two_half(p, tuple(s for _, s in st.attacker_path(p, 1).entries))
    assert play(p, st.defender_uniform(p, 1), halves, 100_000, seed=22).contains(0.25)
    s3 = symmetric_star(3)
    r = play(s3, st.defender_odd_star(3, s3), st.attacker_partition_strategy(tree_centroid(s3), s3), 100_000, seed=23)
    assert r.contains(2 / 9)


def test_reproducible_and_independent_of_batching():
    s = symmetric_star(5)
    ds, att = st.defender_odd_star(5, s), st.attacker_partition_strategy(tree_centroid(s), s)
    a = play(s, ds, att, 30_000, seed=9)
    b = play(s, ds, att, 30_000, seed=9)
    assert a == b
    c = play(s, ds, att, 10_000, seed=9)
    assert c.batch_means[0] == a.batch_means[0]
    with pytest.raises(ValueError):
        play(s, ds, att, 0, seed=9)


def _random_pair(seed):
    rng = np.random.default_rng(seed)
    net = random_tree(int(rng.integers(3, 8)), seed)
    arcs = net.arcs

    def piece():
        a = arcs[int(rng.integers(len(arcs)))]
        lo, hi = sorted(rng.uniform(0, a.length, 2))
        return subnetwork(net, [Fragment(a.id, lo, hi)])

    atom = net.point(arcs[0].id, arcs[0].length * 0.5)
    p = float(rng.uniform(0.1, 0.9))
    ds = st.DefenderStrategy(1, ((p, st.IndependentUniform(piece(), 1)), (1 - p, st.FixedPoints((atom,)))))
    entries = [piece() for _ in range(3)] + [net.whole()]
    probs = rng.dirichlet(np.ones(len(entries)))
    return net, ds, st.FiniteMixture(tuple(zip(map(float, probs / probs.sum()), entries)))


@pytest.mark.parametrize("seed", range(50))
def test_play_agrees_with_exact_expectation(seed):
    net, ds, att = _random_pair(seed)
    exact = sum(q * st.expected_payoff(net, ds, s) for q, s in att.entries)
    r = play(net, ds, att, 20_000, seed=seed)
    sigma = r.halfwidth / 2.5758293035489
    assert abs(r.mean - exact) <= 4 * sigma + 1e-12
