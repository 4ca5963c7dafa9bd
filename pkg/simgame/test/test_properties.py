"""Randomised checks on small integer games."""
import functools
import itertools
from fractions import Fraction as F

import numpy as np
import pytest

import simgame as sg
from ..equilibrium import equilibrium_payoffs
from ..game import strategy_order_key
from ..geometry import tight_system
from ..simulation import simulation_payoff

SHAPES = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)]
CORPUS = range(200)
SIM_COST = F(1, 4)


def random_game(seed, rows, cols, low=-5, high=6):
    rng = np.random.default_rng(seed)
    return sg.NormalFormGame(rng.integers(low, high, (rows, cols)).tolist(),
                             rng.integers(low, high, (rows, cols)).tolist(), name=f"random{seed}")


@functools.lru_cache(maxsize=None)
def corpus_game(seed):
    rows, cols = SHAPES[seed % len(SHAPES)]
    return random_game(seed, rows, cols)


@functools.lru_cache(maxsize=None)
def corpus_equilibria(seed):
    return sg.enumerate_nash(corpus_game(seed))


def sample_points(rng, dimension, count, owner=2):
    """Rational points of the simplex with small denominators."""
    weights = rng.integers(0, 10, size=(count, dimension))
    weights[weights.sum(axis=1) == 0, 0] = 1
    return [sg.MixedStrategy(owner, tuple(F(int(w), int(row.sum())) for w in row)) for row in weights]


def corners(dimension, owner=2):
    return [sg.MixedStrategy.pure(owner, dimension, j) for j in range(dimension)]


@pytest.mark.parametrize("seed", CORPUS)
def test_expected_utility_is_bilinear(seed):
    game = corpus_game(seed)
    rows, cols = game.shape
    rng = np.random.default_rng(seed + 1000)
    for _ in range(5):
        s1, t1 = sample_points(rng, rows, 2, owner=1)
        s2, t2 = sample_points(rng, cols, 2)
        lam = F(int(rng.integers(0, 8)), 7)
        mix1 = sg.MixedStrategy(1, tuple(lam * a + (1 - lam) * b for a, b in zip(s1.probs, t1.probs)))
        mix2 = sg.MixedStrategy(2, tuple(lam * a + (1 - lam) * b for a, b in zip(s2.probs, t2.probs)))
        expected = [lam * u + (1 - lam) * v for u, v in zip(sg.expected_utility(game, s1, s2),
                                                            sg.expected_utility(game, t1, s2))]
        assert list(sg.expected_utility(game, mix1, s2)) == expected
        expected = [lam * u + (1 - lam) * v for u, v in zip(sg.expected_utility(game, s1, s2),
                                                            sg.expected_utility(game, s1, t2))]
        assert list(sg.expected_utility(game, s1, mix2)) == expected


@pytest.mark.parametrize("seed", CORPUS)
def test_best_responses_are_consistent(seed):
    game = corpus_game(seed)
    rng = np.random.default_rng(seed + 2000)
    for strategy in sample_points(rng, game.shape[1], 50) + corners(game.shape[1]):
        best = sg.best_responses(game, strategy)
        favourable = sg.favourable_best_responses(game, strategy)
        assert favourable and set(favourable) <= set(best)
        y = strategy.array
        assert len({game.u1[i, :] @ y for i in best}) == 1
        assert len({game.u2[i, :] @ y for i in favourable}) == 1


@pytest.mark.parametrize("seed", CORPUS)
def test_best_responses_survive_affine_transforms(seed):
    game = corpus_game(seed)
    rng = np.random.default_rng(seed + 3000)
    scale = F(int(rng.integers(1, 6)), int(rng.integers(1, 6)))
    shift = F(int(rng.integers(-10, 11)), int(rng.integers(1, 4)))
    scaled = sg.NormalFormGame(game.u1 * scale + shift, game.u2, name=f"{game.name} scaled")
    for strategy in sample_points(rng, game.shape[1], 50):
        assert sg.best_responses(scaled, strategy) == sg.best_responses(game, strategy)


@pytest.mark.parametrize("seed", CORPUS)
def test_regions_cover_the_simplex(seed):
    game = corpus_game(seed)
    regions = sg.decompose_simplex(game)
    rng = np.random.default_rng(seed + 4000)
    for point in sample_points(rng, game.shape[1], 1000) + corners(game.shape[1]):
        best = set(sg.best_responses(game, point))
        containing = {r.s1 for r in regions if r.system.contains(point)}
        assert containing == best


@pytest.mark.parametrize("seed", CORPUS)
def test_region_vertices_are_tight(seed):
    game = corpus_game(seed)
    dimension = game.shape[1]
    for region in sg.decompose_simplex(game):
        assert len(region.vertices) <= sg.region_vertex_bound(dimension)
        for vertex in region.vertices:
            assert len(region.system.tight(vertex)) >= dimension - 1
            assert region.s1 in sg.best_responses(game, vertex)
            assert vertex in sg.enumerate_vertices(tight_system(region.system, vertex))


@pytest.mark.parametrize("seed", CORPUS)
def test_adjacent_regions_share_one_vertex(seed):
    game = random_game(seed + 5000, 2 + seed % 3, 2)
    intervals = sorted({r.vertices for r in sg.decompose_simplex(game) if len(r.vertices) == 2},
                       key=lambda vertices: strategy_order_key(vertices[0].probs))
    assert intervals[0][0] == sg.MixedStrategy(2, (1, 0))
    assert intervals[-1][1] == sg.MixedStrategy(2, (0, 1))
    for left, right in zip(intervals, intervals[1:]):
        assert set(left) & set(right) == {left[1]}
        assert left[1] == right[0]


@pytest.mark.parametrize("seed", CORPUS)
def test_equilibrium_methods_agree(seed):
    game = corpus_game(seed)
    support = sg.enumerate_nash(game, "support")
    vertex = sg.enumerate_nash(game, "vertex")
    assert [(p.s1, p.s2) for p in support] == [(p.s1, p.s2) for p in vertex]
    for profile in support:
        for s1, s2 in profile.extreme_points:
            assert sg.is_nash(game, s1, s2)


@pytest.mark.parametrize("seed", CORPUS)
def test_commitment_value(seed):
    game = corpus_game(seed)
    outcome = sg.stackelberg(game)
    assert outcome.payoffs.u2 >= sg.pure_commitment(game).payoffs.u2
    for _, u2 in equilibrium_payoffs(game, corpus_equilibria(seed)):
        assert outcome.payoffs.u2 >= u2
    assert outcome.follower_reply in sg.best_responses(game, outcome.leader_strategy)


@pytest.mark.parametrize("seed", CORPUS)
def test_base_equilibria_lift(seed):
    game = corpus_game(seed)
    reduced = sg.build_msim_reduced(game, sg.SimulationConfig(SIM_COST))
    for profile in corpus_equilibria(seed):
        for s1, s2 in profile.extreme_points:
            ne = sg.EquilibriumProfile(s1, s2, sg.expected_utility(game, s1, s2), s1.support, s2.support)
            assert sg.lift_check(game, reduced, ne)


@pytest.mark.parametrize("seed", CORPUS)
def test_reduced_equilibria_resist_player2_deviations(seed):
    game = corpus_game(seed)
    rows = game.shape[0]
    reduced = sg.build_msim_reduced(game, sg.SimulationConfig(SIM_COST))
    rng = np.random.default_rng(seed + 6000)
    deviations = []
    for z in sample_points(rng, game.shape[1], 500):
        direct = game.u2 @ z.array
        deviations.append((direct, simulation_payoff(game, z, SIM_COST).u2))
    for profile in sg.enumerate_nash(reduced.meta):
        for x, y in profile.extreme_points:
            value = sg.expected_utility(reduced.meta, x, y).u2
            for direct, simulated in deviations:
                gain = sum(x.probs[i] * direct[i] for i in range(rows)) + x.probs[rows] * simulated
                assert gain <= value


@pytest.mark.parametrize("seed", range(40))
def test_lift_check_matches_meta_game(seed):
    game = random_game(seed, 2, 3, low=0)
    for profile in sg.enumerate_nash(game):
        for s1, s2 in profile.extreme_points:
            reduced = sg.build_msim_reduced(game, sg.SimulationConfig(SIM_COST), extra_atoms=[s2])
            ne = sg.EquilibriumProfile(s1, s2, sg.expected_utility(game, s1, s2), s1.support, s2.support)
            meta_s1 = sg.MixedStrategy(1, s1.probs + (F(0),))
            meta_s2 = sg.MixedStrategy.pure(2, reduced.meta.shape[1], reduced.column(s2))
            assert sg.lift_check(game, reduced, ne) == sg.is_nash(reduced.meta, meta_s1, meta_s2)


def two_by_two_equilibria(u1, u2):
    """All equilibria of a 2x2 game without payoff ties, as ((p, q), (u1, u2)).

    ``p`` and ``q`` are the weights on the first row and the first column.
    """
    d0, d1 = u2[0][0] - u2[0][1], u2[1][0] - u2[1][1]
    e0, e1 = u1[0][0] - u1[1][0], u1[0][1] - u1[1][1]
    ps, qs = {F(0), F(1)}, {F(0), F(1)}
    if d0 != d1 and 0 < F(d1, d1 - d0) < 1:
        ps.add(F(d1, d1 - d0))
    if e0 != e1 and 0 < F(e1, e1 - e0) < 1:
        qs.add(F(e1, e1 - e0))
    found = []
    for p, q in itertools.product(ps, qs):
        r0 = q * u1[0][0] + (1 - q) * u1[0][1]
        r1 = q * u1[1][0] + (1 - q) * u1[1][1]
        c0 = p * u2[0][0] + (1 - p) * u2[1][0]
        c1 = p * u2[0][1] + (1 - p) * u2[1][1]
        if (p > 0 and r0 < r1) or (p < 1 and r1 < r0) or (q > 0 and c0 < c1) or (q < 1 and c1 < c0):
            continue
        found.append(((p, q), (p * r0 + (1 - p) * r1, q * c0 + (1 - q) * c1)))
    return sorted(found)


@pytest.mark.parametrize("seed", CORPUS)
def test_two_by_two_oracle(seed):
    rng = np.random.default_rng(seed + 7000)
    values = rng.choice(np.arange(-10, 11), size=8, replace=False).tolist()
    u1, u2 = [values[0:2], values[2:4]], [values[4:6], values[6:8]]
    game = sg.NormalFormGame(u1, u2, name=f"oracle{seed}")
    found = sorted(((s1.probs[0], s2.probs[0]), tuple(sg.expected_utility(game, s1, s2)))
                   for p in sg.enumerate_nash(game) for s1, s2 in p.extreme_points)
    assert found == two_by_two_equilibria(u1, u2)
