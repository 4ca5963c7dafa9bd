import logging
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from tqdm import tqdm

from .game import (MixedStrategy, NormalFormGame, PayoffPair, expected_utility, favourable_best_responses,
                   favourable_reply, iterated_strict_dominance, strategy_order_key)
from .geometry import HalfspaceSystem, decompose_simplex, double_description, enumerate_vertices
from .utils.config import Config

ZERO = Fraction(0)


@dataclass(frozen=True)
class EquilibriumProfile:
    """A Nash equilibrium, or the representative of a connected component of equilibria.

    Attributes
    ----------
    s1, s2 : MixedStrategy
        The strategies.
    payoffs : PayoffPair
        Expected payoffs of the profile.
    support1, support2 : tuple of int
        Supports of the strategies.
    degenerate : bool
        True if the component contains more than one extreme equilibrium.
    extreme_points : tuple of (MixedStrategy, MixedStrategy)
        All extreme equilibria of the component.
    aggregate : MixedStrategy, optional
        Player 2 base strategy induced by a meta-strategy, set for simulation games.
    """
    s1: MixedStrategy
    s2: MixedStrategy
    payoffs: PayoffPair
    support1: Tuple[int, ...]
    support2: Tuple[int, ...]
    degenerate: bool = False
    extreme_points: Tuple[Tuple[MixedStrategy, MixedStrategy], ...] = ()
    aggregate: Optional[MixedStrategy] = None


@dataclass(frozen=True)
class StackelbergOutcome:
    leader_strategy: MixedStrategy
    follower_reply: int
    payoffs: PayoffPair


def _support_face(matrix, own, other):
    """Vertices of ``{z : supp z within own, every index in other is a best response to z}``.

    ``matrix`` holds the payoffs of the responding player, rows indexed by the
    strategies of the owner of ``z``. Only vertices with support exactly ``own`` are returned.
    """
    own, other = list(own), list(other)
    restricted = matrix[own, :]
    first = other[0]
    inequalities = [(tuple(restricted[:, first] - restricted[:, k]), ZERO)
                    for k in range(matrix.shape[1]) if k not in other]
    equalities = [(tuple(restricted[:, j] - restricted[:, first]), ZERO) for j in other[1:]]
    system = HalfspaceSystem.on_simplex(len(own), inequalities, equalities, owner=1)
    vertices = []
    for vertex in enumerate_vertices(system, "combinatorial"):
        if all(p > 0 for p in vertex.probs):
            point = [ZERO] * matrix.shape[0]
            for index, p in zip(own, vertex.probs):
                point[index] = p
            vertices.append(tuple(point))
    return vertices


def _subsets(count):
    for size in range(1, count + 1):
        yield from itertools.combinations(range(count), size)


def _support_extremes(game):
    """Extreme equilibria by enumerating support pairs."""
    a, b = game.u1, game.u2
    rows, cols = game.shape
    extremes = set()
    pairs = list(itertools.product(_subsets(rows), _subsets(cols)))
    for support1, support2 in tqdm(pairs, disable=not(logging.root.level == logging.INFO)):
        xs = _support_face(b, support1, support2)
        if not xs:
            continue
        ys = _support_face(a.T, support2, support1)
        for x in xs:
            for y in ys:
                extremes.add((x, y))
    return extremes


def _polytope_vertices(matrix, zero=(), tight=()):
    """Vertices of ``{z >= 0 : matrix z <= 1}`` with ``z_i = 0`` for ``i`` in zero and equality on the tight rows.

    ``matrix`` must be strictly positive. The polytope is lifted to the cone
    over ``(z, t)`` with rows ``t - matrix_r . z >= 0``.
    """
    rows, dimension = matrix.shape
    lifted = [tuple(-matrix[r, :]) + (Fraction(1),) for r in range(rows)]
    equalities = [tuple(Fraction(1) if j == i else ZERO for j in range(dimension + 1)) for i in zero]
    equalities += [lifted[r] for r in tight]
    vertices = []
    for ray in double_description(dimension + 1, lifted, equalities):
        t = ray[-1]
        if t > 0:
            vertices.append(tuple(c / t for c in ray[:-1]))
    return vertices


def _normalize(point):
    total = sum(point)
    return tuple(c / total for c in point)


def _vertex_extremes(game):
    """Extreme equilibria as complementary vertex pairs of the two best-response polytopes."""
    a = game.u1 - min(game.u1.flat) + 1
    b = game.u2 - min(game.u2.flat) + 1
    rows, cols = game.shape
    extremes = set()
    if cols <= rows:
        for y in tqdm(_polytope_vertices(a), disable=not(logging.root.level == logging.INFO)):
            if not any(y):
                continue
            slack = a @ np.array(y, dtype=object)
            zero = [i for i in range(rows) if slack[i] != 1]
            support = [j for j in range(cols) if y[j] != 0]
            for x in _polytope_vertices(b.T, zero, support):
                if any(x):
                    extremes.add((_normalize(x), _normalize(y)))
    else:
        for x in tqdm(_polytope_vertices(b.T), disable=not(logging.root.level == logging.INFO)):
            if not any(x):
                continue
            slack = np.array(x, dtype=object) @ b
            zero = [j for j in range(cols) if slack[j] != 1]
            support = [i for i in range(rows) if x[i] != 0]
            for y in _polytope_vertices(a, zero, support):
                if any(y):
                    extremes.add((_normalize(x), _normalize(y)))
    return extremes


def _components(extremes):
    """Groups extreme equilibria that share a strategy of either player."""
    extremes = sorted(extremes, key=lambda e: (strategy_order_key(e[0]), strategy_order_key(e[1])))
    parent = list(range(len(extremes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first_seen = {}
    for index, (x, y) in enumerate(extremes):
        for key in (("x", x), ("y", y)):
            if key in first_seen:
                parent[find(index)] = find(first_seen[key])
            else:
                first_seen[key] = index
    groups = {}
    for index in range(len(extremes)):
        groups.setdefault(find(index), []).append(extremes[index])
    return list(groups.values())


def _support_size(point):
    return sum(1 for p in point if p != 0)


def nash_method(game: NormalFormGame) -> str:
    """The enumeration method chosen by default for ``game``."""
    rows, cols = game.shape
    pairs = (2 ** rows - 1) * (2 ** cols - 1)
    return "support" if pairs <= Config().support_pair_limit() else "vertex"


def enumerate_nash(game: NormalFormGame, method=None):
    """All Nash equilibria of a bimatrix game, one profile per connected component.

    Strictly dominated pure strategies are removed first. The extreme
    equilibria are then enumerated exactly and grouped into components of
    equilibria sharing a strategy.

    Parameters
    ----------
    game : NormalFormGame
        The game.
    method : str, optional
        ``"support"`` enumerates support pairs, ``"vertex"`` pairs the vertices
        of the best-response polytopes. By default support enumeration is used
        when the number of support pairs is within the configured ``support_pair_limit``.

    Returns
    -------
    list of EquilibriumProfile
        The components, ordered by their representatives. The representative
        has the smallest total support, ``degenerate`` is set when the component
        holds more than one extreme equilibrium.
    """
    rows, cols = iterated_strict_dominance(game)
    reduced = game.restrict(rows, cols)
    if method is None:
        method = nash_method(reduced)
    logging.info(f"enumerate_nash: {game.name} reduced from {game.shape} to {reduced.shape}, method {method}")
    if method == "support":
        extremes = _support_extremes(reduced)
    elif method == "vertex":
        extremes = _vertex_extremes(reduced)
    else:
        logging.error(f"enumerate_nash: unknown method {method}!")
        raise ValueError(f"unknown equilibrium enumeration method {method!r}")
    if not extremes:
        logging.error(f"enumerate_nash: no equilibrium found for {game.name}!")

    def lift(point, indices, count):
        full = [ZERO] * count
        for p, index in zip(point, indices):
            full[index] = p
        return tuple(full)

    lifted = {(lift(x, rows, game.shape[0]), lift(y, cols, game.shape[1])) for x, y in extremes}
    profiles = []
    for component in _components(lifted):
        representative = min(component, key=lambda e: (_support_size(e[0]) + _support_size(e[1]),
                                                       strategy_order_key(e[0]), strategy_order_key(e[1])))
        s1 = MixedStrategy(1, representative[0])
        s2 = MixedStrategy(2, representative[1])
        points = tuple((MixedStrategy(1, x), MixedStrategy(2, y)) for x, y in component)
        profiles.append(EquilibriumProfile(s1, s2, expected_utility(game, s1, s2), s1.support, s2.support,
                                           degenerate=len(component) > 1, extreme_points=points))
    profiles.sort(key=lambda p: (strategy_order_key(p.s1.probs), strategy_order_key(p.s2.probs)))
    logging.info(f"enumerate_nash: {game.name} has {len(profiles)} equilibrium component(s) "
                 f"with {len(lifted)} extreme point(s)")
    return profiles


def equilibrium_payoffs(game: NormalFormGame, profiles):
    """Payoffs of every extreme equilibrium of the given components."""
    return [expected_utility(game, x, y) for profile in profiles for x, y in profile.extreme_points]


def stackelberg(game: NormalFormGame) -> StackelbergOutcome:
    """Optimal mixed commitment of player 2 against a favourably replying player 1.

    The optimum of player 2's payoff on every best-response region is attained
    at a vertex, so only region vertices are compared. Ties go to the lowest
    row and then to the first vertex in the usual vertex order.
    """
    best = None
    for region in decompose_simplex(game):
        u2_row = game.u2[region.s1, :]
        for vertex in region.vertices:
            value = Fraction(u2_row @ vertex.array)
            if best is None or value > best[0]:
                best = (value, region.s1, vertex)
    value, reply, commitment = best
    payoffs = PayoffPair(Fraction(game.u1[reply, :] @ commitment.array), value)
    logging.debug(f"stackelberg: {game.name} commit {commitment.label(game.s2_labels)}, reply {game.s1_labels[reply]}")
    return StackelbergOutcome(commitment, reply, payoffs)


def pure_commitment(game: NormalFormGame) -> StackelbergOutcome:
    """Best pure commitment of player 2, ties to the lowest column index."""
    best = None
    for col in range(game.shape[1]):
        commitment = MixedStrategy.pure(2, game.shape[1], col)
        reply = favourable_reply(game, commitment)
        value = game.u2[reply, col]
        if best is None or value > best[0]:
            best = (value, reply, commitment)
    value, reply, commitment = best
    return StackelbergOutcome(commitment, reply, game.payoff(reply, commitment.support[0]))


def pure_commitment_outcomes(game: NormalFormGame):
    """Payoffs of every optimal pure commitment paired with every favourable reply."""
    best = pure_commitment(game).payoffs.u2
    outcomes = []
    for col in range(game.shape[1]):
        commitment = MixedStrategy.pure(2, game.shape[1], col)
        for reply in favourable_best_responses(game, commitment):
            if game.u2[reply, col] == best:
                outcomes.append(game.payoff(reply, col))
    return outcomes


def is_generalised_trust_game(game: NormalFormGame, profiles=None) -> bool:
    """True iff every optimal pure-commitment outcome strictly Pareto-improves every Nash equilibrium."""
    profiles = enumerate_nash(game) if profiles is None else profiles
    payoffs = equilibrium_payoffs(game, profiles)
    best_u1 = max(p.u1 for p in payoffs)
    best_u2 = max(p.u2 for p in payoffs)
    return all(o.u1 > best_u1 and o.u2 > best_u2 for o in pure_commitment_outcomes(game))
