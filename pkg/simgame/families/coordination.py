"""Generalised coordination games: positive payoffs on the diagonal, zero elsewhere."""
import logging
import itertools
from fractions import Fraction

import numpy as np

from ..equilibrium import EquilibriumProfile
from ..game import MixedStrategy, NormalFormGame, PayoffPair, expected_utility
from ..simulation import ClosedFormEquilibrium, SimulationConfig, build_msim_reduced, closed_form
from ..utils.errors import RefusalError, ValidationError, Violation
from ..utils.rational import format_rational, to_rational


def make_coordination_game(diagonal, name="coordination") -> NormalFormGame:
    """Builds the n x n coordination game with the given diagonal payoff pairs.

    Parameters
    ----------
    diagonal : sequence of (u1, u2)
        Strictly positive payoffs of coordinating on each action.
    name : str, optional
        Game name.

    Raises
    ------
    ValidationError
        If fewer than two actions are given or some diagonal payoff is not positive.
    """
    pairs = [PayoffPair(to_rational(u1), to_rational(u2)) for u1, u2 in diagonal]
    violations = []
    if len(pairs) < 2:
        violations.append(Violation("size", (), f"a coordination game needs at least two actions, got {len(pairs)}"))
    for k, pair in enumerate(pairs):
        if pair.u1 <= 0 or pair.u2 <= 0:
            violations.append(Violation("diagonal", (f"a{k + 1}",), f"diagonal payoffs must be positive, got {pair}"))
    if violations:
        logging.error(f"make_coordination_game: invalid diagonal for {name}")
        raise ValidationError(violations)
    n = len(pairs)
    u1 = np.full((n, n), Fraction(0), dtype=object)
    u2 = np.full((n, n), Fraction(0), dtype=object)
    for k, pair in enumerate(pairs):
        u1[k, k], u2[k, k] = pair
    return NormalFormGame(u1, u2, [f"a1_{k + 1}" for k in range(n)], [f"a2_{k + 1}" for k in range(n)], name=name)


def coordination_violations(game: NormalFormGame):
    rows, cols = game.shape
    if rows != cols or rows < 2:
        return [Violation("size", (), f"a coordination game is square with at least two actions, got {game.shape}")]
    violations = []
    for i, j in itertools.product(range(rows), repeat=2):
        u1, u2 = game.u1[i, j], game.u2[i, j]
        cell = (game.s1_labels[i], game.s2_labels[j])
        if i == j and (u1 <= 0 or u2 <= 0):
            violations.append(Violation("diagonal", cell, "diagonal payoffs must be positive"))
        elif i != j and (u1 != 0 or u2 != 0):
            violations.append(Violation("off-diagonal", cell, "off-diagonal payoffs must be zero"))
    return violations


def validate_coordination(game: NormalFormGame) -> NormalFormGame:
    violations = coordination_violations(game)
    if violations:
        logging.error(f"validate_coordination: {game.name} is not a coordination game")
        raise ValidationError(violations)
    return game


def diagonal(game: NormalFormGame):
    return [game.payoff(k, k) for k in range(game.shape[0])]


def coordination_mixed_payoffs(game: NormalFormGame, actions) -> PayoffPair:
    """Payoffs of the equilibrium mixing over exactly ``actions``, the harmonic sums (sum 1/u)^-1."""
    pairs = [game.payoff(k, k) for k in actions]
    return PayoffPair(1 / sum(1 / p.u1 for p in pairs), 1 / sum(1 / p.u2 for p in pairs))


def coordination_equilibrium(game: NormalFormGame, actions) -> EquilibriumProfile:
    """The equilibrium in which both players mix over exactly ``actions``.

    Each player weighs action k inversely proportional to the other player's
    payoff there, which makes the other player indifferent on ``actions``.
    """
    validate_coordination(game)
    actions = sorted(set(actions))
    n = game.shape[0]
    odds1 = {k: 1 / game.u2[k, k] for k in actions}
    odds2 = {k: 1 / game.u1[k, k] for k in actions}
    s1 = MixedStrategy.from_weights(1, n, {k: v / sum(odds1.values()) for k, v in odds1.items()})
    s2 = MixedStrategy.from_weights(2, n, {k: v / sum(odds2.values()) for k, v in odds2.items()})
    return EquilibriumProfile(s1, s2, expected_utility(game, s1, s2), s1.support, s2.support,
                              extreme_points=((s1, s2),))


def coordination_sim_equilibrium(game: NormalFormGame, cost) -> ClosedFormEquilibrium:
    """A simulation equilibrium of a coordination game.

    If player 2's best diagonal payoff is attained twice, player 2 mixes the two
    lowest such actions 50:50 and player 1 always simulates. Otherwise player 2
    mostly plays ``k1`` (player 1's best action besides player 2's favourite
    ``k2``) and ``k2`` with probability ``p_D``; player 1 plays ``k1`` or
    simulates with probability ``p_sim``.

    Parameters
    ----------
    game : NormalFormGame
        A coordination game.
    cost : Fraction
        Simulation cost.

    Returns
    -------
    ClosedFormEquilibrium
        Parameters hold ``case`` (1 or 2), the chosen indices and ``cost_bound``;
        case 2 also ``p_sim`` and ``p_D``.

    Raises
    ------
    RefusalError
        ``cost_too_high`` if the cost is not below the bound of the case, or ``verification``.
    """
    validate_coordination(game)
    config = SimulationConfig(to_rational(cost))
    cost = config.cost
    pairs = diagonal(game)
    n = len(pairs)
    best2 = max(p.u2 for p in pairs)
    optima = [k for k, p in enumerate(pairs) if p.u2 == best2]
    pure = [MixedStrategy.pure(2, n, k) for k in range(n)]
    if len(optima) >= 2:
        first, second = optima[:2]
        cost_bound = min(pairs[first].u1, pairs[second].u1) / 2
        if cost >= cost_bound:
            logging.error(f"coordination_sim_equilibrium: cost {cost} not below {cost_bound}")
            raise RefusalError("cost_too_high", f"simulation cost {format_rational(cost)} must be below "
                               f"{format_rational(cost_bound)}", {"cost_bound": cost_bound, "case": 1})
        reduced = build_msim_reduced(game, config, extra_atoms=pure)
        s1 = MixedStrategy.pure(1, reduced.meta.shape[0], reduced.simulate_row)
        s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1], {reduced.column(pure[first]): Fraction(1, 2),
                                                                    reduced.column(pure[second]): Fraction(1, 2)})
        parameters = {"case": 1, "k_first": first, "k_second": second, "cost_bound": cost_bound}
    else:
        k2 = optima[0]
        k1 = max((k for k in range(n) if k != k2), key=lambda k: (pairs[k].u1, -k))
        a, b = pairs[k1].u1, pairs[k2].u1
        cost_bound = a * b / (a + b)
        if cost >= cost_bound:
            logging.error(f"coordination_sim_equilibrium: cost {cost} not below {cost_bound}")
            raise RefusalError("cost_too_high", f"simulation cost {format_rational(cost)} must be below "
                               f"{format_rational(cost_bound)}", {"cost_bound": cost_bound, "case": 2})
        p_sim = pairs[k1].u2 / pairs[k2].u2
        p_defect = cost / b
        reduced = build_msim_reduced(game, config, extra_atoms=pure)
        s1 = MixedStrategy.from_weights(1, reduced.meta.shape[0], {k1: 1 - p_sim, reduced.simulate_row: p_sim})
        s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1], {reduced.column(pure[k2]): p_defect,
                                                                    reduced.column(pure[k1]): 1 - p_defect})
        parameters = {"case": 2, "k1": k1, "k2": k2, "p_sim": p_sim, "p_D": p_defect, "cost_bound": cost_bound}
    result = closed_form(reduced, s1, s2, parameters)
    logging.info(f"coordination_sim_equilibrium: {game.name} case {parameters['case']}, payoffs {result.profile.payoffs}")
    return result
