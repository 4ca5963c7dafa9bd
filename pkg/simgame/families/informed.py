"""Sequential games in which player 2 observes player 1's move before responding."""
import logging
import itertools

import numpy as np

from ..game import NormalFormGame
from ..simulation import Criterion, SimulationConfig, decide_msim_helps
from ..utils.rational import format_rational, to_rational


def pareto_responses(stage: NormalFormGame, row: int):
    """Columns not strictly improved upon for both players by another column against ``row``.

    Of several columns with equal payoffs only the first is kept.
    """
    cols = range(stage.shape[1])
    kept = []
    for j in cols:
        if any(stage.u1[row, k] > stage.u1[row, j] and stage.u2[row, k] > stage.u2[row, j] for k in cols):
            continue
        if any(stage.payoff(row, k) == stage.payoff(row, j) for k in kept):
            continue
        kept.append(j)
    return kept


def make_informed_follower_game(stage: NormalFormGame) -> NormalFormGame:
    """Normal form of the game where player 2 answers after seeing player 1's choice.

    Player 2's strategies are response functions picking a Pareto-optimal
    column for every row, labelled like ``C/D`` (C against the first row, D against the second).
    """
    options = [pareto_responses(stage, i) for i in range(stage.shape[0])]
    functions = list(itertools.product(*options))
    rows = stage.shape[0]
    u1 = np.empty((rows, len(functions)), dtype=object)
    u2 = np.empty((rows, len(functions)), dtype=object)
    for f, function in enumerate(functions):
        for i in range(rows):
            u1[i, f], u2[i, f] = stage.payoff(i, function[i])
    labels = ["/".join(stage.s2_labels[j] for j in function) for function in functions]
    logging.info(f"make_informed_follower_game: {stage.name} has {len(functions)} response function(s)")
    return NormalFormGame(u1, u2, stage.s1_labels, labels, name=f"{stage.name} informed")


def check_informed_player(stage: NormalFormGame, costs):
    """Whether simulation introduces a Pareto-improving equilibrium, per cost.

    Parameters
    ----------
    stage : NormalFormGame
        The simultaneous-move stage game.
    costs : sequence of Fraction
        Simulation costs to check.

    Returns
    -------
    dict
        Cost to `DecisionReport` on the informed-follower game with criterion ``a``.
    """
    game = make_informed_follower_game(stage)
    reports = {}
    for cost in costs:
        cost = to_rational(cost)
        reports[cost] = decide_msim_helps(game, SimulationConfig(cost), Criterion.Both)
        if reports[cost].helps:
            logging.warning(f"check_informed_player: simulation helps in {game.name} at cost {format_rational(cost)}")
    return reports
