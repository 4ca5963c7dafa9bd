"""The worked example games."""
from fractions import Fraction

import numpy as np

from ..game import NormalFormGame
from .tcg import TcgSpec, TrustSubgame

F = Fraction


def trust_game() -> NormalFormGame:
    """Trust game: trust (T) or walk out (WO) against cooperate (C) or defect (D)."""
    return NormalFormGame([[20, -100], [0, 0]], [[20, 100], [0, 0]],
                          ["T", "WO"], ["C", "D"], name="TG")


def partial_trust_game() -> NormalFormGame:
    """Trust game with an additional partial trust (PT) level."""
    return NormalFormGame([[20, -100], [10, -25], [0, 0]], [[20, 100], [10, 25], [0, 0]],
                          ["FT", "PT", "WO"], ["C", "D"], name="PTG")


def graded_trust_game() -> NormalFormGame:
    """Four trust levels; the least trusting level is not supported by simulation."""
    return NormalFormGame([[20, -100], [10, -20], [5, -1], [0, 0]],
                          [[20, 100], [10, 20], [3, 6], [0, 0]],
                          ["FT", "T2", "T3", "WO"], ["C", "D"], name="graded")


def dtg_spec() -> TcgSpec:
    """Two trust subgames behind a coordination stage, opt-out bonus 1."""
    return TcgSpec(b1=F(0), b2=F(0), epsilon=F(1), subgames=(
        TrustSubgame(g1=F(20), g2=F(20), h1=F(-99), a2=F(40), n1=F(9), h2=F(-99)),
        TrustSubgame(g1=F(20), g2=F(20), h1=F(-99), a2=F(40), n1=F(10), h2=F(-99)),
    ), name="DTG")


def with_opt_out(game: NormalFormGame, b1, b2, label="OO") -> NormalFormGame:
    """Appends an opt-out row and column paying ``(b1, b2)`` whenever either player opts out."""
    rows, cols = game.shape
    u1 = np.empty((rows + 1, cols + 1), dtype=object)
    u2 = np.empty((rows + 1, cols + 1), dtype=object)
    u1.fill(F(b1))
    u2.fill(F(b2))
    u1[:rows, :cols] = game.u1
    u2[:rows, :cols] = game.u2
    return NormalFormGame(u1, u2, list(game.s1_labels) + [label], list(game.s2_labels) + [label],
                          name=f"{game.name}+{label}")


BUILTIN_GAMES = {
    "tg": trust_game,
    "ptg": partial_trust_game,
    "graded": graded_trust_game,
}
