"""Password guessing.

After a profitable outcome player 2 stores the profit under one of ``N``
passwords and player 1 may try to guess it. Pure-strategy simulation reveals the
password, mixed-strategy simulation only reveals that it was chosen at random.
"""
import logging
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from ..game import MixedStrategy, NormalFormGame, PayoffPair, lift_strategy
from ..simulation import ClosedFormEquilibrium, build_msim_reduced, closed_form
from ..utils.errors import ValidationError, Violation
from ..utils.rational import format_rational, to_rational

NO_GUESS = "-"


def _guess_outcome(x, guessed):
    """Payoff change of a guess at stakes ``x``: stolen on a match, punished otherwise."""
    if guessed:
        return PayoffPair(x + 1, -x - 1)
    return PayoffPair(-2 * (x + 1), Fraction(0))


def make_pg(n_passwords, stakes) -> NormalFormGame:
    """The password-guessing game with ``n_passwords`` passwords and the given stakes.

    Player 1 does not guess (``no-guess``) or guesses ``g1 .. gN``, player 2
    picks one of the passwords ``p1 .. pN``.

    Raises
    ------
    ValidationError
        If there is no password or the stakes are not positive.
    """
    stakes = to_rational(stakes)
    violations = []
    if n_passwords < 1:
        violations.append(Violation("passwords", (), f"at least one password is needed, got {n_passwords}"))
    if stakes <= 0:
        violations.append(Violation("stakes", (), f"stakes must be > 0, got {format_rational(stakes)}"))
    if violations:
        raise ValidationError(violations)
    u1 = np.full((n_passwords + 1, n_passwords), Fraction(0), dtype=object)
    u2 = np.full((n_passwords + 1, n_passwords), Fraction(0), dtype=object)
    for g in range(n_passwords):
        for p in range(n_passwords):
            u1[g + 1, p], u2[g + 1, p] = _guess_outcome(stakes, g == p)
    return NormalFormGame(u1, u2, ["no-guess"] + [f"g{g + 1}" for g in range(n_passwords)],
                          [f"p{p + 1}" for p in range(n_passwords)],
                          name=f"PG({n_passwords}, {format_rational(stakes)})")


class OptOut(NamedTuple):
    row: int
    col: int
    b1: Fraction
    b2: Fraction


def find_opt_out(game: NormalFormGame, row=None, col=None) -> OptOut:
    """Locates the opt-out row and column: both pay the same ``(B1, B2)`` in every cell.

    Parameters
    ----------
    game : NormalFormGame
        A game with opt-out.
    row, col : int, optional
        Opt-out indices; detected if not given (the last matching ones).

    Raises
    ------
    ValidationError
        If no consistent opt-out structure exists.
    """
    rows, cols = game.shape

    def constant_row(i):
        return len({game.payoff(i, j) for j in range(cols)}) == 1

    def constant_col(j):
        return len({game.payoff(i, j) for i in range(rows)}) == 1

    row_candidates = [i for i in range(rows) if constant_row(i)] if row is None else [row]
    col_candidates = [j for j in range(cols) if constant_col(j)] if col is None else [col]
    for i in reversed(row_candidates):
        for j in reversed(col_candidates):
            pair = game.payoff(i, j)
            if constant_row(i) and constant_col(j):
                return OptOut(i, j, pair.u1, pair.u2)
    logging.error(f"find_opt_out: {game.name} has no opt-out row and column with equal constant payoffs")
    raise ValidationError([Violation("opt-out", (game.name,), "no opt-out row and column paying the same (B1, B2) "
                                                              "in every cell")])


class PasswordModifiedGame(NormalFormGame):
    """A game with opt-out in which every outcome profitable for player 2 is followed by password guessing.

    Player 1 strategies pair a base row with a guess policy (``FT|-`` never
    guesses, ``FT|g2`` guesses password 2), player 2 strategies pair a base
    column with a password (``C|p1``). The opt-out row and column are kept once.

    Attributes
    ----------
    base : NormalFormGame
        The unmodified game.
    opt_out : OptOut
        Opt-out structure of the base game.
    row_map : tuple of (int, int or None)
        Base row and guess (None: no guess) of every row.
    col_map : tuple of (int, int or None)
        Base column and password (None for opt-out) of every column.
    """

    def __init__(self, base: NormalFormGame, n_passwords: int, opt_out: OptOut):
        self.base = base
        self.n_passwords = n_passwords
        self.opt_out = opt_out
        row_map, col_map = [], []
        for i in range(base.shape[0]):
            if i == opt_out.row:
                row_map.append((i, None))
            else:
                row_map += [(i, None)] + [(i, g) for g in range(n_passwords)]
        for j in range(base.shape[1]):
            if j == opt_out.col:
                col_map.append((j, None))
            else:
                col_map += [(j, p) for p in range(n_passwords)]
        self.row_map = tuple(row_map)
        self.col_map = tuple(col_map)
        u1 = np.empty((len(row_map), len(col_map)), dtype=object)
        u2 = np.empty((len(row_map), len(col_map)), dtype=object)
        for r, (i, guess) in enumerate(row_map):
            for c, (j, password) in enumerate(col_map):
                value = base.payoff(i, j)
                profit = value.u2 - opt_out.b2
                if guess is not None and password is not None and profit > 0:
                    change = _guess_outcome(profit, guess == password)
                    value = PayoffPair(value.u1 + change.u1, value.u2 + change.u2)
                u1[r, c], u2[r, c] = value
        s1_labels = [base.s1_labels[i] if i == opt_out.row else
                     f"{base.s1_labels[i]}|{NO_GUESS if g is None else f'g{g + 1}'}" for i, g in row_map]
        s2_labels = [base.s2_labels[j] if p is None else f"{base.s2_labels[j]}|p{p + 1}" for j, p in col_map]
        super().__init__(u1, u2, s1_labels, s2_labels, name=f"{base.name} PG{n_passwords}")

    def lift_p1(self, strategy: MixedStrategy) -> MixedStrategy:
        """Plays the base strategy without ever guessing."""
        weights = {self.row_map.index((i, None)): p for i, p in enumerate(strategy.probs) if p != 0}
        return MixedStrategy.from_weights(1, self.shape[0], weights)

    def lift_p2(self, strategy: MixedStrategy) -> MixedStrategy:
        """Plays the base strategy with a uniformly random password."""
        weights = {}
        for c, (j, password) in enumerate(self.col_map):
            share = Fraction(1) if password is None else Fraction(1, self.n_passwords)
            if strategy.probs[j] != 0:
                weights[c] = strategy.probs[j] * share
        return MixedStrategy.from_weights(2, self.shape[1], weights)


def apply_password_modification(base: NormalFormGame, n_passwords=3, opt_out: Optional[OptOut] = None) -> PasswordModifiedGame:
    """Adds password guessing to a game with opt-out.

    Parameters
    ----------
    base : NormalFormGame
        Game with an opt-out row and column.
    n_passwords : int, optional
        Number of passwords, by default 3.
    opt_out : OptOut, optional
        Opt-out structure, detected if not given.

    Returns
    -------
    PasswordModifiedGame
        ``(|S1| - 1)(N + 1) + 1`` rows and ``(|S2| - 1) N + 1`` columns.
    """
    if n_passwords < 1:
        raise ValidationError([Violation("passwords", (), f"at least one password is needed, got {n_passwords}")])
    opt_out = find_opt_out(base) if opt_out is None else opt_out
    game = PasswordModifiedGame(base, n_passwords, opt_out)
    logging.info(f"apply_password_modification: {base.name} {base.shape} -> {game.shape}")
    return game


def lift_simulation_equilibrium(game: PasswordModifiedGame, result: ClosedFormEquilibrium) -> ClosedFormEquilibrium:
    """Carries a simulation equilibrium of the game without password guessing over to ``game``.

    Player 1 never guesses, player 2 picks passwords uniformly. ``result``
    may be computed on ``game.base`` or on the game obtained by dropping its
    opt-out row and column, which must then be the last ones.

    Raises
    ------
    RefusalError
        With reason ``verification`` if the lifted profile is not an equilibrium.
    """
    base_reduced = result.reduced
    profile = result.profile
    count = game.base.shape[1]
    atoms = {j: game.lift_p2(lift_strategy(base_reduced.p2_map[j], range(len(base_reduced.p2_map[j])), count))
             for j in profile.s2.support}
    reduced = build_msim_reduced(game, base_reduced.config, extra_atoms=list(atoms.values()))
    weights = {}
    for i in profile.s1.support:
        row = reduced.simulate_row if i == base_reduced.simulate_row else game.row_map.index((i, None))
        weights[row] = profile.s1.probs[i]
    s1 = MixedStrategy.from_weights(1, reduced.meta.shape[0], weights)
    s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1],
                                    {reduced.column(atom): profile.s2.probs[j] for j, atom in atoms.items()})
    return closed_form(reduced, s1, s2, result.parameters)
