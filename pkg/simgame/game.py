import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

import numpy as np
import pandas as pd

from .utils.errors import ValidationError, Violation
from .utils.linalg import as_fraction_array
from .utils.rational import format_rational, to_rational


class PayoffPair(NamedTuple):
    u1: Fraction
    u2: Fraction

    def __str__(self):
        return f"({format_rational(self.u1)}, {format_rational(self.u2)})"


def strategy_order_key(probs):
    """Sort key placing more weight on earlier strategies first, e.g. C before 5/6 C + 1/6 D before D."""
    return tuple(-p for p in probs)


@dataclass(frozen=True)
class MixedStrategy:
    """Exact probability distribution over the pure strategies of one player.

    Parameters
    ----------
    owner : int
        The player, 1 or 2.
    probs : tuple of Fraction
        One entry per pure strategy of the owner, nonnegative and summing to exactly 1.
    """
    owner: int
    probs: Tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(to_rational(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        violations = []
        if self.owner not in (1, 2):
            violations.append(Violation("owner", (), f"owner must be 1 or 2, got {self.owner}"))
        if len(probs) == 0:
            violations.append(Violation("probs", (), "a mixed strategy needs at least one entry"))
        negative = [str(i) for i, p in enumerate(probs) if p < 0]
        if negative:
            violations.append(Violation("probs", tuple(negative), "probabilities must be nonnegative"))
        if len(probs) > 0 and sum(probs) != 1:
            violations.append(Violation("probs", (), f"probabilities sum to {format_rational(sum(probs))}, not 1"))
        if violations:
            raise ValidationError(violations)

    @classmethod
    def pure(cls, owner, count, index):
        probs = [Fraction(0)] * count
        probs[index] = Fraction(1)
        return cls(owner, tuple(probs))

    @classmethod
    def uniform(cls, owner, count, indices=None):
        indices = range(count) if indices is None else list(indices)
        weight = Fraction(1, len(indices))
        probs = [Fraction(0)] * count
        for i in indices:
            probs[i] = weight
        return cls(owner, tuple(probs))

    @classmethod
    def from_weights(cls, owner, count, weights):
        """Builds a strategy from a sparse ``{index: weight}`` mapping."""
        probs = [Fraction(0)] * count
        for index, weight in weights.items():
            probs[index] += to_rational(weight)
        return cls(owner, tuple(probs))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.probs, dtype=object)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p != 0)

    @property
    def is_pure(self) -> bool:
        return len(self.support) == 1

    def __len__(self):
        return len(self.probs)

    def label(self, labels=None) -> str:
        """Exact human readable label, e.g. ``5/6 C + 1/6 D``."""
        labels = labels if labels is not None else [str(i) for i in range(len(self.probs))]
        if self.is_pure:
            return str(labels[self.support[0]])
        return " + ".join(f"{format_rational(self.probs[i])} {labels[i]}" for i in self.support)


class NormalFormGame(object):
    """Two-player normal-form game with exact rational payoffs.

    Player 1 chooses rows, player 2 chooses columns.

    Parameters
    ----------
    u1 : array_like
        |S1| x |S2| payoffs of player 1 (ints, Fractions or rational literals).
    u2 : array_like
        |S1| x |S2| payoffs of player 2.
    s1_labels : list of str, optional
        Names of the player 1 strategies, by default ``r0, r1, ...``.
    s2_labels : list of str, optional
        Names of the player 2 strategies, by default ``c0, c1, ...``.
    name : str, optional
        Name of the game, by default "game".

    Raises
    ------
    ValidationError
        If the matrices are not rectangular, do not match, or labels are missing or duplicated.
    """

    def __init__(self, u1, u2, s1_labels=None, s2_labels=None, name="game") -> None:
        super().__init__()
        violations = []
        try:
            self._u1 = as_fraction_array(u1, ndim=2)
            self._u2 = as_fraction_array(u2, ndim=2)
        except (ValueError, TypeError) as e:
            logging.error(f"NormalFormGame {name}: invalid payoff matrices, {e}")
            raise ValidationError([Violation("payoffs", (), str(e))])
        if self._u1.shape != self._u2.shape:
            violations.append(Violation("payoffs", (), f"payoff shapes differ: {self._u1.shape} vs {self._u2.shape}"))
        rows, cols = self._u1.shape
        if rows == 0 or cols == 0:
            violations.append(Violation("payoffs", (), "both players need at least one strategy"))
        s1_labels = [f"r{i}" for i in range(rows)] if s1_labels is None else [str(l) for l in s1_labels]
        s2_labels = [f"c{j}" for j in range(cols)] if s2_labels is None else [str(l) for l in s2_labels]
        for player, labels, count in ((1, s1_labels, rows), (2, s2_labels, cols)):
            if len(labels) != count:
                violations.append(Violation("labels", (), f"player {player} has {len(labels)} labels for {count} strategies"))
            duplicates = sorted({l for l in labels if labels.count(l) > 1})
            if duplicates:
                violations.append(Violation("labels", tuple(duplicates), f"player {player} labels are not unique"))
        if violations:
            logging.error(f"NormalFormGame {name}: {len(violations)} violation(s)")
            raise ValidationError(violations)
        self._u1.flags.writeable = False
        self._u2.flags.writeable = False
        self._s1_labels = tuple(s1_labels)
        self._s2_labels = tuple(s2_labels)
        self._name = name

    @property
    def name(self):
        return self._name

    @property
    def u1(self) -> np.ndarray:
        return self._u1

    @property
    def u2(self) -> np.ndarray:
        return self._u2

    @property
    def s1_labels(self):
        return self._s1_labels

    @property
    def s2_labels(self):
        return self._s2_labels

    @property
    def shape(self):
        return self._u1.shape

    def payoff(self, row, col) -> PayoffPair:
        return PayoffPair(self._u1[row, col], self._u2[row, col])

    def fingerprint(self):
        """Hashable identity of labels and payoffs."""
        return (self._name, self._s1_labels, self._s2_labels,
                tuple(self._u1.flat), tuple(self._u2.flat))

    def restrict(self, rows, cols, name=None):
        """The subgame on the given row and column indices."""
        rows, cols = list(rows), list(cols)
        return NormalFormGame(self._u1[np.ix_(rows, cols)], self._u2[np.ix_(rows, cols)],
                              [self._s1_labels[i] for i in rows], [self._s2_labels[j] for j in cols],
                              name=name if name is not None else self._name)

    def to_pandas(self) -> pd.DataFrame:
        """Export the payoff table as a pandas.DataFrame with ``u1, u2`` cells.

        Returns
        -------
        pd.DataFrame
            Rows are player 1 strategies, columns player 2 strategies.
        """
        cells = [[str(self.payoff(i, j)) for j in range(self.shape[1])] for i in range(self.shape[0])]
        return pd.DataFrame(cells, index=list(self._s1_labels), columns=list(self._s2_labels))

    def __eq__(self, other):
        if not isinstance(other, NormalFormGame):
            return NotImplemented
        return self.fingerprint()[1:] == other.fingerprint()[1:]

    def __hash__(self):
        return hash(self.fingerprint()[1:])

    def __repr__(self):
        return f"NormalFormGame(name={self._name!r}, shape={self.shape})"

    def __str__(self):
        return f"{self._name}\n{self.to_pandas().to_string()}"


def _check_strategy(game, strategy, owner):
    count = game.shape[owner - 1]
    if strategy.owner != owner or len(strategy) != count:
        logging.error(f"Strategy of player {strategy.owner} with {len(strategy)} entries does not fit player {owner} of {game.name}!")
        raise ValueError(f"strategy of player {strategy.owner} with {len(strategy)} entries "
                         f"does not fit player {owner} ({count} strategies) of {game.name}")


def expected_utility(game: NormalFormGame, s1: MixedStrategy, s2: MixedStrategy) -> PayoffPair:
    """Exact expected payoffs of a mixed strategy profile.

    Parameters
    ----------
    game : NormalFormGame
        The game.
    s1 : MixedStrategy
        Player 1 strategy.
    s2 : MixedStrategy
        Player 2 strategy.

    Returns
    -------
    PayoffPair
        The bilinear forms s1 U1 s2 and s1 U2 s2.

    Raises
    ------
    ValueError
        If a strategy does not belong to the respective player.
    """
    _check_strategy(game, s1, 1)
    _check_strategy(game, s2, 2)
    x, y = s1.array, s2.array
    return PayoffPair(Fraction(x @ game.u1 @ y), Fraction(x @ game.u2 @ y))


def _responder_values(game, strategy):
    """Payoffs of the responding player and of the strategy owner for every reply."""
    if strategy.owner == 2:
        _check_strategy(game, strategy, 2)
        y = strategy.array
        return game.u1 @ y, game.u2 @ y
    _check_strategy(game, strategy, 1)
    x = strategy.array
    return x @ game.u2, x @ game.u1


def best_responses(game: NormalFormGame, strategy: MixedStrategy) -> Tuple[int, ...]:
    """Pure best responses to a strategy of either player, sorted by index.

    A player 2 strategy is answered by player 1 (row indices), a player 1
    strategy by player 2 (column indices).
    """
    own, _ = _responder_values(game, strategy)
    best = max(own)
    return tuple(i for i, v in enumerate(own) if v == best)


def favourable_best_responses(game: NormalFormGame, strategy: MixedStrategy) -> Tuple[int, ...]:
    """Best responses breaking ties in favour of the owner of ``strategy``."""
    own, other = _responder_values(game, strategy)
    best = max(own)
    candidates = [i for i, v in enumerate(own) if v == best]
    favourite = max(other[i] for i in candidates)
    return tuple(i for i in candidates if other[i] == favourite)


def favourable_reply(game: NormalFormGame, strategy: MixedStrategy) -> int:
    """The lowest-index favourable best response."""
    return favourable_best_responses(game, strategy)[0]


def maxmin_value(game: NormalFormGame, player: int) -> Fraction:
    """Pure maxmin value of ``player``."""
    if player == 1:
        return max(min(row) for row in game.u1)
    if player == 2:
        return max(min(col) for col in game.u2.T)
    logging.error(f"maxmin_value: invalid player {player}!")
    raise ValueError(f"player must be 1 or 2, got {player}")


def pareto_strictly_improves(a: PayoffPair, b: PayoffPair) -> bool:
    return a[0] > b[0] and a[1] > b[1]


def is_nash(game: NormalFormGame, s1: MixedStrategy, s2: MixedStrategy) -> bool:
    """Exact mutual best-response check."""
    rows = set(best_responses(game, s2))
    cols = set(best_responses(game, s1))
    return set(s1.support) <= rows and set(s2.support) <= cols


def iterated_strict_dominance(game: NormalFormGame):
    """Removes pure strategies strictly dominated by another pure strategy until none is left.

    Returns
    -------
    tuple of (tuple of int, tuple of int)
        Surviving row and column indices in increasing order.
    """
    rows = list(range(game.shape[0]))
    cols = list(range(game.shape[1]))
    changed = True
    while changed:
        changed = False
        u1 = game.u1[np.ix_(rows, cols)]
        for i in range(len(rows)):
            if any(all(u1[k, :] > u1[i, :]) for k in range(len(rows)) if k != i):
                logging.debug(f"{game.name}: row {game.s1_labels[rows[i]]} is strictly dominated")
                del rows[i]
                changed = True
                break
        if changed:
            continue
        u2 = game.u2[np.ix_(rows, cols)]
        for j in range(len(cols)):
            if any(all(u2[:, k] > u2[:, j]) for k in range(len(cols)) if k != j):
                logging.debug(f"{game.name}: column {game.s2_labels[cols[j]]} is strictly dominated")
                del cols[j]
                changed = True
                break
    return tuple(rows), tuple(cols)


def lift_strategy(strategy: MixedStrategy, indices, count) -> MixedStrategy:
    """Embeds a strategy of a restricted game back into the full strategy set."""
    probs = [Fraction(0)] * count
    for p, index in zip(strategy.probs, indices):
        probs[index] = p
    return MixedStrategy(strategy.owner, tuple(probs))


__all__ = ["PayoffPair", "MixedStrategy", "NormalFormGame", "expected_utility", "best_responses",
           "favourable_best_responses", "favourable_reply", "maxmin_value", "pareto_strictly_improves",
           "is_nash", "iterated_strict_dominance", "lift_strategy", "strategy_order_key"]
