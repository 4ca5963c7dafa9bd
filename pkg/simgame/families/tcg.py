"""Trust-and-coordination games.

The players first coordinate on one of several trust subgames. Miscoordination
pays ``(B1, B2)``; opting out pays an extra ``epsilon`` to whoever opts out.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

import numpy as np

from ..equilibrium import stackelberg
from ..game import MixedStrategy, NormalFormGame, lift_strategy
from ..simulation import ClosedFormEquilibrium, SimulationConfig, build_msim_reduced, closed_form
from ..utils.errors import RefusalError, ValidationError, Violation
from ..utils.rational import format_rational, to_rational


class TrustSubgame(NamedTuple):
    """Payoffs of one trust subgame.

    Trust against cooperate pays ``(g1, g2)``, trust against defect ``(h1, a2)``
    and walking out ``(n1, h2)`` whatever player 2 does.
    """
    g1: Fraction
    g2: Fraction
    h1: Fraction
    a2: Fraction
    n1: Fraction
    h2: Fraction

    def game(self, name="subgame") -> NormalFormGame:
        return NormalFormGame([[self.g1, self.h1], [self.n1, self.n1]],
                              [[self.g2, self.a2], [self.h2, self.h2]],
                              ["T", "WO"], ["C", "D"], name=name)


@dataclass(frozen=True)
class TcgSpec:
    """Parameters of a trust-and-coordination game.

    Parameters
    ----------
    b1, b2 : Fraction
        Miscoordination payoffs.
    epsilon : Fraction, optional
        Opt-out bonus, by default 1.
    subgames : tuple of TrustSubgame
        One trust subgame per coordination action.
    name : str, optional
        Game name.
    """
    b1: Fraction
    b2: Fraction
    epsilon: Fraction = Fraction(1)
    subgames: Tuple[TrustSubgame, ...] = ()
    name: str = "TCG"

    def __post_init__(self):
        object.__setattr__(self, "b1", to_rational(self.b1))
        object.__setattr__(self, "b2", to_rational(self.b2))
        object.__setattr__(self, "epsilon", to_rational(self.epsilon))
        object.__setattr__(self, "subgames", tuple(TrustSubgame(*(to_rational(v) for v in s))
                                                   for s in self.subgames))

    @property
    def n(self) -> int:
        return len(self.subgames)

    def violations(self):
        """Violated payoff orderings, empty if the parameters are valid."""
        violations = []
        if self.n < 1:
            violations.append(Violation("subgames", (), "at least one trust subgame is needed"))
        if self.epsilon <= 0:
            violations.append(Violation("epsilon", (), f"epsilon must be > 0, got {format_rational(self.epsilon)}"))
        b1, b2, eps = self.b1, self.b2, self.epsilon
        for k, s in enumerate(self.subgames):
            if not (s.h1 < b1 < b1 + eps < s.n1 < s.g1):
                violations.append(Violation("player1", (f"subgame {k + 1}",), "requires H1 < B1 < B1 + eps < N1 < G1"))
            if not (s.h2 < b2 < b2 + eps < s.g2 < s.a2):
                violations.append(Violation("player2", (f"subgame {k + 1}",), "requires H2 < B2 < B2 + eps < G2 < A2"))
        return violations

    def validate(self):
        violations = self.violations()
        if violations:
            logging.error(f"TcgSpec: {self.name} violates {len(violations)} condition(s)")
            raise ValidationError(violations)
        return self

    def subgame_game(self, k) -> NormalFormGame:
        return self.subgames[k].game(f"{self.name} subgame {k + 1}")


def make_tcg(spec: TcgSpec) -> NormalFormGame:
    """Normal form of a trust-and-coordination game.

    Rows are ``a1_k:T`` and ``a1_k:WO`` for every subgame followed by ``OO``,
    columns ``a2_k:C`` and ``a2_k:D`` followed by ``OO``.
    """
    spec.validate()
    size = 2 * spec.n + 1
    u1 = np.empty((size, size), dtype=object)
    u2 = np.empty((size, size), dtype=object)
    u1.fill(spec.b1)
    u2.fill(spec.b2)
    for k in range(spec.n):
        sub = spec.subgame_game(k)
        block = slice(2 * k, 2 * k + 2)
        u1[block, block] = sub.u1
        u2[block, block] = sub.u2
    u1[size - 1, :] += spec.epsilon
    u2[:, size - 1] += spec.epsilon
    s1_labels, s2_labels = [], []
    for k in range(spec.n):
        s1_labels += [f"a1_{k + 1}:T", f"a1_{k + 1}:WO"]
        s2_labels += [f"a2_{k + 1}:C", f"a2_{k + 1}:D"]
    return NormalFormGame(u1, u2, s1_labels + ["OO"], s2_labels + ["OO"], name=spec.name)


def subgame_values(spec: TcgSpec):
    """Stackelberg outcome of every subgame, player 2 leading."""
    return [stackelberg(spec.subgame_game(k)) for k in range(spec.n)]


def _argmax(values):
    best = max(values)
    return [k for k, v in enumerate(values) if v == best]


def tcg_simulation_equilibrium(spec: TcgSpec, cost) -> ClosedFormEquilibrium:
    """Simulation equilibrium that coordinates on player 1's favourite subgame.

    Player 2 plays the Stackelberg commitment of subgame ``k1`` (best for
    player 1) and, with probability ``p_D``, that of subgame ``k2`` (best for
    player 2). Player 1 trusts in ``k1`` or simulates with probability ``p_sim``.

    Parameters
    ----------
    spec : TcgSpec
        A valid spec.
    cost : Fraction
        Simulation cost.

    Returns
    -------
    ClosedFormEquilibrium
        Parameters ``p_sim``, ``p_D``, ``k1``, ``k2`` (0-based), ``v1``, ``v2``
        (the subgame values) and ``horrible_bound``.

    Raises
    ------
    RefusalError
        ``argmax_overlap`` if one subgame is best for both players,
        ``horrible_condition`` if defection in ``k1`` is not bad enough for
        player 2, ``cost_too_high`` or ``verification``.
    """
    spec.validate()
    config = SimulationConfig(to_rational(cost))
    cost = config.cost
    outcomes = subgame_values(spec)
    v1 = [o.payoffs.u1 for o in outcomes]
    v2 = [o.payoffs.u2 for o in outcomes]
    best1, best2 = _argmax(v1), _argmax(v2)
    if set(best1) & set(best2):
        logging.error(f"tcg_simulation_equilibrium: subgames {sorted(set(best1) & set(best2))} are best for both players")
        raise RefusalError("argmax_overlap", "some subgame maximises the value of both players",
                           {"argmax1": best1, "argmax2": best2})
    k1, k2 = best1[0], best2[0]
    sub1 = spec.subgames[k1]
    p_sim = (v2[k1] - spec.b2) / (v2[k2] - spec.b2)
    horrible_bound = (v2[k1] - (1 - p_sim) * sub1.a2) / p_sim
    if not sub1.h2 < horrible_bound:
        logging.error(f"tcg_simulation_equilibrium: H2 of subgame {k1 + 1} must be below {horrible_bound}")
        raise RefusalError("horrible_condition", f"H2 of subgame {k1 + 1} must be below "
                           f"{format_rational(horrible_bound)}", {"bound": horrible_bound, "h2": sub1.h2})
    cost_bound = (v1[k2] - spec.b1) / 2
    if cost >= cost_bound:
        logging.error(f"tcg_simulation_equilibrium: cost {cost} not below {cost_bound}")
        raise RefusalError("cost_too_high", f"simulation cost {format_rational(cost)} must be below "
                           f"{format_rational(cost_bound)}", {"cost_bound": cost_bound})
    p_defect = cost / (v1[k2] - spec.b1)
    base = make_tcg(spec)
    count = base.shape[1]
    lifted = [lift_strategy(o.leader_strategy, (2 * k, 2 * k + 1), count) for k, o in enumerate(outcomes)]
    reduced = build_msim_reduced(base, config, extra_atoms=lifted)
    s1 = MixedStrategy.from_weights(1, reduced.meta.shape[0], {2 * k1: 1 - p_sim, reduced.simulate_row: p_sim})
    s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1], {reduced.column(lifted[k2]): p_defect,
                                                                reduced.column(lifted[k1]): 1 - p_defect})
    parameters = {"p_sim": p_sim, "p_D": p_defect, "k1": k1, "k2": k2, "v1": tuple(v1), "v2": tuple(v2),
                  "horrible_bound": horrible_bound, "cost_bound": cost_bound}
    result = closed_form(reduced, s1, s2, parameters)
    logging.info(f"tcg_simulation_equilibrium: {spec.name} cost {format_rational(cost)}: "
                 f"p_sim {format_rational(p_sim)}, p_D {format_rational(p_defect)}")
    return result
