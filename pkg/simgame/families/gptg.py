"""Generalised partial-trust games.

Player 2 cooperates (column 0) or defects (column 1), player 1 picks one of
several trust levels or walks out. Simulation lets player 2 commit to the
defection probability that keeps full trust a best response while occasionally
defecting outright.
"""
import logging
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from ..game import MixedStrategy, NormalFormGame
from ..simulation import ClosedFormEquilibrium, SimulationConfig, build_msim_reduced, closed_form
from ..utils.errors import RefusalError, ValidationError, Violation
from ..utils.rational import format_rational, to_rational

C, D = 0, 1


class HierarchyEntry(NamedTuple):
    """A trust level with the interval of total defection probabilities on which it is a best response."""
    strategy: int
    delta_low: Fraction
    delta_high: Fraction


class SufficiencyTerm(NamedTuple):
    strategy: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self):
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class PtgAnalysis:
    """Structure of a generalised partial-trust game.

    Attributes
    ----------
    game : NormalFormGame
        The analysed game.
    hierarchy : tuple of HierarchyEntry
        Full trust first, walk out last; the intervals partition [0, 1].
    ft_index, wo_index : int
        Rows of full trust and walk out.
    incentivise : dict
        Row index to the commitment with the largest defection probability keeping the row a best response.
    nontrivial : bool
        Whether some trust level has better odds than full trust.
    c0 : Fraction or None
        The cost constant of the odds-ratio bound, None for trivial games.
    cost_bound : Fraction or None
        Largest cost for which the combined defection still keeps T1 a best response.
    sufficiency : tuple of SufficiencyTerm
        The terms of the exact equilibrium condition, one per trust level between full trust and walk out.
    sufficiency_ok : bool
        Whether all terms hold.
    sufficient_bound_ok : bool
        Whether the simple concrete bound on u2(FT, C) holds (informational).
    redundant : tuple of int
        Rows that are never the unique best response on an open interval.
    """
    game: NormalFormGame
    hierarchy: Tuple[HierarchyEntry, ...]
    ft_index: int
    wo_index: int
    incentivise: dict = field(default_factory=dict)
    nontrivial: bool = False
    c0: Optional[Fraction] = None
    cost_bound: Optional[Fraction] = None
    sufficiency: Tuple[SufficiencyTerm, ...] = ()
    sufficiency_ok: bool = False
    sufficient_bound_ok: bool = False
    redundant: Tuple[int, ...] = ()

    def delta(self, strategy) -> Fraction:
        for entry in self.hierarchy:
            if entry.strategy == strategy:
                return entry.delta_high
        raise KeyError(f"strategy {strategy} is not part of the hierarchy")

    @property
    def trust_levels(self):
        """Hierarchy rows strictly between full trust and walk out."""
        return tuple(e.strategy for e in self.hierarchy[1:-1])


def _wo_rows(game):
    return [i for i in range(game.shape[0])
            if all(game.u1[i, j] == 0 and game.u2[i, j] == 0 for j in range(game.shape[1]))]


def gptg_violations(game: NormalFormGame):
    """All violated conditions of a generalised partial-trust game.

    Returns
    -------
    list of Violation
        Empty if the game is valid.
    """
    labels = game.s1_labels
    violations = []
    if game.shape[1] != 2:
        return [Violation("1", tuple(game.s2_labels), f"player 2 needs exactly two strategies, has {game.shape[1]}")]
    u1, u2 = game.u1, game.u2
    wo = _wo_rows(game)
    if len(wo) != 1:
        violations.append(Violation("2", tuple(labels[i] for i in wo),
                                    f"expected exactly one walk-out row paying (0, 0), found {len(wo)}"))
    trust = [i for i in range(game.shape[0]) if i not in wo]
    for t in trust:
        if not (u1[t, C] > 0 > u1[t, D]):
            violations.append(Violation("3", (labels[t],), "requires u1(T, C) > 0 > u1(T, D)"))
        if not (u2[t, D] > u2[t, C] > 0):
            violations.append(Violation("3", (labels[t],), "requires u2(T, D) > u2(T, C) > 0"))
    for s, t in itertools.combinations(trust, 2):
        if u1[s, C] == u1[t, C]:
            violations.append(Violation("4a", (labels[s], labels[t]), "u1(T, C) must differ between trust levels"))
            continue
        high, low = (s, t) if u1[s, C] > u1[t, C] else (t, s)
        if not (u2[high, C] > u2[low, C] and u1[high, D] < u1[low, D] and u2[high, D] > u2[low, D]):
            violations.append(Violation("4b", (labels[high], labels[low]),
                                        "more trust must raise u2(T, C), u2(T, D) and lower u1(T, D)"))
    rows = range(game.shape[0])
    for t in rows:
        for s, r in itertools.combinations([i for i in rows if i != t], 2):
            if u1[s, C] != u1[r, C]:
                weight = (u1[t, C] - u1[r, C]) / (u1[s, C] - u1[r, C])
            elif u1[s, D] != u1[r, D]:
                weight = (u1[t, D] - u1[r, D]) / (u1[s, D] - u1[r, D])
            else:
                continue
            if not 0 <= weight <= 1:
                continue
            if any(weight * u1[s, j] + (1 - weight) * u1[r, j] != u1[t, j] for j in (C, D)):
                continue
            if any(weight * u2[s, j] + (1 - weight) * u2[r, j] != u2[t, j] for j in (C, D)):
                violations.append(Violation("5", (labels[t], labels[s], labels[r]),
                                            f"{format_rational(weight)} {labels[s]} + {format_rational(1 - weight)} "
                                            f"{labels[r]} matches u1 of {labels[t]} but not u2"))
    return violations


def _line(game, row):
    """Player 1 payoff of ``row`` as a function of the defection probability: value at 0 and slope."""
    good = game.u1[row, C]
    return good, game.u1[row, D] - good


def trust_hierarchy(game: NormalFormGame, wo_index: int):
    """Upper envelope of player 1's payoff lines over the defection probability.

    Returns
    -------
    tuple of HierarchyEntry
        From full trust at defection 0 to walk out at defection 1.
    """
    rows = range(game.shape[0])
    current = max(rows, key=lambda r: (game.u1[r, C], r != wo_index))
    low = Fraction(0)
    hierarchy = []
    while current != wo_index:
        value, slope = _line(game, current)
        best = None
        for other in rows:
            if other == current:
                continue
            other_value, other_slope = _line(game, other)
            if other_slope <= slope:
                continue
            crossing = (value - other_value) / (other_slope - slope)
            if crossing < low:
                continue
            if best is None or crossing < best[0] or (crossing == best[0] and other_slope > best[2]):
                best = (crossing, other, other_slope)
        hierarchy.append(HierarchyEntry(current, low, best[0]))
        low, current = best[0], best[1]
    hierarchy.append(HierarchyEntry(wo_index, low, Fraction(1)))
    return tuple(hierarchy)


def _odds(delta):
    return delta / (1 - delta)


def validate_gptg(game: NormalFormGame) -> PtgAnalysis:
    """Checks the conditions of a generalised partial-trust game and derives its structure.

    Parameters
    ----------
    game : NormalFormGame
        Column 0 is cooperate, column 1 defect.

    Returns
    -------
    PtgAnalysis
        Hierarchy, commitments, cost bounds and the equilibrium condition terms.

    Raises
    ------
    ValidationError
        Listing every violated condition with the strategies involved.
    """
    violations = gptg_violations(game)
    if violations:
        logging.error(f"validate_gptg: {game.name} violates {len(violations)} condition(s)")
        raise ValidationError(violations)
    u1, u2 = game.u1, game.u2
    wo = _wo_rows(game)[0]
    hierarchy = trust_hierarchy(game, wo)
    ft = hierarchy[0].strategy
    incentivise = {e.strategy: MixedStrategy(2, (1 - e.delta_high, e.delta_high)) for e in hierarchy[:-1]}
    redundant = tuple(i for i in range(game.shape[0]) if i not in {e.strategy for e in hierarchy})
    trust = [i for i in range(game.shape[0]) if i != wo]
    nontrivial = any(u1[t, C] / -u1[t, D] > u1[ft, C] / -u1[ft, D] for t in trust)
    n1, n2 = u1[wo, C], u2[wo, C]
    delta_ft = hierarchy[0].delta_high
    levels = [e for e in hierarchy[1:-1]]
    c0, cost_bound, terms = None, None, ()
    if nontrivial and levels:
        t1 = levels[0].strategy
        c0 = (_odds(levels[0].delta_high) - _odds(delta_ft)) * (n1 - u1[t1, D])
        cost_bound = (n1 - u1[t1, D]) * (levels[0].delta_high - delta_ft) / (1 - delta_ft)
        denominator = delta_ft * (u2[ft, D] - u2[ft, C]) + (u2[ft, C] - n2)
        terms = tuple(SufficiencyTerm(e.strategy,
                                      (e.delta_high * (u2[e.strategy, D] - u2[e.strategy, C]) + (u2[e.strategy, C] - n2)) / denominator,
                                      (1 - e.delta_high) / (1 - delta_ft))
                      for e in levels)
    sufficient_bound_ok = all(u2[ft, C] - n2 >= (u2[e.strategy, D] - n2) / (1 - e.delta_high) for e in levels)
    analysis = PtgAnalysis(game, hierarchy, ft, wo, incentivise, nontrivial, c0, cost_bound, terms,
                           bool(terms) and all(t.ok for t in terms), sufficient_bound_ok, redundant)
    logging.info(f"validate_gptg: {game.name} hierarchy "
                 f"{', '.join(game.s1_labels[e.strategy] for e in hierarchy)}, nontrivial {nontrivial}")
    return analysis


def gptg_simulation_equilibrium(analysis: PtgAnalysis, cost) -> ClosedFormEquilibrium:
    """Simulation equilibrium in which player 1 mixes simulation with the second-most trusting level.

    Player 1 plays ``p_sim`` m-sim and T1 otherwise; player 2 defects with
    probability ``p_D`` and plays the full-trust commitment otherwise.

    Parameters
    ----------
    analysis : PtgAnalysis
        Result of `validate_gptg`.
    cost : Fraction
        Simulation cost.

    Returns
    -------
    ClosedFormEquilibrium
        The verified profile in the reduced meta-game, parameters ``p_sim``, ``p_D``, ``c0``,
        ``cost_bound`` and ``delta_ft``.

    Raises
    ------
    RefusalError
        For trivial games (``trivial``), too high costs (``cost_too_high``), a failing
        equilibrium condition (``sufficiency``) or a failed verification (``verification``).
    """
    config = SimulationConfig(to_rational(cost))
    cost = config.cost
    game = analysis.game
    labels = game.s1_labels
    if not analysis.nontrivial or not analysis.trust_levels:
        logging.error(f"gptg_simulation_equilibrium: {game.name} is a trivial partial-trust game")
        raise RefusalError("trivial", f"{game.name} has no trust level between full trust and walk out")
    if cost >= analysis.c0 or cost > analysis.cost_bound:
        bound = min(analysis.c0, analysis.cost_bound)
        logging.error(f"gptg_simulation_equilibrium: cost {cost} too high for {game.name}")
        raise RefusalError("cost_too_high", f"simulation cost {format_rational(cost)} exceeds the bound "
                           f"{format_rational(bound)}", {"c0": analysis.c0, "cost_bound": analysis.cost_bound})
    failing = [t for t in analysis.sufficiency if not t.ok]
    if failing:
        first = failing[0]
        logging.error(f"gptg_simulation_equilibrium: equilibrium condition fails for {labels[first.strategy]}")
        raise RefusalError("sufficiency", f"equilibrium condition fails for {labels[first.strategy]}: "
                           f"{format_rational(first.lhs)} > {format_rational(first.rhs)}",
                           {"strategy": labels[first.strategy], "index": analysis.trust_levels.index(first.strategy) + 1,
                            "lhs": first.lhs, "rhs": first.rhs})
    u1, u2 = game.u1, game.u2
    ft, wo, t1 = analysis.ft_index, analysis.wo_index, analysis.trust_levels[0]
    delta_ft = analysis.delta(ft)
    n1, n2 = u1[wo, C], u2[wo, C]
    p_defect = cost / (n1 - u1[t1, D])
    sim_part = (1 - delta_ft) * (u2[t1, D] - u2[t1, C])
    rest = delta_ft * (u2[ft, D] - u2[ft, C]) + (u2[ft, C] - n2)
    p_sim = sim_part / (sim_part + rest)
    commitment = analysis.incentivise[ft]
    defect = MixedStrategy.pure(2, 2, D)
    reduced = build_msim_reduced(game, config, extra_atoms=(commitment, defect))
    s1 = MixedStrategy.from_weights(1, reduced.meta.shape[0], {t1: 1 - p_sim, reduced.simulate_row: p_sim})
    s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1], {reduced.column(defect): p_defect,
                                                                reduced.column(commitment): 1 - p_defect})
    parameters = {"p_sim": p_sim, "p_D": p_defect, "c0": analysis.c0, "cost_bound": analysis.cost_bound,
                  "delta_ft": delta_ft, "t1": labels[t1]}
    result = closed_form(reduced, s1, s2, parameters)
    logging.info(f"gptg_simulation_equilibrium: {game.name} cost {format_rational(cost)}: "
                 f"p_sim {format_rational(p_sim)}, p_D {format_rational(p_defect)}")
    return result
