"""Simulation games: player 1 may pay to observe player 2's strategy and best-respond.

The pure-strategy variant restricts player 2 to pure strategies. The mixed
variant lets player 2 mix over mixed strategies; it is represented by a finite
meta-game whose columns are the vertices of the best-response regions.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum, auto
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .equilibrium import EquilibriumProfile, enumerate_nash, equilibrium_payoffs
from .game import (MixedStrategy, NormalFormGame, PayoffPair, best_responses, expected_utility,
                   favourable_reply, is_nash, strategy_order_key)
from .geometry import decompose_simplex, region_vertex_bound, region_vertices
from .utils.errors import RefusalError, ValidationError, Violation
from .utils.rational import format_rational, to_rational

SIMULATE_LABELS = {"pure": "p-sim", "mixed": "m-sim"}


class SimulationKind(Enum):
    Pure = "pure"
    Mixed = "mixed"


class MetaAction(Enum):
    Simulate = auto()


class Criterion(Enum):
    """What a simulation equilibrium must improve over every equilibrium of the base game."""
    Both = "a"
    Player1 = "b"
    Player2 = "c"
    Welfare = "d"
    Minimum = "e"


@dataclass(frozen=True)
class SimulationConfig:
    """Cost and kind of simulation.

    Parameters
    ----------
    cost : Fraction
        The simulation cost, strictly positive.
    kind : SimulationKind or str, optional
        Pure or mixed simulation, by default mixed.
    """
    cost: Fraction
    kind: SimulationKind = SimulationKind.Mixed

    def __post_init__(self):
        object.__setattr__(self, "cost", to_rational(self.cost))
        if not isinstance(self.kind, SimulationKind):
            object.__setattr__(self, "kind", SimulationKind(self.kind))
        if self.cost <= 0:
            logging.error(f"SimulationConfig: cost must be positive, got {self.cost}")
            raise ValidationError([Violation("cost", (), f"simulation cost must be > 0, got {format_rational(self.cost)}")])


@dataclass(frozen=True)
class MetaStrategy:
    """Finite distribution over player 2 mixed strategies.

    Duplicate atoms are merged, atoms with zero weight dropped.
    """
    atoms: Tuple[Tuple[MixedStrategy, Fraction], ...]

    def __post_init__(self):
        merged = {}
        for atom, weight in self.atoms:
            merged[atom] = merged.get(atom, Fraction(0)) + to_rational(weight)
        violations = []
        if any(w < 0 for w in merged.values()):
            violations.append(Violation("weights", (), "meta-strategy weights must be nonnegative"))
        if sum(merged.values()) != 1:
            violations.append(Violation("weights", (), "meta-strategy weights must sum to 1"))
        if len({(a.owner, len(a)) for a in merged}) > 1:
            violations.append(Violation("atoms", (), "all atoms must be strategies of the same player"))
        if violations:
            raise ValidationError(violations)
        atoms = tuple(sorted(((a, w) for a, w in merged.items() if w != 0),
                             key=lambda item: strategy_order_key(item[0].probs)))
        object.__setattr__(self, "atoms", atoms)

    def aggregate(self) -> MixedStrategy:
        """The base strategy induced by the meta-strategy."""
        first = self.atoms[0][0]
        probs = [Fraction(0)] * len(first)
        for atom, weight in self.atoms:
            for j, p in enumerate(atom.probs):
                probs[j] += weight * p
        return MixedStrategy(first.owner, tuple(probs))


@dataclass(frozen=True)
class ReducedSimGame:
    """Finite simulation meta-game with the mapping back to the base game.

    Attributes
    ----------
    meta : NormalFormGame
        The meta-game, the simulate row is the last row.
    p1_map : tuple
        Base row index for every meta row, ``MetaAction.Simulate`` for the last one.
    p2_map : tuple of MixedStrategy
        Base strategy of player 2 behind every meta column.
    config : SimulationConfig
        Cost and kind.
    base : NormalFormGame
        The base game.
    p2_regions : tuple of tuple of int
        For every column, the base rows that are best responses to it.
    """
    meta: NormalFormGame
    p1_map: tuple
    p2_map: Tuple[MixedStrategy, ...]
    config: SimulationConfig
    base: NormalFormGame
    p2_regions: Tuple[Tuple[int, ...], ...] = ()

    @property
    def simulate_row(self) -> int:
        return len(self.p1_map) - 1

    def meta_strategy(self, s2: MixedStrategy) -> MetaStrategy:
        """The meta-strategy behind a mixed strategy over the meta columns."""
        return MetaStrategy(tuple((self.p2_map[j], s2.probs[j]) for j in s2.support))

    def column(self, atom: MixedStrategy) -> int:
        return self.p2_map.index(atom)


@dataclass(frozen=True)
class ClosedFormEquilibrium:
    """Equilibrium of a reduced simulation game constructed from closed formulas.

    ``parameters`` holds the exact values the construction is based on, e.g.
    ``p_sim`` and ``p_D``.
    """
    profile: EquilibriumProfile
    reduced: ReducedSimGame
    parameters: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DecisionReport:
    helps: bool
    criterion: Criterion
    witness: Optional[EquilibriumProfile]
    witnesses: Tuple[EquilibriumProfile, ...]
    conservative: bool
    base_profiles: Tuple[EquilibriumProfile, ...]
    reduced: ReducedSimGame


@dataclass(frozen=True)
class ReductionSize:
    """Sizes of the finite reduction of the mixed simulation game."""
    s1_count: int
    s2_count: int
    region_vertex_counts: Tuple[int, ...]
    region_bound: int
    reduced_columns: int
    meta_shape: Tuple[int, int]

    @property
    def total_bound(self) -> int:
        return self.s1_count * self.region_bound


def simulation_payoff(base: NormalFormGame, s2: MixedStrategy, cost) -> PayoffPair:
    """Payoffs of simulating against ``s2`` and replying with a favourable best response."""
    reply = favourable_reply(base, s2)
    y = s2.array
    return PayoffPair(Fraction(base.u1[reply, :] @ y) - cost, Fraction(base.u2[reply, :] @ y))


def pure_simulation_payoff(base: NormalFormGame, s2: MixedStrategy, cost) -> PayoffPair:
    """Expected payoffs of simulating the realised pure strategy of ``s2``."""
    u1, u2 = Fraction(0), Fraction(0)
    for j in s2.support:
        outcome = simulation_payoff(base, MixedStrategy.pure(2, len(s2), j), cost)
        u1 += s2.probs[j] * (outcome.u1 + cost)
        u2 += s2.probs[j] * outcome.u2
    return PayoffPair(u1 - cost, u2)


def _meta_game(base, config, columns, name):
    rows = base.shape[0]
    u1 = np.empty((rows + 1, len(columns)), dtype=object)
    u2 = np.empty((rows + 1, len(columns)), dtype=object)
    for j, atom in enumerate(columns):
        y = atom.array
        u1[:rows, j] = base.u1 @ y
        u2[:rows, j] = base.u2 @ y
        u1[rows, j], u2[rows, j] = simulation_payoff(base, atom, config.cost)
    s1_labels = list(base.s1_labels) + [SIMULATE_LABELS[config.kind.value]]
    s2_labels = [atom.label(base.s2_labels) for atom in columns]
    return NormalFormGame(u1, u2, s1_labels, s2_labels, name=name)


def build_psim(base: NormalFormGame, config: SimulationConfig) -> ReducedSimGame:
    """Pure-strategy simulation game: base rows plus ``p-sim``, pure base columns."""
    if config.kind != SimulationKind.Pure:
        logging.error("build_psim: configuration is not for pure simulation!")
        raise ValueError("build_psim needs a pure simulation configuration")
    columns = [MixedStrategy.pure(2, base.shape[1], j) for j in range(base.shape[1])]
    meta = _meta_game(base, config, columns, f"{base.name} psim c={format_rational(config.cost)}")
    regions = tuple(best_responses(base, atom) for atom in columns)
    return ReducedSimGame(meta, tuple(range(base.shape[0])) + (MetaAction.Simulate,), tuple(columns),
                          config, base, regions)


def build_msim_reduced(base: NormalFormGame, config: SimulationConfig, extra_atoms=(), regions=None) -> ReducedSimGame:
    """Finite reduction of the mixed-strategy simulation game.

    Parameters
    ----------
    base : NormalFormGame
        The base game.
    config : SimulationConfig
        A mixed simulation configuration.
    extra_atoms : sequence of MixedStrategy, optional
        Additional player 2 strategies appended as columns after the region
        vertices. The meta-game stays a subgame containing every vertex.
    regions : list of BestResponseRegion, optional
        Precomputed decomposition of the base game.

    Returns
    -------
    ReducedSimGame
        Rows are the base rows and ``m-sim``, columns the globally deduplicated
        region vertices followed by the extra atoms.
    """
    if config.kind != SimulationKind.Mixed:
        logging.error("build_msim_reduced: configuration is not for mixed simulation!")
        raise ValueError("build_msim_reduced needs a mixed simulation configuration")
    regions = decompose_simplex(base) if regions is None else regions
    annotated = region_vertices(regions)
    columns = [vertex for vertex, _ in annotated]
    owners = [rows for _, rows in annotated]
    for atom in extra_atoms:
        if atom not in columns:
            columns.append(atom)
            owners.append(best_responses(base, atom))
    meta = _meta_game(base, config, columns, f"{base.name} msim c={format_rational(config.cost)}")
    logging.info(f"build_msim_reduced: {base.name} reduced to a {meta.shape[0]}x{meta.shape[1]} meta-game")
    return ReducedSimGame(meta, tuple(range(base.shape[0])) + (MetaAction.Simulate,), tuple(columns),
                          config, base, tuple(owners))


def build_simulation_game(base: NormalFormGame, config: SimulationConfig) -> ReducedSimGame:
    if config.kind == SimulationKind.Pure:
        return build_psim(base, config)
    return build_msim_reduced(base, config)


def reduction_size(base: NormalFormGame) -> ReductionSize:
    regions = decompose_simplex(base)
    columns = len(region_vertices(regions))
    return ReductionSize(base.shape[0], base.shape[1], tuple(len(r.vertices) for r in regions),
                         region_vertex_bound(base.shape[1]), columns, (base.shape[0] + 1, columns))


def verify_profile(reduced: ReducedSimGame, s1: MixedStrategy, s2: MixedStrategy) -> bool:
    """Exact no-deviation check of a profile against every meta row and column."""
    result = is_nash(reduced.meta, s1, s2)
    if not result:
        logging.warning(f"verify_profile: profile is not an equilibrium of {reduced.meta.name}")
    return result


def _annotate(reduced, s1, s2, profile):
    return replace(profile, s1=s1, s2=s2, payoffs=expected_utility(reduced.meta, s1, s2),
                   support1=s1.support, support2=s2.support,
                   aggregate=reduced.meta_strategy(s2).aggregate())


def find_simulation_equilibria(reduced: ReducedSimGame, profiles=None):
    """Equilibria of the meta-game in which player 1 simulates with positive probability.

    Every component with such an extreme equilibrium is reported once. Its
    representative is chosen among the simulating extreme equilibria and
    annotated with player 2's aggregate base strategy.
    """
    profiles = enumerate_nash(reduced.meta) if profiles is None else profiles
    sim = reduced.simulate_row
    found = []
    for profile in profiles:
        simulating = [(x, y) for x, y in profile.extreme_points if x.probs[sim] > 0]
        if not simulating:
            continue
        x, y = min(simulating, key=lambda e: (len(e[0].support) + len(e[1].support),
                                              strategy_order_key(e[0].probs), strategy_order_key(e[1].probs)))
        found.append(_annotate(reduced, x, y, profile))
    logging.info(f"find_simulation_equilibria: {len(found)} simulation equilibrium component(s) in {reduced.meta.name}")
    return found


def lift_check(base: NormalFormGame, reduced: ReducedSimGame, ne: EquilibriumProfile) -> bool:
    """Whether a base equilibrium stays an equilibrium once simulation is available.

    Player 2 keeps playing its base strategy as a single atom. Player 1 is
    tested against every base row and against simulating, player 2 against
    every column of the reduced game.
    """
    value = expected_utility(base, ne.s1, ne.s2)
    rows = base.u1 @ ne.s2.array
    if any(r > value.u1 for r in rows):
        return False
    if reduced.config.kind == SimulationKind.Pure:
        simulate = pure_simulation_payoff(base, ne.s2, reduced.config.cost)
    else:
        simulate = simulation_payoff(base, ne.s2, reduced.config.cost)
    if simulate.u1 > value.u1:
        return False
    x = ne.s1.array
    return all(Fraction(x @ base.u2 @ atom.array) <= value.u2 for atom in reduced.p2_map)


def _component_bounds(game, profiles):
    """Per component, the largest u1 and the largest u2 over its extreme equilibria."""
    bounds = []
    for profile in profiles:
        payoffs = equilibrium_payoffs(game, [profile])
        bounds.append(PayoffPair(max(p.u1 for p in payoffs), max(p.u2 for p in payoffs)))
    return bounds


def _improves(criterion, payoff, bounds, welfare):
    if criterion == Criterion.Both:
        return all(payoff.u1 > b.u1 and payoff.u2 > b.u2 for b in bounds)
    if criterion == Criterion.Player1:
        return all(payoff.u1 > b.u1 for b in bounds)
    if criterion == Criterion.Player2:
        return all(payoff.u2 > b.u2 for b in bounds)
    if criterion == Criterion.Welfare:
        return all(welfare(payoff.u1, payoff.u2) > welfare(b.u1, b.u2) for b in bounds)
    return all(min(payoff) > min(b) for b in bounds)


def welfare_sum(u1, u2):
    return u1 + u2


def decide_msim_helps(base: NormalFormGame, config: SimulationConfig, criterion, welfare=None) -> DecisionReport:
    """Decides whether simulation introduces an equilibrium improving on every base equilibrium.

    Parameters
    ----------
    base : NormalFormGame
        The base game, small enough for full equilibrium enumeration.
    config : SimulationConfig
        Cost and kind; a pure configuration decides on the pure simulation game.
    criterion : Criterion or str
        ``a`` both payoffs, ``b`` player 1, ``c`` player 2, ``d`` welfare, ``e`` the minimum payoff.
    welfare : callable, optional
        Strictly monotone welfare ``f(u1, u2)`` for criterion ``d``, by default the sum.

    Returns
    -------
    DecisionReport
        Witnesses are exact extreme equilibria of the simulation game.
        ``conservative`` is set if any equilibrium component of either game is degenerate.

    Notes
    -----
    Only extreme equilibria are searched for witnesses. Inside a degenerate
    component an equilibrium that is not extreme may improve on the base game
    although no extreme one does, so ``helps == False`` is conclusive only when
    ``conservative`` is False.
    """
    criterion = criterion if isinstance(criterion, Criterion) else Criterion(criterion)
    welfare = welfare_sum if welfare is None else welfare
    base_profiles = enumerate_nash(base)
    bounds = _component_bounds(base, base_profiles)
    reduced = build_simulation_game(base, config)
    profiles = enumerate_nash(reduced.meta)
    witnesses = []
    for profile in profiles:
        for x, y in profile.extreme_points:
            payoff = expected_utility(reduced.meta, x, y)
            if _improves(criterion, payoff, bounds, welfare):
                witnesses.append(_annotate(reduced, x, y, profile))
    conservative = any(p.degenerate for p in base_profiles) or any(p.degenerate for p in profiles)
    if conservative:
        logging.warning(f"decide_msim_helps: degenerate equilibrium components in {base.name}, "
                        f"the decision uses per-component bounds")
    helps = len(witnesses) > 0
    logging.info(f"decide_msim_helps: {base.name} criterion {criterion.value} cost "
                 f"{format_rational(config.cost)}: {'yes' if helps else 'no'}")
    return DecisionReport(helps, criterion, witnesses[0] if helps else None, tuple(witnesses),
                          conservative, tuple(base_profiles), reduced)


def closed_form(reduced: ReducedSimGame, s1: MixedStrategy, s2: MixedStrategy, parameters) -> ClosedFormEquilibrium:
    """Wraps a constructed profile of ``reduced`` after checking it is an equilibrium.

    Raises
    ------
    RefusalError
        With reason ``verification`` if some meta row or column is a profitable deviation.
    """
    if not verify_profile(reduced, s1, s2):
        logging.error(f"closed_form: constructed profile is not an equilibrium of {reduced.meta.name}!")
        raise RefusalError("verification", f"closed-form profile is not an equilibrium of {reduced.meta.name}",
                           dict(parameters))
    payoffs = expected_utility(reduced.meta, s1, s2)
    profile = EquilibriumProfile(s1, s2, payoffs, s1.support, s2.support, extreme_points=((s1, s2),),
                                 aggregate=reduced.meta_strategy(s2).aggregate())
    return ClosedFormEquilibrium(profile, reduced, dict(parameters))
