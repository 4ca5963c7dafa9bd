import logging
from .game import (MixedStrategy, NormalFormGame, PayoffPair, best_responses, expected_utility,
                   favourable_best_responses, favourable_reply, is_nash, iterated_strict_dominance,
                   maxmin_value, pareto_strictly_improves)
from .geometry import (BestResponseRegion, HalfspaceSystem, br_region_system, decompose_simplex,
                       enumerate_vertices, region_vertex_bound)
from .equilibrium import (EquilibriumProfile, StackelbergOutcome, enumerate_nash, is_generalised_trust_game,
                          pure_commitment, stackelberg)
from .simulation import (ClosedFormEquilibrium, Criterion, MetaAction, MetaStrategy, ReducedSimGame,
                         SimulationConfig, SimulationKind, build_msim_reduced, build_psim, build_simulation_game,
                         decide_msim_helps, find_simulation_equilibria, lift_check, reduction_size, verify_profile)
from .families import *
from .io import GameDocument, load_game, parse_game, parse_graph, read_graph, render_game
from .sweep import cost_grid, sweep, sweep_to_csv
from .utils.config import Config
from .utils.errors import GameFormatError, RefusalError, ValidationError, Violation
from .info import VERSION, AUTHOR

_config = Config()
logging.basicConfig(level=logging._nameToLevel[_config.log_level()], force=True)

__version__ = VERSION
__author__ = AUTHOR
__all__ = ["MixedStrategy", "NormalFormGame", "PayoffPair", "EquilibriumProfile", "SimulationConfig",
           "enumerate_nash", "stackelberg", "decompose_simplex", "build_msim_reduced", "build_psim",
           "decide_msim_helps", "validate_gptg", "gptg_simulation_equilibrium", "make_tcg",
           "tcg_simulation_equilibrium", "make_coordination_game", "coordination_sim_equilibrium",
           "make_pg", "apply_password_modification", "hardness_gadget", "parse_game", "render_game",
           "sweep", "_config"]


def set_log_level(level_name):
    """Set the log level manually.

    Parameters
    ----------
    level_name : str
        The desired log level. Options are ``CRITICAL``, ``ERROR``, ``WARNING``, ``INFO``, and ``DEBUG``.
    """
    logging.basicConfig(level=logging._nameToLevel[level_name], force=True)
