from .catalog import BUILTIN_GAMES, dtg_spec, graded_trust_game, partial_trust_game, trust_game, with_opt_out
from .coordination import (coordination_equilibrium, coordination_mixed_payoffs, coordination_sim_equilibrium,
                           coordination_violations, make_coordination_game, validate_coordination)
from .gadget import (BipartiteGraph, cbs_equilibrium, gadget_simulation_witness, hardness_gadget,
                     has_complete_bipartite_subgraph)
from .gptg import PtgAnalysis, gptg_simulation_equilibrium, gptg_violations, validate_gptg
from .informed import check_informed_player, make_informed_follower_game
from .password import (PasswordModifiedGame, apply_password_modification, find_opt_out, lift_simulation_equilibrium,
                       make_pg)
from .tcg import TcgSpec, TrustSubgame, make_tcg, subgame_values, tcg_simulation_equilibrium

__all__ = ["BUILTIN_GAMES", "dtg_spec", "graded_trust_game", "partial_trust_game", "trust_game", "with_opt_out",
           "coordination_equilibrium", "coordination_mixed_payoffs", "coordination_sim_equilibrium",
           "coordination_violations", "make_coordination_game", "validate_coordination",
           "BipartiteGraph", "cbs_equilibrium", "gadget_simulation_witness", "hardness_gadget",
           "has_complete_bipartite_subgraph", "PtgAnalysis", "gptg_simulation_equilibrium", "gptg_violations",
           "validate_gptg", "check_informed_player", "make_informed_follower_game", "PasswordModifiedGame",
           "apply_password_modification", "find_opt_out", "lift_simulation_equilibrium", "make_pg",
           "TcgSpec", "TrustSubgame", "make_tcg", "subgame_values", "tcg_simulation_equilibrium"]
