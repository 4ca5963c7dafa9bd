"""Games built from bipartite graphs in which simulation helps iff the graph has a complete k x k subgraph."""
import logging
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Optional, Tuple

import numpy as np

from ..game import MixedStrategy, NormalFormGame
from ..simulation import ClosedFormEquilibrium, SimulationConfig, build_msim_reduced, closed_form
from ..utils.errors import ValidationError, Violation

TRUST_U1 = [[1, -1], [1, 0]]
TRUST_U2 = [[1, 2], [-1, 0]]


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with partite sets ``A`` (player 1) and ``B`` (player 2).

    Parameters
    ----------
    a_count, b_count : int
        Sizes of the partite sets.
    edges : frozenset of (int, int)
        Pairs of 0-based indices into ``A`` and ``B``.
    k : int
        Size of the complete bipartite subgraph asked for.
    """
    a_count: int
    b_count: int
    edges: FrozenSet[Tuple[int, int]]
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        violations = []
        if self.a_count < 1 or self.b_count < 1:
            violations.append(Violation("graph", (), "both partite sets need at least one vertex"))
        if self.k < 1:
            violations.append(Violation("k", (), f"k must be >= 1, got {self.k}"))
        for a, b in sorted(self.edges):
            if not (0 <= a < self.a_count and 0 <= b < self.b_count):
                violations.append(Violation("edge", (f"{a}-{b}",), "edge endpoint out of range"))
        if violations:
            logging.error(f"BipartiteGraph: {len(violations)} violation(s)")
            raise ValidationError(violations)


def _graph_subgame(graph):
    """Payoff matrices of the vertex game with actions ``A``, ``B`` and ``OO`` for both players."""
    na, nb, k = graph.a_count, graph.b_count, Fraction(graph.k)
    size = na + nb + 1
    oo = size - 1
    u1 = np.full((size, size), Fraction(0), dtype=object)
    u2 = np.full((size, size), Fraction(0), dtype=object)
    for a, b in graph.edges:
        u1[a, na + b] = u2[a, na + b] = Fraction(1)
    for a in range(na):
        u1[a, a], u2[a, a] = -k, k
    for b in range(na, na + nb):
        u1[b, b], u2[b, b] = k, -k
    u1[oo, :oo], u2[oo, :oo] = Fraction(1), Fraction(-1)
    u1[:oo, oo], u2[:oo, oo] = Fraction(-1), Fraction(1)
    labels = [f"a{a}" for a in range(na)] + [f"b{b}" for b in range(nb)] + ["OO"]
    return u1, u2, labels


def hardness_gadget(graph: BipartiteGraph) -> NormalFormGame:
    """The vertex game and two trust games, composed block-diagonally with zeros elsewhere.

    Parameters
    ----------
    graph : BipartiteGraph
        The graph and ``k``.
    """
    u1g, u2g, labels = _graph_subgame(graph)
    size = len(labels) + 4
    u1 = np.full((size, size), Fraction(0), dtype=object)
    u2 = np.full((size, size), Fraction(0), dtype=object)
    inner = len(labels)
    u1[:inner, :inner], u2[:inner, :inner] = u1g, u2g
    rows, cols = list(labels), list(labels)
    for copy in (1, 2):
        block = slice(inner + 2 * (copy - 1), inner + 2 * copy)
        u1[block, block] = np.array(TRUST_U1, dtype=object) + Fraction(0)
        u2[block, block] = np.array(TRUST_U2, dtype=object) + Fraction(0)
        rows += [f"T{copy}", f"WO{copy}"]
        cols += [f"C{copy}", f"D{copy}"]
    return NormalFormGame(u1, u2, rows, cols, name=f"CBS(k={graph.k})")


def has_complete_bipartite_subgraph(graph: BipartiteGraph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Brute-force search for a complete ``k x k`` subgraph; returns the vertex sets or None."""
    for a_set in itertools.combinations(range(graph.a_count), graph.k):
        common = set(range(graph.b_count))
        for a in a_set:
            common &= {b for x, b in graph.edges if x == a}
        if len(common) >= graph.k:
            return a_set, tuple(sorted(common)[:graph.k])
    return None


def cbs_equilibrium(graph: BipartiteGraph, game: NormalFormGame):
    """Uniform play over a complete ``k x k`` subgraph, or None if the graph has none."""
    found = has_complete_bipartite_subgraph(graph)
    if found is None:
        return None
    a_set, b_set = found
    n = game.shape[0]
    s1 = MixedStrategy.uniform(1, n, a_set)
    s2 = MixedStrategy.uniform(2, n, [graph.a_count + b for b in b_set])
    return s1, s2


def gadget_simulation_witness(graph: BipartiteGraph, c_sim) -> ClosedFormEquilibrium:
    """Player 1 always simulates, player 2 cooperates in either trust game with probability 1/2.

    Raises
    ------
    RefusalError
        With reason ``verification`` if the profile is not an equilibrium of the reduced game.
    """
    config = SimulationConfig(c_sim)
    game = hardness_gadget(graph)
    cooperate = [MixedStrategy.pure(2, game.shape[1], game.s2_labels.index(f"C{copy}")) for copy in (1, 2)]
    reduced = build_msim_reduced(game, config, extra_atoms=cooperate)
    s1 = MixedStrategy.pure(1, reduced.meta.shape[0], reduced.simulate_row)
    s2 = MixedStrategy.from_weights(2, reduced.meta.shape[1], {reduced.column(atom): Fraction(1, 2) for atom in cooperate})
    return closed_form(reduced, s1, s2, {"cost": config.cost})
