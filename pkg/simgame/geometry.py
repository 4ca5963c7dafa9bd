"""Best-response regions of player 2's strategy simplex and their exact vertices.

A region is the closure of the set of player 2 strategies against which a
given row of player 1 is a best response. Regions are stored as halfspace
systems on the simplex and their vertices are enumerated exactly.
"""
import math
import logging
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np
from tqdm import tqdm

from .game import MixedStrategy, NormalFormGame, strategy_order_key
from .utils.config import Config
from .utils.buffers import RegionBuffer
from .utils.errors import ValidationError, Violation
from .utils.linalg import independent_rows, solve
from .utils.rational import to_rational

ZERO = Fraction(0)


def _unit(dimension, index):
    return tuple(Fraction(1) if j == index else ZERO for j in range(dimension))


@dataclass(frozen=True)
class HalfspaceSystem:
    """Linear constraints on a probability simplex.

    Every inequality ``(coefficients, bound)`` reads ``coefficients . x >= bound``,
    every equality ``coefficients . x == bound``. The simplex equality
    ``sum(x) == 1`` is implicit and the nonnegativity rows ``x_j >= 0`` are
    appended when missing.

    Parameters
    ----------
    dimension : int
        Number of pure strategies of the owner.
    inequalities : tuple of (tuple of Fraction, Fraction)
        The inequality rows.
    equalities : tuple of (tuple of Fraction, Fraction), optional
        Additional equality rows, by default none.
    owner : int, optional
        The player whose strategies the points are, by default 2.
    """
    dimension: int
    inequalities: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]
    equalities: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...] = ()
    owner: int = 2

    def __post_init__(self):
        violations = []
        rows = []
        for name, source in (("inequalities", self.inequalities), ("equalities", self.equalities)):
            converted = []
            for index, (coefficients, bound) in enumerate(source):
                coefficients = tuple(to_rational(c) for c in coefficients)
                if len(coefficients) != self.dimension:
                    violations.append(Violation(name, (str(index),),
                                                f"row has {len(coefficients)} coefficients, expected {self.dimension}"))
                converted.append((coefficients, to_rational(bound)))
            rows.append(converted)
        if violations:
            raise ValidationError(violations)
        inequalities, equalities = rows
        for j in range(self.dimension):
            row = (_unit(self.dimension, j), ZERO)
            if row not in inequalities:
                inequalities.append(row)
        object.__setattr__(self, "inequalities", tuple(inequalities))
        object.__setattr__(self, "equalities", tuple(equalities))

    @classmethod
    def on_simplex(cls, dimension, inequalities=(), equalities=(), owner=2):
        return cls(dimension, tuple(inequalities), tuple(equalities), owner)

    def _as_array(self, point):
        if isinstance(point, MixedStrategy):
            return point.array
        return np.array([to_rational(p) for p in point], dtype=object)

    def contains(self, point) -> bool:
        """Whether ``point`` lies on the simplex and satisfies all constraints."""
        x = self._as_array(point)
        if len(x) != self.dimension or sum(x) != 1:
            return False
        if any(np.dot(coefficients, x) < bound for coefficients, bound in self.inequalities):
            return False
        return all(np.dot(coefficients, x) == bound for coefficients, bound in self.equalities)

    def tight(self, point) -> Tuple[int, ...]:
        """Indices of the inequalities that hold with equality at ``point``."""
        x = self._as_array(point)
        return tuple(i for i, (coefficients, bound) in enumerate(self.inequalities)
                     if np.dot(coefficients, x) == bound)


@dataclass(frozen=True)
class BestResponseRegion:
    s1: int
    system: HalfspaceSystem
    vertices: Tuple[MixedStrategy, ...]


def region_vertex_bound(dimension) -> int:
    """Upper bound on the number of vertices of one region of a simplex with ``dimension`` corners."""
    return math.comb(2 * dimension, dimension - 1)


def br_region_system(game: NormalFormGame, s1: int) -> HalfspaceSystem:
    """Halfspace representation of the closure of the best-response region of row ``s1``.

    Parameters
    ----------
    game : NormalFormGame
        The game.
    s1 : int
        Index of the player 1 strategy.

    Returns
    -------
    HalfspaceSystem
        |S1| - 1 payoff comparisons ``u1(s1, x) >= u1(t, x)`` followed by the
        nonnegativity rows.
    """
    rows, cols = game.shape
    if not 0 <= s1 < rows:
        logging.error(f"br_region_system: row index {s1} out of range for {game.name}!")
        raise IndexError(f"row index {s1} out of range, game has {rows} rows")
    comparisons = [(tuple(game.u1[s1, :] - game.u1[t, :]), ZERO) for t in range(rows) if t != s1]
    return HalfspaceSystem.on_simplex(cols, comparisons, owner=2)


def tight_system(system: HalfspaceSystem, point) -> HalfspaceSystem:
    """Copy of ``system`` with every constraint that is tight at ``point`` turned into an equality."""
    tight = set(system.tight(point))
    inequalities = [row for i, row in enumerate(system.inequalities) if i not in tight]
    equalities = list(system.equalities) + [system.inequalities[i] for i in sorted(tight)]
    return HalfspaceSystem(system.dimension, tuple(inequalities), tuple(equalities), system.owner)


def _independent_equalities(system):
    """Equalities plus the simplex row, reduced to independent rows; None if inconsistent."""
    n = system.dimension
    rows = [c for c, _ in system.equalities] + [tuple(Fraction(1) for _ in range(n))]
    rhs = [b for _, b in system.equalities] + [Fraction(1)]
    matrix = np.array(rows, dtype=object).reshape(len(rows), n)
    return independent_rows(matrix, np.array(rhs, dtype=object))


def _feasible(system, x):
    return all(np.dot(coefficients, x) >= bound for coefficients, bound in system.inequalities)


def _combinatorial_vertices(system, equalities):
    n = system.dimension
    eq_matrix, eq_rhs = equalities
    free = n - eq_matrix.shape[0]
    found = set()
    if free == 0:
        x = solve(eq_matrix, eq_rhs)
        if x is not None and _feasible(system, x):
            found.add(tuple(x))
        return found
    coefficients = [np.array(c, dtype=object) for c, _ in system.inequalities]
    bounds = [b for _, b in system.inequalities]
    for subset in itertools.combinations(range(len(coefficients)), free):
        matrix = np.vstack([eq_matrix] + [coefficients[i] for i in subset])
        rhs = np.concatenate([eq_rhs, np.array([bounds[i] for i in subset], dtype=object)])
        x = solve(matrix, rhs)
        if x is None:
            continue
        if _feasible(system, x):
            found.add(tuple(x))
    return found


def double_description(dimension, inequalities, equalities=()):
    """Extreme rays of the cone ``{x >= 0 : h . x >= 0 for h in inequalities, e . x == 0 for e in equalities}``.

    The cone lies in the nonnegative orthant and is therefore pointed. Rays are
    added one constraint at a time, new rays are formed from adjacent pairs of
    rays on both sides of the constraint; adjacency is decided combinatorially
    on the zero sets.

    Returns
    -------
    list of tuple of Fraction
        Extreme rays scaled to coordinate sum 1.
    """
    # zero sets are bitmasks over the constraints processed so far
    rays = []
    for i in range(dimension):
        zero_set = sum(1 << j for j in range(dimension) if j != i)
        rays.append((_unit(dimension, i), zero_set))
    constraints = [(tuple(h), False) for h in inequalities] + [(tuple(e), True) for e in equalities]
    for offset, (h, is_equality) in enumerate(constraints):
        bit = 1 << (dimension + offset)
        values = [sum(a * b for a, b in zip(h, ray)) for ray, _ in rays]
        positive = [k for k, v in enumerate(values) if v > 0]
        negative = [k for k, v in enumerate(values) if v < 0]
        zero = [k for k, v in enumerate(values) if v == 0]
        if not negative and not is_equality:
            rays = [(ray, zset | bit) if values[k] == 0 else (ray, zset) for k, (ray, zset) in enumerate(rays)]
            continue
        new_rays = {}
        for p in positive:
            for m in negative:
                common = rays[p][1] & rays[m][1]
                if bin(common).count("1") < dimension - 2:
                    continue
                if any(k != p and k != m and (common & rays[k][1]) == common for k in range(len(rays))):
                    continue
                vp, vm = values[p], values[m]
                vector = tuple(vp * a - vm * b for a, b in zip(rays[m][0], rays[p][0]))
                total = sum(vector)
                vector = tuple(c / total for c in vector)
                new_rays[vector] = common | bit
        kept = [(rays[k][0], rays[k][1] | bit) for k in zero]
        if not is_equality:
            kept = [rays[k] for k in positive] + kept
        known = {ray for ray, _ in kept}
        kept.extend((ray, zset) for ray, zset in new_rays.items() if ray not in known)
        rays = kept
        logging.debug(f"double_description: {len(rays)} rays after constraint {offset + 1} of {len(constraints)}")
        if not rays:
            break
    return [ray for ray, _ in rays]


def _incremental_vertices(system):
    n = system.dimension
    unit_rows = {(_unit(n, j), ZERO) for j in range(n)}
    homogeneous = [tuple(c - b for c in coefficients) for coefficients, b in system.inequalities
                   if (coefficients, b) not in unit_rows]
    equalities = [tuple(c - b for c in coefficients) for coefficients, b in system.equalities]
    rays = double_description(n, homogeneous, equalities)
    return {tuple(ray) for ray in rays}


def enumerate_vertices(system: HalfspaceSystem, method=None):
    """Exact vertex set of a polytope on the simplex.

    Parameters
    ----------
    system : HalfspaceSystem
        The constraints.
    method : str, optional
        ``"combinatorial"`` solves the square system of every choice of
        constraints taken with equality, ``"incremental"`` runs the double
        description method. By default the combinatorial method is used unless
        the number of constraint subsets exceeds the configured
        ``vertex_subset_limit``.

    Returns
    -------
    list of MixedStrategy
        Deduplicated vertices, more weight on earlier strategies first.
    """
    equalities = _independent_equalities(system)
    if equalities is None:
        logging.debug("enumerate_vertices: inconsistent equalities, empty polytope")
        return []
    free = system.dimension - equalities[0].shape[0]
    if method is None:
        subsets = math.comb(len(system.inequalities), free)
        limit = Config().vertex_subset_limit()
        method = "combinatorial" if subsets <= limit else "incremental"
        if method == "incremental":
            logging.info(f"enumerate_vertices: {subsets} constraint subsets exceed the limit of {limit}, using the incremental method")
    if method == "combinatorial":
        points = _combinatorial_vertices(system, equalities)
    elif method == "incremental":
        points = _incremental_vertices(system)
    else:
        logging.error(f"enumerate_vertices: unknown method {method}!")
        raise ValueError(f"unknown vertex enumeration method {method!r}")
    return [MixedStrategy(system.owner, p) for p in sorted(points, key=strategy_order_key)]


def decompose_simplex(game: NormalFormGame, method=None):
    """Splits player 2's simplex into the best-response regions of player 1's rows.

    Parameters
    ----------
    game : NormalFormGame
        The game.
    method : str, optional
        Vertex enumeration method, see `enumerate_vertices`.

    Returns
    -------
    list of BestResponseRegion
        One region per row with a non-empty region, in row order.
    """
    key = (game.name, game.fingerprint(), method)
    buffer = RegionBuffer()
    cached = buffer.get(key)
    if cached is not None:
        return list(cached)
    regions = []
    for s1 in tqdm(range(game.shape[0]), disable=not(logging.root.level == logging.INFO)):
        system = br_region_system(game, s1)
        vertices = enumerate_vertices(system, method)
        if not vertices:
            logging.debug(f"decompose_simplex: region of {game.s1_labels[s1]} is empty")
            continue
        regions.append(BestResponseRegion(s1, system, tuple(vertices)))
    logging.info(f"decompose_simplex: {game.name} has {len(regions)} non-empty regions with "
                 f"{sum(len(r.vertices) for r in regions)} vertices")
    buffer.put(key, regions)
    return regions


def region_vertices(regions):
    """Globally deduplicated region vertices with the rows whose region contains them.

    Returns
    -------
    list of tuple of (MixedStrategy, tuple of int)
        Vertices in the usual order, each with the sorted row indices.
    """
    owners = {}
    for region in regions:
        for vertex in region.vertices:
            owners.setdefault(vertex, []).append(region.s1)
    ordered = sorted(owners, key=lambda v: strategy_order_key(v.probs))
    return [(v, tuple(sorted(owners[v]))) for v in ordered]
