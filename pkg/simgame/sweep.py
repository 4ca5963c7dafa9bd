"""Cost sweeps: re-run a closed-form analyzer over a grid of simulation costs."""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import NamedTuple, Optional

from tqdm import tqdm

from .utils.config import Config
from .utils.errors import RefusalError, ValidationError, Violation
from .utils.rational import format_rational, to_rational
from .utils.util import records_to_pandas

CSV_COLUMNS = ["cost", "p_sim", "p_D", "u1", "u2", "status"]


class SweepRow(NamedTuple):
    cost: Fraction
    p_sim: Optional[Fraction]
    p_D: Optional[Fraction]
    u1: Optional[Fraction]
    u2: Optional[Fraction]
    status: str

    @property
    def refused(self):
        return self.status != "ok"

    def record(self):
        """The row as CSV fields, exact ``p/q`` strings and empty fields for missing values."""
        return {name: ("" if value is None else value if name == "status" else format_rational(value))
                for name, value in zip(CSV_COLUMNS, self)}


def cost_grid(cost_min, cost_max, steps):
    """``steps`` equally spaced costs from ``cost_min`` to ``cost_max``, both included.

    Raises
    ------
    ValidationError
        If the bounds are not ``0 < cost_min <= cost_max`` or ``steps < 1``.
    """
    cost_min, cost_max = to_rational(cost_min), to_rational(cost_max)
    violations = []
    if not 0 < cost_min <= cost_max:
        violations.append(Violation("cost", (), f"need 0 < cost-min <= cost-max, got {format_rational(cost_min)} "
                                                f"and {format_rational(cost_max)}"))
    if steps < 1:
        violations.append(Violation("steps", (), f"steps must be >= 1, got {steps}"))
    if violations:
        raise ValidationError(violations)
    if steps == 1:
        return [cost_min]
    width = (cost_max - cost_min) / (steps - 1)
    return [cost_min + i * width for i in range(steps)]


def _evaluate(analyzer, cost):
    try:
        result = analyzer(cost)
    except RefusalError as e:
        logging.debug(f"sweep: cost {format_rational(cost)} refused, {e.reason}")
        return SweepRow(cost, None, None, None, None, f"refused:{e.reason}")
    parameters = result.parameters
    payoffs = result.profile.payoffs
    return SweepRow(cost, parameters.get("p_sim"), parameters.get("p_D"), payoffs.u1, payoffs.u2, "ok")


def sweep(analyzer, costs, threads=None):
    """Evaluates ``analyzer`` at every cost, in parallel but collected in order.

    Parameters
    ----------
    analyzer : callable
        Maps a cost to a `ClosedFormEquilibrium`, raising `RefusalError` outside its range.
    costs : sequence of Fraction
        The costs.
    threads : int, optional
        Worker count, by default the configured ``threads``.

    Returns
    -------
    list of SweepRow
        One row per cost, refusals recorded with status ``refused:<reason>``.
    """
    threads = Config().threads() if threads is None else threads
    logging.info(f"sweep: {len(costs)} cost(s) on {threads} worker(s)")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(tqdm(executor.map(lambda c: _evaluate(analyzer, c), costs), total=len(costs),
                         disable=not(logging.root.level == logging.INFO)))
    refused = sum(1 for r in rows if r.refused)
    if refused:
        logging.info(f"sweep: {refused} of {len(rows)} cost(s) refused")
    return rows


def sweep_to_pandas(rows):
    return records_to_pandas([r.record() for r in rows], columns=CSV_COLUMNS)


def sweep_to_csv(rows) -> str:
    """CSV text with header ``cost,p_sim,p_D,u1,u2,status`` and LF line endings."""
    return sweep_to_pandas(rows).to_csv(index=False, lineterminator="\n")
