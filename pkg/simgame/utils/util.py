import json
import logging
from fractions import Fraction

import numpy as np
import pandas as pd

from .rational import approximate, format_rational


def rational_encoder(object):
    """Makes sure exact rationals and numpy types survive the json dump.

    Parameters
    ----------
    object : Any
        A Fraction or numpy data object.

    Returns
    -------
    python native
        ``"p/q"`` strings for Fractions, the native equivalent for numpy scalars.
    """
    if isinstance(object, Fraction):
        return format_rational(object)
    if isinstance(object, np.generic):
        return object.item()
    raise TypeError(f"Object of type {type(object).__name__} is not JSON serializable")


def to_json(data) -> str:
    """Deterministic json dump with two-space indent and a trailing newline."""
    return json.dumps(data, default=rational_encoder, indent=2) + "\n"


def exact_fields(name, value, digits=6) -> dict:
    """``{name: "p/q", name_approx: "0.xxx"}`` for a rational value."""
    return {name: format_rational(value), f"{name}_approx": approximate(value, digits)}


def records_to_pandas(records, columns=None) -> pd.DataFrame:
    """Export a list of flat report records to a pandas.DataFrame.

    Parameters
    ----------
    records : list of dict
        One dict per table row.
    columns : list of str, optional
        Column order, by default the keys of the first record.

    Returns
    -------
    pd.DataFrame
        The DataFrame
    """
    if not records:
        logging.debug("records_to_pandas: no records")
    return pd.DataFrame(records, columns=columns)
