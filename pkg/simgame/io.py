"""Game documents, graph files and report records.

A game document is a json object::

    {"name": "TG", "class": "raw", "s1": ["T", "WO"], "s2": ["C", "D"],
     "u1": [[20, -100], [0, 0]], "u2": [[20, 100], [0, 0]]}

Payoffs are integers or ``"p/q"`` strings. Documents of class ``tcg`` carry a
``params`` block (``b1``, ``b2``, ``epsilon``, ``subgames``) and may omit the
matrices, which are then generated.
"""
import os
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from .families.catalog import BUILTIN_GAMES, dtg_spec
from .families.gadget import BipartiteGraph
from .families.tcg import TcgSpec, TrustSubgame, make_tcg
from .game import NormalFormGame
from .utils.errors import GameFormatError, ValidationError, Violation
from .utils.rational import parse_rational
from .utils.util import exact_fields, to_json

GAME_CLASSES = ("raw", "gptg", "coordination", "tcg")
SUBGAME_FIELDS = TrustSubgame._fields


@dataclass(frozen=True)
class GameDocument:
    """Parsed game document.

    Attributes
    ----------
    name : str
        Name of the game.
    s1, s2 : tuple of str
        Strategy labels.
    u1, u2 : tuple of tuple of Fraction
        Payoff matrices, rows are player 1 strategies.
    game_class : str
        One of ``raw``, ``gptg``, ``coordination``, ``tcg``.
    params : dict
        Class specific parameters, rationals as Fractions.
    """
    name: str
    s1: Tuple[str, ...]
    s2: Tuple[str, ...]
    u1: Tuple[Tuple[Fraction, ...], ...]
    u2: Tuple[Tuple[Fraction, ...], ...]
    game_class: str = "raw"
    params: dict = field(default_factory=dict)


def _literal(value, where, violations):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        violations.append(Violation("literal", (where,), f"{value!r} is not an integer or 'p/q' literal"))
        return None
    if isinstance(value, int):
        return Fraction(value)
    try:
        return parse_rational(value)
    except ValueError as e:
        violations.append(Violation("literal", (where,), str(e)))
        return None


def _labels(data, key, violations):
    labels = data.get(key)
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        violations.append(Violation("labels", (key,), f"{key} must be a list of strings"))
        return ()
    return tuple(labels)


def _matrix(data, key, s1, s2, violations):
    rows = data.get(key)
    if not isinstance(rows, list):
        violations.append(Violation("payoffs", (key,), f"{key} must be a list of rows"))
        return ()
    if len(rows) != len(s1):
        violations.append(Violation("payoffs", (key,), f"{key} has {len(rows)} rows, expected {len(s1)}"))
    matrix = []
    for i, row in enumerate(rows):
        label = s1[i] if i < len(s1) else str(i)
        if not isinstance(row, list):
            violations.append(Violation("payoffs", (label,), f"{key} row {i} is not a list"))
            continue
        if len(row) != len(s2):
            violations.append(Violation("payoffs", (label,), f"{key} row {i} has {len(row)} entries, expected {len(s2)}"))
        matrix.append(tuple(_literal(v, f"{key}[{i}][{j}]", violations) for j, v in enumerate(row)))
    return tuple(matrix)


def _tcg_params(params, violations):
    if not isinstance(params, dict):
        violations.append(Violation("params", ("params",), "tcg documents need a params object"))
        return {}
    result = {}
    for key in ("b1", "b2", "epsilon"):
        if key in params:
            result[key] = _literal(params[key], f"params.{key}", violations)
        elif key != "epsilon":
            violations.append(Violation("params", (f"params.{key}",), f"missing {key}"))
    subgames = params.get("subgames")
    if not isinstance(subgames, list) or not subgames:
        violations.append(Violation("params", ("params.subgames",), "subgames must be a non-empty list"))
        subgames = []
    parsed = []
    for k, sub in enumerate(subgames):
        if not isinstance(sub, dict) or set(sub) != set(SUBGAME_FIELDS):
            violations.append(Violation("params", (f"params.subgames[{k}]",),
                                        f"a subgame needs exactly the fields {', '.join(SUBGAME_FIELDS)}"))
            continue
        parsed.append({f: _literal(sub[f], f"params.subgames[{k}].{f}", violations) for f in SUBGAME_FIELDS})
    result["subgames"] = parsed
    return result


def tcg_spec(doc: GameDocument) -> TcgSpec:
    """The trust-and-coordination spec of a ``tcg`` document."""
    if doc.game_class != "tcg":
        raise ValidationError([Violation("class", (doc.name,), f"document class is {doc.game_class}, not tcg")])
    params = doc.params
    return TcgSpec(b1=params["b1"], b2=params["b2"], epsilon=params.get("epsilon", Fraction(1)),
                   subgames=tuple(TrustSubgame(**s) for s in params["subgames"]), name=doc.name)


def parse_game(text: str) -> GameDocument:
    """Parses a game document.

    Parameters
    ----------
    text : str
        The json document.

    Returns
    -------
    GameDocument
        The document with rationals in lowest terms.

    Raises
    ------
    GameFormatError
        If the text is not valid json, with line and column.
    ValidationError
        Listing every violation found in the document.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        logging.error(f"parse_game: {e}")
        raise GameFormatError(e.msg, e.lineno, e.colno)
    if not isinstance(data, dict):
        raise GameFormatError("a game document must be a json object", 1, 1)
    violations = []
    name = data.get("name", "game")
    if not isinstance(name, str):
        violations.append(Violation("name", ("name",), "name must be a string"))
    game_class = data.get("class", "raw")
    if game_class not in GAME_CLASSES:
        violations.append(Violation("class", ("class",), f"unknown class {game_class!r}, expected one of {GAME_CLASSES}"))
    unknown = sorted(set(data) - {"name", "class", "s1", "s2", "u1", "u2", "params"})
    if unknown:
        violations.append(Violation("keys", tuple(unknown), "unknown document keys"))
    params = {}
    if game_class == "tcg":
        params = _tcg_params(data.get("params"), violations)
    elif "params" in data:
        violations.append(Violation("params", ("params",), f"class {game_class} takes no params"))
    generated = None
    if game_class == "tcg" and not violations:
        doc = GameDocument(name, (), (), (), (), "tcg", params)
        try:
            generated = game_to_document(make_tcg(tcg_spec(doc)), "tcg", params)
        except ValidationError as e:
            violations += e.violations
    if generated is not None and not any(k in data for k in ("s1", "s2", "u1", "u2")):
        return generated
    s1, s2 = _labels(data, "s1", violations), _labels(data, "s2", violations)
    u1 = _matrix(data, "u1", s1, s2, violations)
    u2 = _matrix(data, "u2", s1, s2, violations)
    doc = GameDocument(name, s1, s2, u1, u2, game_class, params)
    if generated is not None and not violations and doc != generated:
        violations.append(Violation("tcg", (name,), "matrices do not match the tcg params"))
    if violations:
        logging.error(f"parse_game: {len(violations)} violation(s) in document {name!r}")
        raise ValidationError(violations)
    return doc


def _plain(value):
    return value.numerator if value.denominator == 1 else value


def render_game(doc: GameDocument) -> str:
    """Canonical json text of a document, integers as numbers and other rationals as ``"p/q"``."""
    data = {"name": doc.name, "class": doc.game_class, "s1": list(doc.s1), "s2": list(doc.s2),
            "u1": [[_plain(v) for v in row] for row in doc.u1],
            "u2": [[_plain(v) for v in row] for row in doc.u2]}
    if doc.params:
        params = {k: _plain(v) for k, v in doc.params.items() if k != "subgames"}
        params["subgames"] = [{f: _plain(s[f]) for f in SUBGAME_FIELDS} for s in doc.params.get("subgames", [])]
        data["params"] = params
    return to_json(data)


def game_to_document(game: NormalFormGame, game_class="raw", params=None) -> GameDocument:
    return GameDocument(game.name, tuple(game.s1_labels), tuple(game.s2_labels),
                        tuple(tuple(row) for row in game.u1), tuple(tuple(row) for row in game.u2),
                        game_class, dict(params or {}))


def document_to_game(doc: GameDocument) -> NormalFormGame:
    return NormalFormGame([list(r) for r in doc.u1], [list(r) for r in doc.u2], doc.s1, doc.s2, name=doc.name)


def spec_to_document(spec: TcgSpec) -> GameDocument:
    params = {"b1": spec.b1, "b2": spec.b2, "epsilon": spec.epsilon,
              "subgames": [s._asdict() for s in spec.subgames]}
    return game_to_document(make_tcg(spec), "tcg", params)


def builtin_document(name: str) -> GameDocument:
    """Document of a built-in game: ``tg``, ``ptg``, ``graded`` or ``dtg``."""
    if name == "dtg":
        return spec_to_document(dtg_spec())
    game_class = "raw" if name == "tg" else "gptg"
    return game_to_document(BUILTIN_GAMES[name](), game_class)


def read_text(path: str) -> str:
    """Reads a UTF-8 document.

    Raises
    ------
    GameFormatError
        If the file is not valid UTF-8; line and column locate the offending byte.
    """
    with open(path, "rb") as f:
        raw = f.read()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - (raw.rfind(b"\n", 0, e.start) + 1) + 1
        logging.error(f"read_text: {path} is not valid UTF-8 at byte {e.start}!")
        raise GameFormatError(f"invalid UTF-8 at byte offset {e.start}", line, column) from e


def load_game(source: str) -> GameDocument:
    """Loads a game document from a file or by built-in name.

    Raises
    ------
    GameFormatError
        If ``source`` is neither an existing file nor a built-in name, or the file is not valid UTF-8.
    """
    if os.path.isfile(source):
        return parse_game(read_text(source))
    key = source.lower()
    if key in BUILTIN_GAMES or key == "dtg":
        return builtin_document(key)
    logging.error(f"load_game: {source} is neither a file nor a built-in game!")
    raise GameFormatError(f"no game file or built-in game named {source!r}")


def parse_graph(text: str, k=1) -> BipartiteGraph:
    """Parses a graph file: an ``a_count b_count`` header, then one ``a b`` edge per line.

    Blank lines and lines starting with ``#`` are skipped, vertex indices are 0-based.
    """
    header = None
    edges = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise GameFormatError(f"expected two integers, found {len(fields)} field(s)", number,
                                  line.index(fields[min(2, len(fields) - 1)]) + 1)
        values = []
        for f in fields:
            try:
                values.append(int(f))
            except ValueError:
                raise GameFormatError(f"{f!r} is not an integer", number, line.index(f) + 1)
        if header is None:
            header = values
        else:
            edges.append(tuple(values))
    if header is None:
        raise GameFormatError("missing 'a_count b_count' header", 1, 1)
    return BipartiteGraph(header[0], header[1], frozenset(edges), k)


def read_graph(path: str, k=1) -> BipartiteGraph:
    return parse_graph(read_text(path), k)


def profile_record(game: NormalFormGame, s1, s2, payoffs, digits=6, **extra) -> dict:
    """Flat report record of a strategy profile with exact and approximate payoffs."""
    record = {"s1": s1.label(game.s1_labels), "s2": s2.label(game.s2_labels)}
    record.update(exact_fields("u1", payoffs.u1, digits))
    record.update(exact_fields("u2", payoffs.u2, digits))
    record.update(extra)
    return record
