"""Command line driver: ``simgame <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 refused analysis, 64 usage error.
"""
import sys
import argparse
from fractions import Fraction

from . import set_log_level
from .info import RELEASE
from .equilibrium import enumerate_nash, stackelberg
from .families.coordination import coordination_sim_equilibrium
from .families.gadget import gadget_simulation_witness, hardness_gadget
from .families.gptg import gptg_simulation_equilibrium, validate_gptg
from .families.informed import check_informed_player
from .families.password import make_pg
from .families.tcg import tcg_simulation_equilibrium
from .io import document_to_game, game_to_document, load_game, profile_record, read_graph, render_game, tcg_spec
from .simulation import (Criterion, SimulationConfig, build_simulation_game, decide_msim_helps,
                         find_simulation_equilibria)
from .sweep import cost_grid, sweep, sweep_to_csv
from .utils.config import Config
from .utils.errors import GameFormatError, RefusalError, ValidationError
from .utils.rational import format_rational, parse_rational
from .utils.util import exact_fields, records_to_pandas, to_json

EXIT_OK, EXIT_INVALID, EXIT_REFUSED, EXIT_USAGE = 0, 2, 3, 64
FORMATS = ("table", "doc", "csv")
ANALYZER_CLASSES = ("gptg", "coordination", "tcg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _digits():
    return Config().decimal_digits()


def _value_fields(key, value):
    if isinstance(value, Fraction):
        return exact_fields(key, value, _digits())
    if isinstance(value, (tuple, list)):
        return {key: ", ".join(format_rational(v) if isinstance(v, Fraction) else str(v) for v in value)}
    return {key: value}


def _emit(records, fmt):
    if fmt == "doc":
        return to_json(records)
    frame = records_to_pandas(records)
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    return frame.to_string(index=False) + "\n"


def _emit_game(game, fmt):
    if fmt == "doc":
        return render_game(game_to_document(game))
    if fmt == "csv":
        return game.to_pandas().to_csv(lineterminator="\n")
    return str(game) + "\n"


def _game(args):
    return document_to_game(load_game(args.game))


def _analyzer(doc, game_class):
    """Maps a cost to the closed-form simulation equilibrium of the document's game family."""
    if game_class == "gptg":
        analysis = validate_gptg(document_to_game(doc))
        return lambda cost: gptg_simulation_equilibrium(analysis, cost)
    if game_class == "coordination":
        game = document_to_game(doc)
        return lambda cost: coordination_sim_equilibrium(game, cost)
    spec = tcg_spec(doc)
    return lambda cost: tcg_simulation_equilibrium(spec, cost)


def _closed_form_record(result):
    meta = result.reduced.meta
    profile = result.profile
    record = profile_record(meta, profile.s1, profile.s2, profile.payoffs, _digits(),
                            aggregate=profile.aggregate.label(result.reduced.base.s2_labels))
    for key, value in result.parameters.items():
        record.update(_value_fields(key, value))
    return record


def _solve(args):
    game = _game(args)
    records = [profile_record(game, p.s1, p.s2, p.payoffs, _digits(), degenerate=p.degenerate,
                              extreme_points=len(p.extreme_points))
               for p in enumerate_nash(game, args.method)]
    return _emit(records, args.format)


def _stackelberg(args):
    game = _game(args)
    outcome = stackelberg(game)
    reply = game.s1_labels[outcome.follower_reply]
    record = {"commitment": outcome.leader_strategy.label(game.s2_labels), "reply": reply}
    record.update(exact_fields("u1", outcome.payoffs.u1, _digits()))
    record.update(exact_fields("u2", outcome.payoffs.u2, _digits()))
    return _emit([record], args.format)


def _transform(args):
    reduced = build_simulation_game(_game(args), SimulationConfig(args.cost, args.kind))
    return _emit_game(reduced.meta, args.format)


def _sim_eq(args):
    reduced = build_simulation_game(_game(args), SimulationConfig(args.cost, args.kind))
    records = []
    for profile in find_simulation_equilibria(reduced):
        records.append(profile_record(reduced.meta, profile.s1, profile.s2, profile.payoffs, _digits(),
                                      aggregate=profile.aggregate.label(reduced.base.s2_labels),
                                      degenerate=profile.degenerate))
    return _emit(records, args.format)


def _helps(args):
    report = decide_msim_helps(_game(args), SimulationConfig(args.cost, args.kind), Criterion(args.criterion))
    record = {"helps": "yes" if report.helps else "no", "criterion": report.criterion.value,
              "cost": format_rational(args.cost), "conservative": report.conservative}
    if report.witness is not None:
        witness = report.witness
        record.update(profile_record(report.reduced.meta, witness.s1, witness.s2, witness.payoffs, _digits()))
    return _emit([record], args.format)


def _analyze(args):
    result = _analyzer(load_game(args.game), args.game_class)(args.cost)
    return _emit([_closed_form_record(result)], args.format)


def _gadget(args):
    graph = read_graph(args.graph, args.k)
    if args.cost is None:
        return _emit_game(hardness_gadget(graph), args.format)
    return _emit([_closed_form_record(gadget_simulation_witness(graph, args.cost))], args.format)


def _pg(args):
    return _emit_game(make_pg(args.passwords, args.stakes), args.format)


def _sweep(args):
    costs = cost_grid(args.cost_min, args.cost_max, args.steps)
    rows = sweep(_analyzer(load_game(args.game), args.game_class), costs, args.threads)
    return sweep_to_csv(rows)


def _informed(args):
    reports = check_informed_player(_game(args), args.cost)
    records = [{"cost": format_rational(c), "helps": "yes" if r.helps else "no"} for c, r in reports.items()]
    return _emit(records, args.format)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table", help="Output format (default: table)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Overrides the configured log level")
    parser = _Parser(prog="simgame", description="Exact analysis of games with costly opponent simulation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {RELEASE}")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    def command(name, handler, help, game=True):
        sub = commands.add_parser(name, parents=[common], help=help)
        if game:
            sub.add_argument("game", help="Game document or built-in name (tg, ptg, graded, dtg)")
        sub.set_defaults(handler=handler)
        return sub

    sub = command("solve", _solve, "Enumerate all Nash equilibria")
    sub.add_argument("--method", choices=["support", "vertex"], default=None)
    command("stackelberg", _stackelberg, "Optimal mixed commitment of player 2")
    for name, handler, help in (("transform", _transform, "Build the simulation game"),
                                ("sim-eq", _sim_eq, "Simulation equilibria of the simulation game")):
        sub = command(name, handler, help)
        sub.add_argument("--kind", choices=["pure", "mixed"], default="mixed")
        sub.add_argument("--cost", type=_rational, required=True)
    sub = command("helps", _helps, "Decide whether simulation introduces an improving equilibrium")
    sub.add_argument("--criterion", choices=[c.value for c in Criterion], default="a")
    sub.add_argument("--kind", choices=["pure", "mixed"], default="mixed")
    sub.add_argument("--cost", type=_rational, required=True)
    sub = command("analyze", _analyze, "Closed-form simulation equilibrium of a game family")
    sub.add_argument("--class", dest="game_class", choices=ANALYZER_CLASSES, required=True)
    sub.add_argument("--cost", type=_rational, required=True)
    sub = command("gadget", _gadget, "Game of a bipartite graph", game=False)
    sub.add_argument("--graph", required=True, help="Graph file")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--cost", type=_rational, default=None, help="Also report the simulation witness")
    sub = command("pg", _pg, "Password-guessing game", game=False)
    sub.add_argument("--passwords", type=int, required=True)
    sub.add_argument("--stakes", type=_rational, required=True)
    sub = command("sweep", _sweep, "CSV of closed-form equilibria over a cost grid")
    sub.add_argument("--class", dest="game_class", choices=ANALYZER_CLASSES, required=True)
    sub.add_argument("--cost-min", type=_rational, required=True)
    sub.add_argument("--cost-max", type=_rational, required=True)
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--threads", type=int, default=None)
    sub = command("informed", _informed, "Check simulation of an informed follower")
    sub.add_argument("--cost", type=_rational, nargs="+", required=True)
    return parser


def run_command(argv):
    """Runs one command.

    Parameters
    ----------
    argv : list of str
        Arguments without the program name.

    Returns
    -------
    tuple of (int, str)
        Exit status and the report, or the error message for non-zero status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return EXIT_USAGE, str(e) + "\n"
    except SystemExit as e:
        return (EXIT_OK if not e.code else EXIT_USAGE), ""
    if args.log_level is not None:
        set_log_level(args.log_level)
    try:
        return EXIT_OK, args.handler(args)
    except (ValidationError, GameFormatError) as e:
        return EXIT_INVALID, f"error: {e}\n"
    except RefusalError as e:
        return EXIT_REFUSED, f"refused ({e.reason}): {e}\n"
    except OSError as e:
        return EXIT_INVALID, f"error: {e}\n"


def main():
    status, text = run_command(sys.argv[1:])
    stream = sys.stdout if status == EXIT_OK else sys.stderr
    stream.write(text)
    sys.exit(status)


if __name__ == "__main__":
    main()
