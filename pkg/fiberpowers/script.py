"""
.. module:: fiberpowers.script
    :synopsis: library for common script operations

Each subcommand reads its options, calls into the library and prints the result
with :func:`~fiberpowers.lang.emit.emit`. Library code only raises; the
exceptions are turned into exit codes here, after a ``critical`` log record.
"""
import argparse
import configparser
import logging
import sys
from dataclasses import replace
from pathlib import Path

import fiberpowers.config.config_files as config
from fiberpowers.algebra.fiber import make_fiber
from fiberpowers.algebra.resolution import METHODS, as_field_char, invariants
from fiberpowers.algebra.ring import MonomialIdeal, power
from fiberpowers.algebra.symbolic import SymbolicMode, stable_symbolic_depth, symbolic_power
from fiberpowers.errors import (
    EvaluationError,
    ExponentOverflowError,
    FiberPowersError,
    GenerationError,
    ResourceError,
)
from fiberpowers.lang.emit import FORMATS, emit
from fiberpowers.lang.evaluate import Evaluator, program_ring
from fiberpowers.lang.parser import parse_program
from fiberpowers.logging import configure_console_logging
from fiberpowers.struct.cache import BettiCache
from fiberpowers.struct.explorelog import ExplorationLog
from fiberpowers.verify.checks import CheckID
from fiberpowers.verify.explore import QUESTIONS, explore_question
from fiberpowers.verify.generate import STRUCTURES, GeneratorConfig
from fiberpowers.verify.suite import run_suite

# ========== Constants ==========
# ----- Error Codes -----
E_OK = 0
E_CHECK_FAILED = 1
E_USAGE = 2
E_RESOURCE = 3

FIBER_NAMES = ("I", "J")

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)


# ========== Classes ==========
class CheckFailed(Exception):
    """The suite finished with failures or characteristic disagreements."""


# ========== Functions ==========
def _char_list(text):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma separated list of integers")


def build_parser():
    """The argument parser of the ``fiberpowers`` command.

    :rtype: ``argparse.ArgumentParser``
    """
    parser = argparse.ArgumentParser(
        prog="fiberpowers",
        description="Monomial ideal computations and checks for fiber products",
    )
    parser.add_argument("-d", "--debug", action="store_true", help="log debug messages")
    parser.add_argument("-c", "--config", metavar="FILE", help="alternative config file")
    parser.add_argument("--no-cache", action="store_true", help="do not use the Betti cache")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def program_command(name, help_text):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("-f", "--file", required=True, help="program file, - for stdin")
        sub.add_argument("--char", type=int, help="field characteristic")
        sub.add_argument("--format", choices=FORMATS, default="text", help="output format")
        return sub

    program_command("eval", "evaluate a program")

    sub = program_command("invariants", "depth, pd and regularity of a program's ideal")
    sub.add_argument("--method", choices=METHODS, default="koszul")
    sub.add_argument(
        "--symbolic-scan", type=int, metavar="N", help="also scan depth of symbolic powers to N"
    )

    sub = program_command("symbolic-power", "symbolic power of a program's ideal")
    sub.add_argument("-s", type=int, required=True, help="the exponent")
    sub.add_argument("--mode", choices=[str(m) for m in SymbolicMode], default="ass")

    sub = program_command("fiber", "fiber product of the ideals bound to I and J")
    sub.add_argument("-s", type=int, default=1, help="the exponent (default: 1)")

    sub = subparsers.add_parser("verify", help="run checks over generated instances")
    sub.add_argument("--suite", default="all", help="all, or a list such as C1,C15")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--instances", type=int)
    sub.add_argument("--chars", type=_char_list, help="e.g. 2,3,101")
    sub.add_argument("--s-max", type=int)
    sub.add_argument("--structure", choices=STRUCTURES, default="random")
    sub.add_argument("--workers", type=int)
    sub.add_argument("--format", choices=FORMATS, default="json")

    sub = subparsers.add_parser("explore", help="collect evidence on an open question")
    sub.add_argument("--question", choices=QUESTIONS, required=True)
    sub.add_argument("--budget", type=int, required=True, help="number of instances")
    sub.add_argument("--log", required=True, help="line-delimited JSON log to append to")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--s-max", type=int)
    sub.add_argument("--char", type=int)
    sub.add_argument("--structure", choices=STRUCTURES, default="random")
    sub.add_argument("--workers", type=int)
    sub.add_argument("--format", choices=FORMATS, default="json")

    return parser


def _option(args, parsed_config, name, fallback):
    """A flag value, else the config file value, else fallback."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name == "chars":
        return config.load_chars_from_option(
            parsed_config, section=config.MAIN_SECTION, option=name, fallback=fallback
        )
    return config.load_int_from_option(parsed_config, option=name, fallback=fallback)


def _open_cache(args, parsed_config):
    if args.no_cache:
        return None
    return BettiCache(config.cache_directory(parsed_config))


def _read_program(path):
    if path == "-":
        return parse_program(sys.stdin.read())
    return parse_program(Path(path).read_text())


def _run_program(args, parsed_config, cache, budgets):
    """Parse and evaluate the program named by ``--file``.

    :return: the evaluator, holding the bindings, and the value of the program
    """
    program = _read_program(args.file)
    p = args.char
    if p is None:
        p = _option(args, parsed_config, "chars", config.DEFAULT_CHARS)[0]

    evaluator = Evaluator(program_ring(program), as_field_char(p), cache=cache, budgets=budgets)
    return evaluator, evaluator.run(program)


def _require_ideal(value):
    if not isinstance(value, MonomialIdeal):
        raise ValueError(f"the program must evaluate to an ideal, got {type(value).__name__}")
    return value


def do_eval(args, parsed_config, cache, budgets):
    _, value = _run_program(args, parsed_config, cache, budgets)
    return value


def do_invariants(args, parsed_config, cache, budgets):
    evaluator, value = _run_program(args, parsed_config, cache, budgets)
    ideal = _require_ideal(value)
    report = invariants(
        ideal, evaluator.char, method=args.method, cache=cache, budget=budgets.closure_budget
    )
    if args.symbolic_scan is not None:
        scan = stable_symbolic_depth(
            ideal,
            evaluator.char,
            args.symbolic_scan,
            budget=budgets.component_budget,
            cache=cache,
        )
        report = replace(report, stable_symbolic_depth=scan)
    return report.as_dict()


def do_symbolic_power(args, parsed_config, cache, budgets):
    _, value = _run_program(args, parsed_config, cache, budgets)
    return symbolic_power(
        _require_ideal(value), args.s, SymbolicMode(args.mode), budget=budgets.component_budget
    )


def do_fiber(args, parsed_config, cache, budgets):
    evaluator, _ = _run_program(args, parsed_config, cache, budgets)
    missing = [name for name in FIBER_NAMES if name not in evaluator.env]
    if missing:
        raise ValueError(f"the program must bind {' and '.join(missing)}")
    if len(evaluator.ring.blocks) != 2:
        raise ValueError("the program ring needs exactly two blocks, e.g. [x y | u v]")

    R, S = evaluator.ring.subring(0), evaluator.ring.subring(1)
    inst = make_fiber(
        R,
        _require_ideal(evaluator.env["I"]).restrict_to(R),
        S,
        _require_ideal(evaluator.env["J"]).restrict_to(S),
    )
    F_s = power(inst.F, args.s)
    F_symb = symbolic_power(inst.F, args.s, budget=budgets.component_budget)

    def report(ideal):
        return invariants(ideal, evaluator.char, cache=cache, budget=budgets.closure_budget)

    ordinary, symbolic = report(F_s), report(F_symb)
    return {
        "F": inst.F,
        "in_squares": inst.in_squares,
        "s": args.s,
        "F^s": F_s,
        "reg F^s": ordinary.reg_ideal,
        "depth T/F^s": ordinary.depth_quotient,
        "F^(s)": F_symb,
        "reg F^(s)": symbolic.reg_ideal,
        "depth T/F^(s)": symbolic.depth_quotient,
    }


def _generator_config(args, parsed_config, **overrides):
    return GeneratorConfig(
        structure=args.structure,
        s_max=_option(args, parsed_config, "s_max", config.DEFAULT_S_MAX),
        seed=_option(args, parsed_config, "seed", config.DEFAULT_SEED),
        chars=tuple(_option(args, parsed_config, "chars", config.DEFAULT_CHARS)),
        retry_budget=config.load_budgets(parsed_config).retry_budget,
        **overrides,
    )


def do_verify(args, parsed_config, cache, budgets):
    corpus = _generator_config(
        args,
        parsed_config,
        instances=_option(args, parsed_config, "instances", config.DEFAULT_INSTANCES),
    )
    report = run_suite(
        CheckID.parse(args.suite),
        corpus,
        workers=_option(args, parsed_config, "workers", 1),
        budgets=budgets,
        cache_dir=None if cache is None else cache.path,
    )
    for failure in report.failures:
        syslog.error(
            "%s failed on %s (s=%d, p=%d)", failure.check, failure.instance, failure.s, failure.char
        )

    if not report.ok:
        raise CheckFailed(report)
    return report.as_dict()


def do_explore(args, parsed_config, cache, budgets):
    corpus = _generator_config(args, parsed_config)
    summary = explore_question(
        args.question,
        corpus,
        args.budget,
        ExplorationLog(args.log),
        args.char,
        workers=_option(args, parsed_config, "workers", 1),
        budgets=budgets,
        cache_dir=None if cache is None else cache.path,
    )
    return summary.as_dict()


COMMANDS = {
    "eval": do_eval,
    "invariants": do_invariants,
    "symbolic-power": do_symbolic_power,
    "fiber": do_fiber,
    "verify": do_verify,
    "explore": do_explore,
}


def _is_resource_error(error):
    if isinstance(error, EvaluationError):
        error = error.cause
    return isinstance(error, (ResourceError, ExponentOverflowError, GenerationError))


def run(argv=None):
    """Run the command line and return its exit code.

    :param argv: arguments without the program name (default: ``sys.argv[1:]``)
    :type argv: list of str
    :rtype: int
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            return E_OK
        configure_console_logging()
        syslog.critical("Invalid command line")
        return E_USAGE

    configure_console_logging(debug=args.debug)

    try:
        parsed_config = config.parse_configfile(args.config)
        budgets = config.load_budgets(parsed_config)
        cache = _open_cache(args, parsed_config)
        result = COMMANDS[args.command](args, parsed_config, cache, budgets)
    except CheckFailed as e:
        report = e.args[0]
        sys.stdout.write(emit(report.as_dict(), args.format))
        syslog.critical(
            "%d checks failed, %d characteristic disagreements",
            len(report.failures),
            len(report.disagreements),
        )
        return E_CHECK_FAILED
    except (FiberPowersError, ValueError, OSError, configparser.Error) as e:
        syslog.critical(e)
        return E_RESOURCE if _is_resource_error(e) else E_USAGE

    sys.stdout.write(emit(result, getattr(args, "format", "text")))
    return E_OK


def main(argv=None):
    """Entry point of ``bin/fiberpowers``."""
    sys.exit(run(argv))
