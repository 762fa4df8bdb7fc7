"""Command-line front end.

Every subcommand prints a stable plain-text report on stdout and returns an
exit code: 0 pass/yes, 1 fail/no, 2 inconclusive, 3 usage or input error,
4 resource cap.
"""
import sys
from pathlib import Path
from typing import Optional, Sequence

import configargparse

from algebra.src.fileio import FORMAT_HELP, format_algebra, format_letter_map, read_accept, read_algebra, read_letter_map, read_text, write_text
from algebra.src.validation import check_horizontal, is_distributive, validate_algebra
from derived.src.category import build_derived_category, is_locally_distributive
from derived.src.diagrams import diagram_merge, diagram_val, half_label, parse_diagram
from derived.src.division import EXHAUSTED, FOUND, NOT_FOUND, search_division
from fixtures.fixtures import catalog_table, emit
from forest.src import grammar
from forest.src.grammar import parse_forest, render
from forest.src.paths import paths, psi
from oracle.oracle import SUITES, results_table, run_suites
from pathlang.src.dfa import pi_automaton
from pathlang.src.intersect import paths_intersect
from pathlang.src.psi_engine import PsiEngine
from src.errors import ForestAlgError, ForestSyntaxError, UsageError
from src.logging_utils import Logger
from src.settings import SettingManager, Settings
from src.utils import compact_timestamp, parse_index_list
from twodist.twodist import TwoDistChecker
from wreath.wreath import parse_gtable, project_right, wreath_generated, wreath_product

VERSION = "1.0.0"
DIVISION_EXIT = {FOUND: 0, NOT_FOUND: 1, EXHAUSTED: 2}

DFA_HELP = """DFA text form (``forestalg paths``)::

    DFA
    STATES n
    START i
    ACCEPT i ...
    TRANS q α q'                 one line per state and letter
"""


class ArgumentParser(configargparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="forestalg",
        description="Finite forest algebras: axioms, wreath products, path languages, 2-distributivity, derived categories.",
        default_config_files=["./forestalg.conf"],
        auto_env_var_prefix="FORESTALG_",
    )
    parser.add_argument("-c", "--config", is_config_file=True, help="config file path")
    parser.add_argument("--settings", help="JSON settings file")
    parser.add_argument("--version", action="store_true", help="print the version and exit")
    parser.add_argument("--formats", action="store_true", help="print the file format grammars and exit")
    parser.add_argument("--log-level", dest="log_level", choices=["debug", "info", "warning", "error", "critical"])
    parser.add_argument("--log-file", dest="log_file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--jobs", type=int)
    parser.add_argument("--cap", dest="enum_cap", type=int, help="forest enumeration cap")
    parser.add_argument("--max-height", dest="max_height", type=int)
    parser.add_argument("--max-nodes", dest="max_nodes", type=int)
    parser.add_argument("--wreath-cap", dest="wreath_cap", type=int)
    parser.add_argument("--closure-cap", dest="closure_cap", type=int)
    parser.add_argument("--psi-max-h", dest="psi_max_h", type=int)
    parser.add_argument("--psi-family-cap", dest="psi_family_cap", type=int)
    parser.add_argument("--simk-budget", dest="simk_budget", type=int)
    parser.add_argument("--budget", dest="division_budget", type=int, help="division search budget")

    commands = parser.add_subparsers(dest="command")

    validate = commands.add_parser("validate", help="check the forest algebra axioms")
    validate.add_argument("algebra")

    check = commands.add_parser("check", help="horizontal, distributive or 2-distributive")
    check.add_argument("property", choices=["horizontal", "distributive", "2-distributive"])
    check.add_argument("algebra")

    wreath = commands.add_parser("wreath", help="full or generated wreath product")
    wreath.add_argument("left")
    wreath.add_argument("right")
    wreath.add_argument("-o", "--output", required=True)
    wreath.add_argument("--letters", help="letter map into the right factor (generated product)")
    wreath.add_argument("--gtable", help="function tables of the letters (generated product)")
    wreath.add_argument("--letters-out", help="where to write the letter map of the generated product")

    derived = commands.add_parser("derived", help="derived category of two morphisms")
    derived.add_argument("left")
    derived.add_argument("left_letters")
    derived.add_argument("right")
    derived.add_argument("right_letters")
    derived.add_argument("--check", choices=["local-dist"])
    derived.add_argument("--summary", action="store_true")
    derived.add_argument("--dot")
    derived.add_argument("--diagram", help="diagram text to evaluate and merge")
    derived.add_argument("--divide", metavar="ALGEBRA", help="search for a division of the category into ALGEBRA")

    paths_cmd = commands.add_parser("paths", help="path-language automaton of a recognized language")
    paths_cmd.add_argument("algebra")
    paths_cmd.add_argument("letters")
    accept = paths_cmd.add_mutually_exclusive_group(required=True)
    accept.add_argument("--accept", help="comma-separated H indices")
    accept.add_argument("--accept-file")
    paths_cmd.add_argument("--dot")
    paths_cmd.add_argument("--intersect", help="h1,h2: do the two value classes share a path set")

    psi_cmd = commands.add_parser("psi", help="print the Ψ normal form of a forest file")
    psi_cmd.add_argument("forest")

    pi_cmd = commands.add_parser("pi", help="print the path set of a forest file")
    pi_cmd.add_argument("forest")

    fixtures = commands.add_parser("fixtures", help="list or emit the built-in algebras")
    fixture_commands = fixtures.add_subparsers(dest="fixtures_command")
    listing = fixture_commands.add_parser("list")
    listing.add_argument("--flags", action="store_true", help="also run the checkers on every entry")
    emit_cmd = fixture_commands.add_parser("emit")
    emit_cmd.add_argument("name")
    emit_cmd.add_argument("-o", "--output", required=True)

    oracle = commands.add_parser("oracle", help="run the brute-force cross-check suites")
    oracle.add_argument("--suite", action="append", choices=sorted(SUITES))
    oracle.add_argument("--save", action="store_true", help="also write the report and settings under the output directory")
    return parser


def _settings(args) -> Settings:
    settings = SettingManager(args.settings).load()
    return SettingManager.from_namespace(args, settings)


def _indices(text: str, option: str) -> list[int]:
    try:
        return parse_index_list(text)
    except ValueError:
        raise UsageError(f"{option} takes comma-separated integers, got '{text}'")


def _read_forest(path: str):
    return parse_forest(read_text(path).strip())


def _validate(args, settings: Settings, logger: Logger) -> int:
    report = validate_algebra(read_algebra(args.algebra))
    print(report.render())
    return 0 if report.ok else 1


def _check(args, settings: Settings, logger: Logger) -> int:
    A = read_algebra(args.algebra)
    if args.property == "horizontal":
        verdict = check_horizontal(A)
        print(verdict.render())
        return 0 if verdict.ok else 1
    if args.property == "distributive":
        verdict = is_distributive(A)
        print(verdict.render(A))
        return 0 if verdict.holds else 1
    verdict = TwoDistChecker(A, settings, logger).check()
    print(verdict.render(A))
    return verdict.exit_code


def _wreath(args, settings: Settings, logger: Logger) -> int:
    A1, A2 = read_algebra(args.left), read_algebra(args.right)
    if args.letters or args.gtable:
        if not (args.letters and args.gtable):
            raise UsageError("a generated product needs both --letters and --gtable")
        gtable = parse_gtable(read_text(args.gtable), args.gtable)
        wreath, letters = wreath_generated(A1, A2, read_letter_map(args.letters), gtable, settings.closure_cap, logger)
        if args.letters_out:
            write_text(args.letters_out, format_letter_map(letters))
    else:
        wreath = wreath_product(A1, A2, settings.wreath_cap, logger)
    write_text(args.output, format_algebra(wreath.algebra))
    check = project_right(wreath).verify()
    print(f"|H|={wreath.algebra.h_size} |V|={wreath.algebra.v_size}")
    print("projection: ok" if check.ok else f"projection: FAIL {check.failure}")
    return 0 if check.ok else 1


def _derived(args, settings: Settings, logger: Logger) -> int:
    C = build_derived_category(read_algebra(args.left), read_letter_map(args.left_letters),
                               read_algebra(args.right), read_letter_map(args.right_letters),
                               settings.closure_cap, logger)
    code = 0
    if args.summary:
        print(f"objects: {len(C.objects)} half-arrows: {len(C.halves)} arrows: {len(C.arrows)}")
        print(C.summary_table().get_string())
    else:
        print(C.render())
    if args.check == "local-dist":
        verdict = is_locally_distributive(C)
        print(verdict.render(C))
        code = 0 if verdict.holds else 1
    if args.diagram:
        d = parse_diagram(C, args.diagram)
        print(f"value: {half_label(diagram_val(C, d))}")
        print(f"merged: {render(diagram_merge(C, d))}")
    if args.divide:
        search = search_division(C, read_algebra(args.divide), settings.division_budget,
                                 settings.division_max_subset, logger)
        print(f"division search: {search.status} after {search.explored} candidate sets")
        code = max(code, DIVISION_EXIT[search.status])
    if args.dot:
        write_text(args.dot, C.to_dot())
    return code


def _paths(args, settings: Settings, logger: Logger) -> int:
    A, letters = read_algebra(args.algebra), read_letter_map(args.letters)
    accept = _indices(args.accept, "--accept") if args.accept is not None else read_accept(args.accept_file)
    if args.intersect:
        pair = _indices(args.intersect, "--intersect")
        if len(pair) != 2:
            raise UsageError("--intersect takes two H indices h1,h2")
        engine = PsiEngine(A, letters, settings.psi_max_h, settings.psi_family_cap, logger)
        hit = paths_intersect(engine, *pair)
        print(f"paths intersect: {'yes' if hit else 'no'}")
        return 0 if hit else 1
    dfa = pi_automaton(A, letters, accept, logger)
    sys.stdout.write(dfa.to_text())
    if args.dot:
        write_text(args.dot, dfa.to_dot(A.v_names))
    return 0


def _psi(args, settings: Settings, logger: Logger) -> int:
    print(render(psi(_read_forest(args.forest))))
    return 0


def _pi(args, settings: Settings, logger: Logger) -> int:
    print(paths(_read_forest(args.forest)).render())
    return 0


def _fixtures(args, settings: Settings, logger: Logger) -> int:
    if args.fixtures_command == "list":
        print(catalog_table(settings, with_flags=args.flags).get_string())
        return 0
    if args.fixtures_command == "emit":
        for path in emit(args.name, args.output):
            print(path)
        return 0
    raise UsageError("fixtures needs 'list' or 'emit'")


def _oracle(args, settings: Settings, logger: Logger) -> int:
    results = run_suites(args.suite or sorted(SUITES), settings, logger)
    lines = [results_table(results).get_string()]
    lines += [f"{result.name}: {finding}" for result in results for finding in result.findings]
    report = "\n".join(lines)
    print(report)
    if args.save:
        run_dir = Path(settings.output_directory) / f"oracle-{compact_timestamp()}"
        write_text(str(run_dir / "report.txt"), report + "\n")
        SettingManager(str(run_dir / "settings.json")).save(settings)
        logger(f"[forestalg] oracle report saved to {run_dir}", level="info")
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "validate": _validate,
    "check": _check,
    "wreath": _wreath,
    "derived": _derived,
    "paths": _paths,
    "psi": _psi,
    "pi": _pi,
    "fixtures": _fixtures,
    "oracle": _oracle,
}


def formats_help() -> str:
    return "\n".join([grammar.__doc__.strip(), "", FORMAT_HELP.strip(), "", DFA_HELP.strip(), ""])


def main(argv: Optional[Sequence[str]] = None) -> int:
    logger = Logger(level="warning")
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        if args.version:
            print(f"forestalg {VERSION}")
            return 0
        if args.formats:
            print(formats_help())
            return 0
        if args.command is None:
            raise UsageError("missing command; see forestalg --help")
        settings = _settings(args)
        logger = Logger(settings.log_file, settings.log_level)
        return COMMANDS[args.command](args, settings, logger)
    except ForestAlgError as e:
        logger(f"[forestalg] {e}", level="error")
        print(f"error: {e}", file=sys.stderr)
        if isinstance(e, ForestSyntaxError):
            print(grammar.__doc__.strip(), file=sys.stderr)
        return e.exit_code
