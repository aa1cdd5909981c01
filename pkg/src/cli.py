#!/usr/bin/env python3
"""Command line front-end

Exit codes: 0 on success or a positive answer, 1 on a computed negative
answer (not history-deterministic, not equivalent, infeasible), 2 on usage,
parse, contract or budget errors.
"""
import argparse
import logging
import sys

from src import automaton_io, games, hardness, transforms
from src.automaton import det_difference_lasso
from src.cobuchimin import check_canonicity, minimise_hd_cobuchi
from src.config import DEFAULT_SETTINGS
from src.errors import Error
from src.gencobuchimin import minimise_hd_gencobuchi

logger = logging.getLogger(__name__)

SUCCESS = 0
NEGATIVE = 1
FAILURE = 2


def _read_automaton(path: str):
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    if text.lstrip().startswith('HOA:'):
        return automaton_io.import_hoa(text)
    return automaton_io.parse_native(text)


def _read_graph(path: str):
    with open(path, encoding='utf-8') as handle:
        return automaton_io.read_edges(handle.read())


def _emit(text: str, path: str = None) -> None:
    if path:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_automaton(automaton, arguments) -> None:
    if arguments.hoa:
        text = automaton_io.export_hoa(automaton)
    else:
        text = automaton_io.serialise_native(automaton)
    _emit(text, getattr(arguments, 'output', None))


def _settings(arguments):
    changes = {
        'seed': arguments.seed, 'verify_postconditions': not arguments.no_verify,
        'log_level': arguments.log_level}
    if arguments.budget is not None:
        changes['search_budget'] = arguments.budget
    return DEFAULT_SETTINGS.replace(**changes)


def _log_level(arguments) -> str:
    if arguments.verbose:
        return 'INFO' if arguments.verbose == 1 else 'DEBUG'
    return _settings(arguments).log_level


def _minimize(arguments) -> int:
    automaton = _read_automaton(arguments.input)
    settings = _settings(arguments)
    if arguments.mode == 'hd-cobuchi':
        result = minimise_hd_cobuchi(automaton, settings).automaton
    else:
        result = minimise_hd_gencobuchi(automaton, settings)
    _emit_automaton(result, arguments)
    return SUCCESS


def _check(arguments) -> int:
    automaton = _read_automaton(arguments.input)
    if arguments.property == 'hd':
        verdict = games.is_history_deterministic(automaton)
        print('history-deterministic' if verdict else 'not history-deterministic')
        return SUCCESS if verdict else NEGATIVE
    report = check_canonicity(automaton)
    for name, value in report.flags().items():
        print(f'{name}: {"yes" if value else "no"}')
    return SUCCESS if report.all_true else NEGATIVE


def _equiv(arguments) -> int:
    first = _read_automaton(arguments.first)
    second = _read_automaton(arguments.second)
    verdict = games.equivalent(first, second, arguments.mode)
    if verdict:
        print('equivalent')
        return SUCCESS
    print('not equivalent')
    if arguments.mode == 'det':
        print(f'witness: {det_difference_lasso(first, second)}')
    return NEGATIVE


def _gadget(arguments) -> int:
    if arguments.gadget == 'expfamily':
        _emit_automaton(hardness.exp_family(arguments.size), arguments)
        return SUCCESS
    graph = _read_graph(arguments.graph)
    if arguments.gadget == 'trianglefull':
        _emit(automaton_io.write_edges(hardness.triangle_full_transform(graph)))
        return SUCCESS
    if arguments.gadget == 'pseudopath':
        _emit_automaton(hardness.pseudo_path_automaton(graph, arguments.init), arguments)
        return SUCCESS

    if arguments.colouring == 'auto':
        colours = hardness.chromatic_number(graph)
        logger.info('colouring with %d colours', colours)
        colouring = hardness.graph_colouring(graph, max(colours, 1))
    else:
        with open(arguments.colouring, encoding='utf-8') as handle:
            colouring = automaton_io.read_colouring(handle.read())
    _emit_automaton(hardness.colouring_to_automaton(graph, colouring), arguments)
    return SUCCESS


def _recolor(arguments) -> int:
    automaton = _read_automaton(arguments.input)
    _emit_automaton(transforms.recolour_greedy(automaton), arguments)
    return SUCCESS


def _exactmin(arguments) -> int:
    automaton = _read_automaton(arguments.input)
    query = hardness.ExactMinQuery(
        automaton, arguments.max_states, arguments.max_colours, arguments.mode)
    result = hardness.exact_minimise(query, _settings(arguments))
    if result is None:
        print('infeasible')
        return NEGATIVE
    _emit_automaton(result, arguments)
    return SUCCESS


def build_parser() -> argparse.ArgumentParser:
    """Parser of the hdmin command line"""
    parser = argparse.ArgumentParser(
        prog='hdmin',
        description='Minimisation of history-deterministic coBüchi automata',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='-v for progress, -vv for debugging output')
    parser.add_argument(
        '--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        default=DEFAULT_SETTINGS.log_level, help='Log level when -v is not given')
    parser.add_argument(
        '--hoa', action='store_true', help='Print automata in HOA format')
    parser.add_argument(
        '--budget', type=int, default=None,
        help='Bound on the exhaustive search space')
    parser.add_argument(
        '--seed', type=int, default=DEFAULT_SETTINGS.seed,
        help='Seed of the random lasso samples')
    parser.add_argument(
        '--no-verify', action='store_true',
        help='Skip the postconditions of the minimisers')
    commands = parser.add_subparsers(dest='command', required=True)

    minimize = commands.add_parser('minimize', help='Minimal HD automaton')
    minimize.add_argument('--mode', choices=['hd-gencobuchi', 'hd-cobuchi'], default='hd-gencobuchi')
    minimize.add_argument('input', help='Automaton file (native or HOA)')
    minimize.add_argument('-o', '--output', help='Output file, standard output if missing')
    minimize.set_defaults(handler=_minimize)

    check = commands.add_parser('check', help='History-determinism or canonicity')
    check.add_argument('property', choices=['hd', 'props'])
    check.add_argument('input', help='Automaton file')
    check.set_defaults(handler=_check)

    equiv = commands.add_parser('equiv', help='Language equivalence')
    equiv.add_argument('first', help='Automaton file')
    equiv.add_argument('second', help='Automaton file')
    equiv.add_argument('--mode', choices=['det', 'hd'], default='hd')
    equiv.set_defaults(handler=_equiv)

    gadget = commands.add_parser('gadget', help='Hardness constructions')
    gadgets = gadget.add_subparsers(dest='gadget', required=True)
    graph = gadgets.add_parser('graph', help='Automaton of the graph language')
    graph.add_argument('graph', help='Edge-list file')
    graph.add_argument(
        '--colouring', default='auto',
        help='"auto" for an optimal colouring, or a file of "vertex colour" lines')
    pseudopath = gadgets.add_parser('pseudopath', help='Pseudo-path automaton')
    pseudopath.add_argument('graph', help='Edge-list file')
    pseudopath.add_argument('--init', required=True, help='Start vertex')
    expfamily = gadgets.add_parser('expfamily', help='Member of the exponential family')
    expfamily.add_argument('size', type=int)
    trianglefull = gadgets.add_parser('trianglefull', help='Triangle-full graph')
    trianglefull.add_argument('graph', help='Edge-list file')
    gadget.set_defaults(handler=_gadget)

    recolor = commands.add_parser('recolor', help='Greedy colour removal')
    recolor.add_argument('input', help='Automaton file')
    recolor.set_defaults(handler=_recolor)

    exactmin = commands.add_parser('exactmin', help='Exhaustive exact minimisation')
    exactmin.add_argument('input', help='Automaton file')
    exactmin.add_argument('--max-states', type=int, required=True)
    exactmin.add_argument('--max-colours', type=int, required=True)
    exactmin.add_argument('--mode', choices=['det', 'hd'], default='det')
    exactmin.set_defaults(handler=_exactmin)
    return parser


def main(argv=None) -> int:
    """Run the command line and return its exit code"""
    parser = build_parser()
    try:
        arguments = parser.parse_args(argv)
    except SystemExit as exit_request:
        return FAILURE if exit_request.code else SUCCESS

    logging.basicConfig(
        level=_log_level(arguments), format='%(levelname)s %(name)s: %(message)s')

    try:
        return arguments.handler(arguments)
    except Error as error:
        logger.debug('failure', exc_info=True)
        print(f'hdmin: {error.message}', file=sys.stderr)
        return FAILURE
    except OSError as error:
        print(f'hdmin: {error}', file=sys.stderr)
        return FAILURE


if __name__ == '__main__':
    sys.exit(main())  # pragma: no cover
