#!/usr/bin/env python3
"""Reading and writing automata, graphs and colourings

The native format is line based, one declaration per line, '#' starting a
comment::

    name T3
    alphabet a b c
    acceptance gen-cobuchi 3
    states a b c
    initial a
    trans a a a {0}
    trans a b b {}

HOA export writes explicit labels over ceil(log2 |alphabet|) atomic
propositions and keeps the letter names in a 'letters:' header. HOA
import accepts the transition-based, single-initial-state, explicitly
labelled subset with generalised Büchi or coBüchi acceptance.
"""
import logging
import re

import networkx as nx

from src.automaton import (
    AcceptanceKind, Alphabet, Automaton, colours_of, format_colours, mask_of)
from src.errors import ContractError, ParseError, UnsupportedFeatureError

logger = logging.getLogger(__name__)

_COLOUR_SET = re.compile(r'^\{(\d+(,\d+)*)?\}$')
_TOKENS = re.compile(r'"[^"]*"|\S+')


def _parse_colours(text: str, count: int, line_number: int) -> int:
    if not _COLOUR_SET.match(text):
        raise ParseError(f'Malformed colour set "{text}"', line_number)
    colours = [int(value) for value in text[1:-1].split(',') if value]
    for colour in colours:
        if colour >= count:
            raise ParseError(
                f'Colour {colour} is outside 0..{count - 1}', line_number)
    return mask_of(colours)


def parse_native(text: str) -> Automaton:
    """Automaton described in the native format

    :raises ParseError: On the first malformed line, or a missing declaration
    """
    header = {}
    pending = []
    last_line = 0
    for line_number, raw in enumerate(text.splitlines(), start=1):
        last_line = line_number
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        keyword, *fields = line.split()
        if keyword == 'trans':
            if len(fields) != 4:
                raise ParseError('A transition reads: trans SOURCE LETTER TARGET {COLOURS}', line_number)
            pending.append((line_number, fields))
            continue
        if keyword not in ('name', 'alphabet', 'acceptance', 'states', 'initial'):
            raise ParseError(f'Unknown keyword "{keyword}"', line_number)
        if keyword in header:
            raise ParseError(f'"{keyword}" is declared twice', line_number)
        if not fields:
            raise ParseError(f'"{keyword}" needs a value', line_number)
        header[keyword] = (line_number, fields)

    for keyword in ('alphabet', 'acceptance', 'states', 'initial'):
        if keyword not in header:
            raise ParseError(f'Missing "{keyword}" declaration', max(last_line, 1))

    line_number, fields = header['alphabet']
    if len(set(fields)) != len(fields):
        raise ParseError('Repeated letter names', line_number)
    alphabet = Alphabet(fields)

    line_number, fields = header['acceptance']
    kinds = {kind.value: kind for kind in AcceptanceKind}
    if len(fields) != 2 or fields[0] not in kinds or not fields[1].isdigit():
        raise ParseError(
            'Acceptance reads: acceptance gen-buchi|gen-cobuchi COUNT', line_number)
    kind = kinds[fields[0]]
    count = int(fields[1])

    line_number, names = header['states']
    if len(set(names)) != len(names):
        raise ParseError('Repeated state names', line_number)
    index = {name: position for position, name in enumerate(names)}

    line_number, fields = header['initial']
    if len(fields) != 1 or fields[0] not in index:
        raise ParseError(f'Unknown initial state "{" ".join(fields)}"', line_number)
    initial = index[fields[0]]

    transitions = []
    for line_number, (source, letter, target, colours) in pending:
        for name in (source, target):
            if name not in index:
                raise ParseError(f'Unknown state "{name}"', line_number)
        if letter not in alphabet:
            raise ParseError(f'Unknown letter "{letter}"', line_number)
        transitions.append((
            index[source], alphabet.index(letter), index[target],
            _parse_colours(colours, count, line_number)))

    name = header['name'][1][0] if 'name' in header else 'automaton'
    return Automaton(alphabet, len(names), initial, transitions, kind, count, names, name)


def _require_plain(names, what: str) -> None:
    for name in names:
        if not name or any(character.isspace() for character in name) or '#' in name:
            raise ContractError(f'The {what} "{name}" cannot be written in the native format')


def serialise_native(automaton: Automaton) -> str:
    """Native text of an automaton; parse_native reads it back

    :raises ContractError: If a name holds whitespace or '#'
    """
    _require_plain(automaton.alphabet, 'letter')
    _require_plain(automaton.state_names, 'state')
    _require_plain([automaton.name], 'name')
    lines = [
        f'name {automaton.name}',
        f'alphabet {" ".join(automaton.alphabet)}',
        f'acceptance {automaton.kind.value} {automaton.colour_count}',
        f'states {" ".join(automaton.state_names)}',
        f'initial {automaton.state_name(automaton.initial)}']
    for source, letter, target, mask in automaton.transitions:
        lines.append(
            f'trans {automaton.state_name(source)} {automaton.alphabet[letter]} '
            f'{automaton.state_name(target)} {format_colours(mask)}')
    return '\n'.join(lines) + '\n'


def _proposition_count(letters: int) -> int:
    return (letters - 1).bit_length()


def _label(letter: int, propositions: int) -> str:
    if propositions == 0:
        return 't'
    return '&'.join(
        ('' if (letter >> bit) & 1 else '!') + str(bit) for bit in range(propositions))


def export_hoa(automaton: Automaton) -> str:
    """HOA text of an automaton with explicit labels and transition acceptance"""
    letters = len(automaton.alphabet)
    propositions = _proposition_count(letters)
    count = automaton.colour_count
    if automaton.kind is AcceptanceKind.GEN_BUCHI:
        condition = '&'.join(f'Inf({colour})' for colour in range(count)) or 't'
        acc_name = {0: 'all', 1: 'Buchi'}.get(count, f'generalized-Buchi {count}')
    else:
        condition = '|'.join(f'Fin({colour})' for colour in range(count)) or 'f'
        acc_name = {0: 'none', 1: 'co-Buchi'}.get(count, f'generalized-co-Buchi {count}')

    lines = [
        'HOA: v1',
        f'name: "{automaton.name}"',
        f'States: {automaton.state_count}',
        f'Start: {automaton.initial}',
        'AP: ' + ' '.join(
            [str(propositions)] + [f'"p{bit}"' for bit in range(propositions)]),
        'letters: ' + ' '.join(f'"{letter}"' for letter in automaton.alphabet),
        f'acc-name: {acc_name}',
        f'Acceptance: {count} {condition}',
        'properties: trans-labels explicit-labels trans-acc',
        '--BODY--']
    for state in range(automaton.state_count):
        lines.append(f'State: {state} "{automaton.state_name(state)}"')
        for letter, target, mask in automaton.outgoing(state):
            colours = ''
            if mask:
                colours = ' {' + ' '.join(str(colour) for colour in colours_of(mask)) + '}'
            lines.append(f'[{_label(letter, propositions)}] {target}{colours}')
    lines.append('--END--')
    return '\n'.join(lines) + '\n'


def _parse_acceptance(tokens, line_number: int) -> tuple:
    if not tokens or not tokens[0].isdigit():
        raise ParseError('Acceptance needs a set count', line_number)
    count = int(tokens[0])
    condition = ''.join(tokens[1:])
    if condition == 't' and count == 0:
        return AcceptanceKind.GEN_BUCHI, 0
    if condition == 'f' and count == 0:
        return AcceptanceKind.GEN_COBUCHI, 0
    for kind, pattern, joiner in (
            (AcceptanceKind.GEN_BUCHI, 'Inf({})', '&'),
            (AcceptanceKind.GEN_COBUCHI, 'Fin({})', '|')):
        if condition == joiner.join(pattern.format(colour) for colour in range(count)):
            return kind, count
    raise UnsupportedFeatureError(
        f'line {line_number}: acceptance "{condition}" is neither generalised '
        f'Büchi nor generalised coBüchi', 'acceptance')


def _letters_of_label(label: str, letters: int, propositions: int, line_number: int) -> list:
    label = label.strip()
    if label == 't':
        return list(range(letters))
    if '|' in label or '(' in label:
        raise UnsupportedFeatureError(
            f'line {line_number}: label "{label}" is not a conjunction of literals',
            'label disjunction')
    required = {}
    for literal in label.split('&'):
        literal = literal.strip()
        match = re.fullmatch(r'(!?)(\d+)', literal)
        if not match:
            raise ParseError(f'Malformed literal "{literal}"', line_number)
        bit = int(match.group(2))
        if bit >= propositions:
            raise ParseError(f'Unknown proposition {bit}', line_number)
        required[bit] = not match.group(1)
    return [
        letter for letter in range(letters)
        if all(bool((letter >> bit) & 1) == value for bit, value in required.items())]


def import_hoa(text: str) -> Automaton:
    """Automaton described in the supported HOA subset

    :raises ParseError: Malformed text
    :raises UnsupportedFeatureError: State-based acceptance, alternation,
        several initial states, implicit labels, label disjunction, aliases
        or another acceptance condition
    """
    lines = text.splitlines()
    header = {}
    body_start = None
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        if line == '--BODY--':
            body_start = line_number
            break
        key, _, value = line.partition(':')
        tokens = _TOKENS.findall(value)
        if key == 'Start':
            if 'Start' in header or '&' in value:
                raise UnsupportedFeatureError(
                    f'line {line_number}: several initial states', 'initial states')
        if key == 'Alias':
            raise UnsupportedFeatureError(f'line {line_number}: aliases', 'aliases')
        header[key] = (line_number, tokens)
    if body_start is None:
        raise ParseError('Missing --BODY--', max(len(lines), 1))
    for key in ('HOA', 'States', 'Start', 'AP', 'Acceptance'):
        if key not in header:
            raise ParseError(f'Missing "{key}:" header', body_start)
    if header['HOA'][1] != ['v1']:
        raise ParseError('Only HOA v1 is read', header['HOA'][0])

    line_number, tokens = header['States']
    if len(tokens) != 1 or not tokens[0].isdigit() or int(tokens[0]) < 1:
        raise ParseError('States needs a positive count', line_number)
    state_count = int(tokens[0])
    line_number, tokens = header['Start']
    if len(tokens) != 1 or not tokens[0].isdigit():
        raise ParseError('Start needs one state', line_number)
    initial = int(tokens[0])
    line_number, tokens = header['AP']
    if not tokens or not tokens[0].isdigit() or len(tokens) != int(tokens[0]) + 1:
        raise ParseError('AP needs a count and as many names', line_number)
    propositions = int(tokens[0])
    line_number, tokens = header['Acceptance']
    kind, count = _parse_acceptance(tokens, line_number)

    if 'letters' in header:
        line_number, tokens = header['letters']
        names = [token.strip('"') for token in tokens]
        if len(names) > 1 << propositions:
            raise ParseError('More letters than valuations', line_number)
    else:
        names = [_label(letter, propositions) for letter in range(1 << propositions)]
    alphabet = Alphabet(names)
    name = header['name'][1][0].strip('"') if 'name' in header else 'automaton'

    state_names = [f'q{state}' for state in range(state_count)]
    transitions = []
    current = None
    ended = False
    for line_number, line in enumerate(lines[body_start:], start=body_start + 1):
        line = line.strip()
        if not line:
            continue
        if line == '--END--':
            ended = True
            break
        if line.startswith('State:'):
            match = re.fullmatch(
                r'State:\s*(\[[^\]]*\]\s*)?(\d+)\s*("[^"]*")?\s*(\{[^}]*\})?', line)
            if not match:
                raise ParseError(f'Malformed state line "{line}"', line_number)
            if match.group(1):
                raise UnsupportedFeatureError(
                    f'line {line_number}: state labels', 'state labels')
            if match.group(4):
                raise UnsupportedFeatureError(
                    f'line {line_number}: state-based acceptance', 'state-based acceptance')
            current = int(match.group(2))
            if current >= state_count:
                raise ParseError(f'State {current} is out of range', line_number)
            if match.group(3):
                state_names[current] = match.group(3).strip('"')
            continue
        if current is None:
            raise ParseError('Transition outside a state', line_number)
        if not line.startswith('['):
            raise UnsupportedFeatureError(
                f'line {line_number}: implicit labels', 'implicit labels')
        match = re.fullmatch(r'\[([^\]]*)\]\s*([^{\s]+)\s*(\{[^}]*\})?', line)
        if not match:
            raise ParseError(f'Malformed transition "{line}"', line_number)
        if '&' in match.group(2):
            raise UnsupportedFeatureError(
                f'line {line_number}: universal branching', 'alternation')
        if not match.group(2).isdigit() or int(match.group(2)) >= state_count:
            raise ParseError(f'Unknown target "{match.group(2)}"', line_number)
        target = int(match.group(2))
        mask = 0
        if match.group(3):
            colours = match.group(3)[1:-1].split()
            if not all(colour.isdigit() and int(colour) < count for colour in colours):
                raise ParseError(f'Colour set {match.group(3)} is out of range', line_number)
            mask = mask_of(int(colour) for colour in colours)
        for letter in _letters_of_label(match.group(1), len(names), propositions, line_number):
            transitions.append((current, letter, target, mask))
    if not ended:
        raise ParseError('Missing --END--', max(len(lines), 1))
    if not 0 <= initial < state_count:
        raise ParseError(f'Start state {initial} is out of range', header['Start'][0])
    if len(set(state_names)) != state_count:
        state_names = None

    logger.debug('HOA automaton %s with %d states read', name, state_count)
    return Automaton(alphabet, state_count, initial, transitions, kind, count, state_names, name)


def read_edges(text: str) -> nx.Graph:
    """Undirected graph from lines 'u v'; '#' starts a comment

    :raises ParseError: Lines not made of two vertices, or self-loops
    """
    graph = nx.Graph()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) == 1:
            graph.add_node(fields[0])
            continue
        if len(fields) != 2:
            raise ParseError('An edge reads: u v', line_number)
        if fields[0] == fields[1]:
            raise ParseError(f'Self-loop on "{fields[0]}"', line_number)
        graph.add_edge(*fields)
    return graph


def write_edges(graph: nx.Graph) -> str:
    """Edge-list text of a graph, isolated vertices on lines of their own"""
    lines = [f'{first} {second}' for first, second in graph.edges]
    lines += [str(vertex) for vertex in graph.nodes if graph.degree[vertex] == 0]
    return '\n'.join(lines) + '\n'


def read_colouring(text: str) -> dict:
    """Colouring from lines 'vertex colour', colours from 1

    :raises ParseError: Malformed lines or colours lower than 1
    """
    colouring = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2 or not fields[1].isdigit() or int(fields[1]) < 1:
            raise ParseError('A colouring line reads: vertex colour', line_number)
        colouring[fields[0]] = int(fields[1])
    return colouring
