#!/usr/bin/env python3
"""Structural transformations of automata

Condition automata and cascade composition, degeneralisation, breakpoint
determinisation of coBüchi automata and greedy colour removal.
"""
import logging

from src.automaton import (
    AcceptanceKind, Alphabet, Automaton, format_colours,
    search_accepting_cycle)
from src.errors import ContractError

logger = logging.getLogger(__name__)


class ConditionAutomaton(object):
    """Deterministic automaton over colour sets recognising an acceptance
    condition

    It has one state per colour. In state i, a letter X without colour i
    loops silently; a letter X holding colour i moves to state i+1 (mod k)
    and emits the single output colour. Read as coBüchi it recognises the
    generalised coBüchi condition (some colour eventually absent), read as
    Büchi the generalised Büchi condition.

    Letters are materialised on demand by step(), so a cascade only pays
    for the colour sets that actually occur.

    :param colour_count: Number k of colours of the condition
    :param kind: GEN_COBUCHI for the coBüchi condition automaton,
        GEN_BUCHI for the Büchi one
    :raises ContractError: If colour_count is lower than 1
    """
    def __init__(self, colour_count: int, kind: AcceptanceKind) -> None:
        if colour_count < 1:
            raise ContractError(
                'A condition automaton needs at least one colour')
        self.__colour_count = colour_count
        self.__kind = kind

    @property
    def colour_count(self) -> int:
        """Number of colours read"""
        return self.__colour_count

    @property
    def kind(self) -> AcceptanceKind:
        """Acceptance family recognised"""
        return self.__kind

    @property
    def state_count(self) -> int:
        """One state per colour"""
        return self.__colour_count

    def step(self, state: int, mask: int) -> tuple:
        """(next state, output mask) on the colour set ``mask``"""
        if (mask >> state) & 1:
            return (state + 1) % self.__colour_count, 1
        return state, 0

    def as_automaton(self) -> Automaton:
        """Explicit automaton over all 2^k colour sets

        Letter names are colour sets such as '{0,2}'.
        """
        letters = range(1 << self.__colour_count)
        alphabet = Alphabet(format_colours(mask) for mask in letters)
        transitions = []
        for state in range(self.__colour_count):
            for mask in letters:
                target, out = self.step(state, mask)
                transitions.append((state, mask, target, out))
        return Automaton(
            alphabet, self.__colour_count, 0, transitions, self.__kind, 1,
            [f'c{state}' for state in range(self.__colour_count)],
            f'condition-{self.__kind.value}-{self.__colour_count}')

    def __repr__(self) -> str:
        return (
            f'ConditionAutomaton(colours={self.__colour_count}, '
            f'kind={self.__kind.value})')


def cascade(condition: ConditionAutomaton, automaton: Automaton) -> Automaton:
    """Feed the colours produced by an automaton to a condition automaton

    States are the reachable pairs (automaton state, condition state), in
    breadth-first order from the initial pair. A transition p -a:X-> q of
    the automaton and a condition step (i, X) -> (j, out) give the
    transition (p, i) -a:out-> (q, j). Acceptance is the condition's.

    :raises ContractError: If the condition does not read the automaton's
        colours or belongs to another acceptance family
    """
    if condition.colour_count != automaton.colour_count:
        raise ContractError(
            f'The condition reads {condition.colour_count} colours, the '
            f'automaton produces {automaton.colour_count}: alphabet mismatch')
    if condition.kind is not automaton.kind:
        raise ContractError(
            f'A {condition.kind.value} condition cannot read a '
            f'{automaton.kind.value} automaton')

    start = (automaton.initial, 0)
    index = {start: 0}
    order = [start]
    transitions = []
    position = 0
    while position < len(order):
        state, phase = order[position]
        for letter, target, mask in automaton.outgoing(state):
            following, out = condition.step(phase, mask)
            key = (target, following)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            transitions.append((position, letter, index[key], out))
        position += 1

    names = [f'{automaton.state_name(state)}.{phase}' for state, phase in order]
    logger.debug(
        'cascade of %s: %d states into %d', automaton.name,
        automaton.state_count, len(order))
    return Automaton(
        automaton.alphabet, len(order), 0, transitions, condition.kind, 1,
        names, automaton.name)


def degeneralise(automaton: Automaton) -> Automaton:
    """Equivalent automaton with a single colour

    Automata with one colour are returned unchanged. Without colours every
    transition becomes coloured (all runs accepted for Büchi, none for
    coBüchi). Otherwise the result is the cascade with the condition
    automaton, which preserves determinism.
    """
    if automaton.colour_count == 1:
        return automaton
    if automaton.colour_count == 0:
        return automaton.with_transitions(
            [(p, a, q, 1) for p, a, q, _ in automaton.transitions], 1)
    return cascade(
        ConditionAutomaton(automaton.colour_count, automaton.kind), automaton)


def breakpoint_determinise(automaton: Automaton) -> Automaton:
    """Deterministic coBüchi automaton for a coBüchi automaton

    States are pairs (S, O): S is the set of reachable states, O the states
    reached by runs that stayed safe since the last breakpoint. When O
    empties the transition is coloured and O restarts from the safe
    successors of S. The result is complete; the empty pair is its
    rejecting sink.

    :raises ContractError: Not a coBüchi automaton with exactly one colour
    """
    if automaton.kind is not AcceptanceKind.GEN_COBUCHI or automaton.colour_count != 1:
        raise ContractError(
            'Breakpoint determinisation reads coBüchi automata with one '
            'colour: degeneralise first')

    def post(states, letter, safe):
        return frozenset(
            target
            for state in states
            for target, mask in automaton.successors(state, letter)
            if not safe or mask == 0)

    start = (frozenset([automaton.initial]), frozenset([automaton.initial]))
    index = {start: 0}
    order = [start]
    transitions = []
    position = 0
    while position < len(order):
        reached, owing = order[position]
        for letter in range(len(automaton.alphabet)):
            following = post(reached, letter, safe=False)
            still_owing = post(owing, letter, safe=True)
            mask = 0
            if not still_owing:
                mask = 1
                still_owing = post(reached, letter, safe=True)
            key = (following, still_owing)
            if key not in index:
                index[key] = len(order)
                order.append(key)
            transitions.append((position, letter, index[key], mask))
        position += 1

    assert len(order) <= 3 ** automaton.state_count

    def label(states):
        return '{' + ','.join(
            automaton.state_name(state) for state in sorted(states)) + '}'

    names = [f'{label(reached)}|{label(owing)}' for reached, owing in order]
    logger.debug(
        'breakpoint determinisation of %s: %d states into %d',
        automaton.name, automaton.state_count, len(order))
    return Automaton(
        automaton.alphabet, len(order), 0, transitions,
        AcceptanceKind.GEN_COBUCHI, 1, names, automaton.name)


def removable_colour(automaton: Automaton, colour: int) -> bool:
    """Whether dropping a colour leaves the language unchanged

    For deterministic automata the colour is removable iff no reachable
    cycle avoids it while showing every other colour. Nondeterministic
    generalised Büchi automata are assumed history-deterministic and are
    decided by the containment game.

    :raises ContractError: Unknown colour, or nondeterministic generalised
        coBüchi input
    """
    if not 0 <= colour < automaton.colour_count:
        raise ContractError(f'Colour {colour} does not exist')

    if automaton.is_deterministic():
        low = (1 << colour) - 1

        def successors(state):
            for letter, target, mask in automaton.outgoing(state):
                others = (mask & low) | ((mask >> (colour + 1)) << colour)
                yield letter, target, (others, (mask >> colour) & 1)

        found = search_accepting_cycle(
            automaton.initial, successors,
            [(AcceptanceKind.GEN_BUCHI, automaton.colour_count - 1),
             (AcceptanceKind.GEN_COBUCHI, 1)])
        return found is None

    if automaton.kind is not AcceptanceKind.GEN_BUCHI:
        raise ContractError(
            'Colour removal on nondeterministic automata is only defined for '
            'history-deterministic generalised Büchi automata')
    from src import games
    return games.contains_hd(automaton.without_colour(colour), automaton)


def recolour_greedy(automaton: Automaton) -> Automaton:
    """Remove removable colours in ascending index order until none is left

    The index does not advance after a removal, since the next colour has
    been shifted into its place.
    """
    colour = 0
    while colour < automaton.colour_count:
        if removable_colour(automaton, colour):
            logger.debug('colour %d of %s is removable', colour, automaton.name)
            automaton = automaton.without_colour(colour)
        else:
            colour += 1
    return automaton
