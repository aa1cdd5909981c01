#!/usr/bin/env python3
"""Canonical minimal history-deterministic coBüchi automata

Transitions without colour are safe, coloured ones are dotted. The safe
components of an automaton are the strongly connected components of its
safe graph holding at least one safe transition; the remaining states are
isolated. Minimisation goes through a deterministic automaton in normal
form, drops safe components subsumed by other components of the same
residual, merges safe-equivalent states and redirects every missing safe
move with dotted transitions to the whole residual class.
"""
import collections
import dataclasses
import enum
import logging

import networkx as nx

from src import games, transforms
from src.automaton import (
    AcceptanceKind, Automaton, ResidualPartition, check_semantic_determinism,
    det_inclusion_lasso, is_empty, residual_partition)
from src.config import DEFAULT_SETTINGS, Settings
from src.errors import ContractError, PostconditionError

logger = logging.getLogger(__name__)


class SafeRelation(enum.Enum):
    """Relation between the safe languages of two states"""
    EQUAL = 'equal'
    SUBSET = 'subset'
    SUPERSET = 'superset'
    INCOMPARABLE = 'incomparable'


class SafeDecomposition(object):
    """Safe components of an automaton

    Components are numbered by their least state.

    :param component_of: Component index per state, None for isolated states
    :param components: Frozen state sets, one per component
    """
    def __init__(self, component_of, components) -> None:
        self.__component_of = tuple(component_of)
        self.__components = tuple(components)

    @property
    def component_of(self) -> tuple:
        """Component index per state, None for isolated states"""
        return self.__component_of

    @property
    def components(self) -> tuple:
        """State sets of the components"""
        return self.__components

    @property
    def isolated(self) -> tuple:
        """States outside every component"""
        return tuple(
            state for state, value in enumerate(self.__component_of)
            if value is None)

    def same_component(self, first: int, second: int) -> bool:
        """Whether two states lie in one component"""
        value = self.__component_of[first]
        return value is not None and value == self.__component_of[second]

    def __repr__(self) -> str:
        return (
            f'SafeDecomposition(components='
            f'{[sorted(component) for component in self.__components]}, '
            f'isolated={list(self.isolated)})')


@dataclasses.dataclass(frozen=True)
class CanonicityReport(object):
    """Outcome of the canonicity checks, one flag per property"""
    reachable_only: bool
    semantically_deterministic: bool
    normal_form: bool
    safe_deterministic: bool
    safe_minimal: bool
    safe_centralised: bool

    @property
    def all_true(self) -> bool:
        """Whether every property holds"""
        return all(dataclasses.astuple(self))

    def flags(self) -> dict:
        """Property name -> flag"""
        return dataclasses.asdict(self)

    def failed(self) -> list:
        """Names of the properties that do not hold"""
        return [name for name, value in self.flags().items() if not value]


@dataclasses.dataclass(frozen=True)
class CanonicalForm(object):
    """Result of the minimisation

    :param automaton: The canonical minimal automaton
    :param partition: Residual classes of its states
    :param decomposition: Its safe components
    :param reference: Deterministic automaton in normal form it was built from
    """
    automaton: Automaton
    partition: ResidualPartition
    decomposition: SafeDecomposition
    reference: Automaton


def _require_cobuchi(automaton: Automaton) -> None:
    if automaton.kind is not AcceptanceKind.GEN_COBUCHI or automaton.colour_count != 1:
        raise ContractError(
            f'{automaton.name} is not a coBüchi automaton with one colour')


def safe_components(automaton: Automaton) -> SafeDecomposition:
    """Strongly connected components of the safe graph with a safe cycle"""
    _require_cobuchi(automaton)
    graph = automaton.state_graph(safe_only=True)
    found = []
    for component in nx.strongly_connected_components(graph):
        state = next(iter(component))
        if len(component) > 1 or graph.has_edge(state, state):
            found.append(frozenset(component))
    found.sort(key=min)

    component_of = [None] * automaton.state_count
    for index, component in enumerate(found):
        for state in component:
            component_of[state] = index
    return SafeDecomposition(component_of, found)


def is_safe_deterministic(automaton: Automaton) -> bool:
    """At most one safe transition per state and letter"""
    for state in range(automaton.state_count):
        for letter in range(len(automaton.alphabet)):
            safe = [target for target, mask in automaton.successors(state, letter) if mask == 0]
            if len(safe) > 1:
                return False
    return True


def _live_states(automaton: Automaton) -> set:
    # States with an infinite safe path
    graph = automaton.state_graph(safe_only=True)
    live = set()
    for component in nx.strongly_connected_components(graph):
        state = next(iter(component))
        if len(component) > 1 or graph.has_edge(state, state):
            live |= component
    queue = collections.deque(live)
    while queue:
        state = queue.popleft()
        for other in graph.predecessors(state):
            if other not in live:
                live.add(other)
                queue.append(other)
    return live


def safe_language_included(first: Automaton, state: int, second: Automaton, states) -> bool:
    """Whether every infinite safe word of a state is safe from some state of a set

    Runs a subset construction of the second automaton against the live
    safe moves of the first.

    :param first: Automaton holding ``state``
    :param second: Automaton holding ``states``
    :raises ContractError: If the alphabets differ
    """
    if first.alphabet != second.alphabet:
        raise ContractError('Safe languages compare automata over one alphabet')
    live_first = _live_states(first)
    live_second = _live_states(second)
    if state not in live_first:
        return True

    start = (state, frozenset(other for other in states if other in live_second))
    seen = {start}
    queue = collections.deque([start])
    while queue:
        current, group = queue.popleft()
        if not group:
            return False
        for letter, target, mask in first.outgoing(current):
            if mask or target not in live_first:
                continue
            following = frozenset(
                reached
                for other in group
                for reached, other_mask in second.successors(other, letter)
                if other_mask == 0 and reached in live_second)
            node = (target, following)
            if node not in seen:
                seen.add(node)
                queue.append(node)
    return True


def compare_safe_languages(automaton: Automaton, first: int, second: int) -> SafeRelation:
    """Relation between the safe languages of two states

    :raises ContractError: If the automaton is not safe-deterministic
    """
    if not is_safe_deterministic(automaton):
        raise ContractError(f'{automaton.name} is not safe-deterministic')
    forward = safe_language_included(automaton, first, automaton, [second])
    backward = safe_language_included(automaton, second, automaton, [first])
    if forward and backward:
        return SafeRelation.EQUAL
    if forward:
        return SafeRelation.SUBSET
    if backward:
        return SafeRelation.SUPERSET
    return SafeRelation.INCOMPARABLE


def _normalise(automaton: Automaton) -> Automaton:
    # Safe transitions between components, or touching isolated states, become dotted
    decomposition = safe_components(automaton)
    return automaton.with_transitions([
        (source, letter, target,
         1 if mask or not decomposition.same_component(source, target) else 0)
        for source, letter, target, mask in automaton.transitions])


def _prune_round(automaton: Automaton) -> Automaton:
    # Keep the successors of the residual covering all others, drop states
    # where no successor covers them
    partition = residual_partition(automaton, transforms.breakpoint_determinise(automaton))
    views = {
        index: transforms.breakpoint_determinise(
            automaton.with_initial(partition.representative(index)).trim())
        for index in range(partition.class_count)}
    cache = {}

    def included(smaller, larger):
        if (smaller, larger) not in cache:
            cache[(smaller, larger)] = det_inclusion_lasso(views[smaller], views[larger]) is None
        return cache[(smaller, larger)]

    kept = []
    dropped = set()
    for state in range(automaton.state_count):
        for letter in range(len(automaton.alphabet)):
            successors = automaton.successors(state, letter)
            classes = {partition.class_of[target] for target, _ in successors}
            chosen = [
                index for index in sorted(classes)
                if all(included(other, index) for other in classes)]
            if successors and not chosen:
                dropped.add(state)
                continue
            kept.extend(
                (state, letter, target, mask) for target, mask in successors
                if partition.class_of[target] == chosen[0])
    if automaton.initial in dropped:
        raise ContractError(
            f'{automaton.name} is not history-deterministic: its initial state '
            f'{automaton.state_name(automaton.initial)} has no covering successor')
    for state in sorted(dropped):
        logger.debug('%s: dropping %s', automaton.name, automaton.state_name(state))
    return automaton.with_transitions([
        transition for transition in kept
        if transition[0] not in dropped and transition[2] not in dropped]).trim()


def _prune_to_residuals(automaton: Automaton) -> Automaton:
    current = automaton
    while True:
        pruned = _prune_round(current)
        if pruned.transitions == current.transitions and pruned.state_count == current.state_count:
            return current
        current = pruned


def _safe_determinise(automaton: Automaton) -> tuple:
    # One safe successor per state and letter, the one with the largest safe
    # language; the others become dotted. Returns the automaton and whether
    # every choice was maximal
    cache = {}

    def included(first, second):
        if (first, second) not in cache:
            cache[(first, second)] = safe_language_included(
                automaton, first, automaton, [second])
        return cache[(first, second)]

    maximal = True
    transitions = []
    for state in range(automaton.state_count):
        for letter in range(len(automaton.alphabet)):
            successors = automaton.successors(state, letter)
            safe = [target for target, mask in successors if mask == 0]
            chosen = None
            if len(safe) > 1:
                covered = {
                    target: sum(included(other, target) for other in safe)
                    for target in safe}
                chosen = max(safe, key=lambda target: (covered[target], -target))
                if covered[chosen] < len(safe):
                    maximal = False
                    logger.info(
                        '%s: safe successors of %s on %s are incomparable',
                        automaton.name, automaton.state_name(state),
                        automaton.alphabet[letter])
            transitions.extend(
                (state, letter, target,
                 1 if mask or (chosen is not None and target != chosen) else 0)
                for target, mask in successors)
    return automaton.with_transitions(transitions), maximal


def _same_language(first: Automaton, second: Automaton) -> bool:
    first = transforms.breakpoint_determinise(first)
    second = transforms.breakpoint_determinise(second)
    return (det_inclusion_lasso(first, second) is None
            and det_inclusion_lasso(second, first) is None)


def to_nice_form(automaton: Automaton) -> Automaton:
    """Equivalent nice automaton: reachable, semantically deterministic,
    safe-deterministic and in normal form

    The result keeps a subset of the reachable states of the input and its
    safe components are parts of input components. Nondeterministic
    automata are pruned to their largest-residual successors, states with
    no such successor are dropped, and among safe successors of one letter
    only one with the largest safe language stays safe.

    :raises ContractError: Not a coBüchi automaton, or nondeterministic and
        not history-deterministic
    :raises PostconditionError: If incomparable safe successors leave no
        equivalent choice
    """
    _require_cobuchi(automaton)
    current = automaton.trim()
    if not current.is_deterministic():
        if not games.is_history_deterministic(current):
            raise ContractError(f'{automaton.name} is not history-deterministic')
        current = _prune_to_residuals(current)
        current, maximal = _safe_determinise(current)
        if not maximal and not _same_language(current, automaton):
            raise PostconditionError(
                f'{automaton.name}: no safe successor choice keeps the language',
                ['safe_deterministic'])
    return _normalise(current)


def analyse_canonicity(automaton: Automaton) -> tuple:
    """Canonicity flags with the partition and decomposition behind them

    :return: (CanonicityReport, ResidualPartition, SafeDecomposition)
    """
    _require_cobuchi(automaton)
    reachable_only = len(automaton.reachable_states()) == automaton.state_count
    if automaton.is_deterministic():
        partition = residual_partition(automaton)
    else:
        partition = residual_partition(
            automaton, transforms.breakpoint_determinise(automaton))
    decomposition = safe_components(automaton)
    normal_form = all(
        mask or decomposition.same_component(source, target)
        for source, _, target, mask in automaton.transitions)
    safe_deterministic = is_safe_deterministic(automaton)

    cache = {}

    def included(first, second):
        if (first, second) not in cache:
            cache[(first, second)] = safe_language_included(
                automaton, first, automaton, [second])
        return cache[(first, second)]

    safe_minimal = True
    safe_centralised = True
    for first in range(automaton.state_count):
        for second in range(automaton.state_count):
            if first == second or partition.class_of[first] != partition.class_of[second]:
                continue
            if not included(first, second):
                continue
            if first < second and included(second, first):
                safe_minimal = False
            if not decomposition.same_component(first, second):
                safe_centralised = False

    report = CanonicityReport(
        reachable_only=reachable_only,
        semantically_deterministic=check_semantic_determinism(automaton, partition),
        normal_form=normal_form,
        safe_deterministic=safe_deterministic,
        safe_minimal=safe_minimal,
        safe_centralised=safe_centralised)
    return report, partition, decomposition


def check_canonicity(automaton: Automaton) -> CanonicityReport:
    """Flags of the properties making a coBüchi automaton canonical

    Isolated states count as components of their own for centralisation.
    """
    report, _, _ = analyse_canonicity(automaton)
    return report


def _empty_form(reference: Automaton) -> CanonicalForm:
    alphabet = reference.alphabet
    automaton = Automaton(
        alphabet, 1, 0, [(0, letter, 0, 1) for letter in range(len(alphabet))],
        AcceptanceKind.GEN_COBUCHI, 1, ['empty'], reference.name)
    return CanonicalForm(
        automaton, ResidualPartition([0], 0, {}),
        SafeDecomposition([None], []), reference)


def _canonicalise(reference: Automaton) -> CanonicalForm:
    partition = residual_partition(reference)
    class_of = partition.class_of
    empty = {
        index for index in range(partition.class_count)
        if is_empty(reference.with_initial(partition.representative(index)))}
    if partition.initial_class in empty:
        return _empty_form(reference)

    decomposition = safe_components(reference)
    components = decomposition.components
    cache = {}

    def included(first, second):
        if (first, second) not in cache:
            cache[(first, second)] = safe_language_included(
                reference, first, reference, [second])
        return cache[(first, second)]

    remaining = list(range(len(components)))
    for index in reversed(range(len(components))):
        others = [other for other in remaining if other != index]
        if any(
                class_of[state] == class_of[other_state] and included(state, other_state)
                for state in components[index]
                for other in others
                for other_state in components[other]):
            logger.debug('safe component %d is subsumed', index)
            remaining.remove(index)

    kept = set()
    for index in remaining:
        kept |= components[index]
    for index in range(partition.class_count):
        if index in empty:
            continue
        members = partition.members(index)
        if any(state in kept for state in members):
            continue
        isolated = [state for state in members if decomposition.component_of[state] is None]
        kept.add(min(isolated) if isolated else min(members))

    representative = {}
    for state in sorted(kept):
        representative[state] = state
        if decomposition.component_of[state] is None:
            continue
        for other in sorted(kept):
            if other >= state:
                break
            if (representative[other] == other
                    and decomposition.same_component(state, other)
                    and class_of[state] == class_of[other]
                    and included(state, other) and included(other, state)):
                representative[state] = other
                break

    states = sorted(set(representative.values()))
    new_index = {state: index for index, state in enumerate(states)}
    by_class = collections.defaultdict(list)
    for state in states:
        by_class[class_of[state]].append(new_index[state])

    transitions = []
    for state in states:
        for letter in range(len(reference.alphabet)):
            (target, mask), = reference.successors(state, letter)
            if class_of[target] in empty:
                continue
            if mask == 0 and decomposition.same_component(state, target):
                transitions.append(
                    (new_index[state], letter, new_index[representative[target]], 0))
            else:
                transitions.extend(
                    (new_index[state], letter, other, 1)
                    for other in by_class[class_of[target]])

    automaton = Automaton(
        reference.alphabet, len(states), by_class[partition.initial_class][0],
        transitions, AcceptanceKind.GEN_COBUCHI, 1,
        [reference.state_name(state) for state in states], reference.name)

    renumbered = {}
    for state in states:
        renumbered.setdefault(class_of[state], len(renumbered))
    separating = {}
    for first, first_index in renumbered.items():
        for second, second_index in renumbered.items():
            if first_index < second_index:
                separating[(first_index, second_index)] = partition.separating_lasso(first, second)
    new_partition = ResidualPartition(
        [renumbered[class_of[state]] for state in states],
        renumbered[partition.initial_class], separating)
    return CanonicalForm(automaton, new_partition, safe_components(automaton), reference)


def _verify(form: CanonicalForm) -> None:
    failed = check_canonicity(form.automaton).failed()
    if not games.is_history_deterministic(form.automaton):
        failed.append('history_deterministic')
    elif not (games.contains_hd(form.reference, form.automaton)
              and games.contains_hd(form.automaton, form.reference)):
        failed.append('equivalent')
    if failed:
        raise PostconditionError(
            f'The minimal automaton of {form.automaton.name} fails: '
            f'{", ".join(failed)}', failed)


def minimise_hd_cobuchi(automaton: Automaton, settings: Settings = DEFAULT_SETTINGS) -> CanonicalForm:
    """Canonical minimal history-deterministic coBüchi automaton

    The input is degeneralised, determinised if needed and brought to
    normal form; the canonical automaton is then built from the residual
    classes and safe components of that deterministic automaton.

    :param automaton: Generalised coBüchi automaton, deterministic or
        history-deterministic
    :param settings: verify_postconditions turns the final checks on
    :raises ContractError: If the automaton is not generalised coBüchi
    :raises PostconditionError: If a final check fails
    """
    if automaton.kind is not AcceptanceKind.GEN_COBUCHI:
        raise ContractError(
            f'Only generalised coBüchi automata are minimised, '
            f'{automaton.name} is {automaton.kind.value}')
    single = transforms.degeneralise(automaton)
    if single.is_deterministic():
        deterministic = single.complete()
    else:
        deterministic = transforms.breakpoint_determinise(single)
    reference = _normalise(deterministic.trim())
    logger.info(
        'minimising %s through a deterministic automaton with %d states',
        automaton.name, reference.state_count)

    form = _canonicalise(reference)
    if settings.verify_postconditions:
        _verify(form)
    logger.info(
        '%s: canonical automaton with %d states', automaton.name,
        form.automaton.state_count)
    return form
