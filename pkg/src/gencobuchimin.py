#!/usr/bin/env python3
"""Minimal history-deterministic generalised coBüchi automata

The safe components of a canonical coBüchi automaton are packed on top of
each other: each residual class gets a block of states as large as its
biggest share of a single component, and colour i is missing exactly on
the transitions that are images of safe transitions of component i. A
round-robin resolver follows one component at a time and jumps to the next
one whenever the followed run is forced off it.
"""
import dataclasses
import logging

import networkx as nx

from src import games, transforms
from src.automaton import AcceptanceKind, Automaton, Lasso, mask_of
from src.cobuchimin import (
    CanonicalForm, analyse_canonicity, minimise_hd_cobuchi,
    safe_language_included, to_nice_form)
from src.config import DEFAULT_SETTINGS, Settings
from src.errors import ContractError, PostconditionError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SizeProfile(object):
    """Block sizes of the minimal generalised coBüchi automaton

    :param classes: Residual class per block, the initial class first
    :param sizes: States per block
    :param transient: Whether no state of the class lies on a cycle
    :param largest_component: Size of the largest safe component, at least 1
    """
    classes: tuple
    sizes: tuple
    transient: tuple
    largest_component: int

    @property
    def total(self) -> int:
        """Number of states of the packed automaton"""
        return sum(self.sizes)

    def offset(self, residual: int) -> int:
        """First state of the block of a residual class"""
        position = self.classes.index(residual)
        return sum(self.sizes[:position])


@dataclasses.dataclass(frozen=True)
class MorphismPacking(object):
    """Placement of one safe component into the packed automaton

    :param component: Index of the safe component
    :param mapping: Dict component state -> packed state
    :param safe_transitions: Safe transitions (p, letter, q) of the component
    """
    component: int
    mapping: dict
    safe_transitions: tuple

    def image(self) -> frozenset:
        """Packed transitions the component is mapped onto"""
        return frozenset(
            (self.mapping[source], letter, self.mapping[target])
            for source, letter, target in self.safe_transitions)


class _CanonicalView(object):
    # Canonical coBüchi automaton with its residual classes and safe components
    def __init__(self, source) -> None:
        if isinstance(source, CanonicalForm):
            self.automaton = source.automaton
            self.partition = source.partition
            self.decomposition = source.decomposition
            self.reference = source.reference
            return
        report, partition, decomposition = analyse_canonicity(source)
        if not report.all_true:
            raise ContractError(
                f'{source.name} is not a canonical coBüchi automaton: '
                f'{", ".join(report.failed())} failed')
        self.automaton = source
        self.partition = partition
        self.decomposition = decomposition
        self.reference = None

    def deterministic_reference(self) -> Automaton:
        if self.reference is None:
            self.reference = to_nice_form(
                transforms.breakpoint_determinise(self.automaton))
        return self.reference


def _on_cycle(automaton: Automaton) -> set:
    graph = automaton.state_graph()
    result = set()
    for component in nx.strongly_connected_components(graph):
        state = next(iter(component))
        if len(component) > 1 or graph.has_edge(state, state):
            result |= component
    return result


def _profile(view: _CanonicalView) -> SizeProfile:
    partition = view.partition
    components = view.decomposition.components
    on_cycle = _on_cycle(view.automaton)
    classes = [partition.initial_class] + [
        index for index in range(partition.class_count)
        if index != partition.initial_class]

    sizes = []
    transient = []
    for index in classes:
        members = set(partition.members(index))
        passing = not (members & on_cycle)
        transient.append(passing)
        if passing:
            sizes.append(1)
        else:
            sizes.append(max(
                [1] + [len(component & members) for component in components]))
    largest = max([1] + [len(component) for component in components])
    return SizeProfile(tuple(classes), tuple(sizes), tuple(transient), largest)


def size_profile(amin) -> SizeProfile:
    """Block sizes of the packed automaton of a canonical coBüchi automaton

    :param amin: CanonicalForm, or an automaton checked for canonicity
    :raises ContractError: If the automaton is not canonical
    """
    return _profile(_CanonicalView(amin))


def _packings(view: _CanonicalView, profile: SizeProfile) -> list:
    automaton = view.automaton
    class_of = view.partition.class_of
    packings = []
    for index, component in enumerate(view.decomposition.components):
        used = {}
        mapping = {}
        for state in sorted(component):
            residual = class_of[state]
            slot = used.get(residual, 0)
            used[residual] = slot + 1
            mapping[state] = profile.offset(residual) + slot
        safe = tuple(
            (source, letter, target)
            for source, letter, target, mask in automaton.transitions
            if mask == 0 and source in component and target in component)
        packings.append(MorphismPacking(index, mapping, safe))
    return packings


def morphism_packing(amin) -> list:
    """One MorphismPacking per safe component

    The states of a component are placed, by ascending index, on the
    lowest free slots of the blocks of their classes.
    """
    view = _CanonicalView(amin)
    return _packings(view, _profile(view))


def _build(view: _CanonicalView, profile: SizeProfile, packings: list) -> Automaton:
    automaton = view.automaton
    class_of = view.partition.class_of
    class_moves = sorted({
        (class_of[source], letter, class_of[target])
        for source, letter, target, _ in automaton.transitions})
    images = [packing.image() for packing in packings]

    def block(residual):
        start = profile.offset(residual)
        return range(start, start + profile.sizes[profile.classes.index(residual)])

    transitions = []
    for residual, letter, following in class_moves:
        for source in block(residual):
            for target in block(following):
                mask = mask_of(
                    index for index, image in enumerate(images)
                    if (source, letter, target) not in image)
                transitions.append((source, letter, target, mask))

    return Automaton(
        automaton.alphabet, profile.total, 0, transitions,
        AcceptanceKind.GEN_COBUCHI, len(packings),
        [f'p{state}' for state in range(profile.total)], automaton.name)


def build_general(amin) -> Automaton:
    """Packed generalised coBüchi automaton of a canonical coBüchi automaton

    Every transition between classes of the canonical automaton is copied
    between all states of the two blocks; colour i is absent exactly on the
    image of the safe transitions of component i.

    :raises ContractError: If the automaton is not canonical
    """
    view = _CanonicalView(amin)
    profile = _profile(view)
    result = _build(view, profile, _packings(view, profile))
    logger.debug(
        'packed %d safe components into %d states',
        len(view.decomposition.components), result.state_count)
    return result


def build_prefix_independent(amin) -> Automaton:
    """Packed automaton of a canonical automaton with a single residual

    It has as many states as the largest safe component.

    :raises ContractError: If there is more than one residual class
    """
    view = _CanonicalView(amin)
    if view.partition.class_count != 1:
        raise ContractError(
            f'{view.automaton.name} has {view.partition.class_count} '
            f'residual classes, not a prefix-independent language')
    profile = _profile(view)
    return _build(view, profile, _packings(view, profile))


def _class_of_reference(view: _CanonicalView, reference: Automaton) -> dict:
    # Residual class of the canonical automaton per reference state, by access word
    automaton = view.automaton
    result = {reference.initial: view.partition.initial_class}
    reached = {reference.initial: frozenset([automaton.initial])}
    queue = [reference.initial]
    while queue:
        state = queue.pop(0)
        for letter, target, _ in reference.outgoing(state):
            if target in reached:
                continue
            following = frozenset(
                other
                for current in reached[state]
                for other, _ in automaton.successors(current, letter))
            reached[target] = following
            result[target] = (
                view.partition.class_of[min(following)] if following else None)
            queue.append(target)
    return result


def round_robin_resolver(out: Automaton, packings: list, amin) -> games.Strategy:
    """Resolver of the packed automaton

    Positions are pairs (packed state, letter) and moves are pairs
    (target, mask). The memory (d, i, t) holds the state d of a
    deterministic automaton for the language, the component i currently
    followed and the state t of that component the run is aligned with, or
    None. While t has a safe successor in its component the run follows its
    image; otherwise the next component is tried from the first state whose
    safe language covers d, in cyclic order; when none does the run waits
    on the first state of the block.

    :raises ContractError: If the packings do not describe ``out``
    """
    view = _CanonicalView(amin)
    profile = _profile(view)
    for index, packing in enumerate(packings):
        for source, letter, target in packing.image():
            moves = dict(out.successors(source, letter))
            if target not in moves or (moves[target] >> index) & 1:
                raise ContractError(
                    f'Component {index} is not packed into {out.name}')

    automaton = view.automaton
    decomposition = view.decomposition
    components = decomposition.components
    count = len(packings)
    reference = view.deterministic_reference().complete()
    class_of_d = _class_of_reference(view, reference)

    cover = {}
    for state, residual in class_of_d.items():
        for index, component in enumerate(components):
            cover[(state, index)] = next(
                (candidate for candidate in sorted(component)
                 if view.partition.class_of[candidate] == residual
                 and safe_language_included(reference, state, automaton, [candidate])),
                None)

    def advance(memory, letter):
        state, index, aligned = memory
        (following, _), = reference.successors(state, letter)
        residual = class_of_d.get(following)
        if residual is None:
            return None
        if aligned is not None:
            for target, mask in automaton.successors(aligned, letter):
                if mask == 0 and decomposition.component_of[target] == index:
                    return (following, index, target), packings[index].mapping[target]
        if count == 0:
            return (following, 0, None), profile.offset(residual)
        for shift in range(1, count + 1):
            tried = (index + shift) % count
            candidate = cover[(following, tried)]
            if candidate is not None:
                return (following, tried, candidate), packings[tried].mapping[candidate]
        return (following, (index + 1) % count, None), profile.offset(residual)

    def choose(position, memory):
        state, letter = position
        step = advance(memory, letter)
        if step is None:
            return None
        for target, mask in out.successors(state, letter):
            if target == step[1]:
                return target, mask
        return None

    def update(memory, position, move):
        step = advance(memory, position[1])
        return step[0] if step is not None else memory

    return games.Strategy((reference.initial, 0, None), choose, update)


def resolver_run_accepts(out: Automaton, resolver: games.Strategy, lasso: Lasso) -> bool:
    """Whether the run built by a resolver on a lasso is accepting"""
    word = [out.alphabet.index(name) for name in lasso.stem + lasso.cycle]
    loop_start = len(lasso.stem)
    state = out.initial
    memory = resolver.initial_memory
    position = 0
    seen = {}
    masks = []
    while True:
        key = (state, memory, position)
        if key in seen:
            union = 0
            for mask in masks[seen[key]:]:
                union |= mask
            if out.kind is AcceptanceKind.GEN_COBUCHI:
                return union != out.full_mask
            return union == out.full_mask
        seen[key] = len(masks)
        letter = word[position]
        move = resolver.choose((state, letter), memory)
        if move is None:
            return False
        memory = resolver.update(memory, (state, letter), move)
        state = move[0]
        masks.append(move[1])
        position = position + 1 if position + 1 < len(word) else loop_start


def minimise_hd_gencobuchi(automaton: Automaton, settings: Settings = DEFAULT_SETTINGS) -> Automaton:
    """Minimal history-deterministic generalised coBüchi automaton

    :param automaton: Generalised coBüchi automaton, deterministic or
        history-deterministic
    :raises PostconditionError: If a final check fails
    """
    form = minimise_hd_cobuchi(automaton, settings)
    view = _CanonicalView(form)
    profile = _profile(view)
    result = _build(view, profile, _packings(view, profile))
    logger.info(
        '%s: %d states and %d colours', automaton.name, result.state_count,
        result.colour_count)

    if settings.verify_postconditions:
        failed = []
        if result.state_count > form.automaton.state_count:
            failed.append('size')
        if result.colour_count != len(view.decomposition.components):
            failed.append('colours')
        if not games.is_history_deterministic(result):
            failed.append('history_deterministic')
        elif not (games.contains_hd(form.reference, result)
                  and games.contains_hd(result, form.reference)):
            failed.append('equivalent')
        if failed:
            raise PostconditionError(
                f'The generalised automaton of {automaton.name} fails: '
                f'{", ".join(failed)}', failed)
    return result
