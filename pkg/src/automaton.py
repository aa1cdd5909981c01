#!/usr/bin/env python3
"""Automata over infinite words with transition-based generalised Büchi
and generalised coBüchi acceptance.

Colour sets are stored as int bitmasks: bit ``i`` set means colour ``i`` is
produced by the transition.

>>> alphabet = Alphabet(['a', 'b'])
>>> aut = Automaton(
...     alphabet, 1, 0, [(0, 0, 0, 0b0), (0, 1, 0, 0b1)],
...     AcceptanceKind.GEN_COBUCHI, 1)
>>> lasso_accepts(aut, Lasso(stem=('b',), cycle=('a',)))
True
>>> lasso_accepts(aut, Lasso(stem=(), cycle=('a', 'b')))
False
"""
import collections
import dataclasses
import enum
import itertools
import logging

import networkx as nx

from src.errors import ContractError, InputError

logger = logging.getLogger(__name__)


def colours_of(mask: int) -> list:
    """Colour indices present in a bitmask, ascending"""
    return [bit for bit in range(mask.bit_length()) if (mask >> bit) & 1]


def mask_of(colours) -> int:
    """Bitmask of an iterable of colour indices"""
    mask = 0
    for colour in colours:
        mask |= 1 << colour
    return mask


def format_colours(mask: int) -> str:
    """Text form of a colour set, such as '{0,2}' or '{}'"""
    return '{' + ','.join(str(colour) for colour in colours_of(mask)) + '}'


class Alphabet(object):
    """Ordered finite set of letter names

    The position of a name is its letter index.

    :param letters: Letter names, unique
    :raises ContractError: Empty alphabet or repeated names
    """
    def __init__(self, letters) -> None:
        letters = tuple(str(letter) for letter in letters)
        if not letters:
            raise ContractError('An alphabet needs at least one letter')
        if len(set(letters)) != len(letters):
            raise ContractError(f'Repeated letter names in {letters}')

        self.__letters = letters
        self.__index = {name: index for index, name in enumerate(letters)}

    @property
    def letters(self) -> tuple:
        """Letter names in index order"""
        return self.__letters

    def index(self, name: str) -> int:
        """Index of a letter name

        :param name: Letter name
        :raises InputError: If the name is not a letter of this alphabet
        """
        try:
            return self.__index[name]
        except KeyError:
            raise InputError(
                f'"{name}" is not a letter of {list(self.__letters)}',
                name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.__index

    def __getitem__(self, index: int) -> str:
        return self.__letters[index]

    def __iter__(self):
        return iter(self.__letters)

    def __len__(self) -> int:
        return len(self.__letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.__letters == other.letters

    def __hash__(self) -> int:
        return hash(self.__letters)

    def __repr__(self) -> str:
        return f'Alphabet({list(self.__letters)})'


class AcceptanceKind(enum.Enum):
    """Acceptance family of an automaton

    GEN_BUCHI accepts a run when every colour is seen infinitely often,
    GEN_COBUCHI when at least one colour is seen finitely often. With one
    colour they are the plain Büchi and coBüchi conditions.
    """
    GEN_BUCHI = 'gen-buchi'
    GEN_COBUCHI = 'gen-cobuchi'

    @property
    def dual(self) -> 'AcceptanceKind':
        """The other family"""
        if self is AcceptanceKind.GEN_BUCHI:
            return AcceptanceKind.GEN_COBUCHI
        return AcceptanceKind.GEN_BUCHI


class Automaton(object):
    """Nondeterministic automaton with colour-labelled transitions

    Values are immutable: every transformation returns a new automaton.

    :param alphabet: Input alphabet
    :param state_count: Number of states, indexed from 0
    :param initial: Index of the initial state
    :param transitions: Iterable of (source, letter index, target, mask);
        repeated (source, letter, target) triples are merged by colour union
    :param kind: Acceptance family
    :param colour_count: Number of colours k, masks range over 0..k-1
    :param state_names: Optional state labels, unique
    :param name: Optional automaton name, not part of equality
    :raises ContractError: If an index or a colour is out of range
    """
    def __init__(
            self,
            alphabet: Alphabet,
            state_count: int,
            initial: int,
            transitions,
            kind: AcceptanceKind,
            colour_count: int,
            state_names=None,
            name: str = 'automaton') -> None:
        if state_count < 1:
            raise ContractError('An automaton needs at least one state')
        if not 0 <= initial < state_count:
            raise ContractError(f'Initial state {initial} is out of range')
        if colour_count < 0:
            raise ContractError('The colour count cannot be negative')

        merged = {}
        for source, letter, target, mask in transitions:
            if not (0 <= source < state_count and 0 <= target < state_count):
                raise ContractError(
                    f'Transition {source} -> {target} leaves the state range')
            if not 0 <= letter < len(alphabet):
                raise ContractError(f'Letter index {letter} is out of range')
            if mask < 0 or mask >> colour_count:
                raise ContractError(
                    f'Colour set {format_colours(mask)} uses colours outside '
                    f'0..{colour_count - 1}')
            key = (source, letter, target)
            merged[key] = merged.get(key, 0) | mask

        if state_names is None:
            state_names = [f'q{state}' for state in range(state_count)]
        state_names = tuple(str(label) for label in state_names)
        if len(state_names) != state_count:
            raise ContractError('One name per state is needed')
        if len(set(state_names)) != state_count:
            raise ContractError(f'Repeated state names in {state_names}')

        self.__alphabet = alphabet
        self.__state_count = state_count
        self.__initial = initial
        self.__kind = kind
        self.__colour_count = colour_count
        self.__state_names = state_names
        self.__name = name
        self.__transitions = tuple(
            key + (merged[key],) for key in sorted(merged))

        successors = collections.defaultdict(list)
        outgoing = collections.defaultdict(list)
        for source, letter, target, mask in self.__transitions:
            successors[(source, letter)].append((target, mask))
            outgoing[source].append((letter, target, mask))
        self.__successors = {key: tuple(value) for key, value in successors.items()}
        self.__outgoing = {key: tuple(value) for key, value in outgoing.items()}

    @property
    def alphabet(self) -> Alphabet:
        """Input alphabet"""
        return self.__alphabet

    @property
    def state_count(self) -> int:
        """Number of states"""
        return self.__state_count

    @property
    def initial(self) -> int:
        """Initial state index"""
        return self.__initial

    @property
    def kind(self) -> AcceptanceKind:
        """Acceptance family"""
        return self.__kind

    @property
    def colour_count(self) -> int:
        """Number of colours"""
        return self.__colour_count

    @property
    def full_mask(self) -> int:
        """Mask holding every colour"""
        return (1 << self.__colour_count) - 1

    @property
    def state_names(self) -> tuple:
        """State labels in index order"""
        return self.__state_names

    @property
    def name(self) -> str:
        """Automaton name"""
        return self.__name

    @property
    def transitions(self) -> tuple:
        """Sorted tuple of (source, letter, target, mask)"""
        return self.__transitions

    def state_name(self, state: int) -> str:
        """Label of a state"""
        return self.__state_names[state]

    def state_index(self, name: str) -> int:
        """Index of a state label

        :raises InputError: If no state has this label
        """
        try:
            return self.__state_names.index(name)
        except ValueError:
            raise InputError(f'No state is named "{name}"', name) from None

    def successors(self, state: int, letter: int) -> tuple:
        """Pairs (target, mask) of the transitions on a letter"""
        return self.__successors.get((state, letter), ())

    def outgoing(self, state: int) -> tuple:
        """Triples (letter, target, mask) leaving a state"""
        return self.__outgoing.get(state, ())

    def is_deterministic(self) -> bool:
        """At most one transition per state and letter"""
        return all(len(value) <= 1 for value in self.__successors.values())

    def is_complete(self) -> bool:
        """At least one transition per state and letter"""
        return len(self.__successors) == self.__state_count * len(self.__alphabet)

    def reachable_states(self) -> set:
        """States reachable from the initial state"""
        seen = {self.__initial}
        queue = collections.deque([self.__initial])
        while queue:
            state = queue.popleft()
            for _, target, _ in self.outgoing(state):
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
        return seen

    def state_graph(self, safe_only: bool = False) -> nx.DiGraph:
        """Directed graph of the states

        :param safe_only: Keep only the transitions without colours
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.__state_count))
        graph.add_edges_from(
            (source, target)
            for source, _, target, mask in self.__transitions
            if not safe_only or mask == 0)
        return graph

    def complete(self) -> 'Automaton':
        """Language-preserving completion with a rejecting sink

        The sink loops carry no colour for generalised Büchi and every
        colour for generalised coBüchi. A generalised Büchi automaton with
        no colour accepts every run, so it is first moved to one colour
        carried by all of its transitions.
        """
        if self.is_complete():
            return self

        transitions = list(self.__transitions)
        colour_count = self.__colour_count
        if self.__kind is AcceptanceKind.GEN_BUCHI and colour_count == 0:
            colour_count = 1
            transitions = [(p, a, q, 1) for p, a, q, _ in transitions]

        sink = self.__state_count
        if self.__kind is AcceptanceKind.GEN_BUCHI:
            sink_mask = 0
        else:
            sink_mask = (1 << colour_count) - 1

        for state in range(self.__state_count):
            for letter in range(len(self.__alphabet)):
                if not self.successors(state, letter):
                    transitions.append((state, letter, sink, sink_mask))
        for letter in range(len(self.__alphabet)):
            transitions.append((sink, letter, sink, sink_mask))

        sink_name = 'sink'
        while sink_name in self.__state_names:
            sink_name += '_'
        return Automaton(
            self.__alphabet, self.__state_count + 1, self.__initial,
            transitions, self.__kind, colour_count,
            self.__state_names + (sink_name,), self.__name)

    def trim(self) -> 'Automaton':
        """Restriction to the reachable states, in index order"""
        reachable = sorted(self.reachable_states())
        if len(reachable) == self.__state_count:
            return self

        renumber = {state: index for index, state in enumerate(reachable)}
        transitions = [
            (renumber[p], a, renumber[q], mask)
            for p, a, q, mask in self.__transitions
            if p in renumber and q in renumber]
        return Automaton(
            self.__alphabet, len(reachable), renumber[self.__initial],
            transitions, self.__kind, self.__colour_count,
            [self.__state_names[state] for state in reachable], self.__name)

    def with_initial(self, state: int) -> 'Automaton':
        """Same structure started from another state"""
        if state == self.__initial:
            return self
        return Automaton(
            self.__alphabet, self.__state_count, state, self.__transitions,
            self.__kind, self.__colour_count, self.__state_names, self.__name)

    def with_kind(self, kind: AcceptanceKind) -> 'Automaton':
        """Same structure read with another acceptance family"""
        return Automaton(
            self.__alphabet, self.__state_count, self.__initial,
            self.__transitions, kind, self.__colour_count,
            self.__state_names, self.__name)

    def with_transitions(self, transitions, colour_count: int = None) -> 'Automaton':
        """Same states with a new transition set"""
        if colour_count is None:
            colour_count = self.__colour_count
        return Automaton(
            self.__alphabet, self.__state_count, self.__initial, transitions,
            self.__kind, colour_count, self.__state_names, self.__name)

    def without_colour(self, colour: int) -> 'Automaton':
        """Automaton with one colour projected away

        Higher colours are shifted down by one.

        :raises ContractError: If the colour does not exist
        """
        if not 0 <= colour < self.__colour_count:
            raise ContractError(f'Colour {colour} does not exist')
        low = (1 << colour) - 1
        transitions = [
            (p, a, q, (mask & low) | ((mask >> (colour + 1)) << colour))
            for p, a, q, mask in self.__transitions]
        return self.with_transitions(transitions, self.__colour_count - 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self.__alphabet == other.alphabet and
            self.__state_count == other.state_count and
            self.__initial == other.initial and
            self.__kind is other.kind and
            self.__colour_count == other.colour_count and
            self.__transitions == other.transitions)

    def __hash__(self) -> int:
        return hash((
            self.__alphabet, self.__state_count, self.__initial,
            self.__kind, self.__colour_count, self.__transitions))

    def __repr__(self) -> str:
        return (
            f'Automaton(name="{self.__name}", states={self.__state_count}, '
            f'letters={len(self.__alphabet)}, kind={self.__kind.value}, '
            f'colours={self.__colour_count}, '
            f'transitions={len(self.__transitions)})')


@dataclasses.dataclass(frozen=True)
class Lasso(object):
    """Ultimately periodic word stem.cycle^ω over letter names

    :raises InputError: If the cycle is empty
    """
    stem: tuple
    cycle: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, 'stem', tuple(self.stem))
        object.__setattr__(self, 'cycle', tuple(self.cycle))
        if not self.cycle:
            raise InputError('The cycle of a lasso cannot be empty', self)

    def __str__(self) -> str:
        return f'{" ".join(self.stem)} ({" ".join(self.cycle)})^w'.lstrip()


def search_accepting_cycle(initial, successors, factors):
    """Look for a reachable cycle accepted by a conjunction of conditions

    Every edge carries one colour mask per factor. A generalised Büchi
    factor asks for all its colours on the cycle, a generalised coBüchi
    factor for one of its colours missing from it. A cycle exists iff, for
    some choice of one avoided colour per coBüchi factor, the graph without
    the edges carrying an avoided colour has a reachable strongly connected
    component whose edges cover every Büchi colour.

    :param initial: Start node (hashable)
    :param successors: Function node -> iterable of (label, node, masks)
    :param factors: List of (AcceptanceKind, colour count), one per mask
    :return: (stem, cycle) as lists of (source, label, target) edges, or
        None when no accepting cycle is reachable
    """
    width = 0
    offsets = []
    group_sizes = []
    for kind, count in factors:
        if kind is AcceptanceKind.GEN_BUCHI:
            offsets.append(width)
            width += count
        else:
            offsets.append(None)
            group_sizes.append(count)
    buchi_full = (1 << width) - 1

    nodes = {initial}
    queue = collections.deque([initial])
    edges = []
    while queue:
        node = queue.popleft()
        for label, target, masks in successors(node):
            buchi_mask = 0
            cobuchi_masks = []
            for offset, mask in zip(offsets, masks):
                if offset is None:
                    cobuchi_masks.append(mask)
                else:
                    buchi_mask |= mask << offset
            edges.append((node, label, target, buchi_mask, tuple(cobuchi_masks)))
            if target not in nodes:
                nodes.add(target)
                queue.append(target)

    whole = nx.DiGraph()
    whole.add_node(initial)
    whole_first = {}
    for edge in edges:
        whole.add_edge(edge[0], edge[2])
        whole_first.setdefault((edge[0], edge[2]), edge)

    for avoided in itertools.product(*[range(size) for size in group_sizes]):
        allowed = [
            edge for edge in edges
            if not any((mask >> colour) & 1
                       for mask, colour in zip(edge[4], avoided))]
        graph = nx.DiGraph()
        graph.add_nodes_from(whole.nodes)
        graph.add_edges_from((edge[0], edge[2]) for edge in allowed)

        component_of = {}
        for index, component in enumerate(nx.strongly_connected_components(graph)):
            for node in component:
                component_of[node] = index

        inner = collections.defaultdict(list)
        for edge in allowed:
            if component_of[edge[0]] == component_of[edge[2]]:
                inner[component_of[edge[0]]].append(edge)

        for component_edges in inner.values():
            covered = 0
            for edge in component_edges:
                covered |= edge[3]
            if covered & buchi_full == buchi_full:
                return _lasso_through(
                    initial, whole, whole_first, component_edges, buchi_full)
    return None


def _walk(graph, first_edge, source, target) -> list:
    path = nx.shortest_path(graph, source, target)
    return [first_edge[(u, v)] for u, v in zip(path, path[1:])]


def _lasso_through(initial, whole, whole_first, component_edges, buchi_full):
    # One edge per Büchi colour, joined by shortest paths inside the component
    required = []
    for colour in range(buchi_full.bit_length()):
        if any((edge[3] >> colour) & 1 for edge in required):
            continue
        for edge in component_edges:
            if (edge[3] >> colour) & 1:
                required.append(edge)
                break
    if not required:
        required.append(component_edges[0])

    inner = nx.DiGraph()
    inner_first = {}
    for edge in component_edges:
        inner.add_edge(edge[0], edge[2])
        inner_first.setdefault((edge[0], edge[2]), edge)

    start = required[0][0]
    cycle = []
    current = start
    for edge in required:
        cycle.extend(_walk(inner, inner_first, current, edge[0]))
        cycle.append(edge)
        current = edge[2]
    cycle.extend(_walk(inner, inner_first, current, start))

    stem = _walk(whole, whole_first, initial, start)
    return [edge[:3] for edge in stem], [edge[:3] for edge in cycle]


def _require_same_alphabet(first: Automaton, second: Automaton) -> None:
    if first.alphabet != second.alphabet:
        raise ContractError(
            f'Alphabets differ: {list(first.alphabet)} and '
            f'{list(second.alphabet)}')


def lasso_accepts(automaton: Automaton, lasso: Lasso) -> bool:
    """Whether some run of the automaton on the lasso word is accepting

    Searches the product of the automaton with the lasso positions.

    :param automaton: Any automaton
    :param lasso: Word stem.cycle^ω over the automaton's letter names
    :raises InputError: If the lasso uses a letter outside the alphabet
    """
    word = [automaton.alphabet.index(name) for name in lasso.stem + lasso.cycle]
    loop_start = len(lasso.stem)

    def successors(node):
        state, position = node
        following = position + 1 if position + 1 < len(word) else loop_start
        letter = word[position]
        for target, mask in automaton.successors(state, letter):
            yield letter, (target, following), (mask,)

    found = search_accepting_cycle(
        (automaton.initial, 0), successors,
        [(automaton.kind, automaton.colour_count)])
    return found is not None


def _letters_to_lasso(automaton: Automaton, found) -> Lasso:
    stem, cycle = found
    return Lasso(
        stem=[automaton.alphabet[letter] for _, letter, _ in stem],
        cycle=[automaton.alphabet[letter] for _, letter, _ in cycle])


def find_accepted_lasso(automaton: Automaton):
    """A lasso accepted by the automaton, or None if its language is empty
    """
    def successors(state):
        for letter, target, mask in automaton.outgoing(state):
            yield letter, target, (mask,)

    found = search_accepting_cycle(
        automaton.initial, successors,
        [(automaton.kind, automaton.colour_count)])
    if found is None:
        return None
    return _letters_to_lasso(automaton, found)


def is_empty(automaton: Automaton) -> bool:
    """Whether the automaton accepts no word

    Use find_accepted_lasso for a witness of non-emptiness.
    """
    return find_accepted_lasso(automaton) is None


def intersection_lasso(first: Automaton, second: Automaton):
    """A lasso accepted by both automata, or None

    The acceptance families may differ.

    :raises ContractError: If the alphabets differ
    """
    _require_same_alphabet(first, second)

    def successors(node):
        left, right = node
        for letter, left_target, left_mask in first.outgoing(left):
            for right_target, right_mask in second.successors(right, letter):
                yield letter, (left_target, right_target), (left_mask, right_mask)

    found = search_accepting_cycle(
        (first.initial, second.initial), successors,
        [(first.kind, first.colour_count), (second.kind, second.colour_count)])
    if found is None:
        return None
    return _letters_to_lasso(first, found)


def dualise(automaton: Automaton) -> Automaton:
    """Automaton of the complement language

    The automaton is completed, then read with the dual acceptance family.

    :raises ContractError: If the automaton is not deterministic
    """
    if not automaton.is_deterministic():
        raise ContractError(
            'Dualisation needs a deterministic automaton: the hypothesis of '
            'determinism is crucial, a nondeterministic automaton read with '
            'the dual condition does not recognise the complement')
    return automaton.complete().with_kind(automaton.kind.dual)


def det_inclusion_lasso(first: Automaton, second: Automaton):
    """A lasso in L(first) but not in L(second), or None

    :param first: Any automaton
    :param second: Deterministic automaton
    :raises ContractError: If second is not deterministic
    """
    return intersection_lasso(first, dualise(second))


def det_difference_lasso(first: Automaton, second: Automaton):
    """A lasso in the symmetric difference of two deterministic automata"""
    witness = det_inclusion_lasso(first, second)
    if witness is None:
        witness = det_inclusion_lasso(second, first)
    return witness


class ResidualPartition(object):
    """Classes of states recognising the same language

    :param class_of: Class index per state, classes numbered by first state
    :param initial_class: Class of the initial state
    :param separating: Dict (i, j) -> Lasso, i < j, accepted from one class
        and rejected from the other
    """
    def __init__(self, class_of, initial_class: int, separating: dict) -> None:
        self.__class_of = tuple(class_of)
        self.__class_count = max(self.__class_of) + 1
        self.__initial_class = initial_class
        self.__separating = dict(separating)

    @property
    def class_of(self) -> tuple:
        """Class index per state"""
        return self.__class_of

    @property
    def class_count(self) -> int:
        """Number of classes"""
        return self.__class_count

    @property
    def initial_class(self) -> int:
        """Class of the initial state"""
        return self.__initial_class

    def members(self, index: int) -> tuple:
        """States of a class, ascending"""
        return tuple(
            state for state, value in enumerate(self.__class_of)
            if value == index)

    def representative(self, index: int) -> int:
        """Least state of a class"""
        return self.__class_of.index(index)

    def separating_lasso(self, first: int, second: int) -> Lasso:
        """Lasso telling two distinct classes apart"""
        return self.__separating[(min(first, second), max(first, second))]

    def __repr__(self) -> str:
        return (
            f'ResidualPartition(classes={self.__class_count}, '
            f'class_of={list(self.__class_of)})')


class _View(object):
    # Deterministic automaton standing for the language of a state
    def __init__(self, automaton: Automaton) -> None:
        self.automaton = automaton
        self.__dual = None

    @property
    def dual(self) -> Automaton:
        if self.__dual is None:
            self.__dual = dualise(self.automaton)
        return self.__dual

    def difference(self, other: '_View'):
        witness = intersection_lasso(self.automaton, other.dual)
        if witness is None:
            witness = intersection_lasso(other.automaton, self.dual)
        return witness


def _access_words(automaton: Automaton) -> dict:
    # Shortest words (letter indices) reaching each reachable state
    words = {automaton.initial: ()}
    queue = collections.deque([automaton.initial])
    while queue:
        state = queue.popleft()
        for letter, target, _ in automaton.outgoing(state):
            if target not in words:
                words[target] = words[state] + (letter,)
                queue.append(target)
    return words


def residual_partition(automaton: Automaton, reference: Automaton = None) -> ResidualPartition:
    """Partition of the states by recognised language

    Deterministic automata are compared pairwise through products with
    their duals. A nondeterministic generalised coBüchi automaton needs a
    deterministic reference for its language: every state is first
    compared with the reference state reached by the same access word,
    then with the classes found so far, using breakpoint determinisations
    of the single states.

    :param automaton: Automaton to partition
    :param reference: Deterministic automaton equivalent to the automaton
    :raises ContractError: Nondeterministic input without a deterministic
        reference, or nondeterministic generalised Büchi input
    """
    guesses = {}
    if automaton.is_deterministic():
        complete = automaton.complete()

        def view(state):
            return _View(complete.with_initial(state))
    else:
        if reference is None or not reference.is_deterministic():
            raise ContractError(
                'A nondeterministic automaton needs a deterministic reference '
                'for its residuals')
        if automaton.kind is not AcceptanceKind.GEN_COBUCHI:
            raise ContractError(
                'Only nondeterministic generalised coBüchi automata can be '
                'partitioned')
        from src import transforms

        def view(state):
            single = transforms.degeneralise(automaton.with_initial(state).trim())
            return _View(transforms.breakpoint_determinise(single))

        reference = reference.complete()
        for state, word in _access_words(automaton).items():
            current = reference.initial
            for letter in word:
                current = reference.successors(current, letter)[0][0]
            guesses[state] = current

    views = []
    reference_class = {}
    class_of = []
    separating = {}
    for state in range(automaton.state_count):
        own = view(state)
        order = list(range(len(views)))
        guess = guesses.get(state)
        if guess in reference_class:
            order.remove(reference_class[guess])
            order.insert(0, reference_class[guess])

        witnesses = {}
        for index in order:
            witness = own.difference(views[index])
            if witness is None:
                class_of.append(index)
                break
            witnesses[index] = witness
        else:
            index = len(views)
            if guess is not None:
                shadow = _View(reference.with_initial(guess))
                if own.difference(shadow) is None:
                    own = shadow
                    reference_class[guess] = index
            views.append(own)
            class_of.append(index)
            for other, witness in witnesses.items():
                separating[(other, index)] = witness

    logger.debug(
        'residual partition of %s: %d classes', automaton.name, len(views))
    return ResidualPartition(class_of, class_of[automaton.initial], separating)


def check_semantic_determinism(automaton: Automaton, partition: ResidualPartition) -> bool:
    """Whether all successors of a state on a letter share one class"""
    for state in range(automaton.state_count):
        for letter in range(len(automaton.alphabet)):
            classes = {
                partition.class_of[target]
                for target, _ in automaton.successors(state, letter)}
            if len(classes) > 1:
                return False
    return True
