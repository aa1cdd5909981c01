#!/usr/bin/env python3
"""Hardness laboratory

Graph colouring and its encodings into colour minimisation, the family of
automata whose equivalent single-state automata need exponentially many
colours, and exhaustive exact minimisers for small instances.
"""
import collections
import dataclasses
import itertools
import logging
import random

import networkx as nx

from src import games, transforms
from src.automaton import (
    AcceptanceKind, Alphabet, Automaton, Lasso, dualise, is_empty, lasso_accepts,
    mask_of, residual_partition)
from src.config import DEFAULT_SETTINGS, Settings
from src.errors import BudgetExceededError, ContractError, InputError

logger = logging.getLogger(__name__)


def graph_colouring(graph: nx.Graph, colours: int):
    """Proper colouring with colours 1..k, or None if there is none

    Backtracking over the vertices by decreasing degree; a vertex never
    opens a colour beyond the next unused one.

    :raises ContractError: If fewer than one colour is allowed
    """
    if colours < 1:
        raise ContractError('A colouring needs at least one colour')
    position_of = {vertex: index for index, vertex in enumerate(graph.nodes)}
    vertices = sorted(
        graph.nodes, key=lambda vertex: (-graph.degree[vertex], position_of[vertex]))
    colouring = {}

    def assign(position, used):
        if position == len(vertices):
            return True
        vertex = vertices[position]
        taken = {colouring[other] for other in graph[vertex] if other in colouring}
        for colour in range(1, min(colours, used + 1) + 1):
            if colour in taken:
                continue
            colouring[vertex] = colour
            if assign(position + 1, max(used, colour)):
                return True
            del colouring[vertex]
        return False

    if assign(0, 0):
        return dict(colouring)
    return None


def chromatic_number(graph: nx.Graph) -> int:
    """Least number of colours of a proper colouring"""
    for colours in range(1, graph.number_of_nodes() + 1):
        if graph_colouring(graph, colours) is not None:
            return colours
    return 0


def is_proper_colouring(graph: nx.Graph, colouring: dict) -> bool:
    """Whether every vertex has a colour and adjacent vertices differ"""
    if any(vertex not in colouring for vertex in graph.nodes):
        return False
    return all(colouring[first] != colouring[second] for first, second in graph.edges)


def is_triangle_full(graph: nx.Graph) -> bool:
    """Whether every vertex lies on a triangle"""
    return all(count > 0 for count in nx.triangles(graph).values())


def is_four_clique_free(graph: nx.Graph) -> bool:
    """Whether the graph has no clique of four vertices"""
    return all(len(clique) < 4 for clique in nx.find_cliques(graph))


def moser_spindle() -> nx.Graph:
    """Seven-vertex triangle-full graph without 4-clique, not 3-colourable"""
    graph = nx.Graph()
    graph.add_nodes_from(f'm{index}' for index in range(7))
    graph.add_edges_from(
        (f'm{first}', f'm{second}') for first, second in [
            (0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
            (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)])
    return graph


def triangle_full_transform(graph: nx.Graph) -> nx.Graph:
    """Triangle-full graph that is 3-colourable iff the input is

    Every vertex v becomes a triangle v.0, v.1, v.2 and every edge is kept
    between the copies numbered 0. Graphs holding a 4-clique are mapped to
    the Moser spindle.
    """
    if not is_four_clique_free(graph):
        logger.debug('4-clique found, mapping to the Moser spindle')
        return moser_spindle()
    result = nx.Graph()
    for vertex in graph.nodes:
        copies = [f'{vertex}.{index}' for index in range(3)]
        result.add_nodes_from(copies)
        result.add_edges_from(itertools.combinations(copies, 2))
    result.add_edges_from((f'{first}.0', f'{second}.0') for first, second in graph.edges)
    return result


def _closed_masks(graph: nx.Graph) -> tuple:
    # Per vertex: colour masks of the closed and of the open neighbourhood
    vertices = list(graph.nodes)
    index = {vertex: position for position, vertex in enumerate(vertices)}
    closed = {}
    opened = {}
    for vertex in vertices:
        neighbours = mask_of(index[other] for other in graph[vertex])
        opened[vertex] = neighbours & ~(1 << index[vertex])
        closed[vertex] = opened[vertex] | (1 << index[vertex])
    return vertices, closed, opened


def colouring_to_automaton(graph: nx.Graph, colouring: dict) -> Automaton:
    """Deterministic generalised Büchi automaton of the graph language

    Letters are the vertices and colours are indexed by them. State c-1
    stands for graph colour c. Reading v moves to the state of v's colour
    and carries every colour outside the closed neighbourhood of v; the
    loop on that state also carries v.

    :raises ContractError: If the colouring is not proper
    """
    if graph.number_of_nodes() == 0:
        raise ContractError('The graph has no vertex')
    if not is_proper_colouring(graph, colouring):
        raise ContractError('The colouring is not proper')
    vertices, closed, opened = _closed_masks(graph)
    count = max(colouring.values())
    full = (1 << len(vertices)) - 1
    transitions = []
    for letter, vertex in enumerate(vertices):
        target = colouring[vertex] - 1
        for state in range(count):
            taken = opened[vertex] if state == target else closed[vertex]
            transitions.append((state, letter, target, full & ~taken))
    return Automaton(
        Alphabet(str(vertex) for vertex in vertices), count, 0, transitions,
        AcceptanceKind.GEN_BUCHI, len(vertices),
        [f'c{colour}' for colour in range(1, count + 1)], 'graph')


def graph_to_automaton(graph: nx.Graph) -> Automaton:
    """Automaton of the graph language with one state per vertex"""
    return colouring_to_automaton(
        graph, {vertex: index + 1 for index, vertex in enumerate(graph.nodes)})


def in_graph_language(graph: nx.Graph, lasso: Lasso) -> bool:
    """Whether a lasso belongs to the graph language

    For every vertex v, either vv occurs infinitely often or some vertex
    outside the closed neighbourhood of v occurs infinitely often.
    """
    names = {str(vertex): vertex for vertex in graph.nodes}
    for letter in lasso.stem + lasso.cycle:
        if letter not in names:
            raise InputError(f'"{letter}" is not a vertex', letter)
    cycle = [names[letter] for letter in lasso.cycle]
    recurring = set(cycle)
    doubled = {
        first for first, second in zip(cycle, cycle[1:] + cycle[:1])
        if first == second}
    for vertex in graph.nodes:
        if vertex in doubled:
            continue
        outside = recurring - set(graph[vertex]) - {vertex}
        if not outside:
            return False
    return True


def pseudo_path_automaton(graph: nx.Graph, start, colouring: dict = None) -> Automaton:
    """Deterministic generalised coBüchi automaton walking on a graph

    Letters are the vertices and the edges 'u-v'. From the initial state
    only the start vertex can be read; a vertex state reads its incident
    edges and an edge state reads its two end vertices. Reading a vertex
    carries every colour but its own, reading an edge every colour but
    those of its ends. Colours are the vertices themselves, or the graph
    colours of a colouring when one is given.

    :raises ContractError: Disconnected graph, a vertex of degree below 2 or
        an improper colouring
    :raises InputError: If the start is not a vertex
    """
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        raise ContractError('The graph must be connected')
    if min(degree for _, degree in graph.degree) < 2:
        raise ContractError('Every vertex needs degree at least 2')
    if start not in graph:
        raise InputError(f'"{start}" is not a vertex', start)
    if colouring is not None and not is_proper_colouring(graph, colouring):
        raise ContractError('The colouring is not proper')

    vertices = list(graph.nodes)
    position_of = {vertex: index for index, vertex in enumerate(vertices)}
    edges = [
        tuple(sorted(edge, key=position_of.get)) for edge in graph.edges]
    if colouring is None:
        count = len(vertices)
        colour_of = position_of
    else:
        count = max(colouring.values())
        colour_of = {vertex: colouring[vertex] - 1 for vertex in vertices}
    full = (1 << count) - 1

    edge_names = [f'{first}-{second}' for first, second in edges]
    alphabet = Alphabet([str(vertex) for vertex in vertices] + edge_names)
    vertex_state = {vertex: 1 + index for index, vertex in enumerate(vertices)}
    edge_state = {edge: 1 + len(vertices) + index for index, edge in enumerate(edges)}

    def reading_vertex(vertex):
        return full & ~(1 << colour_of[vertex])

    transitions = [(0, position_of[start], vertex_state[start], reading_vertex(start))]
    for index, (first, second) in enumerate(edges):
        letter = len(vertices) + index
        mask = full & ~((1 << colour_of[first]) | (1 << colour_of[second]))
        for vertex in (first, second):
            transitions.append((vertex_state[vertex], letter, edge_state[(first, second)], mask))
            transitions.append((
                edge_state[(first, second)], position_of[vertex],
                vertex_state[vertex], reading_vertex(vertex)))

    names = ['init'] + [f'v:{vertex}' for vertex in vertices] + [f'e:{name}' for name in edge_names]
    return Automaton(
        alphabet, len(names), 0, transitions, AcceptanceKind.GEN_COBUCHI,
        count, names, 'pseudo-path')


def exp_family(size: int) -> Automaton:
    """Two-colour generalised Büchi automaton over letters 1..2n

    The initial state guesses an index j on the first letter; state j then
    loops on every letter, marking 2j-1 with colour 0 and 2j with colour 1.
    Its language asks for both letters of some pair {2j-1, 2j} infinitely
    often, which a single state needs 2^n colours to express.

    :raises ContractError: If size is lower than 1
    """
    if size < 1:
        raise ContractError('The family starts at size 1')
    letters = 2 * size
    transitions = [
        (0, letter, state, 0)
        for letter in range(letters)
        for state in range(1, size + 1)]
    for state in range(1, size + 1):
        for letter in range(letters):
            mask = 0
            if letter == 2 * state - 2:
                mask = 0b01
            elif letter == 2 * state - 1:
                mask = 0b10
            transitions.append((state, letter, state, mask))
    return Automaton(
        Alphabet(str(letter) for letter in range(1, letters + 1)), size + 1, 0,
        transitions, AcceptanceKind.GEN_BUCHI, 2,
        ['init'] + [f'q{state}' for state in range(1, size + 1)],
        f'exp-family-{size}')


def _minimum_clause_cover(automaton: Automaton, settings: Settings):
    # Least set of clauses over letters whose conjunction defines the
    # language as a condition on the set of recurring letters
    letters = len(automaton.alphabet)
    if 1 << letters > settings.search_budget:
        raise BudgetExceededError(
            f'{1 << letters} letter sets exceed the budget',
            1 << letters, settings.search_budget)

    accepted = {}
    for subset in range(1, 1 << letters):
        cycle = [automaton.alphabet[letter] for letter in range(letters) if (subset >> letter) & 1]
        accepted[subset] = lasso_accepts(automaton, Lasso(stem=(), cycle=cycle))
    for subset, verdict in accepted.items():
        if verdict and any(
                not accepted[subset | (1 << letter)] for letter in range(letters)):
            logger.info('%s does not define a monotone condition', automaton.name)
            return None

    winning = [subset for subset, verdict in accepted.items() if verdict]
    losing = [subset for subset, verdict in accepted.items() if not verdict]
    valid = [
        clause for clause in range(1 << letters)
        if all(clause & subset for subset in winning)]
    minimal = [
        clause for clause in valid
        if not any(other != clause and other & clause == other for other in valid)]
    if not losing:
        return []
    if 1 << len(minimal) > settings.search_budget:
        raise BudgetExceededError(
            f'{len(minimal)} candidate clauses exceed the budget',
            1 << len(minimal), settings.search_budget)

    for size in range(1, len(minimal) + 1):
        for chosen in itertools.combinations(minimal, size):
            if all(any(not clause & subset for clause in chosen) for subset in losing):
                return list(chosen)
    return None


def exact_colour_min_one_state(automaton: Automaton, settings: Settings = DEFAULT_SETTINGS):
    """Least number of colours of a one-state generalised Büchi automaton
    for the language, or None if there is none

    The language is assumed to depend only on the set of letters seen
    infinitely often; each such set is checked with one lasso.

    :raises BudgetExceededError: On alphabets too large for the budget
    """
    clauses = _minimum_clause_cover(automaton, settings)
    if clauses is None:
        return None
    return len(clauses)


def cnf_one_state_automaton(automaton: Automaton, settings: Settings = DEFAULT_SETTINGS):
    """One-state generalised Büchi automaton with the least number of
    colours, or None if no one-state automaton recognises the language

    Colour i is carried by the letters of clause i.
    """
    clauses = _minimum_clause_cover(automaton, settings)
    if clauses is None:
        return None
    transitions = [
        (0, letter, 0, mask_of(
            index for index, clause in enumerate(clauses) if (clause >> letter) & 1))
        for letter in range(len(automaton.alphabet))]
    return Automaton(
        automaton.alphabet, 1, 0, transitions, AcceptanceKind.GEN_BUCHI,
        len(clauses), ['q0'], f'{automaton.name}-cnf')


@dataclasses.dataclass(frozen=True)
class ExactMinQuery(object):
    """Question put to the exhaustive minimiser

    :param reference: Automaton of the target language
    :param max_states: Largest number of states tried
    :param max_colours: Largest number of colours allowed
    :param mode: 'det' for deterministic, 'hd' for history-deterministic
        candidates
    """
    reference: Automaton
    max_states: int
    max_colours: int
    mode: str = 'det'


def _canonical_tables(states: int, letters: int):
    # Complete transition tables whose states appear in breadth-first order
    size = states * letters
    table = [0] * size

    def fill(position, opened):
        if position == size:
            if opened == states:
                yield tuple(table)
            return
        if opened - 1 < position // letters:
            return
        for target in range(min(opened + 1, states)):
            table[position] = target
            yield from fill(position + 1, max(opened, target + 1))

    yield from fill(0, 1)


def _colour_structure(table, states, target, partition, max_colours):
    # Colour sets for a transition table making it equivalent to target
    letters = len(target.alphabet)
    start = (0, target.initial)
    nodes = {start}
    queue = [start]
    edges = []
    while queue:
        node = queue.pop()
        state, other = node
        for letter in range(letters):
            (other_target, mask), = target.successors(other, letter)
            following = (table[state * letters + letter], other_target)
            edges.append((node, following, (state, letter), mask))
            if following not in nodes:
                nodes.add(following)
                queue.append(following)

    seen_class = {}
    for state, other in nodes:
        if seen_class.setdefault(state, partition.class_of[other]) != partition.class_of[other]:
            return None

    full = target.full_mask

    def rejecting_cycle(allowed):
        graph = nx.DiGraph()
        graph.add_edges_from(
            (source, following, {'mask': mask})
            for source, following, transition, mask in edges
            if transition in allowed)
        for component in nx.strongly_connected_components(graph):
            union = 0
            inner = False
            for source, following, data in graph.subgraph(component).edges(data=True):
                union |= data['mask']
                inner = True
            if inner and union == full:
                return True
        return False

    zones = []
    for colour in range(target.colour_count):
        graph = nx.DiGraph()
        graph.add_nodes_from(nodes)
        graph.add_edges_from(
            (source, following, {'transition': transition})
            for source, following, transition, mask in edges
            if not (mask >> colour) & 1)
        for component in nx.strongly_connected_components(graph):
            zone = frozenset(
                data['transition']
                for _, _, data in graph.subgraph(component).edges(data=True))
            if zone and zone not in zones:
                zones.append(zone)
    zones.sort(key=len, reverse=True)

    groups = []

    def place(position):
        if position == len(zones):
            return True
        zone = zones[position]
        for index, group in enumerate(groups):
            merged = group | zone
            if not rejecting_cycle(merged):
                groups[index] = merged
                if place(position + 1):
                    return True
                groups[index] = group
        if len(groups) < max_colours and not rejecting_cycle(zone):
            groups.append(zone)
            if place(position + 1):
                return True
            groups.pop()
        return False

    if not place(0):
        return None
    return [
        (state, letter, table[state * letters + letter], mask_of(
            index for index, group in enumerate(groups) if (state, letter) not in group))
        for state in range(states) for letter in range(letters)], len(groups)


def _exact_det(query: ExactMinQuery, settings: Settings):
    reference = query.reference
    if not reference.is_deterministic():
        if reference.kind is not AcceptanceKind.GEN_COBUCHI:
            raise ContractError('Mode det needs a deterministic generalised Büchi reference')
        reference = transforms.breakpoint_determinise(transforms.degeneralise(reference))
    flip = reference.kind is AcceptanceKind.GEN_COBUCHI
    target = (dualise(reference) if flip else reference.complete()).trim()
    letters = len(target.alphabet)

    estimate = sum(states ** (states * letters) for states in range(1, query.max_states + 1))
    if estimate > settings.search_budget:
        raise BudgetExceededError(
            f'{estimate} transition tables exceed the budget', estimate,
            settings.search_budget)

    partition = residual_partition(target)
    for states in range(max(1, partition.class_count), query.max_states + 1):
        for table in _canonical_tables(states, letters):
            found = _colour_structure(table, states, target, partition, query.max_colours)
            if found is None:
                continue
            transitions, colours = found
            result = Automaton(
                target.alphabet, states, 0, transitions, AcceptanceKind.GEN_BUCHI,
                colours, name=f'{reference.name}-exact')
            logger.info('exact minimum: %d states, %d colours', states, colours)
            return dualise(result) if flip else result
    return None


def _sample_lassos(reference: Automaton, settings: Settings) -> list:
    letters = reference.alphabet.letters
    lassos = [Lasso(stem=(), cycle=(letter,)) for letter in letters]
    lassos += [Lasso(stem=(), cycle=pair) for pair in itertools.product(letters, repeat=2)]
    lassos += [
        Lasso(stem=(first,), cycle=(second,))
        for first, second in itertools.product(letters, repeat=2)]
    generator = random.Random(settings.seed)
    for _ in range(settings.sample_lassos):
        lassos.append(Lasso(
            stem=[generator.choice(letters) for _ in range(generator.randint(0, 3))],
            cycle=[generator.choice(letters) for _ in range(generator.randint(1, 4))]))
    return [(lasso, lasso_accepts(reference, lasso)) for lasso in lassos]


def _residual_steps(reference: Automaton) -> tuple:
    # Residual classes of the reference, the non-empty ones and the class
    # reached from each class on each letter
    deterministic = transforms.breakpoint_determinise(
        transforms.degeneralise(reference)).complete().trim()
    partition = residual_partition(deterministic)
    live = [
        index for index in range(partition.class_count)
        if not is_empty(deterministic.with_initial(partition.representative(index)))]
    steps = {}
    for index in range(partition.class_count):
        for letter in range(len(reference.alphabet)):
            (target, _), = deterministic.successors(partition.representative(index), letter)
            steps[(index, letter)] = partition.class_of[target]
    return partition.initial_class, live, steps


def _class_assignments(states: int, initial: int, live: list):
    # State 0 in the initial class, the others in nondecreasing class order,
    # every live class used
    for rest in itertools.combinations_with_replacement(live, states - 1):
        assignment = (initial,) + rest
        if set(assignment) == set(live):
            yield assignment


def _slot_masks(targets: list, colours: int) -> list:
    # One mask per state of the target class; a missing transition behaves
    # like one seeing every colour. With one colour a single safe transition
    # is enough
    full = (1 << colours) - 1
    if colours == 1:
        return [tuple(full for _ in targets)] + [
            tuple(0 if index == chosen else full for index in range(len(targets)))
            for chosen in range(len(targets))]
    return list(itertools.product(range(1 << colours), repeat=len(targets)))


def _hd_slots(assignment: tuple, steps: dict, live: list, letters: int) -> list:
    members = collections.defaultdict(list)
    for state, index in enumerate(assignment):
        members[index].append(state)
    return [
        (state, letter, members[steps[(index, letter)]])
        for state, index in enumerate(assignment)
        for letter in range(letters)
        if steps[(index, letter)] in live]


def _exact_hd(query: ExactMinQuery, settings: Settings):
    reference = query.reference
    if reference.kind is not AcceptanceKind.GEN_COBUCHI:
        raise ContractError('Mode hd searches generalised coBüchi automata')
    if not games.is_history_deterministic(reference):
        raise ContractError(f'{reference.name} is not history-deterministic')
    letters = len(reference.alphabet)
    initial, live, steps = _residual_steps(reference)
    if initial not in live:
        return Automaton(
            reference.alphabet, 1, 0, [], AcceptanceKind.GEN_COBUCHI, 0,
            name=f'{reference.name}-exact')

    searches = [
        (states, colours, assignment, _hd_slots(assignment, steps, live, letters))
        for states in range(1, query.max_states + 1)
        for colours in range(query.max_colours + 1)
        for assignment in _class_assignments(states, initial, live)]
    estimate = 0
    for _, colours, _, slots in searches:
        count = 1
        for _, _, targets in slots:
            count *= len(targets) + 1 if colours == 1 else 1 << (colours * len(targets))
        estimate += count
    if estimate > settings.search_budget:
        raise BudgetExceededError(
            f'{estimate} candidate automata exceed the budget', estimate,
            settings.search_budget)

    samples = _sample_lassos(reference, settings)
    for states, colours, assignment, slots in searches:
        logger.debug('trying %d states, %d colours, classes %s', states, colours, assignment)
        options = [_slot_masks(targets, colours) for _, _, targets in slots]
        for choice in itertools.product(*options):
            candidate = Automaton(
                reference.alphabet, states, 0,
                [(state, letter, target, mask)
                 for (state, letter, targets), masks in zip(slots, choice)
                 for target, mask in zip(targets, masks)],
                AcceptanceKind.GEN_COBUCHI, colours, name=f'{reference.name}-exact')
            if len(candidate.reachable_states()) != states:
                continue
            if any(lasso_accepts(candidate, lasso) != verdict for lasso, verdict in samples):
                continue
            if not games.is_history_deterministic(candidate):
                continue
            if games.contains_hd(candidate, reference) and games.contains_hd(reference, candidate):
                logger.info('exact minimum: %d states, %d colours', states, colours)
                return candidate
    return None


def exact_minimise(query: ExactMinQuery, settings: Settings = DEFAULT_SETTINGS):
    """Smallest automaton for the reference language within the query bounds

    Mode det enumerates complete deterministic transition tables and
    derives a minimal colouring from the rejecting cycles of the product
    with the reference. Mode hd labels candidate states with residual
    classes of the reference, sorted by class, and only links states of
    matching classes; with one colour a state keeps at most one safe
    transition per letter. Colour counts up to max_colours are tried.
    Candidates are filtered with sample lassos, then with the games.

    :return: The automaton found, or None when none fits the bounds
    :raises BudgetExceededError: If the search space exceeds the budget
    :raises ContractError: Unknown mode or a reference not fitting the mode
    """
    if query.max_states < 1 or query.max_colours < 0:
        raise ContractError('The bounds must allow one state and no negative colour count')
    if query.mode == 'det':
        return _exact_det(query, settings)
    if query.mode == 'hd':
        return _exact_hd(query, settings)
    raise ContractError(f'Unknown search mode "{query.mode}"')
