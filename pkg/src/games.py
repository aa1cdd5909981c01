#!/usr/bin/env python3
"""Two-player games deciding history-determinism and containment

Arenas are finite graphs whose positions belong to Eve or Adam. Every move
carries two colour masks: the premise (assumption colours) and the
conclusion (guarantee colours). Eve wins a play iff some assumption colour
is seen finitely often, or every guarantee colour infinitely often.

Two solvers are provided: a three-nested fixpoint with a memoryful
strategy, and an independent parity oracle built on a counter product.
"""
import collections
import enum
import logging

from src.automaton import (
    AcceptanceKind, Automaton, det_difference_lasso, search_accepting_cycle)
from src.errors import ContractError

logger = logging.getLogger(__name__)


class Player(enum.Enum):
    """Owner of a position"""
    EVE = 'eve'
    ADAM = 'adam'


Move = collections.namedtuple('Move', ['target', 'premise', 'conclusion'])
Move.__doc__ = 'Move to a position, with its assumption and guarantee masks'


class GameArena(object):
    """Finite arena with generalised Büchi assumptions and guarantees

    :param owners: Owner per position
    :param moves: Tuple of Move per position
    :param assumption_count: Number of assumption colours
    :param guarantee_count: Number of guarantee colours
    :param initial: Initial position
    :param labels: Optional description per position
    :raises ContractError: Dead-end positions, targets out of range or masks
        outside the declared colours
    """
    def __init__(
            self,
            owners,
            moves,
            assumption_count: int,
            guarantee_count: int,
            initial: int = 0,
            labels=None) -> None:
        owners = tuple(owners)
        moves = tuple(tuple(Move(*move) for move in group) for group in moves)
        if len(owners) != len(moves):
            raise ContractError('One owner and one move list per position')
        if not 0 <= initial < len(owners):
            raise ContractError(f'Initial position {initial} is out of range')

        for position, group in enumerate(moves):
            if not group:
                raise ContractError(f'Position {position} has no move')
            for move in group:
                if not 0 <= move.target < len(owners):
                    raise ContractError(
                        f'Move from {position} leaves the arena')
                if move.premise >> assumption_count or move.conclusion >> guarantee_count:
                    raise ContractError(
                        f'Move from {position} uses undeclared colours')

        self.__owners = owners
        self.__moves = moves
        self.__assumption_count = assumption_count
        self.__guarantee_count = guarantee_count
        self.__initial = initial
        self.__labels = tuple(labels) if labels is not None else tuple(range(len(owners)))

    @property
    def position_count(self) -> int:
        """Number of positions"""
        return len(self.__owners)

    @property
    def assumption_count(self) -> int:
        """Number of assumption colours"""
        return self.__assumption_count

    @property
    def guarantee_count(self) -> int:
        """Number of guarantee colours"""
        return self.__guarantee_count

    @property
    def initial(self) -> int:
        """Initial position"""
        return self.__initial

    def owner(self, position: int) -> Player:
        """Owner of a position"""
        return self.__owners[position]

    def moves(self, position: int) -> tuple:
        """Moves available at a position"""
        return self.__moves[position]

    def label(self, position: int):
        """Description of a position"""
        return self.__labels[position]

    def __repr__(self) -> str:
        return (
            f'GameArena(positions={self.position_count}, '
            f'assumptions={self.__assumption_count}, '
            f'guarantees={self.__guarantee_count})')


class _ArenaBuilder(object):
    # Explores labelled positions breadth-first while moves are added
    def __init__(self) -> None:
        self.__index = {}
        self.__labels = []
        self.__owners = []
        self.__moves = []
        self.__queue = collections.deque()

    def position(self, label, owner: Player) -> int:
        if label not in self.__index:
            self.__index[label] = len(self.__labels)
            self.__labels.append(label)
            self.__owners.append(owner)
            self.__moves.append([])
            self.__queue.append(label)
        return self.__index[label]

    def add_move(self, source: int, target: int, premise: int = 0, conclusion: int = 0) -> None:
        self.__moves[source].append(Move(target, premise, conclusion))

    def pending(self):
        while self.__queue:
            label = self.__queue.popleft()
            yield self.__index[label], label

    def build(self, assumption_count: int, guarantee_count: int) -> GameArena:
        return GameArena(
            self.__owners, self.__moves, assumption_count, guarantee_count,
            0, self.__labels)


class Strategy(object):
    """Finite-memory strategy for Eve

    :param initial_memory: Memory at the start of a play
    :param choose: Function (position, memory) -> chosen move
    :param update: Function (memory, position, move) -> next memory
    """
    def __init__(self, initial_memory, choose, update) -> None:
        self.__initial_memory = initial_memory
        self.__choose = choose
        self.__update = update

    @property
    def initial_memory(self):
        """Memory at the start of a play"""
        return self.__initial_memory

    def choose(self, position, memory):
        """Move chosen at a position with a given memory"""
        return self.__choose(position, memory)

    def update(self, memory, position, move):
        """Memory after a move"""
        return self.__update(memory, position, move)


def _controllable_predecessors(arena: GameArena, good) -> set:
    # Positions where Eve can force a move satisfying good(move)
    result = set()
    for position in range(arena.position_count):
        moves = arena.moves(position)
        if arena.owner(position) is Player.EVE:
            if any(good(move) for move in moves):
                result.add(position)
        elif all(good(move) for move in moves):
            result.add(position)
    return result


class _Recurrence(object):
    # Ranked attractor layers towards one guarantee colour inside a region
    def __init__(self, region, rank, index, stays) -> None:
        self.region = region
        self.rank = rank
        self.index = index
        self.stays = stays


def _recurrence(arena: GameArena, winning: frozenset, guarantee: int) -> _Recurrence:
    def reaches_goal(move):
        return (move.conclusion >> guarantee) & 1 and move.target in winning

    everything = set(range(arena.position_count))
    below = frozenset()
    rank = {}
    index = {}
    stays = {}
    level = 0
    while True:
        level += 1
        base = _controllable_predecessors(
            arena, lambda move: reaches_goal(move) or move.target in below)
        layer = set(base)
        sets = []
        for assumption in range(arena.assumption_count):
            current = set(everything)
            while True:
                shrunk = _controllable_predecessors(
                    arena,
                    lambda move: (
                        reaches_goal(move) or move.target in below
                        or (not (move.premise >> assumption) & 1
                            and move.target in current)))
                if shrunk == current:
                    break
                current = shrunk
            sets.append(frozenset(current))
            stays[(level, assumption)] = frozenset(current)
            layer |= current

        fresh = layer - below
        if not fresh:
            break
        for position in fresh:
            rank[position] = level
            if position not in base:
                index[position] = next(
                    assumption for assumption, found in enumerate(sets)
                    if position in found)
        below = frozenset(layer)
    return _Recurrence(below, rank, index, stays)


def solve_gr1(arena: GameArena) -> tuple:
    """Winning region of Eve and a winning strategy

    Greatest fixpoint Z of the intersection over guarantee colours j of the
    positions from which Eve forces, within ranked attractor layers, either
    a j-coloured move into Z or a play that avoids some assumption colour
    forever. The strategy remembers the guarantee colour currently pursued
    and advances it when a move carries it into Z.

    :return: (winning region as frozenset, Strategy)
    """
    everything = frozenset(range(arena.position_count))
    guarantees = arena.guarantee_count
    if guarantees == 0:
        return everything, Strategy(
            0, lambda position, memory: arena.moves(position)[0],
            lambda memory, position, move: 0)

    winning = everything
    while True:
        layers = [_recurrence(arena, winning, colour) for colour in range(guarantees)]
        shrunk = frozenset.intersection(*(layer.region for layer in layers))
        if shrunk == winning:
            break
        winning = shrunk

    def reaches_goal(move, colour):
        return (move.conclusion >> colour) & 1 and move.target in winning

    def choose(position, memory):
        moves = arena.moves(position)
        layer = layers[memory]
        level = layer.rank.get(position)
        if level is None:
            return moves[0]
        for move in moves:
            if reaches_goal(move, memory):
                return move
        for move in moves:
            if layer.rank.get(move.target, level) < level:
                return move
        assumption = layer.index.get(position)
        if assumption is not None:
            stay = layer.stays[(level, assumption)]
            for move in moves:
                if not (move.premise >> assumption) & 1 and move.target in stay:
                    return move
        return moves[0]

    def update(memory, position, move):
        if reaches_goal(move, memory):
            return (memory + 1) % guarantees
        return memory

    logger.debug(
        'GR(1) game with %d positions: %d winning', arena.position_count,
        len(winning))
    return winning, Strategy(0, choose, update)


def _advance(counter: int, mask: int, count: int) -> tuple:
    # One-step round counter: (next counter, whether a round completed)
    if count == 0:
        return 0, True
    if (mask >> counter) & 1:
        counter += 1
        if counter == count:
            return 0, True
    return counter, False


def _attractor(vertices: set, successors: dict, owner: dict, targets: set, player: int) -> set:
    region = set(targets) & vertices
    changed = True
    while changed:
        changed = False
        for vertex in vertices - region:
            following = [other for other in successors[vertex] if other in vertices]
            if owner[vertex] == player:
                attracted = any(other in region for other in following)
            else:
                attracted = all(other in region for other in following)
            if attracted:
                region.add(vertex)
                changed = True
    return region


def _zielonka(vertices: set, successors: dict, owner: dict, priority: dict) -> tuple:
    # Winning regions (even player, odd player) of a max-parity game
    if not vertices:
        return set(), set()
    top = max(priority[vertex] for vertex in vertices)
    player = top % 2
    opponent = 1 - player
    targets = {vertex for vertex in vertices if priority[vertex] == top}
    attracted = _attractor(vertices, successors, owner, targets, player)
    won = _zielonka(vertices - attracted, successors, owner, priority)
    if not won[opponent]:
        result = [set(), set()]
        result[player] = set(vertices)
        return tuple(result)
    lost = _attractor(vertices, successors, owner, won[opponent], opponent)
    rest = _zielonka(vertices - lost, successors, owner, priority)
    result = [set(rest[0]), set(rest[1])]
    result[opponent] |= lost
    return tuple(result)


def solve_parity_oracle(arena: GameArena) -> frozenset:
    """Winning region of Eve computed through a parity game

    Each vertex pairs a position with round counters over assumption and
    guarantee colours and the priority of the move that reached it: 2 when
    a guarantee round completes, 1 when an assumption round completes, 0
    otherwise. Eve wins iff the greatest priority seen infinitely often is
    even.
    """
    assumptions = arena.assumption_count
    guarantees = arena.guarantee_count
    starts = [(position, 0, 0, 0) for position in range(arena.position_count)]
    successors = {}
    queue = collections.deque(starts)
    seen = set(starts)
    while queue:
        vertex = queue.popleft()
        position, counter_a, counter_g, _ = vertex
        following = []
        for move in arena.moves(position):
            next_a, round_a = _advance(counter_a, move.premise, assumptions)
            next_g, round_g = _advance(counter_g, move.conclusion, guarantees)
            priority = 2 if round_g else (1 if round_a else 0)
            other = (move.target, next_a, next_g, priority)
            following.append(other)
            if other not in seen:
                seen.add(other)
                queue.append(other)
        successors[vertex] = following

    owner = {
        vertex: 0 if arena.owner(vertex[0]) is Player.EVE else 1
        for vertex in seen}
    priority = {vertex: vertex[3] for vertex in seen}
    even, _ = _zielonka(set(seen), successors, owner, priority)
    return frozenset(position for position, *_ in starts if (position, 0, 0, 0) in even)


def verify_strategy(arena: GameArena, strategy: Strategy, region) -> bool:
    """Whether the strategy wins every play from the given positions

    The strategy restricts Eve's moves; a losing play exists iff the
    restricted graph has a reachable cycle seeing every assumption colour
    and missing a guarantee colour.
    """
    def successors(node):
        position, memory = node
        if arena.owner(position) is Player.EVE:
            move = strategy.choose(position, memory)
            if move not in arena.moves(position):
                raise ContractError(
                    f'The strategy plays an illegal move at {position}')
            moves = [move]
        else:
            moves = arena.moves(position)
        for move in moves:
            yield None, (move.target, strategy.update(memory, position, move)), (
                move.premise, move.conclusion)

    factors = [
        (AcceptanceKind.GEN_BUCHI, arena.assumption_count),
        (AcceptanceKind.GEN_COBUCHI, arena.guarantee_count)]
    for position in sorted(region):
        if search_accepting_cycle(
                (position, strategy.initial_memory), successors, factors) is not None:
            return False
    return True


def build_g2(automaton: Automaton) -> GameArena:
    """Arena of the two-token game of a completed automaton

    A round goes: Adam picks a letter, Eve moves her run, Adam moves his
    first token, then his second. Eve wins iff her run is accepting
    whenever one of Adam's runs is. For generalised Büchi the assumption
    colour (i, j), index i*k+j, marks colour i on the first token and
    colour j on the second, and guarantees are Eve's colours. For
    generalised coBüchi the assumptions are Eve's colours and the
    guarantees are the first token's colours followed by the second's.
    """
    aut = automaton.complete()
    count = aut.colour_count
    letters = len(aut.alphabet)
    buchi = aut.kind is AcceptanceKind.GEN_BUCHI

    def first_token(mask):
        if buchi:
            return sum(
                1 << (i * count + j)
                for i in range(count) if (mask >> i) & 1
                for j in range(count))
        return mask

    def second_token(mask):
        if buchi:
            return sum(
                1 << (i * count + j)
                for j in range(count) if (mask >> j) & 1
                for i in range(count))
        return mask << count

    builder = _ArenaBuilder()
    builder.position(('round', aut.initial, aut.initial, aut.initial), Player.ADAM)
    for source, label in builder.pending():
        stage = label[0]
        if stage == 'round':
            _, eve, first, second = label
            for letter in range(letters):
                target = builder.position(
                    ('letter', eve, first, second, letter), Player.EVE)
                builder.add_move(source, target)
        elif stage == 'letter':
            _, eve, first, second, letter = label
            for state, mask in aut.successors(eve, letter):
                target = builder.position(
                    ('eve', state, first, second, letter), Player.ADAM)
                if buchi:
                    builder.add_move(source, target, conclusion=mask)
                else:
                    builder.add_move(source, target, premise=mask)
        elif stage == 'eve':
            _, eve, first, second, letter = label
            for state, mask in aut.successors(first, letter):
                target = builder.position(
                    ('first', eve, state, second, letter), Player.ADAM)
                if buchi:
                    builder.add_move(source, target, premise=first_token(mask))
                else:
                    builder.add_move(source, target, conclusion=first_token(mask))
        else:
            _, eve, first, second, letter = label
            for state, mask in aut.successors(second, letter):
                target = builder.position(('round', eve, first, state), Player.ADAM)
                if buchi:
                    builder.add_move(source, target, premise=second_token(mask))
                else:
                    builder.add_move(source, target, conclusion=second_token(mask))

    if buchi:
        return builder.build(count * count, count)
    return builder.build(count, 2 * count)


def is_history_deterministic(automaton: Automaton) -> bool:
    """Whether the automaton is history-deterministic

    Deterministic automata are. Otherwise Eve must win the two-token game
    from its initial position.
    """
    if automaton.is_deterministic():
        return True
    arena = build_g2(automaton)
    winning, _ = solve_gr1(arena)
    verdict = arena.initial in winning
    logger.info(
        '%s is %shistory-deterministic (%d game positions)', automaton.name,
        '' if verdict else 'not ', arena.position_count)
    return verdict


def _containment_arena(first: Automaton, second: Automaton) -> GameArena:
    if first.alphabet != second.alphabet:
        raise ContractError(
            f'Alphabets differ: {list(first.alphabet)} and '
            f'{list(second.alphabet)}')
    if first.kind is not second.kind:
        raise ContractError(
            f'Containment compares one family: {first.kind.value} and '
            f'{second.kind.value}')
    adam = first.complete()
    eve = second.complete()
    buchi = first.kind is AcceptanceKind.GEN_BUCHI

    builder = _ArenaBuilder()
    builder.position(('adam', adam.initial, eve.initial), Player.ADAM)
    for source, label in builder.pending():
        if label[0] == 'adam':
            _, state, other = label
            for letter, target_state, mask in adam.outgoing(state):
                target = builder.position(
                    ('eve', target_state, other, letter), Player.EVE)
                if buchi:
                    builder.add_move(source, target, premise=mask)
                else:
                    builder.add_move(source, target, conclusion=mask)
        else:
            _, state, other, letter = label
            for target_other, mask in eve.successors(other, letter):
                target = builder.position(('adam', state, target_other), Player.ADAM)
                if buchi:
                    builder.add_move(source, target, conclusion=mask)
                else:
                    builder.add_move(source, target, premise=mask)

    if buchi:
        return builder.build(adam.colour_count, eve.colour_count)
    return builder.build(eve.colour_count, adam.colour_count)


def contains_hd(first: Automaton, second: Automaton) -> bool:
    """Whether L(first) is included in L(second), second history-deterministic

    Adam builds a word with a run of first, Eve answers letter by letter
    with a run of second and must accept whenever Adam's run does.

    :raises ContractError: Different alphabets or acceptance families
    """
    arena = _containment_arena(first, second)
    winning, _ = solve_gr1(arena)
    return arena.initial in winning


def letter_game_is_hd(automaton: Automaton) -> bool:
    """History-determinism through the letter game

    Eve resolves the automaton against a deterministic breakpoint automaton
    of its own language.

    :raises ContractError: If the automaton is not generalised coBüchi
    """
    if automaton.kind is not AcceptanceKind.GEN_COBUCHI:
        raise ContractError('The letter game is built for generalised coBüchi automata')
    from src import transforms
    deterministic = transforms.breakpoint_determinise(
        transforms.degeneralise(automaton))
    return contains_hd(deterministic, automaton)


def equivalent(first: Automaton, second: Automaton, mode: str = 'hd') -> bool:
    """Language equality of two automata

    :param mode: 'det' for deterministic automata (product with duals),
        'hd' for history-deterministic ones (containment games both ways)
    :raises ContractError: Unknown mode, or automata not matching the mode
    """
    if mode == 'det':
        if not (first.is_deterministic() and second.is_deterministic()):
            raise ContractError('Mode det compares deterministic automata')
        return det_difference_lasso(first, second) is None
    if mode == 'hd':
        for automaton in (first, second):
            if not is_history_deterministic(automaton):
                raise ContractError(
                    f'Mode hd compares history-deterministic automata, '
                    f'{automaton.name} is not')
        return contains_hd(first, second) and contains_hd(second, first)
    raise ContractError(f'Unknown equivalence mode "{mode}"')
