#!/usr/bin/env python3
import random
import unittest

import src.automaton as automaton
import src.games as games
import src.hardness as hardness
from src.games import Move, Player
from tests import fixtures


def _single_choice_arena():
    return games.GameArena(
        [Player.EVE], [[Move(0, 0, 0), Move(0, 0, 1)]], 0, 1)


def _adam_trap_arena():
    return games.GameArena([Player.ADAM], [[Move(0, 1, 0)]], 1, 1)


def _answer_arena():
    # Adam may visit the assumption colour, Eve answers with the guarantee
    return games.GameArena(
        [Player.ADAM, Player.EVE],
        [[Move(1, 1, 0), Move(0, 0, 0)], [Move(0, 0, 0), Move(0, 0, 1)]],
        1, 1)


def _alternation_arena():
    # Eve needs memory to see both guarantee colours
    return games.GameArena(
        [Player.EVE, Player.EVE, Player.EVE],
        [[Move(1, 0, 0b01), Move(2, 0, 0b10)], [Move(0, 0, 0)], [Move(0, 0, 0)]],
        0, 2)


def _random_arena(generator: random.Random) -> games.GameArena:
    positions = generator.randint(1, 6)
    assumptions = generator.randint(0, 2)
    guarantees = generator.randint(0, 2)
    owners = [generator.choice([Player.EVE, Player.ADAM]) for _ in range(positions)]
    moves = [
        [Move(generator.randrange(positions),
              generator.randrange(1 << assumptions),
              generator.randrange(1 << guarantees))
         for _ in range(generator.randint(1, 3))]
        for _ in range(positions)]
    return games.GameArena(owners, moves, assumptions, guarantees)


def _random_cobuchi(generator: random.Random) -> automaton.Automaton:
    states = generator.randint(2, 4)
    transitions = [
        (state, letter, generator.randrange(states), generator.randint(0, 1))
        for state in range(states)
        for letter in range(2)
        for _ in range(generator.randint(1, 2))]
    return automaton.Automaton(
        automaton.Alphabet('ab'), states, 0, transitions,
        automaton.AcceptanceKind.GEN_COBUCHI, 1, name='random')


class TestGameArenaRaises(unittest.TestCase):

    def test_dead_end(self):
        self.assertRaises(games.ContractError, games.GameArena, [Player.EVE], [[]], 0, 0)

    def test_target_out_of_range(self):
        self.assertRaises(
            games.ContractError, games.GameArena, [Player.EVE], [[Move(1, 0, 0)]], 0, 0)

    def test_undeclared_colour(self):
        self.assertRaises(
            games.ContractError, games.GameArena, [Player.EVE], [[Move(0, 0b10, 0)]], 1, 0)

    def test_owner_count(self):
        self.assertRaises(
            games.ContractError, games.GameArena,
            [Player.EVE, Player.ADAM], [[Move(0, 0, 0)]], 0, 0)


class TestGameArena(unittest.TestCase):

    def test_accessors(self):
        arena = _answer_arena()
        self.assertEqual(arena.position_count, 2)
        self.assertEqual(arena.assumption_count, 1)
        self.assertEqual(arena.guarantee_count, 1)
        self.assertIs(arena.owner(0), Player.ADAM)
        self.assertEqual(arena.moves(1)[1], Move(0, 0, 1))
        self.assertEqual(arena.label(1), 1)


class TestSolveGr1(unittest.TestCase):

    def test_eve_picks_the_guarantee(self):
        winning, strategy = games.solve_gr1(_single_choice_arena())
        self.assertEqual(winning, frozenset({0}))
        self.assertEqual(strategy.choose(0, strategy.initial_memory), Move(0, 0, 1))

    def test_adam_wins_the_trap(self):
        winning, _ = games.solve_gr1(_adam_trap_arena())
        self.assertEqual(winning, frozenset())

    def test_eve_answers_the_assumption(self):
        arena = _answer_arena()
        winning, strategy = games.solve_gr1(arena)
        self.assertEqual(winning, frozenset({0, 1}))
        self.assertTrue(games.verify_strategy(arena, strategy, winning))

    def test_strategy_with_memory(self):
        arena = _alternation_arena()
        winning, strategy = games.solve_gr1(arena)
        self.assertEqual(winning, frozenset({0, 1, 2}))
        self.assertTrue(games.verify_strategy(arena, strategy, winning))

    def test_no_guarantee_means_eve_wins(self):
        winning, _ = games.solve_gr1(games.GameArena([Player.ADAM], [[Move(0, 1, 0)]], 1, 0))
        self.assertEqual(winning, frozenset({0}))


class TestVerifyStrategy(unittest.TestCase):

    def test_memoryless_strategy_loses(self):
        arena = _alternation_arena()
        lazy = games.Strategy(
            0, lambda position, memory: arena.moves(position)[0],
            lambda memory, position, move: 0)
        self.assertFalse(games.verify_strategy(arena, lazy, {0}))

    def test_illegal_move_raises(self):
        arena = _single_choice_arena()
        cheat = games.Strategy(
            0, lambda position, memory: Move(0, 0, 0b10),
            lambda memory, position, move: 0)
        self.assertRaises(games.ContractError, games.verify_strategy, arena, cheat, {0})


class TestParityOracle(unittest.TestCase):

    def test_agrees_on_small_arenas(self):
        for arena in (_single_choice_arena(), _adam_trap_arena(),
                      _answer_arena(), _alternation_arena()):
            winning, _ = games.solve_gr1(arena)
            self.assertEqual(games.solve_parity_oracle(arena), winning)

    def test_agrees_on_two_token_games(self):
        for aut in (fixtures.fig1(), fixtures.nonhd3()):
            arena = games.build_g2(aut)
            winning, _ = games.solve_gr1(arena)
            self.assertEqual(games.solve_parity_oracle(arena), winning)


    def test_agrees_on_random_arenas(self):
        generator = random.Random(3)
        for _ in range(200):
            arena = _random_arena(generator)
            winning, strategy = games.solve_gr1(arena)
            self.assertEqual(games.solve_parity_oracle(arena), winning, repr(arena))
            self.assertTrue(games.verify_strategy(arena, strategy, winning), repr(arena))


class TestBuildG2(unittest.TestCase):

    def test_cobuchi_colours(self):
        arena = games.build_g2(fixtures.fig1())
        self.assertEqual(arena.assumption_count, 1)
        self.assertEqual(arena.guarantee_count, 2)
        self.assertIs(arena.owner(arena.initial), Player.ADAM)

    def test_buchi_colours(self):
        arena = games.build_g2(hardness.exp_family(2))
        self.assertEqual(arena.assumption_count, 4)
        self.assertEqual(arena.guarantee_count, 2)


class TestHistoryDeterminism(unittest.TestCase):

    def test_deterministic_automaton(self):
        self.assertTrue(games.is_history_deterministic(fixtures.t3()))

    def test_history_deterministic_automaton(self):
        self.assertTrue(games.is_history_deterministic(fixtures.fig1()))

    def test_guessing_automaton(self):
        self.assertFalse(games.is_history_deterministic(fixtures.nonhd3()))

    def test_guessing_generalised_buchi_automaton(self):
        self.assertFalse(games.is_history_deterministic(hardness.exp_family(2)))

    def test_strategy_of_two_token_game(self):
        arena = games.build_g2(fixtures.fig1())
        winning, strategy = games.solve_gr1(arena)
        self.assertTrue(games.verify_strategy(arena, strategy, {arena.initial}))


class TestLetterGame(unittest.TestCase):

    def test_agrees_with_two_token_game(self):
        self.assertTrue(games.letter_game_is_hd(fixtures.fig1()))
        self.assertFalse(games.letter_game_is_hd(fixtures.nonhd3()))

    def test_agrees_with_two_token_game_on_random_automata(self):
        generator = random.Random(5)
        samples = [fixtures.fig1(), fixtures.nonhd3()]
        samples += [_random_cobuchi(generator) for _ in range(48)]
        verdicts = set()
        for aut in samples:
            verdict = games.is_history_deterministic(aut)
            self.assertEqual(games.letter_game_is_hd(aut), verdict, repr(aut))
            verdicts.add(verdict)
        self.assertEqual(verdicts, {True, False})

    def test_buchi_raises(self):
        self.assertRaises(
            games.ContractError, games.letter_game_is_hd, hardness.exp_family(2))


class TestContainsHd(unittest.TestCase):

    def test_inclusion(self):
        self.assertTrue(games.contains_hd(fixtures.xbc(), fixtures.t3()))
        self.assertFalse(games.contains_hd(fixtures.t3(), fixtures.xbc()))

    def test_history_deterministic_right_side(self):
        self.assertTrue(games.contains_hd(fixtures.xbc(), fixtures.fig1()))
        self.assertTrue(games.contains_hd(fixtures.fig1(), fixtures.xbc()))

    def test_families_differ_raises(self):
        xbc = fixtures.xbc()
        self.assertRaises(
            games.ContractError, games.contains_hd, xbc, automaton.dualise(xbc))

    def test_alphabets_differ_raises(self):
        self.assertRaises(
            games.ContractError, games.contains_hd, fixtures.t3(), fixtures.finab())


class TestEquivalent(unittest.TestCase):

    def test_hd_mode(self):
        self.assertTrue(games.equivalent(fixtures.fig1(), fixtures.xbc(), 'hd'))
        self.assertFalse(games.equivalent(fixtures.t3(), fixtures.xbc(), 'hd'))

    def test_det_mode(self):
        self.assertTrue(games.equivalent(fixtures.t3(), fixtures.t3(), 'det'))
        self.assertFalse(games.equivalent(fixtures.xbc(), fixtures.t3(), 'det'))

    def test_det_mode_on_nondeterministic_raises(self):
        self.assertRaises(
            games.ContractError, games.equivalent, fixtures.fig1(), fixtures.xbc(), 'det')

    def test_hd_mode_on_guessing_automaton_raises(self):
        self.assertRaises(
            games.ContractError, games.equivalent, fixtures.nonhd3(), fixtures.finab(), 'hd')

    def test_unknown_mode_raises(self):
        try:
            games.equivalent(fixtures.t3(), fixtures.t3(), 'exact')
        except games.ContractError as er:
            self.assertIn('exact', er.message)
        else:
            self.fail('ContractError not raised')


if __name__ == '__main__':
    unittest.main()  # pragma: no cover
