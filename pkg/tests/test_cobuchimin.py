#!/usr/bin/env python3
import logging
import random
import unittest

import src.automaton as automaton
import src.cobuchimin as cobuchimin
import src.games as games
import src.gencobuchimin as gencobuchimin
import src.hardness as hardness
from src.config import DEFAULT_SETTINGS
from tests import fixtures


def _random_cobuchi(generator: random.Random, letters: str = 'ab') -> automaton.Automaton:
    states = generator.randint(1, 3)
    transitions = [
        (state, letter, generator.randrange(states), generator.randint(0, 1))
        for state in range(states)
        for letter in range(len(letters))
        if generator.random() < 0.9]
    if not transitions:
        transitions = [(0, 0, 0, 0)]
    return automaton.Automaton(
        automaton.Alphabet(letters), states, 0, transitions,
        automaton.AcceptanceKind.GEN_COBUCHI, 1, name='random')


def _random_nondeterministic(generator: random.Random) -> automaton.Automaton:
    states = generator.randint(2, 4)
    transitions = [
        (state, letter, generator.randrange(states), generator.randint(0, 1))
        for state in range(states)
        for letter in range(2)
        for _ in range(generator.randint(1, 2))]
    return automaton.Automaton(
        automaton.Alphabet('ab'), states, 0, transitions,
        automaton.AcceptanceKind.GEN_COBUCHI, 1, name='random')


class TestSafeComponents(unittest.TestCase):

    def test_one_component_per_letter(self):
        decomposition = cobuchimin.safe_components(fixtures.l3can())
        self.assertEqual(
            decomposition.components,
            (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})))
        self.assertEqual(decomposition.component_of, (0, 0, 1, 1, 2, 2))
        self.assertEqual(decomposition.isolated, ())

    def test_isolated_state(self):
        decomposition = cobuchimin.safe_components(fixtures.fig1())
        self.assertEqual(decomposition.isolated, (1,))
        self.assertTrue(decomposition.same_component(0, 0))
        self.assertFalse(decomposition.same_component(0, 2))
        self.assertFalse(decomposition.same_component(1, 1))

    def test_generalised_condition_raises(self):
        self.assertRaises(
            automaton.ContractError, cobuchimin.safe_components, fixtures.t3())


class TestSafeLanguages(unittest.TestCase):

    def setUp(self) -> None:
        self.l3can = fixtures.l3can()

    def test_subset_inside_component(self):
        self.assertEqual(
            cobuchimin.compare_safe_languages(self.l3can, 0, 1),
            cobuchimin.SafeRelation.SUPERSET)
        self.assertEqual(
            cobuchimin.compare_safe_languages(self.l3can, 1, 0),
            cobuchimin.SafeRelation.SUBSET)

    def test_incomparable_components(self):
        self.assertEqual(
            cobuchimin.compare_safe_languages(self.l3can, 0, 2),
            cobuchimin.SafeRelation.INCOMPARABLE)

    def test_equal(self):
        self.assertEqual(
            cobuchimin.compare_safe_languages(self.l3can, 3, 3),
            cobuchimin.SafeRelation.EQUAL)

    def test_included_in_a_set(self):
        self.assertTrue(cobuchimin.safe_language_included(
            self.l3can, 1, self.l3can, [0]))
        self.assertFalse(cobuchimin.safe_language_included(
            self.l3can, 0, self.l3can, [2, 4]))

    def test_safe_nondeterministic_raises(self):
        self.assertRaises(
            automaton.ContractError, cobuchimin.compare_safe_languages,
            fixtures.nonhd3(), 1, 2)

    def test_safe_determinism(self):
        self.assertTrue(cobuchimin.is_safe_deterministic(fixtures.fig1()))
        self.assertFalse(cobuchimin.is_safe_deterministic(fixtures.nonhd3()))


class TestCheckCanonicity(unittest.TestCase):

    def test_canonical_automata(self):
        self.assertTrue(cobuchimin.check_canonicity(fixtures.l3can()).all_true)
        self.assertTrue(cobuchimin.check_canonicity(fixtures.xbc()).all_true)

    def test_component_not_centralised(self):
        report = cobuchimin.check_canonicity(fixtures.fig1())
        self.assertFalse(report.all_true)
        self.assertEqual(report.failed(), ['safe_centralised'])

    def test_flags(self):
        flags = cobuchimin.check_canonicity(fixtures.xbc()).flags()
        self.assertEqual(
            list(flags),
            ['reachable_only', 'semantically_deterministic', 'normal_form',
             'safe_deterministic', 'safe_minimal', 'safe_centralised'])

    def test_unreachable_state(self):
        xbc = fixtures.xbc()
        extra = automaton.Automaton(
            xbc.alphabet, 3, 0,
            list(xbc.transitions) + [(2, letter, 0, 1) for letter in range(3)],
            automaton.AcceptanceKind.GEN_COBUCHI, 1)
        self.assertIn('reachable_only', cobuchimin.check_canonicity(extra).failed())

    def test_not_semantically_deterministic(self):
        report = cobuchimin.check_canonicity(fixtures.nonhd3())
        self.assertFalse(report.semantically_deterministic)
        self.assertFalse(report.safe_deterministic)


class TestToNiceForm(unittest.TestCase):

    def test_history_deterministic_automaton(self):
        nice = cobuchimin.to_nice_form(fixtures.fig1())
        report = cobuchimin.check_canonicity(nice)
        self.assertTrue(report.reachable_only)
        self.assertTrue(report.semantically_deterministic)
        self.assertTrue(report.normal_form)
        self.assertTrue(report.safe_deterministic)
        self.assertTrue(games.equivalent(nice, fixtures.xbc(), 'hd'))

    def test_guessing_automaton_raises(self):
        try:
            cobuchimin.to_nice_form(fixtures.nonhd3())
        except automaton.ContractError as er:
            logging.info(er.message)
            self.assertIn('not history-deterministic', er.message)
        else:
            self.fail('ContractError not raised')

    def test_generalised_condition_raises(self):
        self.assertRaises(automaton.ContractError, cobuchimin.to_nice_form, fixtures.t3())

    def _check_nice(self, aut: automaton.Automaton) -> automaton.Automaton:
        nice = cobuchimin.to_nice_form(aut)
        report = cobuchimin.check_canonicity(nice)
        self.assertTrue(report.reachable_only, repr(aut))
        self.assertTrue(report.semantically_deterministic, repr(aut))
        self.assertTrue(report.normal_form, repr(aut))
        self.assertTrue(report.safe_deterministic, repr(aut))
        self.assertTrue(games.equivalent(nice, aut, 'hd'), repr(aut))
        self.assertLessEqual(nice.state_count, aut.trim().state_count)
        return nice

    def test_incomparable_safe_successors_are_not_determinised(self):
        aut = automaton.Automaton(
            automaton.Alphabet('ab'), 4, 0,
            [(0, 0, 3, 1), (0, 1, 0, 0), (1, 0, 0, 0), (1, 1, 1, 0), (1, 1, 3, 0),
             (2, 0, 1, 0), (2, 1, 3, 0), (3, 0, 0, 0), (3, 0, 3, 0), (3, 1, 3, 0)],
            automaton.AcceptanceKind.GEN_COBUCHI, 1, name='twosafe')
        self.assertTrue(games.is_history_deterministic(aut))
        nice = self._check_nice(aut)
        self.assertLessEqual(nice.state_count, 2)

    def test_uncovered_state_off_the_resolver_is_dropped(self):
        aut = automaton.Automaton(
            automaton.Alphabet('ab'), 3, 0,
            [(0, 0, 0, 0), (0, 1, 0, 0), (0, 1, 1, 0), (1, 0, 2, 1), (1, 1, 0, 0),
             (1, 1, 2, 1), (2, 0, 1, 1), (2, 0, 2, 1), (2, 1, 1, 1)],
            automaton.AcceptanceKind.GEN_COBUCHI, 1, name='uncovered')
        self.assertTrue(games.is_history_deterministic(aut))
        self._check_nice(aut)

    def test_random_history_deterministic_inputs(self):
        generator = random.Random(11)
        checked = 0
        while checked < 40:
            aut = _random_nondeterministic(generator)
            if aut.is_deterministic() or not games.is_history_deterministic(aut):
                continue
            checked += 1
            nice = self._check_nice(aut)
            largest = max(
                (len(component) for component in
                 cobuchimin.safe_components(aut.trim()).components), default=0)
            for component in cobuchimin.safe_components(nice).components:
                self.assertLessEqual(len(component), largest, repr(aut))


class TestMinimiseHdCobuchi(unittest.TestCase):

    def test_prefix_independent_language(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.t3())
        self.assertEqual(form.automaton.state_count, 6)
        self.assertEqual(form.partition.class_count, 1)
        self.assertEqual(len(form.decomposition.components), 3)
        self.assertTrue(form.reference.is_deterministic())

    def test_history_deterministic_input(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.fig1())
        self.assertEqual(form.automaton.state_count, 2)
        self.assertTrue(cobuchimin.check_canonicity(form.automaton).all_true)
        self.assertTrue(games.equivalent(form.automaton, fixtures.xbc(), 'hd'))

    def test_canonical_input_keeps_its_size(self):
        self.assertEqual(
            cobuchimin.minimise_hd_cobuchi(fixtures.xbc()).automaton.state_count, 2)
        self.assertEqual(
            cobuchimin.minimise_hd_cobuchi(fixtures.l3can()).automaton.state_count, 6)

    def test_guessing_input_is_determinised(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.nonhd3())
        self.assertEqual(form.automaton.state_count, 2)
        self.assertTrue(games.equivalent(form.automaton, fixtures.finab(), 'hd'))

    def test_empty_language(self):
        aut = automaton.Automaton(
            automaton.Alphabet('ab'), 2, 0, [(0, 0, 1, 1), (1, 1, 0, 1)],
            automaton.AcceptanceKind.GEN_COBUCHI, 1)
        form = cobuchimin.minimise_hd_cobuchi(aut)
        self.assertEqual(form.automaton.state_count, 1)
        self.assertTrue(automaton.is_empty(form.automaton))

    def test_without_postconditions(self):
        settings = DEFAULT_SETTINGS.replace(verify_postconditions=False)
        form = cobuchimin.minimise_hd_cobuchi(fixtures.fig1(), settings)
        self.assertEqual(form.automaton.state_count, 2)

    def test_buchi_input_raises(self):
        self.assertRaises(
            automaton.ContractError, cobuchimin.minimise_hd_cobuchi,
            hardness.exp_family(1))


class TestMinimiseHdCobuchiRandom(unittest.TestCase):

    def setUp(self) -> None:
        self.generator = random.Random(7)
        self.samples = [
            _random_cobuchi(self.generator, 'ab' if index % 2 else 'abc')
            for index in range(60)]

    def test_results_are_canonical_and_equivalent(self):
        for aut in self.samples:
            form = cobuchimin.minimise_hd_cobuchi(aut)
            self.assertTrue(
                cobuchimin.check_canonicity(form.automaton).all_true,
                repr(aut))
            self.assertLessEqual(
                form.automaton.state_count, max(1, aut.trim().state_count))
            self.assertTrue(games.is_history_deterministic(form.automaton))
            self.assertTrue(games.equivalent(form.automaton, aut, 'hd'), repr(aut))

    def test_no_smaller_history_deterministic_automaton(self):
        for aut in self.samples:
            states = cobuchimin.minimise_hd_cobuchi(aut).automaton.state_count
            if states == 1:
                continue
            query = hardness.ExactMinQuery(aut, states - 1, 1, 'hd')
            self.assertIsNone(hardness.exact_minimise(query), repr(aut))

    def test_generalised_size_laws(self):
        for aut in self.samples:
            form = cobuchimin.minimise_hd_cobuchi(aut)
            result = gencobuchimin.minimise_hd_gencobuchi(aut)
            self.assertEqual(result.state_count, gencobuchimin.size_profile(form).total)
            self.assertEqual(result.colour_count, len(form.decomposition.components))
            self.assertLessEqual(result.state_count, form.automaton.state_count)
            self.assertTrue(games.equivalent(result, aut, 'hd'), repr(aut))


if __name__ == '__main__':
    unittest.main()  # pragma: no cover
