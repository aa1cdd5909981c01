#!/usr/bin/env python3
import logging
import unittest
from unittest import mock

import src.automaton as automaton
import src.cobuchimin as cobuchimin
import src.errors as errors
import src.games as games
import src.gencobuchimin as gencobuchimin
import src.hardness as hardness
from src.automaton import Lasso
from tests import fixtures


class TestSizeProfile(unittest.TestCase):

    def test_prefix_independent_language(self):
        profile = gencobuchimin.size_profile(fixtures.l3can())
        self.assertEqual(profile.classes, (0,))
        self.assertEqual(profile.sizes, (2,))
        self.assertEqual(profile.transient, (False,))
        self.assertEqual(profile.largest_component, 2)
        self.assertEqual(profile.total, 2)
        self.assertEqual(profile.offset(0), 0)

    def test_transient_initial_class(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.tinit())
        profile = gencobuchimin.size_profile(form)
        self.assertEqual(profile.classes[0], form.partition.initial_class)
        self.assertEqual(profile.sizes, (1, 2))
        self.assertEqual(profile.transient, (True, False))
        self.assertEqual(profile.offset(profile.classes[1]), 1)

    def test_not_canonical_raises(self):
        try:
            gencobuchimin.size_profile(fixtures.fig1())
        except automaton.ContractError as er:
            self.assertIn('safe_centralised', er.message)
        else:
            self.fail('ContractError not raised')


class TestMorphismPacking(unittest.TestCase):

    def setUp(self) -> None:
        self.packings = gencobuchimin.morphism_packing(fixtures.l3can())

    def test_one_packing_per_component(self):
        self.assertEqual([packing.component for packing in self.packings], [0, 1, 2])

    def test_mapping(self):
        self.assertEqual(self.packings[0].mapping, {0: 0, 1: 1})
        self.assertEqual(self.packings[1].mapping, {2: 0, 3: 1})
        self.assertEqual(self.packings[2].mapping, {4: 0, 5: 1})

    def test_image(self):
        # a0 -a-> a1, a0 -b,c-> a0 and a1 -b,c-> a0
        self.assertEqual(
            self.packings[0].image(),
            frozenset({(0, 0, 1), (0, 1, 0), (0, 2, 0), (1, 1, 0), (1, 2, 0)}))


class TestBuildPrefixIndependent(unittest.TestCase):

    def setUp(self) -> None:
        self.packed = gencobuchimin.build_prefix_independent(fixtures.l3can())

    def test_size(self):
        self.assertEqual(self.packed.state_count, 2)
        self.assertEqual(self.packed.colour_count, 3)
        self.assertEqual(len(self.packed.transitions), 12)
        self.assertIs(self.packed.kind, automaton.AcceptanceKind.GEN_COBUCHI)

    def test_colours(self):
        self.assertEqual(dict(self.packed.successors(0, 2))[0], 0b100)
        self.assertEqual(dict(self.packed.successors(1, 0))[1], 0b111)

    def test_language(self):
        self.assertTrue(games.is_history_deterministic(self.packed))
        self.assertTrue(games.equivalent(self.packed, fixtures.t3(), 'hd'))

    def test_same_as_general_construction(self):
        self.assertEqual(gencobuchimin.build_general(fixtures.l3can()), self.packed)

    def test_several_residuals_raise(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.tinit())
        self.assertRaises(
            automaton.ContractError, gencobuchimin.build_prefix_independent, form)


class TestBuildGeneral(unittest.TestCase):

    def test_transient_class(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.tinit())
        packed = gencobuchimin.build_general(form)
        self.assertEqual(packed.state_count, 3)
        self.assertEqual(packed.colour_count, 3)
        self.assertTrue(games.equivalent(packed, fixtures.tinit(), 'hd'))

    def test_canonical_automaton(self):
        packed = gencobuchimin.build_general(fixtures.xbc())
        self.assertEqual(packed.state_count, 1)
        self.assertEqual(packed.colour_count, 2)


class TestRoundRobinResolver(unittest.TestCase):

    def setUp(self) -> None:
        self.l3can = fixtures.l3can()
        self.packed = gencobuchimin.build_prefix_independent(self.l3can)
        self.packings = gencobuchimin.morphism_packing(self.l3can)
        self.resolver = gencobuchimin.round_robin_resolver(
            self.packed, self.packings, self.l3can)

    def test_accepted_words(self):
        for lasso in (
                Lasso(stem=(), cycle=('a', 'b', 'c')),
                Lasso(stem=(), cycle=('a', 'b')),
                Lasso(stem=('a', 'a', 'b', 'b'), cycle=('c',))):
            self.assertTrue(
                gencobuchimin.resolver_run_accepts(self.packed, self.resolver, lasso),
                str(lasso))

    def test_rejected_words(self):
        lasso = Lasso(stem=(), cycle=('a', 'a', 'b', 'b', 'c', 'c'))
        self.assertFalse(
            gencobuchimin.resolver_run_accepts(self.packed, self.resolver, lasso))

    def test_agrees_with_language(self):
        t3 = fixtures.t3()
        for lasso in (
                Lasso(stem=('c',), cycle=('a', 'a', 'b')),
                Lasso(stem=(), cycle=('b', 'b', 'c', 'a')),
                Lasso(stem=('a', 'b'), cycle=('c', 'c', 'a', 'a', 'b', 'b')),
                Lasso(stem=(), cycle=('b',))):
            self.assertEqual(
                gencobuchimin.resolver_run_accepts(self.packed, self.resolver, lasso),
                automaton.lasso_accepts(t3, lasso), str(lasso))

    def test_agrees_with_language_on_short_lassos(self):
        t3 = fixtures.t3()
        for lasso in fixtures.short_lassos('abc', 3, 3):
            self.assertEqual(
                gencobuchimin.resolver_run_accepts(self.packed, self.resolver, lasso),
                automaton.lasso_accepts(t3, lasso), str(lasso))

    def test_general_construction_on_short_lassos(self):
        form = cobuchimin.minimise_hd_cobuchi(fixtures.tinit())
        packed = gencobuchimin.build_general(form)
        resolver = gencobuchimin.round_robin_resolver(
            packed, gencobuchimin.morphism_packing(form), form)
        tinit = fixtures.tinit()
        for lasso in fixtures.short_lassos(''.join(tinit.alphabet.letters), 3, 3):
            self.assertEqual(
                gencobuchimin.resolver_run_accepts(packed, resolver, lasso),
                automaton.lasso_accepts(tinit, lasso), str(lasso))

    def test_foreign_packings_raise(self):
        self.assertRaises(
            automaton.ContractError, gencobuchimin.round_robin_resolver,
            self.packed, list(reversed(self.packings)), self.l3can)


class TestMinimiseHdGencobuchi(unittest.TestCase):

    def test_prefix_independent_language(self):
        result = gencobuchimin.minimise_hd_gencobuchi(fixtures.t3())
        self.assertEqual(result.state_count, 2)
        self.assertEqual(result.colour_count, 3)

    def test_history_deterministic_input(self):
        result = gencobuchimin.minimise_hd_gencobuchi(fixtures.fig1())
        self.assertEqual(result.state_count, 1)
        self.assertEqual(result.colour_count, 2)
        self.assertTrue(games.equivalent(result, fixtures.xbc(), 'hd'))

    def test_initial_residual(self):
        result = gencobuchimin.minimise_hd_gencobuchi(fixtures.tinit())
        self.assertEqual(result.state_count, 3)
        self.assertFalse(automaton.lasso_accepts(result, Lasso(stem=('b',), cycle=('a',))))
        self.assertTrue(automaton.lasso_accepts(result, Lasso(stem=('a',), cycle=('b', 'c'))))

    def test_never_larger_than_cobuchi_minimum(self):
        for aut in (fixtures.t3(), fixtures.xbc(), fixtures.nonhd3(), fixtures.tinit()):
            form = cobuchimin.minimise_hd_cobuchi(aut)
            result = gencobuchimin.minimise_hd_gencobuchi(aut)
            self.assertLessEqual(result.state_count, form.automaton.state_count)

    def test_more_colours_save_states(self):
        xbc = fixtures.xbc()
        self.assertEqual(cobuchimin.minimise_hd_cobuchi(xbc).automaton.state_count, 2)
        result = gencobuchimin.minimise_hd_gencobuchi(xbc)
        self.assertEqual(result.state_count, 1)
        self.assertEqual(result.colour_count, 2)
        self.assertIsNone(hardness.exact_minimise(hardness.ExactMinQuery(xbc, 1, 1, 'hd')))
        found = hardness.exact_minimise(hardness.ExactMinQuery(xbc, 1, 2, 'hd'))
        self.assertEqual(found.colour_count, 2)

    def test_oversized_result_fails_postconditions(self):
        with mock.patch.object(gencobuchimin, '_build', return_value=fixtures.l3can()):
            try:
                gencobuchimin.minimise_hd_gencobuchi(fixtures.xbc())
            except errors.PostconditionError as er:
                logging.info(er.message)
                self.assertIn('size', er.failed_checks)
                self.assertIn('colours', er.failed_checks)
            else:
                self.fail('PostconditionError not raised')


if __name__ == '__main__':
    unittest.main()  # pragma: no cover
