#!/usr/bin/env python3
"""Automata shared by the test modules, in the native format"""
import itertools
import random

import src.automaton_io as automaton_io
from src.automaton import AcceptanceKind, Alphabet, Automaton, Lasso

# Last letter seen; doubling letter x shows colour x
T3_TEXT = """\
name T3
alphabet a b c
acceptance gen-cobuchi 3
states a b c
initial a
trans a a a {0}
trans a b b {}
trans a c c {}
trans b a a {}
trans b b b {1}
trans b c c {}
trans c a a {}
trans c b b {}
trans c c c {2}
"""

# Finitely many b, or finitely many c
XBC_TEXT = """\
name XBC
alphabet a b c
acceptance gen-cobuchi 1
states x y
initial x
trans x a x {}
trans x c x {}
trans x b y {0}
trans y a y {}
trans y b y {}
trans y c x {0}
"""

# Same language as XBC, nondeterministic and history-deterministic
FIG1_TEXT = """\
name FIG1
alphabet a b c
acceptance gen-cobuchi 1
states q0 q1 q2
initial q0
trans q0 a q0 {}
trans q0 b q0 {}
trans q0 c q1 {0}
trans q2 a q2 {}
trans q2 c q2 {}
trans q2 b q1 {0}
trans q1 a q0 {0}
trans q1 a q2 {0}
trans q1 b q0 {0}
trans q1 c q2 {0}
"""

# Eventually constant words, guessed on the first letter
NONHD3_TEXT = """\
name NONHD3
alphabet a b
acceptance gen-cobuchi 1
states s A B
initial s
trans s a A {}
trans s a B {}
trans s b A {}
trans s b B {}
trans A a A {}
trans A b A {0}
trans B b B {}
trans B a B {0}
"""

# Eventually constant words, deterministic
FINAB_TEXT = """\
name FINAB
alphabet a b
acceptance gen-cobuchi 1
states x y
initial x
trans x b x {}
trans x a y {0}
trans y a y {}
trans y b x {0}
"""

# Canonical coBüchi automaton of the T3 language, one component per letter
L3CAN_TEXT = """\
name L3CAN
alphabet a b c
acceptance gen-cobuchi 1
states a0 a1 b0 b1 c0 c1
initial a0
trans a0 a a1 {}
trans a0 b a0 {}
trans a0 c a0 {}
trans a1 a b0 {0}
trans a1 b a0 {}
trans a1 c a0 {}
trans b0 b b1 {}
trans b0 a b0 {}
trans b0 c b0 {}
trans b1 b c0 {0}
trans b1 a b0 {}
trans b1 c b0 {}
trans c0 c c1 {}
trans c0 a c0 {}
trans c0 b c0 {}
trans c1 c a0 {0}
trans c1 a c0 {}
trans c1 b c0 {}
"""

# T3 behind an initial state reading a single a
TINIT_TEXT = """\
name TINIT
alphabet a b c
acceptance gen-cobuchi 3
states i a b c
initial i
trans i a a {}
trans a a a {0}
trans a b b {}
trans a c c {}
trans b a a {}
trans b b b {1}
trans b c c {}
trans c a a {}
trans c b b {}
trans c c c {2}
"""


def t3():
    return automaton_io.parse_native(T3_TEXT)


def xbc():
    return automaton_io.parse_native(XBC_TEXT)


def fig1():
    return automaton_io.parse_native(FIG1_TEXT)


def nonhd3():
    return automaton_io.parse_native(NONHD3_TEXT)


def finab():
    return automaton_io.parse_native(FINAB_TEXT)


def l3can():
    return automaton_io.parse_native(L3CAN_TEXT)


def tinit():
    return automaton_io.parse_native(TINIT_TEXT)


def random_automaton(
        generator: random.Random, kind: AcceptanceKind, deterministic: bool = False,
        letters: str = 'ab', max_colours: int = 2) -> Automaton:
    """Small random automaton; deterministic ones are complete"""
    states = generator.randint(1, 3)
    colours = generator.randint(0, max_colours)
    transitions = []
    for state in range(states):
        for letter in range(len(letters)):
            count = 1 if deterministic else generator.randint(0, 2)
            transitions.extend(
                (state, letter, generator.randrange(states), generator.randrange(1 << colours))
                for _ in range(count))
    return Automaton(Alphabet(letters), states, 0, transitions, kind, colours, name='random')


def short_lassos(letters: str, stem: int = 2, cycle: int = 3) -> list:
    """Every lasso with a stem and a cycle up to the given lengths"""
    return [
        Lasso(stem=head, cycle=loop)
        for head_length in range(stem + 1)
        for head in itertools.product(letters, repeat=head_length)
        for loop_length in range(1, cycle + 1)
        for loop in itertools.product(letters, repeat=loop_length)]
