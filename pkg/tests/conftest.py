import random
import sys

import pytest
from hypothesis import strategies as st

from hyperdfa import Dfa, parse_dfa
from hyperdfa.generate import random_dfa, random_preamble_dfa


def small_dfa_corpus(seed, count, max_n=8, max_k=3):
    """Random DFAs (total and partial) with a fixed seed."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, k = rng.randint(1, max_n), rng.randint(1, max_k)
        out.append(random_dfa(rng, n, k, density=rng.choice([1.0, 0.7])))
    return out


def mixed_kmin_corpus(seed, count):
    """Half uniform DFAs, half DFAs with a preamble feeding a small core, plus a mode each."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        mode = rng.choice(["partial", "total"])
        k = rng.randint(1, 2)
        if rng.random() < 0.5:
            d = random_dfa(rng, rng.randint(1, 8), k, density=rng.choice([1.0, 0.7]))
        else:
            d = random_preamble_dfa(rng, rng.randint(0, 2), rng.randint(1, 6), k,
                                    density=rng.choice([1.0, 0.7]))
        out.append((d, mode))
    return out


@st.composite
def dfas(draw, max_n=6, max_k=2, total=False):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    trans = []
    for q in range(n):
        for a in range(k):
            if total or draw(st.booleans()) or draw(st.booleans()):
                trans.append((q, a, draw(st.integers(0, n - 1))))
    acc = [q for q in range(n) if draw(st.booleans())]
    return Dfa.build([chr(97 + i) for i in range(k)], n, trans, 0, acc)


@pytest.fixture
def preamble_example():
    # start q6 is 8-similar to both q0 and q1, which are 8-dissimilar
    return parse_dfa(
        """
        alphabet: a b
        states: q6 q5 q0 q1 q4
        start: q6
        accept: q1
        trans: q6 a q5
        trans: q6 b q0
        trans: q5 a q1
        trans: q5 b q4
        trans: q0 a q1
        trans: q0 b q0
        trans: q1 a q1
        trans: q1 b q0
        trans: q4 a q0
        trans: q4 b q0
        """
    )


@pytest.fixture
def chain():
    return parse_dfa("alphabet: a\nstates: p q\nstart: p\naccept: q\ntrans: p a q\n")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
