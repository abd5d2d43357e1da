"""Fixture instances and random generators shared by the test modules."""

import random

from foliations.errors import Degenerate
from foliations.exact_field import Scalar
from foliations.genus2_glue import glue
from foliations.torus_flow import FlowTorus, street_set

FIX_G1 = ("1", "-1/2+1/2*sqrt(5)", "9/10")
FIX_T2 = ("1", "-2+1*sqrt(5)", "9/10")
FIX_S2 = ("1", "1/2*sqrt(2)", "1/5")
FIX_S3 = ("1", "1*sqrt(2)", "6/5")


def torus(triple, d=None):
    a, b, m = triple
    return FlowTorus(Scalar.parse(a, d), Scalar.parse(b, d), Scalar.parse(m, d))


def fixture_glued():
    return glue(torus(FIX_G1), torus(FIX_T2))


def random_irrational(rng, d, lo=1, hi=9):
    """Positive element ``(r + s sqrt(d)) / n`` with ``s != 0``."""
    while True:
        x = Scalar(rng.randint(-hi, hi), rng.randint(lo, hi), d) / rng.randint(1, hi)
        if x.sign() > 0:
            return x


def random_generic_torus(rng, d=None, m=None):
    """A torus over Q(sqrt(2)) or Q(sqrt(5)) on which street_set succeeds."""
    d = d or rng.choice((2, 5))
    while True:
        a = Scalar(rng.randint(1, 12), 0, d) / rng.randint(1, 12)
        b = random_irrational(rng, d)
        mm = m if m is not None else (a + b) * Scalar(rng.randint(1, 99), 0, d) / 100
        if not (mm.sign() > 0 and mm < a + b):
            continue
        t = FlowTorus(a, b, mm, d)
        try:
            street_set(t)
        except Degenerate:
            continue
        return t


def random_glued(rng, d=None):
    d = d or rng.choice((2, 5))
    while True:
        m = Scalar(rng.randint(1, 30), 0, d) / rng.randint(1, 12)
        try:
            return glue(random_generic_torus(rng, d, m), random_generic_torus(rng, d, m))
        except Degenerate:
            continue


def random_point(rng, m):
    """Interior point of (0, m) that avoids the finitely many rational break preimages."""
    d = m.d or 2
    frac = Scalar(rng.randint(1, 10 ** 6 - 1), 0, d) / 10 ** 6
    jitter = Scalar(0, rng.randint(1, 9), d) / 10 ** 9
    x = m * frac + jitter
    return x if x < m else m * frac


def rng(seed):
    return random.Random(seed)


# genus 4, tree with leaves L1..L4 and saddles Q1, Q2; branches pair up into one cycle of length 4
G4_MAXIMAL = {
    "genus": 4,
    "tree": {
        "vertices": {"L1": "0", "L2": "1", "Q1": "2", "Q2": "3", "L4": "4", "L3": "5"},
        "edges": [["L1", "Q1"], ["L2", "Q1"], ["Q1", "Q2"], ["Q2", "L3"], ["Q2", "L4"]],
    },
    "branches": [
        {"name": "t1", "path": ["L1", "Q1", "Q2", "L3"], "start": "0", "end": "5"},
        {"name": "t2", "path": ["L2", "Q1", "Q2", "L4"], "start": "1", "end": "4"},
        {"name": "t3", "path": ["L1", "Q1", "Q2", "L4"], "start": "0", "end": "4"},
        {"name": "t4", "path": ["L2", "Q1", "Q2", "L3"], "start": "1", "end": "5"},
    ],
    "psi": [
        {"edge": ["L1", "Q1"], "lo": "0", "hi": "2", "order": ["t1", "t3"]},
        {"edge": ["L2", "Q1"], "lo": "1", "hi": "2", "order": ["t2", "t4"]},
        {"edge": ["Q1", "Q2"], "lo": "2", "hi": "3", "order": ["t1", "t3", "t2", "t4"]},
        {"edge": ["Q2", "L3"], "lo": "3", "hi": "5", "order": ["t4", "t1"]},
        {"edge": ["Q2", "L4"], "lo": "3", "hi": "4", "order": ["t3", "t2"]},
    ],
    "tori": [{"a": "5", "b": "1"}] * 4,
}

# genus 3 with three centres and one saddle: the census r = g - 2 of a maximal foliation
G3_CANDIDATE = {
    "genus": 3,
    "tree": {
        "vertices": {"L1": "0", "L2": "1", "Q": "2", "L3": "3"},
        "edges": [["L1", "Q"], ["L2", "Q"], ["Q", "L3"]],
    },
    "branches": [
        {"name": "t1", "path": ["L1", "Q", "L3"], "start": "0", "end": "3"},
        {"name": "t2", "path": ["L2", "Q", "L3"], "start": "1", "end": "3"},
        {"name": "t3", "path": ["L1", "Q", "L3"], "start": "0", "end": "5/2"},
    ],
    "tori": [{"a": "4", "b": "1"}] * 3,
}
