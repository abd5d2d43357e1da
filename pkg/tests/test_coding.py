import random

import pytest

from foliations.coding import (
    closed_curve_of_word,
    extend,
    format_symbols,
    nonzero_words,
    parse_symbols,
    product,
    represent_homology,
    represent_pi1,
    word_support,
)
from foliations.errors import CapExceeded, ClosedUp, ZeroWord
from foliations.genus2_glue import broken_isometry_map, five_partition, phi_words
from foliations.word_algebra import FreeWord, abelianize

import support


@pytest.fixture(scope="module")
def fixture():
    gs = support.fixture_glued()
    return gs, broken_isometry_map(gs), five_partition(gs)


def test_symbol_format():
    assert parse_symbols("R1R4R2") == (1, 4, 2)
    assert format_symbols((3, 1)) == "R3R1"
    with pytest.raises(ValueError):
        parse_symbols("R1X")


def test_single_symbols(fixture):
    gs, bi, fp = fixture
    for q in range(1, 6):
        w = word_support(bi, fp, (q,))
        assert w.measure == fp.tau[q - 1]
        assert w.shift == bi.shifts[q - 1]


def test_partition_law(fixture):
    gs, bi, fp = fixture
    for N in range(1, 8):
        words = nonzero_words(bi, fp, N)
        assert sum((w.measure for w in words), gs.m - gs.m) == gs.m
        assert all(w.support.is_interval() for w in words)
    assert len(nonzero_words(bi, fp, 1)) == 5
    assert 5 <= len(nonzero_words(bi, fp, 2)) <= 25


def test_length_three_total(fixture):
    gs, bi, fp = fixture
    assert sum((w.measure for w in nonzero_words(bi, fp, 3)), gs.m - gs.m) == support.Scalar.parse("9/10")


def test_zero_words_and_monotonicity(fixture):
    gs, bi, fp = fixture
    zero_seen = False
    for w in nonzero_words(bi, fp, 2):
        for p in range(1, 6):
            e = extend(bi, p, w)
            if e.is_zero():
                zero_seen = True
                assert e.to_json()["measure"] == "0"
            else:
                assert e.support.issubset(w.support) and e.measure <= w.measure
    assert zero_seen


def test_support_really_is_the_cylinder(fixture):
    gs, bi, fp = fixture
    rng = random.Random(4)
    for _ in range(30):
        x = support.random_point(rng, gs.m)
        y, syms = x, []
        for _ in range(6):
            syms.append(bi.map.piece_index(y) + 1)
            y = bi(y)
        w = word_support(bi, fp, tuple(reversed(syms)))
        assert w.support.contains(x)
        assert y == x + w.shift


def test_associativity(fixture):
    gs, bi, fp = fixture
    rng = random.Random(9)
    for _ in range(200):
        u, v, w = (word_support(bi, fp, tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 3)))) for _ in range(3))
        left, right = product(product(u, v), w), product(u, product(v, w))
        assert left.support == right.support
        assert left.symbols == right.symbols
        assert left.support == word_support(bi, fp, u.symbols + v.symbols + w.symbols).support


def test_cap(fixture):
    gs, bi, fp = fixture
    with pytest.raises(CapExceeded):
        nonzero_words(bi, fp, 30)


def test_pi1_representation(fixture):
    gs, bi, fp = fixture
    words = phi_words()
    for q in range(1, 6):
        w = word_support(bi, fp, (q,))
        assert represent_pi1(w, fp) == words[fp.labels[q - 1]]
    nz = nonzero_words(bi, fp, 3)
    for w in nz:
        rep = represent_pi1(w, fp)
        assert rep * rep.inverse() == FreeWord((), rep.alphabet)
        parts = [abelianize(words[fp.labels[q - 1]]) for q in w.symbols]
        assert represent_homology(w, fp) == tuple(map(sum, zip(*parts)))


def test_zero_word_errors(fixture):
    gs, bi, fp = fixture
    zero = next(e for w in nonzero_words(bi, fp, 2) for p in range(1, 6) if (e := extend(bi, p, w)).is_zero())
    with pytest.raises(ZeroWord):
        represent_pi1(zero, fp)
    with pytest.raises(ZeroWord):
        closed_curve_of_word(zero, fp)


def test_closed_curves(fixture):
    gs, bi, fp = fixture
    signs = set()
    for w in nonzero_words(bi, fp, 2):
        word, measure, orientation = closed_curve_of_word(w, fp)
        assert measure == abs(w.shift) and measure.sign() > 0
        assert orientation == (1 if w.shift.sign() < 0 else -1)
        expected = represent_pi1(w, fp)
        assert word == (expected if orientation == 1 else expected.inverse())
        signs.add(orientation)
    assert signs == {1, -1}


def test_closed_up():
    from foliations.coding import CodeWord
    from foliations.intervals import IntervalUnion

    gs = support.fixture_glued()
    fp = five_partition(gs)
    fake = CodeWord((1,), IntervalUnion.of(gs.m - gs.m, gs.m / 2), gs.m - gs.m)
    with pytest.raises(ClosedUp):
        closed_curve_of_word(fake, fp)
