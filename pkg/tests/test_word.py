import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscode.errors import BadToken, LimitExceeded, OccurrenceCount
from gausscode.word import (
    DoubleOccurrenceWord,
    canonicalize,
    double_factorial_count,
    enumerate_words,
    format_word,
    from_letters,
    normalize,
    parse,
)


def brute_canonical(letters):
    """Least normal form over rotations, reversal and every explicit renaming."""
    n = len(letters) // 2
    best = None
    for seq in (tuple(letters), tuple(letters[::-1])):
        for k in range(max(len(seq), 1)):
            rot = seq[k:] + seq[:k]
            for perm in itertools.permutations(range(n)):
                cand = normalize(perm[s] for s in rot)
                if best is None or cand < best:
                    best = cand
    return best if best is not None else ()


def test_parse_paper_example():
    w = parse("adbacdcb")
    assert w.n == 4
    assert w.letters == (0, 1, 2, 0, 3, 1, 3, 2)
    assert w.names == ("a", "d", "b", "c")
    assert format_word(w) == "adbacdcb"


def test_parse_empty():
    w = parse("")
    assert w.n == 0 and w.letters == ()
    assert parse("   ").n == 0


def test_parse_rejects_single_occurrence():
    with pytest.raises(OccurrenceCount):
        parse("aba")
    with pytest.raises(OccurrenceCount):
        parse("aaab")


def test_parse_rejects_bad_tokens():
    with pytest.raises(BadToken):
        parse("a-a")
    with pytest.raises(BadToken):
        parse("x1 x! x1 x!")


def test_multichar_tokens():
    w = parse("x10, y7, x10, y7")
    assert w.letters == (0, 1, 0, 1)
    assert format_word(w) == "x10,y7,x10,y7"
    assert parse(format_word(w)) == w


def test_default_names_beyond_alphabet():
    letters = list(range(30)) * 2
    w = from_letters(letters)
    text = format_word(w)
    assert text.startswith("s0,s1,")
    assert parse(text) == w


def test_constructor_validates():
    with pytest.raises(ValueError):
        DoubleOccurrenceWord((1, 0, 1, 0))
    with pytest.raises(OccurrenceCount):
        DoubleOccurrenceWord((0, 0, 0))


@pytest.mark.parametrize(
    "text, expected",
    [("abba", "aabb"), ("abcabc", "abcabc"), ("bcabca", "abcabc"), ("cbacba", "abcabc")],
)
def test_canonicalize_examples(text, expected):
    rep = canonicalize(parse(text)).representative
    assert rep.letters == brute_canonical(parse(expected).letters)
    assert format_word(rep, "abcdef") == expected


def test_bacbca_is_a_different_class():
    # its interlacement graph is a path, not a triangle
    assert canonicalize(parse("bacbca")) != canonicalize(parse("abcabc"))
    assert canonicalize(parse("bacbca")).representative.letters == brute_canonical(parse("bacbca").letters)


def test_canonicalize_matches_brute_force_small():
    for n in range(5):
        for w in enumerate_words(n):
            assert canonicalize(w).representative.letters == brute_canonical(w.letters)


def test_canonicalize_idempotent(rng):
    for _ in range(200):
        n = rng.randint(0, 9)
        letters = list(range(n)) * 2
        rng.shuffle(letters)
        c = canonicalize(from_letters(letters))
        assert canonicalize(c.representative) == c


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105), (5, 945), (6, 10395), (7, 135135)])
def test_enumeration_counts(n, expected):
    assert double_factorial_count(n) == expected
    assert double_factorial_count(n) == math.factorial(2 * n) // (2**n * math.factorial(n))
    if n <= 6:
        words = list(enumerate_words(n))
        assert len(words) == expected
        assert len(set(words)) == expected


def test_enumeration_n2():
    assert [format_word(w) for w in enumerate_words(1)] == ["aa"]
    assert [format_word(w) for w in enumerate_words(2)] == ["aabb", "abab", "abba"]


def test_enumeration_matches_multiset_permutations():
    for n in range(1, 5):
        brute = {normalize(p) for p in itertools.permutations(list(range(n)) * 2)}
        assert {w.letters for w in enumerate_words(n)} == brute


def test_canonical_enumeration_one_per_class():
    for n in range(1, 6):
        classes = {canonicalize(w) for w in enumerate_words(n)}
        reps = list(enumerate_words(n, canonical_only=True))
        assert len(reps) == len(classes)
        assert {canonicalize(w) for w in reps} == classes


def test_enumeration_guard():
    with pytest.raises(LimitExceeded):
        next(enumerate_words(10))
    with pytest.raises(ValueError):
        next(enumerate_words(-1))


def test_round_trip_all_small():
    for n in range(6):
        for w in enumerate_words(n):
            assert parse(format_word(w)) == w


def test_rotation_carries_names():
    w = parse("adbacdcb")
    r = w.rotate(3)
    assert format_word(r) == "acdcbadb"
    assert format_word(w.reverse()) == "bcdcabda"


@st.composite
def words_and_moves(draw):
    n = draw(st.integers(0, 8))
    letters = draw(st.permutations(list(range(n)) * 2))
    k = draw(st.integers(0, 40))
    flip = draw(st.booleans())
    names = draw(st.permutations(list("abcdefghijklmnopqrstuvwxyz")))
    return from_letters(letters), k, flip, names[:n]


@settings(max_examples=300, deadline=None)
@given(words_and_moves())
def test_canonical_orbit_invariance(data):
    w, k, flip, names = data
    moved = w.rotate(k)
    if flip:
        moved = moved.reverse()
    renamed = parse(format_word(moved, [names[i] for i in range(moved.n)]))
    assert canonicalize(renamed) == canonicalize(w)
