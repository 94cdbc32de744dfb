import pytest

from gausscode.errors import BitCountMismatch, LimitExceeded
from gausscode.oracle import (
    build_map,
    count_faces,
    euler_characteristic,
    face_counts,
    face_orbits,
    genus,
    oracle_realizable,
    planar_choices,
)
from gausscode.word import enumerate_words, parse

from conftest import random_word


def check_map(m):
    d = m.num_darts
    assert d == 4 * m.n
    assert sorted(m.alpha) == list(range(d))
    assert all(m.alpha[m.alpha[x]] == x and m.alpha[x] != x for x in range(d))
    assert sorted(m.sigma) == list(range(d))
    for v in range(m.n):
        orbit, x = [], 4 * v
        while x not in orbit:
            orbit.append(x)
            x = m.sigma[x]
        assert sorted(orbit) == [4 * v + k for k in range(4)]


def test_figure_eight_map():
    w = parse("aa")
    for bits in ("0", "1"):
        m = build_map(w, bits)
        check_map(m)
        assert (m.num_vertices, m.num_edges, m.num_darts) == (1, 2, 4)
        assert count_faces(m) == 3
        assert euler_characteristic(m) == 2 and genus(m) == 0
    # traced by hand for bit 0: in1 and out1 bound monogons, the outer face is in2 -> out2
    assert face_orbits(build_map(w, "0")) == [[0], [1], [2, 3]]


def test_abab_is_torus_only():
    w = parse("abab")
    for bits in ("00", "01", "10", "11"):
        m = build_map(w, bits)
        check_map(m)
        assert (m.num_vertices, m.num_edges) == (2, 4)
        assert count_faces(m) == 2 and genus(m) == 1
    assert not oracle_realizable(w)


def test_trefoil_shadow():
    w = parse("abcabc")
    m = build_map(w, "000")
    check_map(m)
    assert (m.num_vertices, m.num_edges) == (3, 6)
    # each consecutive pair of letters is joined by an arc, twice around the word
    ends = sorted(tuple(sorted((a // 4, m.alpha[a] // 4))) for a in range(12) if a < m.alpha[a])
    assert ends == [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]
    assert oracle_realizable(w)
    assert sorted(face_counts(w).tolist()) == [3, 3, 3, 3, 3, 3, 5, 5]


def test_bit_formats():
    w = parse("abcabc")
    assert build_map(w, "101") == build_map(w, [1, 0, 1]) == build_map(w, 0b101)
    with pytest.raises(BitCountMismatch):
        build_map(w, "10")
    with pytest.raises(BitCountMismatch):
        build_map(w, "10x")
    with pytest.raises(BitCountMismatch):
        build_map(w, 8)


def test_vectorized_matches_scalar_trace():
    for n in range(1, 5):
        for w in enumerate_words(n):
            counts = face_counts(w)
            for c in range(1 << n):
                m = build_map(w, c)
                check_map(m)
                f = count_faces(m)
                assert counts[c] == f
                chi = n - 2 * n + f
                assert f >= 1 and chi % 2 == 0 and chi <= 2


def test_global_mirror_symmetry(rng):
    for _ in range(50):
        w = random_word(rng, rng.randint(1, 9))
        counts = face_counts(w)
        full = (1 << w.n) - 1
        assert all(counts[c] == counts[c ^ full] for c in range(1 << w.n))


def test_orientation_invariance(rng):
    for _ in range(100):
        w = random_word(rng, rng.randint(1, 8))
        v = oracle_realizable(w)
        assert oracle_realizable(w.reverse()) == v
        for k in range(len(w)):
            assert oracle_realizable(w.rotate(k)) == v


def test_empty_word_is_a_circle():
    assert oracle_realizable(parse(""))


def test_limit():
    w = parse(" ".join(f"t{i} t{i}" for i in range(13)))
    with pytest.raises(LimitExceeded):
        oracle_realizable(w)
    assert oracle_realizable(w, limit=13)


def test_planar_choices():
    assert planar_choices(parse("abab")) == []
    assert planar_choices(parse("abcabc")) == [2, 5]
