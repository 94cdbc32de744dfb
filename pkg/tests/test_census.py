import itertools

import pytest

from gausscode.census import (
    Checkpoint,
    KeyCache,
    canonical_key,
    census_check,
    enumerate_orthoprojection_graphs,
    interlacement_catalog,
    key_to_matrix,
)
from gausscode.errors import LimitExceeded
from gausscode.gf2 import Gf2Matrix, is_idempotent
from gausscode.interlace import SimpleGraph, interlacement_graph
from gausscode.lift import is_orthoprojection
from gausscode.word import enumerate_words, parse


def brute_idempotent_count(n):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        m = [[0] * n for _ in range(n)]
        for b, (i, j) in zip(bits, pairs):
            m[i][j] = m[j][i] = b
        sq = [[sum(m[i][k] * m[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]
        count += sq == m
    return count


def test_n1_graphs():
    graphs = list(enumerate_orthoprojection_graphs(1))
    assert sorted(g.loops for g in graphs) == [0, 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_labeled_counts_match_brute_force(n):
    assert len(list(enumerate_orthoprojection_graphs(n))) == brute_idempotent_count(n)


def test_n3_membership():
    mats = {g.matrix() for g in enumerate_orthoprojection_graphs(3)}
    k3 = Gf2Matrix.from_lists([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert k3 in mats
    assert k3.with_diagonal(0b001) not in mats


def test_generated_graphs_pass_both_checks():
    for n in range(6):
        for lg in enumerate_orthoprojection_graphs(n):
            assert is_idempotent(lg.matrix())
            assert is_orthoprojection(lg)


@pytest.mark.parametrize("n", range(6))
def test_scan_and_subspace_agree(n):
    scan = [g.matrix() for g in enumerate_orthoprojection_graphs(n, "scan")]
    sub = [g.matrix() for g in enumerate_orthoprojection_graphs(n, "subspace")]
    assert len(sub) == len(set(sub))
    assert set(scan) == set(sub)


def test_scan_limit():
    with pytest.raises(LimitExceeded):
        next(enumerate_orthoprojection_graphs(7, "scan"))


def test_key_permutation_invariant(rng):
    for _ in range(60):
        n = rng.randint(1, 7)
        m = Gf2Matrix(n, tuple(rng.getrandbits(n) for _ in range(n)))
        m = Gf2Matrix(n, tuple(
            sum((m[min(i, j), max(i, j)]) << j for j in range(n)) for i in range(n)
        ))
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_key(m) == canonical_key(m.permuted(perm))
        assert canonical_key(m, "refined") == canonical_key(m.permuted(perm), "refined")
        key = canonical_key(m)
        assert canonical_key(key_to_matrix(n, key)) == key


def test_refined_and_brute_keys_separate_the_same_classes(rng):
    graphs = []
    for _ in range(150):
        n = 5
        edges = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        graphs.append(SimpleGraph.from_edges(n, edges).adjacency.with_diagonal(rng.getrandbits(n)))
    for a, b in itertools.combinations(graphs, 2):
        assert (canonical_key(a) == canonical_key(b)) == (canonical_key(a, "refined") == canonical_key(b, "refined"))


def test_key_cache_matches_direct_key(rng):
    cache = KeyCache(5)
    for _ in range(100):
        edges = [p for p in itertools.combinations(range(5), 2) if rng.random() < 0.5]
        m = SimpleGraph.from_edges(5, edges).adjacency
        assert cache.key(m)[0] == canonical_key(m)


def test_catalog_small():
    assert len(interlacement_catalog(1)) == 1
    cat = interlacement_catalog(2)
    assert len(cat) == 2
    assert set(cat.classes.values()) == {"aabb", "abab"}


def test_catalog_n3_matches_distinct_graphs():
    # four classes: edgeless, one edge, path, triangle
    classes = {canonical_key(interlacement_graph(w).adjacency) for w in enumerate_words(3)}
    cat = interlacement_catalog(3)
    assert set(cat.classes) == classes
    assert len(cat) == 4
    for key, word in cat.classes.items():
        assert canonical_key(interlacement_graph(parse(word)).adjacency) == key


def test_catalog_realizable_only():
    cat = interlacement_catalog(2, realizable_only=True)
    assert list(cat.classes.values()) == ["aabb"]


def test_census_n1():
    r = census_check(1)
    assert (r.orthoprojection_count, r.lift_count, r.non_lift_examples) == (2, 2, [])


@pytest.mark.parametrize("n", range(6))
def test_no_small_non_lifts(n):
    r = census_check(n)
    assert r.lift_count == r.orthoprojection_count
    assert r.non_lift_examples == []


def test_census_limits():
    with pytest.raises(LimitExceeded):
        census_check(8)
    with pytest.raises(LimitExceeded):
        interlacement_catalog(8)


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "census4.txt"
    first = census_check(4, checkpoint=path)
    text = path.read_text()
    assert text.startswith("# gausscode-census n=4 generator=1\n")
    assert "catalog-complete" in text
    state = Checkpoint(path, 4).load()
    assert state.catalog_complete and len(state.catalog) == len(interlacement_catalog(4))
    assert len(state.results) == first.orthoprojection_count
    again = census_check(4, checkpoint=path)
    assert again == first
    assert path.read_text() == text


def test_checkpoint_partial_catalog_is_rebuilt(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# gausscode-census n=3 generator=1\nC 000000 aabbcc\n")
    state = Checkpoint(path, 3).load()
    assert not state.catalog_complete and state.catalog == {}
    assert census_check(3, checkpoint=path).non_lift_examples == []


def test_checkpoint_header_mismatch(tmp_path):
    path = tmp_path / "c.txt"
    census_check(2, checkpoint=path)
    with pytest.raises(ValueError):
        census_check(3, checkpoint=path)


def test_report_merge():
    a, b = census_check(2), census_check(2)
    m = a.merge(b)
    assert m.orthoprojection_count == 2 * a.orthoprojection_count
