"""Which orthoprojection graphs are lifts of interlacement graphs?

Graphs are compared up to isomorphism through canonical keys: the
lexicographically least bit-string ``loops + upper triangle`` over vertex
orderings. For ``n <= 7`` all ``n!`` orderings are tried. Larger graphs use
orderings that respect a colour refinement of the vertices, which is still
a canonical form (the refinement is isomorphism invariant) but is not the
same string.

A stripped orthoprojection graph that is an interlacement graph of some
word is automatically a lift of a realizable word's graph: the looped
matrix is idempotent, so its diagonal is a witness. Catalog membership
therefore decides lift status.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import LimitExceeded
from .gf2 import Gf2Matrix, bits_of, solve_square
from .interlace import SimpleGraph, interlacement_graph
from .lift import LoopedGraph, decide_realizable
from .word import enumerate_words, format_word

log = logging.getLogger(__name__)

SCAN_LIMIT = 6
CATALOG_LIMIT = 7
LONG_LIMIT = 9
BRUTE_KEY_LIMIT = 7
GENERATOR_VERSION = 1


# -- canonical keys -----------------------------------------------------------


def _encode(n: int, rows: tuple[int, ...], loops: int, order) -> int:
    """Bits of the graph relabeled so new vertex ``i`` is old ``order[i]``."""
    key = 0
    for i in range(n):
        key = key << 1 | (loops >> order[i] & 1)
    for i in range(n):
        r = rows[order[i]]
        for j in range(i + 1, n):
            key = key << 1 | (r >> order[j] & 1)
    return key


def _width(n: int) -> int:
    return n + n * (n - 1) // 2


def _colour_cells(n: int, rows, loops) -> list[list[int]]:
    colour = [(loops >> u & 1, bin(rows[u] & ~(1 << u)).count("1")) for u in range(n)]
    while True:
        sig = [(colour[u], tuple(sorted(colour[v] for v in bits_of(rows[u]) if v != u))) for u in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            break
        colour = new
    ranks = {c: i for i, c in enumerate(sorted(set(colour)))}
    cells: list[list[int]] = [[] for _ in ranks]
    for u in range(n):
        cells[ranks[colour[u]]].append(u)
    return cells


def _orderings(n: int, rows, loops, method: str) -> Iterator[tuple[int, ...]]:
    if method == "brute":
        yield from itertools.permutations(range(n))
        return
    cells = _colour_cells(n, rows, loops)
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        yield tuple(itertools.chain.from_iterable(parts))


def _default_method(n: int) -> str:
    return "brute" if n <= BRUTE_KEY_LIMIT else "refined"


def canonical_key(m: Gf2Matrix, method: str | None = None) -> str:
    """Isomorphism-invariant key of a looped graph given by its matrix."""
    n = m.n
    if n > LONG_LIMIT:
        raise LimitExceeded(f"canonical keys limited to n <= {LONG_LIMIT}")
    method = method or _default_method(n)
    loops = m.diagonal_bits()
    best = min(_encode(n, m.rows, loops, o) for o in _orderings(n, m.rows, loops, method))
    return format(best, f"0{_width(n)}b") if n else ""


def key_to_matrix(n: int, key: str) -> Gf2Matrix:
    rows = [0] * n
    for i in range(n):
        if key[i] == "1":
            rows[i] |= 1 << i
    pos = n
    for i in range(n):
        for j in range(i + 1, n):
            if key[pos] == "1":
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Gf2Matrix(n, tuple(rows))


class KeyCache:
    """Maps labeled graphs to canonical keys, paying the permutation sweep
    once per isomorphism class (every relabeling seen in the sweep is
    remembered)."""

    def __init__(self, n: int, method: str | None = None):
        self.n = n
        self.method = method or _default_method(n)
        self._known: dict[int, int] = {}
        self._classes: set[int] = set()

    def _format(self, key: int) -> str:
        return format(key, f"0{_width(self.n)}b") if self.n else ""

    def key(self, m: Gf2Matrix) -> tuple[str, bool]:
        """Return ``(key, first time this class is seen)``."""
        n = self.n
        loops = m.diagonal_bits()
        ident = _encode(n, m.rows, loops, range(n))
        if ident in self._known:
            return self._format(self._known[ident]), False
        if self.method == "brute":
            images = {_encode(n, m.rows, loops, o) for o in itertools.permutations(range(n))}
            best = min(images)
            self._known.update(dict.fromkeys(images, best))
        else:
            best = min(_encode(n, m.rows, loops, o) for o in _orderings(n, m.rows, loops, "refined"))
            self._known[ident] = best
        new = best not in self._classes
        self._classes.add(best)
        return self._format(best), new


# -- orthoprojection graphs ---------------------------------------------------


def _symmetric_from_index(n: int, idx: np.ndarray) -> np.ndarray:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    mats = np.zeros((len(idx), n, n), dtype=np.int32)
    for b, (i, j) in enumerate(pairs):
        bit = ((idx >> b) & 1).astype(np.int32)
        mats[:, i, j] = bit
        mats[:, j, i] = bit
    return mats


def _scan_idempotents(n: int, chunk: int = 1 << 16) -> Iterator[Gf2Matrix]:
    total = 1 << (n * (n + 1) // 2)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        mats = _symmetric_from_index(n, idx)
        sq = np.matmul(mats, mats) & 1
        hits = np.flatnonzero((sq == mats).all(axis=(1, 2)))
        for h in hits:
            yield Gf2Matrix.from_lists(mats[h].tolist())


def _rref_bases(n: int, k: int) -> Iterator[list[int]]:
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [[c for c in range(p + 1, n) if c not in pivot_set] for p in pivots]
        slots = [(a, c) for a, cols in enumerate(free) for c in cols]
        for fill in range(1 << len(slots)):
            rows = [1 << p for p in pivots]
            for b in bits_of(fill):
                a, c = slots[b]
                rows[a] |= 1 << c
            yield rows


def orthogonal_projection(n: int, basis: list[int]) -> Gf2Matrix | None:
    """Projection onto span(basis) along its orthogonal complement, or None
    when the span meets its complement."""
    k = len(basis)
    gram = Gf2Matrix(
        k, tuple(sum((bin(basis[a] & basis[b]).count("1") & 1) << b for b in range(k)) for a in range(k))
    )
    try:
        ginv = solve_square(gram) if k else gram
    except ValueError:
        return None
    coeff = []
    for a in range(k):
        acc = 0
        for b in bits_of(ginv.rows[a]):
            acc ^= basis[b]
        coeff.append(acc)
    rows = []
    for i in range(n):
        acc = 0
        for a in range(k):
            if basis[a] >> i & 1:
                acc ^= coeff[a]
        rows.append(acc)
    return Gf2Matrix(n, tuple(rows))


def _subspace_idempotents(n: int) -> Iterator[Gf2Matrix]:
    for k in range(n + 1):
        for basis in _rref_bases(n, k):
            p = orthogonal_projection(n, basis)
            if p is not None:
                yield p


def enumerate_orthoprojection_graphs(
    n: int, method: str = "auto", limit: int = SCAN_LIMIT
) -> Iterator[LoopedGraph]:
    """Every labeled looped graph on ``n`` vertices with idempotent matrix.

    ``scan`` tests all ``2**(n(n+1)/2)`` symmetric matrices; ``subspace``
    builds one projection per subspace meeting its orthogonal complement
    trivially. ``auto`` scans up to ``limit`` and switches above it.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "auto":
        method = "scan" if n <= limit else "subspace"
    if method == "scan":
        if n > limit:
            raise LimitExceeded(f"exhaustive scan limited to n <= {limit}")
        source: Iterable[Gf2Matrix] = _scan_idempotents(n) if n else [Gf2Matrix.zeros(0)]
    elif method == "subspace":
        if n > LONG_LIMIT:
            raise LimitExceeded(f"subspace generation limited to n <= {LONG_LIMIT}")
        source = _subspace_idempotents(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    for m in source:
        base = SimpleGraph(m.with_diagonal(0))
        yield LoopedGraph(base, m.diagonal_bits())


# -- interlacement catalog ----------------------------------------------------


@dataclass
class GraphCatalog:
    n: int
    classes: dict[str, str] = field(default_factory=dict)  # key -> witness word

    def __contains__(self, key: str) -> bool:
        return key in self.classes

    def __len__(self):
        return len(self.classes)


def interlacement_catalog(
    n: int, realizable_only: bool = False, allow_long: bool = False, cache: KeyCache | None = None
) -> GraphCatalog:
    """Isomorphism classes of interlacement graphs of words on ``n`` symbols."""
    cap = LONG_LIMIT if allow_long else CATALOG_LIMIT
    if n > cap:
        raise LimitExceeded(f"catalog limited to n <= {cap}")
    cache = cache or KeyCache(n)
    cat = GraphCatalog(n)
    for w in enumerate_words(n, limit=cap):
        if realizable_only and not decide_realizable(w).realizable:
            continue
        key, _ = cache.key(interlacement_graph(w).adjacency)
        if key not in cat.classes:
            cat.classes[key] = format_word(w)
    return cat


# -- census ---------------------------------------------------------------------


@dataclass
class CensusReport:
    n: int
    orthoprojection_count: int = 0
    lift_count: int = 0
    non_lift_examples: list[str] = field(default_factory=list)

    def merge(self, other: CensusReport) -> CensusReport:
        if other.n != self.n:
            raise ValueError("cannot merge reports for different n")
        return CensusReport(
            self.n,
            self.orthoprojection_count + other.orthoprojection_count,
            self.lift_count + other.lift_count,
            self.non_lift_examples + other.non_lift_examples,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "orthoprojection_count": self.orthoprojection_count,
            "lift_count": self.lift_count,
            "non_lift_examples": list(self.non_lift_examples),
        }


def _unblank(token: str) -> str:
    return "" if token == "-" else token


class Checkpoint:
    """Line-oriented census state.

    Format::

        # gausscode-census n=<n> generator=<version>
        C <key> <witness word>      catalog class ("-" stands for empty)
        catalog-complete
        R <key> lift|nonlift        decided orthoprojection class
    """

    def __init__(self, path: os.PathLike | str, n: int):
        self.path = Path(path)
        self.n = n
        self.catalog: dict[str, str] = {}
        self.catalog_complete = False
        self.results: dict[str, bool] = {}

    def header(self) -> str:
        return f"# gausscode-census n={self.n} generator={GENERATOR_VERSION}\n"

    def load(self) -> Checkpoint:
        if not self.path.exists():
            return self
        with self.path.open() as fh:
            head = fh.readline()
            if head != self.header():
                raise ValueError(f"{self.path}: header {head.strip()!r} does not match this run")
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                if parts[0] == "C" and len(parts) == 3:
                    self.catalog[_unblank(parts[1])] = _unblank(parts[2])
                elif parts[0] == "catalog-complete":
                    self.catalog_complete = True
                elif parts[0] == "R" and len(parts) == 3:
                    self.results[_unblank(parts[1])] = parts[2] == "lift"
        if not self.catalog_complete:
            self.catalog.clear()
        return self

    def _append(self, lines: Iterable[str]):
        new = not self.path.exists()
        with self.path.open("a") as fh:
            if new:
                fh.write(self.header())
            fh.writelines(lines)
            fh.flush()

    def save_catalog(self, cat: GraphCatalog):
        self.catalog = dict(cat.classes)
        self.catalog_complete = True
        self._append([f"C {k or '-'} {w or '-'}\n" for k, w in cat.classes.items()] + ["catalog-complete\n"])

    def save_results(self, batch: dict[str, bool]):
        self.results.update(batch)
        self._append([f"R {k or '-'} {'lift' if ok else 'nonlift'}\n" for k, ok in batch.items()])


def census_check(
    n: int,
    checkpoint: os.PathLike | str | None = None,
    allow_long: bool = False,
    flush_every: int = 1000,
) -> CensusReport:
    """Classify orthoprojection classes on ``n`` vertices as lifts or not."""
    cap = LONG_LIMIT if allow_long else CATALOG_LIMIT
    if n > cap:
        raise LimitExceeded(f"census limited to n <= {cap} without the long-run flag")
    state = Checkpoint(checkpoint, n).load() if checkpoint else None

    simple_keys = KeyCache(n)
    if state is not None and state.catalog_complete:
        cat = GraphCatalog(n, dict(state.catalog))
        log.info("resumed catalog with %d classes", len(cat))
    else:
        cat = interlacement_catalog(n, allow_long=allow_long, cache=simple_keys)
        if state is not None:
            state.save_catalog(cat)
    log.info("n=%d: %d interlacement classes", n, len(cat))

    looped_keys = KeyCache(n)
    report = CensusReport(n)
    pending: dict[str, bool] = {}
    for lg in enumerate_orthoprojection_graphs(n):
        key, new = looped_keys.key(lg.matrix())
        if not new:
            continue
        if state is not None and key in state.results:
            is_lift = state.results[key]
        else:
            stripped, _ = simple_keys.key(lg.base.adjacency)
            is_lift = stripped in cat
            pending[key] = is_lift
            if state is not None and len(pending) >= flush_every:
                state.save_results(pending)
                pending = {}
        report.orthoprojection_count += 1
        if is_lift:
            report.lift_count += 1
        else:
            report.non_lift_examples.append(key)
    if state is not None and pending:
        state.save_results(pending)
    return report
