"""Lifts of simple graphs to orthoprojection graphs, and the realizability test.

A word is realizable exactly when some diagonal ``D`` makes ``M + D``
idempotent over GF(2), ``M`` being its interlacement matrix. Expanding

    (M + D)^2 = M^2 + MD + DM + D

entrywise (``D^2 = D``, ``M`` symmetric with zero diagonal) gives:

* diagonal entry ``u``: ``deg(u) + d_u``, so every degree must be even;
* off-diagonal ``u != v`` non-adjacent: ``(M^2)_uv`` must vanish, i.e. an
  even number of common neighbours;
* off-diagonal ``u`` adjacent to ``v``: ``(M^2)_uv + d_u + d_v = 1``.

The last family is a system of XOR constraints along edges. It is solved by
propagating parities over each connected component; a consistent component
admits exactly two solutions (one and its complement), so a solvable graph
has ``2**c`` lifts for ``c`` components.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .errors import SubsetOutOfRange
from .gf2 import Gf2Diagonal, Gf2Matrix, bits_of, is_idempotent, mat_add, mat_mul
from .interlace import SimpleGraph, interlacement_graph
from .word import DoubleOccurrenceWord, canonicalize, format_word, parse

#: witnesses embedded in a report; the exact total is always reported
WITNESS_LIMIT = 64


def _subset_bits(n: int, a) -> int:
    if isinstance(a, int):
        bits = a
    else:
        bits = 0
        for v in a:
            if not 0 <= v < n:
                raise SubsetOutOfRange(f"vertex {v} not in 0..{n - 1}")
            bits |= 1 << v
    if bits < 0 or bits >> n:
        raise SubsetOutOfRange(f"subset mask {bits:#x} exceeds {n} vertices")
    return bits


@dataclass(frozen=True)
class LoopedGraph:
    """A simple graph with a loop on every vertex of ``loops``."""

    base: SimpleGraph
    loops: int = 0

    def __post_init__(self):
        _subset_bits(self.base.n, self.loops)

    @property
    def n(self) -> int:
        return self.base.n

    def matrix(self) -> Gf2Matrix:
        return self.base.adjacency.with_diagonal(self.loops)

    def closed_neighbors(self, u: int) -> frozenset[int]:
        """Neighbours of ``u``; ``u`` itself is included iff it is looped."""
        nb = set(bits_of(self.base.neighbors(u)))
        if self.loops >> u & 1:
            nb.add(u)
        return frozenset(nb)

    def to_dot(self, name: str = "G") -> str:
        return self.base.to_dot(loops=self.loops, name=name)


def lift(g: SimpleGraph, a) -> LoopedGraph:
    return LoopedGraph(g, _subset_bits(g.n, a))


@dataclass(frozen=True)
class DiagonalLift:
    """Vertex subset ``A`` such that ``M + D_A`` is idempotent."""

    n: int
    subset: int

    @property
    def diagonal(self) -> Gf2Diagonal:
        return Gf2Diagonal(self.n, self.subset)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(bits_of(self.subset))

    def apply(self, m: Gf2Matrix) -> Gf2Matrix:
        return mat_add(m, self.diagonal)


# -- the three predicates ----------------------------------------------------
#
# Each is written along a different route on purpose: a definition scan over
# neighbour sets, a count over closed neighbourhoods, and a matrix product.


def satisfies_property_p(g: SimpleGraph, a) -> bool:
    """Even degrees everywhere, and for distinct ``u, v``: an odd number of
    common neighbours iff ``u ~ v`` with both or neither in ``a``."""
    n = g.n
    inside = set(bits_of(_subset_bits(n, a)))
    nbrs = [set(bits_of(g.neighbors(u))) for u in range(n)]
    if any(len(nb) % 2 for nb in nbrs):
        return False
    for u in range(n):
        for v in range(u + 1, n):
            odd = len(nbrs[u] & nbrs[v]) % 2 == 1
            same_side = (u in inside) == (v in inside)
            if odd != (v in nbrs[u] and same_side):
                return False
    return True


def is_orthoprojection(lg: LoopedGraph) -> bool:
    """For every pair, including ``u == v``: odd common closed neighbourhood
    iff the two are neighbours."""
    closed = [lg.closed_neighbors(u) for u in range(lg.n)]
    for u in range(lg.n):
        for v in range(u, lg.n):
            if (len(closed[u] & closed[v]) % 2 == 1) != (v in closed[u]):
                return False
    return True


def lift_is_idempotent(g: SimpleGraph, a) -> bool:
    return is_idempotent(mat_add(g.adjacency, Gf2Diagonal(g.n, _subset_bits(g.n, a))))


# -- solving for all lifts ---------------------------------------------------


class FailureKind(str, enum.Enum):
    ODD_DEGREE_VERTEX = "OddDegreeVertex"
    ODD_COMMON_NEIGHBORS_NON_ADJACENT = "OddCommonNeighborsNonAdjacent"
    PARITY_CONFLICT = "ParityConflict"


@dataclass(frozen=True)
class Failure:
    kind: FailureKind
    vertices: tuple[int, ...]

    def describe(self, names=None) -> str:
        vs = [names[v] for v in self.vertices] if names else list(self.vertices)
        return f"{self.kind.value}({', '.join(map(str, vs))})"


@dataclass(frozen=True)
class LiftSolution:
    """Either a base lift plus one flip mask per component, or a failure."""

    n: int
    base: int = 0
    component_masks: tuple[int, ...] = ()
    failure: Failure | None = None

    @property
    def count(self) -> int:
        return 0 if self.failure else 2 ** len(self.component_masks)

    def __iter__(self) -> Iterator[DiagonalLift]:
        if self.failure:
            return
        masks = self.component_masks
        for choice in itertools.product((0, 1), repeat=len(masks)):
            flip = 0
            for bit, mask in zip(choice, masks):
                if bit:
                    flip |= mask
            yield DiagonalLift(self.n, self.base ^ flip)


def _tree_path(parent: list[int], v: int) -> list[int]:
    path = [v]
    while parent[v] != v:
        v = parent[v]
        path.append(v)
    return path


def solve_lifts(g: SimpleGraph) -> LiftSolution:
    """Run the three checks in order and describe the full solution set.

    Vertices and pairs are scanned in index order so the reported failure is
    reproducible.
    """
    n = g.n
    adj = g.adjacency
    for u in range(n):
        if g.degree(u) % 2:
            return LiftSolution(n, failure=Failure(FailureKind.ODD_DEGREE_VERTEX, (u,)))
    sq = mat_mul(adj, adj)
    for u in range(n):
        bad = sq.rows[u] & ~adj.rows[u] & ~((1 << (u + 1)) - 1)
        if bad:
            v = (bad & -bad).bit_length() - 1
            return LiftSolution(
                n, failure=Failure(FailureKind.ODD_COMMON_NEIGHBORS_NON_ADJACENT, (u, v))
            )

    value = [-1] * n
    parent = list(range(n))
    base = 0
    masks = []
    for root in range(n):
        if value[root] != -1:
            continue
        value[root] = 0
        comp = 1 << root
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in bits_of(adj.rows[u]):
                want = value[u] ^ 1 ^ sq[u, v]
                if value[v] == -1:
                    value[v] = want
                    parent[v] = u
                    comp |= 1 << v
                    queue.append(v)
                elif value[v] != want:
                    return LiftSolution(
                        n, failure=Failure(FailureKind.PARITY_CONFLICT, _conflict_cycle(parent, u, v))
                    )
        masks.append(comp)
    for v in range(n):
        if value[v]:
            base |= 1 << v
    return LiftSolution(n, base, tuple(masks))


def _conflict_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    """Closed walk through the BFS tree and the offending edge ``u - v``."""
    pu = _tree_path(parent, u)
    pv = _tree_path(parent, v)
    on_pu = set(pu)
    meet = next(x for x in pv if x in on_pu)
    up = pu[: pu.index(meet) + 1]
    down = pv[: pv.index(meet)]
    return tuple(up + down[::-1])


def find_lifts(g: SimpleGraph) -> list[DiagonalLift]:
    """All subsets ``A`` with ``M + D_A`` idempotent (0 or 2**components of them)."""
    return list(solve_lifts(g))


# -- reports -----------------------------------------------------------------


class Verdict(str, enum.Enum):
    REALIZABLE = "Realizable"
    NOT_REALIZABLE = "NotRealizable"


@dataclass(frozen=True)
class RealizabilityReport:
    word: DoubleOccurrenceWord
    verdict: Verdict
    witness_count: int
    witnesses: tuple[DiagonalLift, ...] = ()
    failure: Failure | None = None
    canonical: str = field(default="", compare=False)

    def __post_init__(self):
        realizable = self.verdict is Verdict.REALIZABLE
        if realizable != bool(self.witnesses) or realizable == (self.failure is not None):
            raise ValueError("verdict, witnesses and failure are inconsistent")

    @property
    def realizable(self) -> bool:
        return self.verdict is Verdict.REALIZABLE

    def to_dict(self) -> dict:
        names = self.word.names
        return {
            "word": format_word(self.word),
            "canonical": self.canonical or str(canonicalize(self.word)),
            "n": self.word.n,
            "verdict": self.verdict.value,
            "witness_count": self.witness_count,
            "witnesses": [[names[v] for v in lift.vertices] for lift in self.witnesses],
            "failure": None
            if self.failure is None
            else {"kind": self.failure.kind.value, "vertices": [names[v] for v in self.failure.vertices]},
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> RealizabilityReport:
        w = parse(data["word"])
        index = {name: i for i, name in enumerate(w.names)}
        witnesses = tuple(
            DiagonalLift(w.n, sum(1 << index[v] for v in subset)) for subset in data["witnesses"]
        )
        failure = None
        if data.get("failure"):
            f = data["failure"]
            failure = Failure(FailureKind(f["kind"]), tuple(index[v] for v in f["vertices"]))
        return cls(
            word=w,
            verdict=Verdict(data["verdict"]),
            witness_count=data["witness_count"],
            witnesses=witnesses,
            failure=failure,
            canonical=data.get("canonical", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> RealizabilityReport:
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        head = f"{format_word(self.word) or '(empty)'}: {self.verdict.value}"
        if self.failure:
            return f"{head}, {self.failure.describe(self.word.names)}"
        return f"{head}, {self.witness_count} witness(es)"


def decide_realizable(w: DoubleOccurrenceWord | str, witness_limit: int = WITNESS_LIMIT) -> RealizabilityReport:
    """Decide realizability of ``w`` and attach witnesses or the first failure."""
    if isinstance(w, str):
        w = parse(w)
    sol = solve_lifts(interlacement_graph(w))
    if sol.failure:
        return RealizabilityReport(w, Verdict.NOT_REALIZABLE, 0, failure=sol.failure)
    witnesses = tuple(itertools.islice(sol, witness_limit))
    return RealizabilityReport(w, Verdict.REALIZABLE, sol.count, witnesses)
