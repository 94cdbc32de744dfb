"""Interlacement graphs of double occurrence words."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import UnknownSymbol
from .gf2 import Gf2Matrix, bits_of, popcount
from .word import DoubleOccurrenceWord, default_names


@dataclass(frozen=True)
class SimpleGraph:
    """Loopless undirected graph stored as a symmetric GF(2) adjacency matrix."""

    adjacency: Gf2Matrix
    names: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        adj = self.adjacency
        if adj.diagonal_bits():
            raise ValueError("simple graph cannot have loops")
        if not adj.is_symmetric():
            raise ValueError("adjacency must be symmetric")
        if not self.names:
            object.__setattr__(self, "names", default_names(adj.n))

    @classmethod
    def from_edges(cls, n: int, edges, names: Sequence[str] = ()) -> SimpleGraph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("simple graph cannot have loops")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(Gf2Matrix(n, tuple(rows)), tuple(names))

    @property
    def n(self) -> int:
        return self.adjacency.n

    def neighbors(self, u: int) -> int:
        """Neighborhood of ``u`` as a bitmask."""
        return self.adjacency.rows[u]

    def degree(self, u: int) -> int:
        return popcount(self.adjacency.rows[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, r in enumerate(self.adjacency.rows) for v in bits_of(r) if u < v]

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp, frontier = 0, 1 << start
            while frontier:
                comp |= frontier
                nxt = 0
                for u in bits_of(frontier):
                    nxt |= self.adjacency.rows[u]
                frontier = nxt & ~comp
            seen |= comp
            comps.append(list(bits_of(comp)))
        return comps

    def to_dot(self, loops: int = 0, name: str = "G") -> str:
        """Graphviz source; vertices in ``loops`` get a self-edge."""
        lines = [f"graph {name} {{"]
        for u in range(self.n):
            lines.append(f'  {u} [label="{self.names[u]}"];')
        for u in bits_of(loops):
            lines.append(f"  {u} -- {u};")
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def interlaced(w: DoubleOccurrenceWord, x: int, y: int) -> bool:
    """True iff exactly one occurrence of ``y`` lies between the two of ``x``."""
    for s in (x, y):
        if not 0 <= s < w.n:
            raise UnknownSymbol(f"symbol {s} not in word of {w.n} symbols")
    if x == y:
        raise ValueError("interlacement is defined for distinct symbols")
    a, b = w.positions(x)
    c, d = w.positions(y)
    return (a < c < b) != (a < d < b)


def interlacement_graph(w: DoubleOccurrenceWord) -> SimpleGraph:
    """Graph on the symbols of ``w`` with an edge for every interlaced pair.

    One left-to-right sweep: when a symbol closes, the symbols opened since
    its first occurrence and not yet closed are exactly those interlaced
    with it on the right; XOR of the open-set bitmask does the bookkeeping.
    """
    n = w.n
    rows = [0] * n
    open_at: dict[int, int] = {}
    state = 0
    for s in w.letters:
        bit = 1 << s
        if s in open_at:
            # symbols toggled an odd number of times since s opened
            crossing = (state ^ open_at.pop(s)) & ~bit
            rows[s] |= crossing
            for t in bits_of(crossing):
                rows[t] |= bit
        else:
            open_at[s] = state
        state ^= bit
    return SimpleGraph(Gf2Matrix(n, tuple(rows)), w.names)


def interlacement_matrix(w: DoubleOccurrenceWord) -> Gf2Matrix:
    return interlacement_graph(w).adjacency
