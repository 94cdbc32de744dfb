"""Brute-force topological realizability test.

The curve's image is a 4-valent graph: one vertex per symbol, one edge per
arc between cyclically consecutive letters. At each crossing the two
strands must alternate, which leaves two cyclic orders per vertex. A word is
realizable iff one of the ``2**n`` resulting rotation systems embeds in the
sphere, i.e. has ``F = n + 2`` faces (``V - E + F = n - 2n + F = 2``).

Dart layout: vertex ``i`` owns darts ``4i .. 4i+3``::

    4i + 0  in1   arriving at the first visit
    4i + 1  out1  leaving the first visit
    4i + 2  in2   arriving at the second visit
    4i + 3  out2  leaving the second visit

Bit 0 rotates ``in1 -> in2 -> out1 -> out2``; bit 1 is the mirror order
``in1 -> out2 -> out1 -> in2``. The arc leaving position ``p`` ends at
position ``p + 1 (mod 2n)``; its two darts are paired by ``alpha``.
Faces are the cycles of ``phi = sigma . alpha``.

Nothing here looks at interlacement or GF(2); it must stay that way so the
oracle can catch mistakes in the algebraic test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BitCountMismatch, LimitExceeded
from .word import DoubleOccurrenceWord, parse

DEFAULT_LIMIT = 12

IN1, OUT1, IN2, OUT2 = range(4)
_ROTATIONS = (
    (IN1, IN2, OUT1, OUT2),
    (IN1, OUT2, OUT1, IN2),
)


def _successor_table(order):
    succ = [0] * 4
    for k in range(4):
        succ[order[k]] = order[(k + 1) % 4]
    return tuple(succ)


_SUCC = tuple(_successor_table(o) for o in _ROTATIONS)


@dataclass(frozen=True)
class CombinatorialMap:
    n: int
    alpha: tuple[int, ...]
    sigma: tuple[int, ...]

    @property
    def num_darts(self) -> int:
        return len(self.alpha)

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return len(self.alpha) // 2

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]


def _alpha(w: DoubleOccurrenceWord) -> list[int]:
    m = len(w.letters)
    seen: list[int] = [0] * w.n
    visit = []  # 0 or 1: which visit of its symbol each position is
    for s in w.letters:
        visit.append(seen[s])
        seen[s] += 1
    alpha = [0] * (4 * w.n)
    for p in range(m):
        q = (p + 1) % m
        out_dart = 4 * w.letters[p] + (OUT1 if visit[p] == 0 else OUT2)
        in_dart = 4 * w.letters[q] + (IN1 if visit[q] == 0 else IN2)
        alpha[out_dart] = in_dart
        alpha[in_dart] = out_dart
    return alpha


def _choice_bits(n: int, r) -> list[int]:
    if isinstance(r, str):
        if any(c not in "01" for c in r):
            raise BitCountMismatch(f"rotation choice {r!r} must be a 0/1 string")
        bits = [int(c) for c in r]
    elif isinstance(r, int):
        if r < 0 or r >> n:
            raise BitCountMismatch(f"choice mask {r} does not fit {n} bits")
        return [r >> i & 1 for i in range(n)]
    else:
        bits = [int(b) for b in r]
    if len(bits) != n:
        raise BitCountMismatch(f"need {n} rotation bits, got {len(bits)}")
    return bits


def build_map(w: DoubleOccurrenceWord, r) -> CombinatorialMap:
    """Rotation system of ``w`` for choice ``r``.

    ``r`` is a 0/1 string or sequence with one entry per symbol, or an int
    whose bit ``i`` is the choice at symbol ``i``.
    """
    bits = _choice_bits(w.n, r)
    sigma = []
    for i, b in enumerate(bits):
        sigma.extend(4 * i + s for s in _SUCC[b])
    return CombinatorialMap(w.n, tuple(_alpha(w)), tuple(sigma))


def face_orbits(m: CombinatorialMap) -> list[list[int]]:
    seen = [False] * m.num_darts
    faces = []
    for start in range(m.num_darts):
        if seen[start]:
            continue
        face = []
        d = start
        while not seen[d]:
            seen[d] = True
            face.append(d)
            d = m.phi(d)
        faces.append(face)
    return faces


def count_faces(m: CombinatorialMap) -> int:
    return len(face_orbits(m))


def euler_characteristic(m: CombinatorialMap) -> int:
    return m.num_vertices - m.num_edges + count_faces(m)


def genus(m: CombinatorialMap) -> int:
    chi = euler_characteristic(m)
    if chi % 2 or chi > 2:
        raise AssertionError(f"impossible Euler characteristic {chi}")
    return (2 - chi) // 2


def face_counts(w: DoubleOccurrenceWord, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """Face count for every choice mask ``0 .. 2**n - 1`` at once.

    Cycle counting is done by pointer doubling: after ``k`` rounds each dart
    carries the minimum dart id over its next ``2**k`` images, so once
    ``2**k`` reaches the dart count every dart carries its orbit minimum.
    """
    n = w.n
    if n > limit:
        raise LimitExceeded(f"oracle limited to n <= {limit}, got {n}")
    if n == 0:
        # an embedded circle: no crossings, two faces
        return np.array([2])
    darts = 4 * n
    choices = np.arange(1 << n, dtype=np.int64)
    bits = (choices[:, None] >> np.arange(n)) & 1
    succ = np.array(_SUCC, dtype=np.int64)  # (2, 4)
    sigma = (succ[bits] + 4 * np.arange(n)[None, :, None]).reshape(len(choices), darts)
    phi = sigma[:, _alpha(w)]
    label = np.broadcast_to(np.arange(darts), phi.shape).copy()
    step = phi
    span = 1
    while span < darts:
        label = np.minimum(label, np.take_along_axis(label, step, axis=1))
        step = np.take_along_axis(step, step, axis=1)
        span *= 2
    return (label == np.arange(darts)).sum(axis=1)


def oracle_realizable(w: DoubleOccurrenceWord | str, limit: int = DEFAULT_LIMIT) -> bool:
    """True iff some rotation choice gives a genus-0 map."""
    if isinstance(w, str):
        w = parse(w)
    return bool((face_counts(w, limit) == w.n + 2).any())


def planar_choices(w: DoubleOccurrenceWord, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Choice masks whose map is spherical."""
    return [int(c) for c in np.flatnonzero(face_counts(w, limit) == w.n + 2)]
