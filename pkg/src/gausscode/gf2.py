"""Dense square matrices over GF(2) with rows packed into Python ints.

Bit ``j`` of ``rows[i]`` is the entry in row ``i``, column ``j``. Python ints
are arbitrary width, so a row XOR is a single word-parallel operation for
any dimension we care about.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int) -> Iterable[int]:
    """Indices of the set bits of ``x``, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Gf2Matrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise DimensionMismatch(f"expected {self.n} rows, got {len(rows)}")
        mask = (1 << self.n) - 1
        if any(r & ~mask for r in rows):
            raise ValueError("row has bits outside the matrix width")

    @classmethod
    def zeros(cls, n: int) -> Gf2Matrix:
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> Gf2Matrix:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> Gf2Matrix:
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise DimensionMismatch("matrix must be square")
            rows.append(sum((v & 1) << j for j, v in enumerate(row)))
        return cls(n, tuple(rows))

    @classmethod
    def from_strings(cls, text: str | Sequence[str]) -> Gf2Matrix:
        """Inverse of :meth:`to_strings`; accepts a block of 0/1 lines."""
        lines = text.split() if isinstance(text, str) else list(text)
        return cls.from_lists([[int(c) for c in line] for line in lines])

    def to_strings(self) -> str:
        return "\n".join(
            "".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.rows
        )

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        return mat_add(self, other)

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        return mat_mul(self, other)

    def transpose(self) -> Gf2Matrix:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in bits_of(r):
                cols[j] |= 1 << i
        return Gf2Matrix(self.n, tuple(cols))

    def is_symmetric(self) -> bool:
        return self.transpose() == self

    def diagonal_bits(self) -> int:
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.rows))

    def with_diagonal(self, bits: int) -> Gf2Matrix:
        """Copy of this matrix with the diagonal replaced by ``bits``."""
        return Gf2Matrix(
            self.n,
            tuple((r & ~(1 << i)) | (bits & (1 << i)) for i, r in enumerate(self.rows)),
        )

    def permuted(self, perm: Sequence[int]) -> Gf2Matrix:
        """Conjugate by the vertex relabeling ``i -> perm[i]``."""
        rows = [0] * self.n
        for i, r in enumerate(self.rows):
            rows[perm[i]] = sum(1 << perm[j] for j in bits_of(r))
        return Gf2Matrix(self.n, tuple(rows))


@dataclass(frozen=True)
class Gf2Diagonal:
    """Diagonal matrix given by its bit-vector; bit ``i`` set means d_ii = 1."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits >> self.n:
            raise ValueError("diagonal has bits outside the dimension")

    def to_matrix(self) -> Gf2Matrix:
        return Gf2Matrix(self.n, tuple(self.bits & (1 << i) for i in range(self.n)))

    def subset(self) -> tuple[int, ...]:
        return tuple(bits_of(self.bits))


def _check_dims(a: Gf2Matrix, b: Gf2Matrix):
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n}x{a.n} vs {b.n}x{b.n}")


def mat_add(a: Gf2Matrix, b: Gf2Matrix | Gf2Diagonal) -> Gf2Matrix:
    if isinstance(b, Gf2Diagonal):
        b = b.to_matrix()
    _check_dims(a, b)
    return Gf2Matrix(a.n, tuple(x ^ y for x, y in zip(a.rows, b.rows)))


def mat_mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Row i of the product is the XOR of the rows of ``b`` selected by row i of ``a``."""
    _check_dims(a, b)
    out = []
    brows = b.rows
    for r in a.rows:
        acc = 0
        for k in bits_of(r):
            acc ^= brows[k]
        out.append(acc)
    return Gf2Matrix(a.n, tuple(out))


def is_idempotent(m: Gf2Matrix) -> bool:
    return mat_mul(m, m) == m


def rank(m: Gf2Matrix) -> int:
    """Row rank by forward elimination."""
    work = list(m.rows)
    r = 0
    for col in range(m.n):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, len(work)):
            if work[i] & bit:
                work[i] ^= work[r]
        r += 1
    return r


def solve_square(m: Gf2Matrix) -> Gf2Matrix:
    """Inverse of a nonsingular matrix by Gauss-Jordan elimination."""
    n = m.n
    work = [(row, 1 << i) for i, row in enumerate(m.rows)]
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(col, n) if work[i][0] & bit), None)
        if pivot is None:
            raise ValueError("matrix is singular over GF(2)")
        work[col], work[pivot] = work[pivot], work[col]
        prow, pinv = work[col]
        for i in range(n):
            if i != col and work[i][0] & bit:
                work[i] = (work[i][0] ^ prow, work[i][1] ^ pinv)
    return Gf2Matrix(n, tuple(inv for _, inv in work))
