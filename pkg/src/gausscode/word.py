"""Double occurrence words: parsing, normal form, canonical form, enumeration.

A word is stored as a tuple of integer symbol ids. Ids are dense and
assigned by first occurrence, so ``(0, 1, 0, 1)`` is the only stored form of
``abab``, ``baba``, ``xyxy`` and so on.
"""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BadToken, LimitExceeded, OccurrenceCount

#: enumeration refuses larger n unless the caller raises the limit
ENUM_HARD_LIMIT = 9

_SPLIT = re.compile(r"[\s,]+")


def normalize(letters: Iterable) -> tuple[int, ...]:
    """Relabel a sequence so ids are assigned in order of first occurrence."""
    ids: dict = {}
    out = []
    for x in letters:
        if x not in ids:
            ids[x] = len(ids)
        out.append(ids[x])
    return tuple(out)


def default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"s{i}" for i in range(n))


@dataclass(frozen=True)
class DoubleOccurrenceWord:
    """A cyclic sequence in which each of ``n`` symbols appears twice.

    ``names`` holds the display token for each id and does not take part in
    equality or hashing.
    """

    letters: tuple[int, ...]
    names: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        counts = Counter(letters)
        n = len(counts)
        if len(letters) != 2 * n or set(counts) != set(range(n)):
            bad = next((s for s, c in counts.items() if c != 2), None)
            if bad is not None:
                raise OccurrenceCount(bad, counts[bad])
            raise ValueError(f"symbol ids must be 0..{n - 1}, got {sorted(counts)}")
        for s, c in counts.items():
            if c != 2:
                raise OccurrenceCount(s, c)
        if normalize(letters) != letters:
            raise ValueError("letters are not in first-occurrence order")
        if not self.names:
            object.__setattr__(self, "names", default_names(n))
        elif len(self.names) != n:
            raise ValueError("one name per symbol required")

    @property
    def n(self) -> int:
        return len(self.letters) // 2

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    def positions(self, symbol: int) -> tuple[int, int]:
        """Both positions of ``symbol``, in increasing order."""
        first = self.letters.index(symbol)
        return first, self.letters.index(symbol, first + 1)

    def occurrence_table(self) -> list[tuple[int, int]]:
        pos: list[list[int]] = [[] for _ in range(self.n)]
        for p, s in enumerate(self.letters):
            pos[s].append(p)
        return [(a, b) for a, b in pos]

    def rotate(self, k: int) -> DoubleOccurrenceWord:
        """Start the cyclic word ``k`` letters later."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return self._relabeled(self.letters[k:] + self.letters[:k])

    def reverse(self) -> DoubleOccurrenceWord:
        return self._relabeled(self.letters[::-1])

    def _relabeled(self, raw: tuple[int, ...]) -> DoubleOccurrenceWord:
        # display names follow their symbols through renormalization
        names = tuple(self.names[s] for s in dict.fromkeys(raw))
        return DoubleOccurrenceWord(normalize(raw), names)


def from_letters(letters: Iterable, names: Sequence[str] | None = None) -> DoubleOccurrenceWord:
    """Build a word from any sequence of hashable symbols."""
    letters = list(letters)
    counts = Counter(letters)
    for s, c in counts.items():
        if c != 2:
            raise OccurrenceCount(s, c)
    if names is None:
        order = list(dict.fromkeys(letters))
        if all(isinstance(s, str) for s in order):
            names = order
        else:
            names = default_names(len(order))
    return DoubleOccurrenceWord(normalize(letters), tuple(names))


def tokenize(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    if _SPLIT.search(text):
        tokens = [t for t in _SPLIT.split(text) if t]
    else:
        tokens = list(text)
    for t in tokens:
        if not t.isalnum():
            raise BadToken(f"token {t!r} is not alphanumeric")
    return tokens


def parse(text: str) -> DoubleOccurrenceWord:
    """Parse ``"adbacdcb"`` or ``"x1 x2 x1 x2"`` into a normalized word.

    Without whitespace or commas every character is a token. The empty
    string is the empty word.
    """
    return from_letters(tokenize(text))


def format_word(w: DoubleOccurrenceWord, names: Sequence[str] | None = None) -> str:
    """Render a word; single-character names are concatenated."""
    if names is None:
        names = w.names
    tokens = [names[s] for s in w.letters]
    if all(len(t) == 1 for t in names):
        return "".join(tokens)
    return ",".join(tokens)


@dataclass(frozen=True)
class CanonicalWord:
    """Orbit representative under rotation, reversal and renaming."""

    representative: DoubleOccurrenceWord

    def __str__(self):
        return format_word(self.representative, default_names(self.representative.n))


def orbit_forms(w: DoubleOccurrenceWord) -> Iterator[tuple[int, ...]]:
    """Normalized letter tuples of all rotations of ``w`` and of its reverse."""
    m = len(w)
    for seq in (w.letters, w.letters[::-1]):
        for k in range(max(m, 1)):
            yield normalize(seq[k:] + seq[:k])


def canonicalize(w: DoubleOccurrenceWord) -> CanonicalWord:
    return CanonicalWord(DoubleOccurrenceWord(min(orbit_forms(w))))


def is_canonical(w: DoubleOccurrenceWord) -> bool:
    return all(w.letters <= form for form in orbit_forms(w))


def double_factorial_count(n: int) -> int:
    """Number of normalized words on ``n`` symbols, (2n-1)!!."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


def _fill(slots: list[int], next_id: int) -> Iterator[tuple[int, ...]]:
    try:
        first = slots.index(-1)
    except ValueError:
        yield tuple(slots)
        return
    slots[first] = next_id
    for j in range(first + 1, len(slots)):
        if slots[j] == -1:
            slots[j] = next_id
            yield from _fill(slots, next_id + 1)
            slots[j] = -1
    slots[first] = -1


def enumerate_words(
    n: int, canonical_only: bool = False, limit: int = ENUM_HARD_LIMIT
) -> Iterator[DoubleOccurrenceWord]:
    """Yield every normalized word on ``n`` symbols exactly once.

    The leftmost free slot always receives the next new symbol and its
    partner ranges over the remaining free slots, so the output is already
    in first-occurrence form and there are (2n-1)!! words. With
    ``canonical_only`` only orbit representatives are kept.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds enumeration limit {limit}")
    names = default_names(n)
    for letters in _fill([-1] * (2 * n), 0):
        w = DoubleOccurrenceWord(letters, names)
        if canonical_only and not is_canonical(w):
            continue
        yield w
