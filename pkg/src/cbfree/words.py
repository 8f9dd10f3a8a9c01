"""Reduced words over the standard basis a1, a2, ... of the free group
of countably infinite rank.

A word is a freely reduced sequence of signed generators; the empty
word is the group identity and its only representation. Internally a
word is an int64 array of signed indices (+k for a_k, -k for a_k^-1),
which is what the hot kernels consume.

Text syntax (used by the CLI and all serialised artifacts): whitespace
separated tokens ``a<k>`` and ``a<k>^-1``; the single token ``1``
denotes the empty word.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import ParseError

_EMPTY_ARR = np.empty(0, dtype=np.int64)
_EMPTY_ARR.setflags(write=False)


class Letter(NamedTuple):
    """A single signed generator occurrence."""

    index: int
    sign: int

    @property
    def signed(self) -> int:
        return self.index * self.sign


class Word:
    """An immutable freely reduced word. Build via reduce/parse_word."""

    __slots__ = ("_arr", "_signed")

    def __init__(self, letters: Iterable = ()):
        arr = _to_array(letters)
        red = kernels.reduce_word(arr)
        red.setflags(write=False)
        self._arr = red
        self._signed = None

    @classmethod
    def _from_reduced(cls, arr: np.ndarray) -> "Word":
        w = cls.__new__(cls)
        arr.setflags(write=False)
        w._arr = arr
        w._signed = None
        return w

    @property
    def array(self) -> np.ndarray:
        return self._arr

    @property
    def signed(self) -> tuple:
        """The word as a tuple of signed indices (hash/sort key)."""
        if self._signed is None:
            self._signed = tuple(self._arr.tolist())
        return self._signed

    @property
    def letters(self) -> tuple:
        return tuple(Letter(abs(s), 1 if s > 0 else -1) for s in self.signed)

    @property
    def max_index(self) -> int:
        return int(np.abs(self._arr).max()) if self._arr.shape[0] else 0

    def inverse(self) -> "Word":
        return Word._from_reduced(np.ascontiguousarray(-self._arr[::-1]))

    def to_pairs(self) -> list:
        return [[abs(s), 1 if s > 0 else -1] for s in self.signed]

    @classmethod
    def from_pairs(cls, pairs: Sequence) -> "Word":
        return reduce(Letter(int(i), int(s)) for i, s in pairs)

    def __len__(self) -> int:
        return self._arr.shape[0]

    def __bool__(self) -> bool:
        return self._arr.shape[0] > 0

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return self.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and np.array_equal(self._arr, other._arr)

    def __hash__(self) -> int:
        return hash(self.signed)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _to_array(letters) -> np.ndarray:
    if isinstance(letters, Word):
        return letters.array
    if isinstance(letters, np.ndarray):
        vals = [int(v) for v in letters.tolist()]
    else:
        vals = []
        for item in letters:
            if isinstance(item, (int, np.integer)):
                vals.append(int(item))
            else:
                idx, sign = item
                if sign not in (1, -1):
                    raise ValueError(f"letter sign must be +1 or -1, got {sign}")
                if idx < 1:
                    raise ValueError(f"generator index must be >= 1, got {idx}")
                vals.append(int(idx) * int(sign))
    for v in vals:
        if v == 0:
            raise ValueError("letter 0 is not a generator")
    if not vals:
        return _EMPTY_ARR
    return np.asarray(vals, dtype=np.int64)


def reduce(raw: Iterable) -> Word:
    """Freely reduce a raw letter sequence into a Word.

    Accepts signed integers (+k / -k) or (index, sign) pairs.
    """
    return Word(raw)


def concat(u: Word, v: Word) -> Word:
    """The reduced product u.v of two reduced words."""
    if not u:
        return v
    if not v:
        return u
    return Word._from_reduced(kernels.concat_words(u.array, v.array))


def invert_word(w: Word) -> Word:
    """The group inverse: reversed sequence, all signs flipped."""
    return w.inverse()


def max_index(w: Word) -> int:
    """Largest generator index occurring in w; 0 for the empty word."""
    return w.max_index


def generator(index: int, sign: int = 1) -> Word:
    """The one-letter word a_index (or its inverse for sign -1)."""
    if index < 1:
        raise ValueError(f"generator index must be >= 1, got {index}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return Word._from_reduced(np.asarray([index * sign], dtype=np.int64))


EMPTY = Word._from_reduced(_EMPTY_ARR)


def parse_word(text: str) -> Word:
    """Parse the whitespace-separated token syntax into a Word."""
    tokens = text.split()
    if tokens == ["1"]:
        return EMPTY
    vals = []
    for tok in tokens:
        if tok == "1":
            raise ParseError(f"token '1' cannot be mixed with generators in {text!r}")
        neg = tok.endswith("^-1")
        body = tok[:-3] if neg else tok
        if not body.startswith("a") or not body[1:].isdigit():
            raise ParseError(f"bad word token {tok!r}")
        idx = int(body[1:])
        if idx < 1:
            raise ParseError(f"bad generator index in token {tok!r}")
        vals.append(-idx if neg else idx)
    return reduce(vals)


def format_word(w: Word) -> str:
    """Render a Word in the token syntax ('1' for the empty word)."""
    if not w:
        return "1"
    return " ".join(f"a{s}" if s > 0 else f"a{-s}^-1" for s in w.signed)
