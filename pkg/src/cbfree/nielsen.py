"""Nielsen reduction of word tuples with a replayable move log.

The reducer is greedy: it repeatedly applies the multiply move with the
largest total-length decrease (deterministic tie-breaking), then
normalises the stuck tuple by canonical entry inversions and a sorting
pass of swaps. Entries that cancel to the empty word are sorted to the
front and dropped, with the drop count recorded on the log, so a
replay of the log reproduces the returned tuple exactly.

The basis test additionally crosses flat spots: when the greedy phase
stalls above the single-letter floor it searches the component of
length-preserving multiply moves for a strictly shorter tuple. Every
length-non-increasing Nielsen path lives inside such components, so an
exhausted component certifies length minimality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import kernels
from .errors import IndexOutOfRange
from .words import Word, concat, generator

# Hard stop for the internal flat-spot search; desk-scale inputs stay
# far below it, and hitting it means the input is out of scope.
_ESCAPE_NODE_CAP = 500_000


@dataclass(frozen=True)
class InvertEntry:
    entry: int


@dataclass(frozen=True)
class SwapEntries:
    first: int
    second: int


@dataclass(frozen=True)
class MultiplyEntry:
    """entry <- entry . other^e (side 'right') or other^e . entry ('left');
    e is -1 when inverse is set."""

    entry: int
    other: int
    side: str
    inverse: bool


NielsenMove = Union[InvertEntry, SwapEntries, MultiplyEntry]


@dataclass(frozen=True)
class MoveLog:
    """Applied moves in order, plus how many entries cancelled away.

    Replaying ``moves`` on the input tuple and then removing the first
    ``dropped`` entries (the empty ones, sorted to the front) yields the
    reduced tuple.
    """

    moves: tuple
    dropped: int = 0


def apply_move(entries: list, move: NielsenMove) -> None:
    """Apply one move to a mutable list of Words, in place."""
    if isinstance(move, InvertEntry):
        entries[move.entry] = entries[move.entry].inverse()
    elif isinstance(move, SwapEntries):
        i, j = move.first, move.second
        entries[i], entries[j] = entries[j], entries[i]
    elif isinstance(move, MultiplyEntry):
        factor = entries[move.other]
        if move.inverse:
            factor = factor.inverse()
        if move.side == "left":
            entries[move.entry] = concat(factor, entries[move.entry])
        else:
            entries[move.entry] = concat(entries[move.entry], factor)
    else:
        raise TypeError(f"not a Nielsen move: {move!r}")


def replay(t: Sequence[Word], log: MoveLog) -> tuple:
    """Replay a log on a tuple, reproducing the recorded reduction."""
    entries = list(t)
    for move in log.moves:
        apply_move(entries, move)
    return tuple(entries[log.dropped :])


def _pack(entries: Sequence[Word]):
    off = np.zeros(len(entries) + 1, dtype=np.int64)
    for i, w in enumerate(entries):
        off[i + 1] = off[i] + len(w)
    flat = np.empty(int(off[-1]), dtype=np.int64)
    for i, w in enumerate(entries):
        flat[off[i] : off[i + 1]] = w.array
    return flat, off


def _sort_key(w: Word):
    # Length-lexicographic; a_k sorts before a_k^-1, lower index first.
    return (len(w), tuple((abs(s), 0 if s > 0 else 1) for s in w.signed))


def _greedy(entries: list) -> list:
    """Run the kernel greedy phase in place; return the multiply moves."""
    flat, off = _pack(entries)
    out_flat, out_off, mv, n_mv = kernels.greedy_multiply_phase(flat, off)
    for i in range(len(entries)):
        arr = np.ascontiguousarray(out_flat[out_off[i] : out_off[i + 1]])
        entries[i] = Word._from_reduced(arr)
    moves = []
    for r in range(n_mv):
        moves.append(
            MultiplyEntry(
                entry=int(mv[r, 0]),
                other=int(mv[r, 1]),
                side="left" if mv[r, 2] == 0 else "right",
                inverse=bool(mv[r, 3]),
            )
        )
    return moves


def _move_candidates(k: int):
    for i in range(k):
        for j in range(k):
            if j == i:
                continue
            for side in ("left", "right"):
                for inverse in (False, True):
                    yield i, j, side, inverse


def _decrease(entries: list, i: int, j: int, side: str, inverse: bool) -> int:
    u = entries[i].array
    v = entries[j].array if not inverse else entries[j].inverse().array
    if side == "right":
        c = kernels.cancel_len(u, v)
    else:
        c = kernels.cancel_len(v, u)
    return 2 * c - len(entries[j])


def _level_escape(entries: list):
    """Search the equal-length move component for a strict descent.

    Returns the move list reaching a strictly shorter tuple (last move
    is the descending one), or None once the component is exhausted.
    """
    k = len(entries)
    start = tuple(w.signed for w in entries)
    seen = {start}
    queue = deque([(list(entries), ())])
    while queue:
        cur, path = queue.popleft()
        for i, j, side, inverse in _move_candidates(k):
            if not cur[i] or not cur[j]:
                continue
            d = _decrease(cur, i, j, side, inverse)
            move = MultiplyEntry(i, j, side, inverse)
            if d > 0:
                return list(path) + [move]
            if d == 0:
                child = list(cur)
                apply_move(child, move)
                ser = tuple(w.signed for w in child)
                if ser not in seen:
                    if len(seen) >= _ESCAPE_NODE_CAP:
                        raise RuntimeError(
                            "flat-spot exploration exceeded the internal node cap"
                        )
                    seen.add(ser)
                    queue.append((child, path + (move,)))
    return None


def _normalize(entries: list) -> list:
    """Canonical inversions then a selection sort of swaps, recorded."""
    moves = []
    for p, w in enumerate(entries):
        if w:
            inv = w.inverse()
            if _sort_key(inv) < _sort_key(w):
                entries[p] = inv
                moves.append(InvertEntry(p))
    k = len(entries)
    for p in range(k):
        q = min(range(p, k), key=lambda t: _sort_key(entries[t]))
        if q != p:
            entries[p], entries[q] = entries[q], entries[p]
            moves.append(SwapEntries(p, q))
    return moves


def _reduce_entries(entries: list, *, cross_flats: bool):
    """Shared pipeline: greedy (with optional flat-spot crossing), then
    normalisation and the drop of cancelled entries."""
    moves = _greedy(entries)
    if cross_flats:
        while True:
            live = [w for w in entries if w]
            if all(len(w) == 1 for w in live):
                break
            esc = _level_escape(entries)
            if esc is None:
                break
            for move in esc:
                apply_move(entries, move)
            moves.extend(esc)
            moves.extend(_greedy(entries))
    moves.extend(_normalize(entries))
    dropped = 0
    while dropped < len(entries) and not entries[dropped]:
        dropped += 1
    del entries[:dropped]
    return moves, dropped


def nielsen_reduce(t: Sequence[Word]):
    """Nielsen-reduce a tuple; returns (reduced tuple, MoveLog).

    The subgroup generated is unchanged; total letter length never
    increases, and every recorded multiply move strictly decreases it.
    """
    entries = list(t)
    if not entries:
        raise ValueError("cannot reduce an empty tuple")
    if any(not w for w in entries):
        raise ValueError("tuple entries must be nonempty words")
    moves, dropped = _reduce_entries(entries, cross_flats=False)
    return tuple(entries), MoveLog(tuple(moves), dropped)


def minimize_tuple(t: Sequence[Word]):
    """Like nielsen_reduce but crosses flat spots, guaranteeing a tuple
    of minimal total length. Used by the basis test and inversion."""
    entries = list(t)
    if not entries:
        raise ValueError("cannot reduce an empty tuple")
    if any(not w for w in entries):
        raise ValueError("tuple entries must be nonempty words")
    moves, dropped = _reduce_entries(entries, cross_flats=True)
    return tuple(entries), MoveLog(tuple(moves), dropped)


def is_basis_of(t: Sequence[Word], m: int) -> bool:
    """True iff the tuple freely generates exactly A_m."""
    if m < 1:
        raise ValueError(f"ambient rank must be >= 1, got {m}")
    entries = list(t)
    for w in entries:
        if w.max_index > m:
            raise IndexOutOfRange(
                f"entry {w} uses a generator beyond a{m}"
            )
    if not entries or any(not w for w in entries):
        return False
    reduced, log = minimize_tuple(entries)
    if log.dropped or len(reduced) != m:
        return False
    if any(len(w) != 1 for w in reduced):
        return False
    indices = sorted(abs(w.signed[0]) for w in reduced)
    return indices == list(range(1, m + 1))


def log_to_automorphism(log: MoveLog, n: int):
    """Realise a move log as the composite elementary automorphism E of
    A_n (extended by the identity): applying the log to the image tuple
    of any endomorphism phi yields the tuple of phi o E."""
    from .automorphisms import FinSuppAut

    if n < 1:
        raise ValueError(f"support width must be >= 1, got {n}")
    for move in log.moves:
        if isinstance(move, InvertEntry):
            used = (move.entry,)
        elif isinstance(move, SwapEntries):
            used = (move.first, move.second)
        else:
            used = (move.entry, move.other)
        for p in used:
            if not 0 <= p < n:
                raise IndexOutOfRange(f"move {move!r} falls outside width {n}")
    entries = [generator(i) for i in range(1, n + 1)]
    for move in log.moves:
        apply_move(entries, move)
    return FinSuppAut._normalized(entries)
