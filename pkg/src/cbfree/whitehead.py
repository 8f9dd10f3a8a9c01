"""Partial-basis recognition via the classical Whitehead moves.

carry_to_standard decides whether a tuple of words extends to a basis
of A_m and, when it does, produces the automorphism carrying the tuple
to (a1, ..., an). Search: greedy descent by total length through the
multiplier moves; at a local minimum, a breadth-first sweep of the
length-preserving move component (peak crossing) looks for a strict
descent. A descent path of non-increasing length always exists from a
non-minimal tuple, so an exhausted component certifies minimality, and
a tuple is a partial basis exactly when its minimal total length is n
with pairwise distinct letters.

"Not a partial basis" is only declared from that exhaustive evidence;
running out of search budget raises instead - an honest "don't know".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .automorphisms import FinSuppAut, apply, compose, identity, invert
from .errors import (
    CapExceeded,
    IndexOutOfRange,
    InternalVerificationFailure,
    NotAPartialBasisError,
    SearchBudgetExceeded,
)
from .nielsen import is_basis_of
from .words import Word, format_word, generator

RANK_CAP = 8
DEFAULT_PEAK_BUDGET = 100_000


@dataclass(frozen=True)
class WhiteheadMove:
    """One classical Whitehead automorphism of A_m.

    kind 'permutation': a signed relabelling of the generators.
    kind 'multiplier': the cut move for signed letter ``multiplier`` v
    and cut set Y (v in Y, -v not in Y): x -> v^-[-x in Y] . x . v^[x in Y].
    """

    kind: str
    multiplier: int
    cut: frozenset
    aut: FinSuppAut


def _mult_images(m: int, v: int, cut: frozenset):
    vals = []
    off = [0]
    for k in range(1, m + 1):
        if k == abs(v):
            vals.append(k)
        else:
            if -k in cut:
                vals.append(-v)
            vals.append(k)
            if k in cut:
                vals.append(v)
        off.append(len(vals))
    return np.asarray(vals, dtype=np.int64), np.asarray(off, dtype=np.int64)


def _images_to_aut(flat: np.ndarray, off: np.ndarray) -> FinSuppAut:
    images = [
        Word._from_reduced(np.ascontiguousarray(flat[off[i] : off[i + 1]]))
        for i in range(off.shape[0] - 1)
    ]
    return FinSuppAut._normalized(images)


def _check_rank(m: int, cap: int) -> None:
    if m < 0:
        raise ValueError(f"ambient rank must be >= 0, got {m}")
    if m > cap:
        raise CapExceeded(f"rank {m} exceeds the cap {cap}")


def enumerate_whitehead(m: int, cap: int = RANK_CAP) -> Iterator[WhiteheadMove]:
    """All Whitehead automorphisms of A_m, lazily, no duplicates.

    Signed permutations first (the identity leads), then the multiplier
    moves; the two families are disjoint and the (v, cut) descriptions
    are in bijection with the multiplier automorphisms, so the stream is
    duplicate-free by construction.
    """
    if m < 1:
        raise ValueError(f"rank must be >= 1, got {m}")
    _check_rank(m, cap)

    def _moves():
        for perm in permutations(range(1, m + 1)):
            for signs in product((1, -1), repeat=m):
                images = [generator(perm[i], signs[i]) for i in range(m)]
                yield WhiteheadMove(
                    kind="permutation",
                    multiplier=0,
                    cut=frozenset(),
                    aut=FinSuppAut._normalized(images),
                )
        for v, cut in _iter_cuts(m):
            flat, off = _mult_images(m, v, cut)
            yield WhiteheadMove(
                kind="multiplier", multiplier=v, cut=cut, aut=_images_to_aut(flat, off)
            )

    return _moves()


def _iter_cuts(m: int):
    for vi in range(1, m + 1):
        for vs in (1, -1):
            v = vi * vs
            others = []
            for k in range(1, m + 1):
                if k != vi:
                    others.extend((k, -k))
            for mask in range(1, 1 << len(others)):
                cut = {v}
                for t, letter in enumerate(others):
                    if mask >> t & 1:
                        cut.add(letter)
                yield v, frozenset(cut)


@lru_cache(maxsize=2)
def _mult_tables(m: int):
    # Packed image arrays of every multiplier move of A_m, in the
    # deterministic _iter_cuts order.
    return tuple((v, cut, *_mult_images(m, v, cut)) for v, cut in _iter_cuts(m))


def _apply_table(entries, flat, off):
    return [Word._from_reduced(kernels.substitute(w.array, flat, off)) for w in entries]


def _total(entries) -> int:
    return sum(len(w) for w in entries)


class _PeakBudget:
    def __init__(self, budget: int):
        self.budget = budget
        self.explored = 0

    def tick(self):
        self.explored += 1
        if self.explored > self.budget:
            raise SearchBudgetExceeded(self.budget, self.explored)


def _cross_peak(entries, moves, budget: "_PeakBudget"):
    """BFS the equal-length component; return (move ids, new entries)
    reaching a strictly shorter tuple, or None when exhausted."""
    level = _total(entries)
    seen = {tuple(w.signed for w in entries)}
    queue = deque([(entries, ())])
    while queue:
        cur, path = queue.popleft()
        for move_id, (_, _, flat, off) in enumerate(moves):
            new = _apply_table(cur, flat, off)
            tot = _total(new)
            if tot < level:
                return list(path) + [move_id], new
            if tot == level:
                ser = tuple(w.signed for w in new)
                if ser not in seen:
                    budget.tick()
                    seen.add(ser)
                    queue.append((new, path + (move_id,)))
    return None


def carry_to_standard(
    t: Sequence[Word],
    m: int,
    budget: int = DEFAULT_PEAK_BUDGET,
    cap: int = RANK_CAP,
) -> Optional[FinSuppAut]:
    """An automorphism alpha of A_m with alpha(t_i) = a_i, or None.

    None means the tuple provably does not extend to a basis of A_m.
    Exceeding the peak-search budget raises SearchBudgetExceeded.
    """
    _check_rank(m, cap)
    entries = list(t)
    for w in entries:
        if not w:
            raise ValueError("tuple entries must be nonempty words")
        if w.max_index > m:
            raise IndexOutOfRange(f"entry {format_word(w)} uses a generator beyond a{m}")
    n = len(entries)
    if n == 0:
        return identity()
    if n > m:
        return None

    moves = _mult_tables(m)
    alpha = identity()
    peak = _PeakBudget(budget)
    while True:
        tot = _total(entries)
        if tot == n:
            break
        best_tot = tot
        best = None
        for move_id, (_, _, flat, off) in enumerate(moves):
            new = _apply_table(entries, flat, off)
            new_tot = _total(new)
            if new_tot < best_tot:
                best_tot = new_tot
                best = (move_id, new)
        if best is not None:
            move_id, entries = best
            alpha = compose(_images_to_aut(moves[move_id][2], moves[move_id][3]), alpha)
            continue
        crossing = _cross_peak(entries, moves, peak)
        if crossing is None:
            return None
        path, entries = crossing
        for move_id in path:
            alpha = compose(_images_to_aut(moves[move_id][2], moves[move_id][3]), alpha)

    letters = [w.signed[0] for w in entries]
    if len({abs(s) for s in letters}) != n:
        return None
    sigma_images = [None] * m
    for i, s in enumerate(letters):
        sigma_images[abs(s) - 1] = generator(i + 1, 1 if s > 0 else -1)
    spare_targets = iter(range(n + 1, m + 1))
    for k in range(m):
        if sigma_images[k] is None:
            sigma_images[k] = generator(next(spare_targets))
    alpha = compose(FinSuppAut._normalized(sigma_images), alpha)
    for i, w in enumerate(t):
        if apply(alpha, w).signed != (i + 1,):
            raise InternalVerificationFailure(
                f"witness fails on entry {i}: alpha({format_word(w)}) != a{i + 1}"
            )
    return alpha


def complement_basis(
    t: Sequence[Word],
    m: int,
    budget: int = DEFAULT_PEAK_BUDGET,
    cap: int = RANK_CAP,
) -> tuple:
    """Words extending the tuple to a basis of A_m.

    With alpha the carrying witness, the complement is
    (alpha^-1(a_{n+1}), ..., alpha^-1(a_m)); the combined tuple is
    checked to be a basis before returning.
    """
    alpha = carry_to_standard(t, m, budget=budget, cap=cap)
    if alpha is None:
        raise NotAPartialBasisError(
            f"tuple does not extend to a basis of A_{m}"
        )
    back = invert(alpha)
    comp = tuple(apply(back, generator(i)) for i in range(len(t) + 1, m + 1))
    if m >= 1 and not is_basis_of(tuple(t) + comp, m):
        raise InternalVerificationFailure("complement failed the basis check")
    return comp
