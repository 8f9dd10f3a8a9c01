"""Finitely supported automorphisms of the infinite-rank free group.

An automorphism here is given by the images of a1..aN forming a basis
of A_N and fixes every generator beyond its support width N. The
representation is normalised (no trailing identity columns), making
equality of automorphisms equality of representations.

Composition convention, fixed project-wide: ``compose(f, g)`` applies g
first, i.e. acts as f after g.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    IndexEscape,
    IndexOutOfRange,
    NotInjectiveOrNotSurjective,
    ParseError,
)
from .nielsen import MoveLog, is_basis_of, log_to_automorphism, minimize_tuple
from .words import Word, format_word, generator, parse_word


class FinSuppAut:
    """A finitely supported automorphism; immutable."""

    __slots__ = ("_images", "_flat", "_off")

    def __init__(self, images: Iterable[Word]):
        normalized = _validate(list(images))
        self._images = normalized
        self._flat = None
        self._off = None

    @classmethod
    def _normalized(cls, images: Sequence[Word]) -> "FinSuppAut":
        # Trusted path for results that are automorphisms by construction.
        phi = cls.__new__(cls)
        phi._images = _strip_identity_tail(images)
        phi._flat = None
        phi._off = None
        return phi

    @property
    def support(self) -> int:
        """Width N: every a_i with i > N is fixed."""
        return len(self._images)

    @property
    def images(self) -> tuple:
        return self._images

    @property
    def is_identity(self) -> bool:
        return not self._images

    def image(self, i: int) -> Word:
        """The image of a_i (a_i itself beyond the support)."""
        if i < 1:
            raise IndexOutOfRange(f"generator index must be >= 1, got {i}")
        if i <= len(self._images):
            return self._images[i - 1]
        return generator(i)

    def _packed_images(self):
        if self._flat is None:
            off = np.zeros(len(self._images) + 1, dtype=np.int64)
            for i, w in enumerate(self._images):
                off[i + 1] = off[i] + len(w)
            flat = np.empty(int(off[-1]), dtype=np.int64)
            for i, w in enumerate(self._images):
                flat[off[i] : off[i + 1]] = w.array
            self._flat = flat
            self._off = off
        return self._flat, self._off

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "FinSuppAut") -> "FinSuppAut":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSuppAut) and self._images == other._images

    def __hash__(self) -> int:
        return hash(tuple(w.signed for w in self._images))

    def __repr__(self) -> str:
        if self.is_identity:
            return "FinSuppAut(identity)"
        body = "; ".join(
            f"a{i + 1} -> {format_word(w)}" for i, w in enumerate(self._images)
        )
        return f"FinSuppAut({body})"


def _strip_identity_tail(images: Sequence[Word]) -> tuple:
    # Minimal width: keep every column up to the last moved generator
    # and up to the largest index a moved column still uses.
    width = 0
    for i, w in enumerate(images, start=1):
        if w.signed != (i,):
            width = max(width, i, w.max_index)
    return tuple(images[:width])


def _validate(images: list) -> tuple:
    n = len(images)
    for w in images:
        if not isinstance(w, Word):
            raise TypeError(f"images must be Words, got {type(w).__name__}")
        if not w:
            raise NotInjectiveOrNotSurjective(
                "an image is the empty word, so the images cannot be a basis"
            )
        if w.max_index > n:
            raise IndexEscape(
                f"image {format_word(w)} uses a{w.max_index} beyond width {n}; "
                f"pad the image sequence explicitly if this is intended"
            )
    if n > 0 and not is_basis_of(images, n):
        raise NotInjectiveOrNotSurjective(
            f"images do not freely generate A_{n}"
        )
    return _strip_identity_tail(images)


def identity() -> FinSuppAut:
    return FinSuppAut._normalized(())


def from_images(images: Sequence[Word]) -> FinSuppAut:
    """Validated construction from the images of a1..aN.

    Raises NotInjectiveOrNotSurjective if the images are not a basis of
    A_N, IndexEscape if an image escapes the declared width.
    """
    return FinSuppAut(images)


def apply(phi: FinSuppAut, w: Word) -> Word:
    """phi(w): substitute each letter by its image and reduce."""
    if phi.is_identity or not w:
        return w
    flat, off = phi._packed_images()
    return Word._from_reduced(kernels.substitute(w.array, flat, off))


def _compose_two(f: FinSuppAut, g: FinSuppAut) -> FinSuppAut:
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    n = max(f.support, g.support)
    return FinSuppAut._normalized([apply(f, g.image(i)) for i in range(1, n + 1)])


def compose(*auts: FinSuppAut) -> FinSuppAut:
    """compose(f, g, ...) acts as f after g after ...; compose() = id."""
    result = identity()
    for phi in reversed(auts):
        result = _compose_two(phi, result)
    return result


def invert(phi: FinSuppAut) -> FinSuppAut:
    """The inverse automorphism, via Nielsen reduction of the images.

    The image tuple reduces to a signed permutation tuple; replaying the
    move log on the standard tuple gives the elementary composite E with
    phi o E = sigma, so the inverse is E o sigma^-1.
    """
    n = phi.support
    if n == 0:
        return phi
    reduced, log = minimize_tuple(phi.images)
    if log.dropped or any(len(w) != 1 for w in reduced):
        raise RuntimeError(
            "image tuple did not reduce to a signed permutation; "
            "the automorphism object is corrupt"
        )
    e = log_to_automorphism(MoveLog(log.moves, 0), n)
    sigma_inv_images = [None] * n
    for i, w in enumerate(reduced):
        s = w.signed[0]
        # sigma sends a_{i+1} to a_|s|^sign(s); invert the permutation.
        sigma_inv_images[abs(s) - 1] = generator(i + 1, 1 if s > 0 else -1)
    sigma_inv = FinSuppAut._normalized(sigma_inv_images)
    return _compose_two(e, sigma_inv)


def fixes_prefix(phi: FinSuppAut, n: int) -> bool:
    """True iff phi fixes a1..an pointwise (phi lies in the stabiliser
    U_n); always true for n = 0."""
    if n < 0:
        raise ValueError(f"prefix length must be >= 0, got {n}")
    for i in range(1, min(n, phi.support) + 1):
        if phi.image(i).signed != (i,):
            return False
    return True


_ELEMENTARY_KINDS = ("invert", "swap", "mul_right", "mul_left")


def elementary(kind: str, i: int, j: int, n: int, inverse: bool = False) -> FinSuppAut:
    """The named elementary automorphism of A_n.

    kinds: 'invert' (a_i -> a_i^-1), 'swap' (a_i <-> a_j),
    'mul_right' (a_i -> a_i a_j^e), 'mul_left' (a_i -> a_j^e a_i),
    with e = -1 when inverse is set.
    """
    if kind not in _ELEMENTARY_KINDS:
        raise ValueError(f"unknown elementary kind {kind!r}")
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"index i={i} outside 1..{n}")
    images = [generator(t) for t in range(1, n + 1)]
    if kind == "invert":
        images[i - 1] = generator(i, -1)
    else:
        if not 1 <= j <= n:
            raise IndexOutOfRange(f"index j={j} outside 1..{n}")
        if i == j:
            raise IndexOutOfRange("swap/multiply require distinct indices")
        if kind == "swap":
            images[i - 1], images[j - 1] = generator(j), generator(i)
        else:
            factor = generator(j, -1 if inverse else 1)
            if kind == "mul_right":
                images[i - 1] = generator(i) * factor
            else:
                images[i - 1] = factor * generator(i)
    return FinSuppAut._normalized(images)


def random_aut(seed: int, width_bound: int, move_count: int) -> FinSuppAut:
    """A seeded random product of elementary automorphisms on indices
    up to width_bound; deterministic in the seed."""
    if width_bound < 1:
        raise ValueError(f"width_bound must be >= 1, got {width_bound}")
    if move_count < 0:
        raise ValueError(f"move_count must be >= 0, got {move_count}")
    rng = np.random.default_rng(seed)
    acc = identity()
    for _ in range(move_count):
        if width_bound == 1:
            move = elementary("invert", 1, 0, 1)
        else:
            kind = _ELEMENTARY_KINDS[int(rng.integers(4))]
            i = 1 + int(rng.integers(width_bound))
            j = 1 + int(rng.integers(width_bound - 1))
            if j >= i:
                j += 1
            if kind == "invert":
                move = elementary("invert", i, 0, width_bound)
            elif kind == "swap":
                move = elementary("swap", i, j, width_bound)
            else:
                inverse = bool(rng.integers(2))
                move = elementary(kind, i, j, width_bound, inverse=inverse)
        acc = _compose_two(move, acc)
    return acc


_AUT_LINE = re.compile(r"^\s*a(\d+)\s*->\s*(.*?)\s*$")


def parse_aut(text: str) -> FinSuppAut:
    """Parse the one-mapping-per-line text format.

    Lines read ``a<i> -> <word>``; unlisted generators map to
    themselves; empty input parses to the identity.
    """
    mappings = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = _AUT_LINE.match(line)
        if match is None:
            raise ParseError(f"expected 'a<i> -> <word>', got {stripped!r}", line=lineno)
        idx = int(match.group(1))
        if idx < 1:
            raise ParseError(f"bad generator index a{idx}", line=lineno)
        if idx in mappings:
            raise ParseError(f"duplicate mapping for a{idx}", line=lineno)
        try:
            mappings[idx] = parse_word(match.group(2))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if not mappings:
        return identity()
    width = max(max(mappings), max(w.max_index for w in mappings.values()))
    images = [mappings.get(i, generator(i)) for i in range(1, width + 1)]
    return from_images(images)


def format_aut(phi: FinSuppAut) -> str:
    """Render the non-identity mappings, one per line."""
    lines = [
        f"a{i + 1} -> {format_word(w)}"
        for i, w in enumerate(phi.images)
        if w.signed != (i + 1,)
    ]
    return "\n".join(lines)


def aut_to_obj(phi: FinSuppAut) -> dict:
    return {"support": phi.support, "images": [w.to_pairs() for w in phi.images]}


def aut_from_obj(obj: dict) -> FinSuppAut:
    images = [Word.from_pairs(p) for p in obj["images"]]
    if len(images) != obj["support"]:
        raise ParseError("support field does not match the image count")
    return from_images(images)
