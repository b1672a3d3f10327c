"""Interpretations, synchronization and decompositions for uniform substitutions.

An interpretation reads a word as a doubly trimmed image of an ancestor
word.  A word is synchronized when all of its interpretations agree on
the trim residue mod M, which pins the image boundaries inside it.  The
synchronization delay is the least length past which every language word
is synchronized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CapExceededError,
    InternalConsistencyError,
    NotInLanguageError,
    PreconditionError,
    UnsupportedInputError,
)
from .substitution import Substitution, language
from .words import Word


@dataclass(frozen=True)
class Interpretation:
    """One reading of a word: word = trim(apply(ancestor), front, back)."""

    ancestor: Word
    front: int
    back: int


@dataclass(frozen=True)
class SyncAnalysis:
    """Front-trim residues over all interpretations plus the aligned cuts."""

    word: Word
    offsets: frozenset[int]
    sync_positions: tuple[int, ...]

    @property
    def synchronized(self) -> bool:
        return len(self.offsets) == 1


@dataclass(frozen=True)
class SyncDelay:
    """The delay plus an unsynchronized witness of length delay - 1."""

    delay: int
    witness: Word | None
    witness_offsets: frozenset[int]


def _require_uniform_primitive(subst: Substitution, what: str) -> int:
    if not subst.uniform:
        raise UnsupportedInputError(f"{what} requires a uniform substitution")
    if not subst.primitive:
        raise UnsupportedInputError(f"{what} requires a primitive substitution")
    return subst.uniform_length


def interpretations(subst: Substitution, w: Word) -> frozenset[Interpretation]:
    """All interpretations of ``w``, with trims normalized below M.

    Every ancestor covering ``w`` with both trims below M has at most
    ceil((|w| + 2M - 2) / M) letters, so scanning the occurrences of
    ``w`` inside images of language words of that length finds them all.
    """
    M = _require_uniform_primitive(subst, "interpretation search")
    w = tuple(w)
    if not w:
        raise PreconditionError("word must be nonempty")
    if w not in language(subst, len(w)):
        raise NotInLanguageError(f"word is not a factor of the subshift: {w}")
    span = math.ceil((len(w) + 2 * M - 2) / M)
    found: set[Interpretation] = set()
    for z in language(subst, span).words:
        img = subst.apply(z)
        for t in range(len(img) - len(w) + 1):
            if img[t:t + len(w)] != w:
                continue
            start = t // M
            end = (t + len(w) - 1) // M
            ancestor = z[start:end + 1]
            front = t % M
            back = M * len(ancestor) - len(w) - front
            found.add(Interpretation(ancestor, front, back))
    if not found:
        raise InternalConsistencyError("a language word must occur inside some image")
    return frozenset(found)


def sync_analysis(subst: Substitution, w: Word) -> SyncAnalysis:
    """Offsets of ``w`` and, when they agree, the aligned cut positions."""
    M = subst.uniform_length
    interps = interpretations(subst, w)
    offsets = frozenset(it.front % M for it in interps)
    if len(offsets) == 1:
        (i,) = offsets
        positions = tuple(p for p in range(len(w) + 1) if (p + i) % M == 0)
    else:
        positions = ()
    return SyncAnalysis(tuple(w), offsets, positions)


def default_sync_cap(subst: Substitution) -> int:
    M = subst.uniform_length or max(len(img) for img in subst.images)
    return max(4 * M * M, 64)


def sync_delay(subst: Substitution, cap: int | None = None) -> SyncDelay:
    """Least length at which every language word is synchronized.

    Synchronization is monotone in the length, so the first fully
    synchronized level is the delay; the last unsynchronized word seen
    certifies minimality.
    """
    _require_uniform_primitive(subst, "synchronization delay")
    limit = default_sync_cap(subst) if cap is None else cap
    if limit < 1:
        raise PreconditionError("cap must be >= 1")
    return _sync_delay_search(subst, limit)


@lru_cache(maxsize=None)
def _sync_delay_search(subst: Substitution, limit: int) -> SyncDelay:
    witness: Word | None = None
    witness_offsets: frozenset[int] = frozenset()
    for n in range(1, limit + 1):
        unsynchronized = None
        for w in language(subst, n).words:
            ana = sync_analysis(subst, w)
            if not ana.synchronized:
                unsynchronized = ana
                break
        if unsynchronized is None:
            return SyncDelay(n, witness, witness_offsets)
        witness = unsynchronized.word
        witness_offsets = unsynchronized.offsets
    raise CapExceededError(
        f"no synchronization delay found up to length {limit}; "
        "the substitution may be periodic, or raise the cap"
    )


def decomposition(subst: Substitution, w: Word) -> int:
    """Image-boundary residue of a long word.

    For a synchronized word every interpretation places the image
    boundaries at the same positions mod M; the returned residue r means
    images start exactly at the positions congruent to r.
    """
    delay = sync_delay(subst).delay
    w = tuple(w)
    if len(w) < delay:
        raise PreconditionError(
            f"decomposition needs length >= the synchronization delay {delay}"
        )
    ana = sync_analysis(subst, w)
    if not ana.synchronized:
        raise InternalConsistencyError(
            "word at or past the synchronization delay has several offsets"
        )
    (front,) = ana.offsets
    return (-front) % subst.uniform_length
