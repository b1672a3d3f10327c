"""Finite words and choice sequences as plain tuples of ints.

Words over an alphabet of size ``s`` use letters ``0..s-1``; choice
sequences use letters ``1..s``.  Tuples give structural equality, a
total lexicographic order and hashability for free, so every canonical
set in the package is just a sorted collection of tuples.
"""

from __future__ import annotations

from itertools import chain

from .errors import PreconditionError

Word = tuple[int, ...]
ChoiceSequence = tuple[int, ...]


def trim(w: Word, front: int, back: int) -> Word:
    """Drop ``front`` letters from the start of ``w`` and ``back`` from the end."""
    if front < 0 or back < 0:
        raise PreconditionError("trim counts must be nonnegative")
    if front + back > len(w):
        raise PreconditionError(
            f"cannot trim {front}+{back} letters from a word of length {len(w)}"
        )
    return w[front:len(w) - back]


def factors(w: Word, n: int) -> set[Word]:
    """All distinct length-``n`` factors of ``w``; empty when n exceeds |w|."""
    if n < 0:
        raise PreconditionError("factor length must be nonnegative")
    if n > len(w):
        return set()
    return {w[p:p + n] for p in range(len(w) - n + 1)}


def le(u: ChoiceSequence, v: ChoiceSequence) -> bool:
    """Letterwise partial order: |u| = |v| and u[i] <= v[i] everywhere."""
    return len(u) == len(v) and all(a <= b for a, b in zip(u, v))


def stretch(seq: ChoiceSequence, factor: int) -> ChoiceSequence:
    """Replace every letter k of ``seq`` by the block k 1^(factor-1)."""
    if factor < 1:
        raise PreconditionError("stretch factor must be >= 1")
    if factor == 1:
        return tuple(seq)
    pad = (1,) * (factor - 1)
    return tuple(chain.from_iterable((k,) + pad for k in seq))


def is_irreducible(seq: ChoiceSequence) -> bool:
    """A choice sequence is irreducible iff it is nonempty and does not end in 1."""
    return bool(seq) and seq[-1] > 1


def format_word(w: Word, alphabet_size: int) -> str:
    """Digit string for small alphabets, comma separated otherwise."""
    if alphabet_size <= 9:
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def parse_word(text: str, alphabet_size: int) -> Word:
    """Inverse of :func:`format_word`; letters must lie in 0..size-1."""
    letters = _parse_letters(text)
    for a in letters:
        if not 0 <= a < alphabet_size:
            raise PreconditionError(f"letter {a} outside alphabet 0..{alphabet_size - 1}")
    return letters


def format_choices(seq: ChoiceSequence, alphabet_size: int) -> str:
    """Digit string for choice sequences when the alphabet has at most 9 letters."""
    if alphabet_size <= 9:
        return "".join(str(a) for a in seq)
    return ",".join(str(a) for a in seq)


def parse_choices(text: str, alphabet_size: int) -> ChoiceSequence:
    """Inverse of :func:`format_choices`; letters must lie in 1..size."""
    letters = _parse_letters(text)
    for a in letters:
        if not 1 <= a <= alphabet_size:
            raise PreconditionError(f"choice letter {a} outside 1..{alphabet_size}")
    return letters


def _parse_letters(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise PreconditionError(f"cannot parse letters from {text!r}") from exc
