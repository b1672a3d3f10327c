"""Substitutions on {0..s-1}: classification, fixed points and factor languages."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    ConstructionError,
    InternalConsistencyError,
    PreconditionError,
    UnsupportedInputError,
)
from .words import Word, factors


@dataclass(frozen=True)
class Substitution:
    """A substitution given by one image word per letter.

    Letters are ``0..size-1`` with ``size = len(images)``.  Instances
    compare and hash by their images; the classification flags are
    derived lazily and cached on first use.
    """

    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) < 2:
            raise ConstructionError("alphabet must have at least two letters")
        for img in self.images:
            if not isinstance(img, tuple) or not img:
                raise ConstructionError("every image must be a nonempty tuple of letters")
            for a in img:
                if not (isinstance(a, int) and 0 <= a < len(self.images)):
                    raise ConstructionError(
                        f"letter {a!r} outside alphabet 0..{len(self.images) - 1}"
                    )
        if {len(img) for img in self.images} == {1}:
            raise ConstructionError("uniform substitutions must have image length >= 2")

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def letters(self) -> range:
        return range(len(self.images))

    @cached_property
    def uniform_length(self) -> int | None:
        """Common image length M when uniform, else None."""
        lengths = {len(img) for img in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def uniform(self) -> bool:
        return self.uniform_length is not None

    @cached_property
    def left_marked(self) -> bool:
        """Images begin with pairwise distinct letters."""
        return len({img[0] for img in self.images}) == self.size

    @cached_property
    def right_marked(self) -> bool:
        """Images end with pairwise distinct letters."""
        return len({img[-1] for img in self.images}) == self.size

    @property
    def marked(self) -> bool:
        return self.left_marked and self.right_marked

    @cached_property
    def permutive(self) -> bool:
        """At every image position the letters across images form a permutation."""
        if not self.uniform:
            return False
        return all(
            len({img[p] for img in self.images}) == self.size
            for p in range(self.uniform_length)
        )

    @cached_property
    def primitive(self) -> bool:
        # Incidence matrix A[a][b] = occurrences of b in images[a]; the
        # substitution is primitive iff some power up to the Wielandt
        # bound (s-1)^2 + 1 is entrywise positive.
        s = self.size
        mat = [[0] * s for _ in range(s)]
        for a, img in enumerate(self.images):
            for b in img:
                mat[a][b] += 1
        power = [row[:] for row in mat]
        for _ in range((s - 1) ** 2 + 1):
            if all(all(x > 0 for x in row) for row in power):
                return True
            power = [
                [sum(power[a][c] * mat[c][b] for c in range(s)) for b in range(s)]
                for a in range(s)
            ]
        return False

    def image(self, letter: int) -> Word:
        return self.images[letter]

    def apply(self, w: Word) -> Word:
        """Homomorphic image of ``w`` (empty word maps to empty word)."""
        out: list[int] = []
        for a in w:
            out.extend(self.images[a])
        return tuple(out)


def make_substitution(images, alphabet_size: int | None = None) -> Substitution:
    """Build a substitution from per-letter images, validating the alphabet."""
    imgs = tuple(tuple(img) for img in images)
    if alphabet_size is not None and alphabet_size != len(imgs):
        raise ConstructionError(
            f"need exactly one image per letter: got {len(imgs)} images "
            f"for an alphabet of size {alphabet_size}"
        )
    return Substitution(imgs)


def fixed_point_prefix(subst: Substitution, letter: int, n: int) -> Word:
    """Length-``n`` prefix of the fixed point obtained by iterating on ``letter``.

    Requires the image of ``letter`` to start with it and have length at
    least two, so iteration converges letterwise.
    """
    if n < 0:
        raise PreconditionError("prefix length must be nonnegative")
    if not 0 <= letter < subst.size:
        raise PreconditionError(f"letter {letter} outside alphabet")
    img = subst.image(letter)
    if img[0] != letter or len(img) < 2:
        raise PreconditionError(
            f"letter {letter} does not seed a fixed point: its image must "
            "begin with it and have length >= 2"
        )
    w: Word = (letter,)
    while len(w) < n:
        w = subst.apply(w)
    return w[:n]


@dataclass(frozen=True)
class FactorLanguage:
    """The set of length-``n`` factors of the subshift, sorted canonically."""

    n: int
    words: tuple[Word, ...]
    stabilized: bool

    @cached_property
    def word_set(self) -> frozenset[Word]:
        return frozenset(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.word_set

    def __len__(self) -> int:
        return len(self.words)


@lru_cache(maxsize=None)
def language(subst: Substitution, n: int) -> FactorLanguage:
    """All length-``n`` factors of the subshift generated by a primitive substitution.

    Starting from factor sets of iterated images, the map "apply the
    substitution, collect length-n factors" is iterated until the set is
    stable between rounds and a depth floor has been passed.  For a
    primitive substitution the limit is exactly the factor language.
    """
    if n < 0:
        raise PreconditionError("factor length must be nonnegative")
    if not subst.primitive:
        raise UnsupportedInputError(
            "factor language computation requires a primitive substitution"
        )
    if n == 0:
        return FactorLanguage(0, ((),), True)
    current: set[Word] = set()
    for s in subst.letters:
        w: Word = (s,)
        while len(w) < n:
            grown = subst.apply(w)
            if len(grown) == len(w):
                raise InternalConsistencyError("image iteration stopped growing")
            w = grown
        current |= factors(w, n)
    shortest = min(len(img) for img in subst.images)
    min_rounds = math.ceil(math.log(max(n, 2), max(2, shortest))) + 2
    rounds = 0
    while True:
        grown_set = set(current)
        for w in current:
            grown_set |= factors(subst.apply(w), n)
        rounds += 1
        if grown_set == current and rounds >= min_rounds:
            return FactorLanguage(n, tuple(sorted(current)), True)
        current = grown_set


@dataclass(frozen=True)
class PeriodicityProbe:
    """Outcome of the Morse-Hedlund scan up to a bound."""

    periodic: bool
    detected_at: int | None
    bound: int


def default_probe_bound(subst: Substitution) -> int:
    width = subst.uniform_length or max(len(img) for img in subst.images)
    return max(64, width * subst.size * 8)


def periodicity_probe(subst: Substitution, n_max: int | None = None) -> PeriodicityProbe:
    """Detect periodicity via a stalling complexity function.

    The subshift of a primitive substitution is periodic iff the number
    of length-n factors is the same at two consecutive lengths; this
    scans lengths up to the bound and reports the first stall.
    """
    if not subst.primitive:
        raise UnsupportedInputError("periodicity probe requires a primitive substitution")
    bound = default_probe_bound(subst) if n_max is None else n_max
    if bound < 1:
        raise PreconditionError("probe bound must be >= 1")
    prev = len(language(subst, 1))
    for n in range(1, bound + 1):
        cur = len(language(subst, n + 1))
        if cur == prev:
            return PeriodicityProbe(True, n, bound)
        prev = cur
    return PeriodicityProbe(False, None, bound)
