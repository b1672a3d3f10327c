"""Reference listing of irreducible winning choice sequences for ``tm``.

The rows below are the reference winning-shift listing for the two-letter
substitution 0 -> 01, 1 -> 10, lengths 1 through 24, in the compressed
form where the wildcard expands to every first letter 1..m (reducible
results are dropped, which only matters at length 1).
"""

from __future__ import annotations

from .words import ChoiceSequence, is_irreducible, parse_choices

WILDCARD = "◇"

THUE_MORSE_ROWS: dict[int, tuple[str, ...]] = {
    1: ("◇",),
    2: ("◇2",),
    3: ("◇12",),
    4: ("◇112", "◇212"),
    5: ("◇1112",),
    6: ("◇11112", "◇21112"),
    7: ("◇111112", "◇121112"),
    8: ("◇1111112",),
    9: ("◇11111112",),
    10: ("◇111111112", "◇211111112"),
    11: ("◇1111111112", "◇1211111112"),
    12: ("◇11111111112", "◇11211111112"),
    13: ("◇111111111112", "◇111211111112"),
    14: ("◇1111111111112",),
    15: ("◇11111111111112",),
    16: ("◇111111111111112",),
    17: ("◇1111111111111112",),
    18: ("◇11111111111111112", "◇21111111111111112"),
    19: ("◇111111111111111112", "◇121111111111111112"),
    20: ("◇1111111111111111112", "◇1121111111111111112"),
    21: ("◇11111111111111111112", "◇11121111111111111112"),
    22: ("◇111111111111111111112", "◇111121111111111111112"),
    23: ("◇1111111111111111111112", "◇1111121111111111111112"),
    24: ("◇11111111111111111111112", "◇11111121111111111111112"),
}


def expand_pattern(pattern: str, m: int) -> frozenset[ChoiceSequence]:
    """Concrete irreducible sequences matching one wildcard pattern."""
    out: set[ChoiceSequence] = set()
    if WILDCARD in pattern:
        for first in range(1, m + 1):
            seq = parse_choices(pattern.replace(WILDCARD, str(first)), m)
            if is_irreducible(seq):
                out.add(seq)
    else:
        seq = parse_choices(pattern, m)
        if is_irreducible(seq):
            out.add(seq)
    return frozenset(out)


def expand_row(n: int, m: int = 2) -> frozenset[ChoiceSequence]:
    """All concrete irreducible sequences of one reference row."""
    out: set[ChoiceSequence] = set()
    for pattern in THUE_MORSE_ROWS[n]:
        out |= expand_pattern(pattern, m)
    return frozenset(out)


def compress(sequences, m: int) -> tuple[str, ...]:
    """Wildcard-compress a set of sequences for table display.

    A suffix group collapses to a wildcard row exactly when every first
    letter 1..m occurs (or, at length 1, when all irreducible first
    letters occur); other groups are listed concretely.
    """
    groups: dict[ChoiceSequence, set[int]] = {}
    for seq in sequences:
        groups.setdefault(tuple(seq[1:]), set()).add(seq[0])
    rows: list[str] = []
    for suffix in sorted(groups):
        firsts = groups[suffix]
        # At length 1 the first letter is also the last, so 1 is reducible
        # and a wildcard row can only ever cover 2..m.
        covered = set(range(1, m + 1)) if suffix else set(range(2, m + 1))
        suffix_text = "".join(str(a) for a in suffix)
        if firsts == covered:
            rows.append(WILDCARD + suffix_text)
        else:
            rows.extend(f"{first}{suffix_text}" for first in sorted(firsts))
    return tuple(rows)
