"""Substitutive structure of winning shifts of marked uniform substitutions.

Past the synchronization delay, every irreducible winning choice
sequence splits into a short head played on image suffixes, stretched
middle blocks played on whole images, and a final letter.  This module
enumerates winning shifts level by level from brute-forced base levels,
transports strategy trees forward (image substitution) and backward
(desubstitution), and checks the structural form of long sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import InternalConsistencyError, PreconditionError, UnsupportedInputError
from .game import (
    StrategyTree,
    max_first_choice,
    member,
    strategy_choice_sequence,
    strategy_plays,
    winning_members,
)
from .recognizability import decomposition, sync_delay
from .substitution import Substitution, language
from .words import ChoiceSequence, Word, is_irreducible, stretch


@dataclass(frozen=True)
class ExtensionPlan:
    """How a target length decomposes: target = head + (base - 2) * M + 1.

    The head length lies in 1..M and is congruent to target - 1 mod M;
    the base length is the largest compatible shorter level.
    """

    target_length: int
    head_length: int
    base_length: int


def extension_plan(target_length: int, block_length: int) -> ExtensionPlan:
    if target_length < 2:
        raise PreconditionError("extension plans start at length 2")
    if block_length < 2:
        raise PreconditionError("block length must be >= 2")
    head = (target_length - 2) % block_length + 1
    base = (target_length - 1 - head) // block_length + 2
    return ExtensionPlan(target_length, head, base)


@dataclass
class LevelData:
    """Irreducible winning sequences of one length, keyed by suffix.

    ``entries`` maps each irreducible suffix u (length n - 1) to
    ``(k, first_choices)``: k is the largest first letter with k.u
    winning, and first_choices is the unique set of letters every
    winning strategy must open with.  The sequences of the level are
    t.u for 1 <= t <= k.
    """

    n: int
    entries: dict[ChoiceSequence, tuple[int, tuple[int, ...]]]
    source: str


def _require_marked(subst: Substitution, what: str) -> int:
    if not subst.uniform:
        raise UnsupportedInputError(f"{what} requires a uniform substitution")
    if not subst.marked:
        raise UnsupportedInputError(
            f"{what} requires a marked substitution (distinct first and last image letters)"
        )
    return subst.uniform_length


def _delay(subst: Substitution) -> int:
    return sync_delay(subst).delay


def _suffix_target(subst: Substitution, first_choices, head: int) -> frozenset[Word]:
    return frozenset(subst.image(c)[len(subst.image(c)) - head:] for c in first_choices)


def head_words_closed_form(k: int, head: int) -> frozenset[ChoiceSequence]:
    """Winning head sequences over image suffixes of a permutive substitution.

    Distinct letters stay distinct at every image position, so the head
    game is won exactly by t 1^(head-1) for t up to the subset size.
    """
    pad = (1,) * (head - 1)
    return frozenset((t,) + pad for t in range(1, k + 1))


def _head_groups(
    subst: Substitution, k: int, first_choices, head: int
) -> dict[ChoiceSequence, tuple[int, tuple[int, ...]]]:
    # Group winning head sequences by everything after their first letter;
    # each group carries its own maximal first letter and first-choice set.
    if subst.permutive:
        next_choices = tuple(
            sorted(subst.image(c)[subst.uniform_length - head] for c in first_choices)
        )
        return {(1,) * (head - 1): (k, next_choices)}
    target = _suffix_target(subst, first_choices, head)
    groups: dict[ChoiceSequence, tuple[int, tuple[int, ...]]] = {}
    for word in winning_members(target):
        tail = word[1:]
        if tail not in groups:
            groups[tail] = max_first_choice(target, tail, alphabet_size=subst.size)
    return groups


@lru_cache(maxsize=None)
def _level(subst: Substitution, n: int) -> LevelData:
    if n < 2:
        raise PreconditionError("level data starts at length 2")
    # length 2 is its own extension base, so it must be solved directly
    if n <= max(_delay(subst), 2):
        return _brute_level(subst, n)
    plan = extension_plan(n, subst.uniform_length)
    base = _level(subst, plan.base_length)
    entries = _extend_entries(subst, base, plan.head_length)
    return LevelData(n, entries, "substitutive")


def _brute_level(subst: Substitution, n: int) -> LevelData:
    target = frozenset(language(subst, n).words)
    seen: dict[ChoiceSequence, int] = {}
    for alpha in winning_members(target):
        if not is_irreducible(alpha):
            continue
        suffix = alpha[1:]
        seen[suffix] = max(seen.get(suffix, 0), alpha[0])
    entries: dict[ChoiceSequence, tuple[int, tuple[int, ...]]] = {}
    for suffix, k in seen.items():
        count, first_choices = max_first_choice(target, suffix, alphabet_size=subst.size)
        if count != k:
            raise InternalConsistencyError("first-choice count disagrees with the winning set")
        entries[suffix] = (k, first_choices)
    return LevelData(n, entries, "brute")


def _extend_entries(
    subst: Substitution, level: LevelData, head: int
) -> dict[ChoiceSequence, tuple[int, tuple[int, ...]]]:
    M = subst.uniform_length
    out: dict[ChoiceSequence, tuple[int, tuple[int, ...]]] = {}
    for suffix, (k, first_choices) in level.entries.items():
        tail = stretch(suffix[:-1], M) + (suffix[-1],)
        for group_tail, entry in _head_groups(subst, k, first_choices, head).items():
            out[group_tail + tail] = entry
    return out


def extend_level(subst: Substitution, level: LevelData, head_length: int) -> frozenset[ChoiceSequence]:
    """All irreducible sequences of length head + (n - 2) * M + 1 from one level."""
    M = _require_marked(subst, "level extension")
    if not 1 <= head_length <= M:
        raise PreconditionError(f"head length must lie in 1..{M}")
    return _expand_entries(_extend_entries(subst, level, head_length))


def _expand_entries(entries) -> frozenset[ChoiceSequence]:
    return frozenset(
        (t,) + suffix
        for suffix, (k, _) in entries.items()
        for t in range(1, k + 1)
        if is_irreducible((t,) + suffix)
    )


def level_data(subst: Substitution, n: int) -> LevelData:
    """Suffix-keyed description of the irreducible sequences of one length."""
    _require_marked(subst, "level data")
    return _level(subst, n)


def enumerate_irreducible(
    subst: Substitution, n: int, method: str = "auto"
) -> frozenset[ChoiceSequence]:
    """All irreducible winning choice sequences of length ``n``.

    ``brute`` solves the game on the full factor language; it works for
    any primitive substitution at desk scale.  ``substitutive`` builds
    levels past the synchronization delay by the head/block extension
    and falls back to brute force on the base window.  ``auto`` picks
    the extension whenever it applies.
    """
    if n < 1:
        raise PreconditionError("length must be >= 1")
    if method not in ("auto", "brute", "substitutive"):
        raise PreconditionError(f"unknown method {method!r}")
    if method == "brute":
        return _enumerate_brute(subst, n)
    if method == "substitutive":
        _require_marked(subst, "substitutive enumeration")
        if n < 2 or n <= _delay(subst):
            return _enumerate_brute(subst, n)
        return _expand_entries(_level(subst, n).entries)
    if subst.uniform and subst.marked and n >= 2 and n > _delay(subst):
        return _expand_entries(_level(subst, n).entries)
    return _enumerate_brute(subst, n)


def _enumerate_brute(subst: Substitution, n: int) -> frozenset[ChoiceSequence]:
    target = frozenset(language(subst, n).words)
    return frozenset(a for a in winning_members(target) if is_irreducible(a))


def choice_decomposition(subst: Substitution, alpha, verify: bool = False) -> int:
    """Image-boundary residue shared by every winning play of ``alpha``.

    For a left-marked substitution the final branching of any winning
    strategy marks a synchronization point, so the residue is forced by
    the length alone.  With ``verify`` the game is solved and every play
    of the extracted strategy is checked against the residue.
    """
    if not subst.uniform:
        raise UnsupportedInputError("choice-sequence decomposition requires a uniform substitution")
    if not subst.left_marked:
        raise UnsupportedInputError(
            "choice-sequence decomposition requires a left-marked substitution"
        )
    alpha = tuple(alpha)
    if not is_irreducible(alpha):
        raise PreconditionError("choice sequence must be irreducible")
    delay = _delay(subst)
    if len(alpha) <= delay:
        raise PreconditionError(f"decomposition needs length > the delay {delay}")
    residue = (len(alpha) - 1) % subst.uniform_length
    if verify:
        target = language(subst, len(alpha)).words
        outcome = member(target, alpha, alphabet_size=subst.size)
        if not outcome.win:
            raise PreconditionError("choice sequence is not in the winning shift")
        for play in strategy_plays(outcome.strategy):
            if decomposition(subst, play) != residue:
                raise InternalConsistencyError(
                    "winning play decomposition disagrees with the predicted residue"
                )
    return residue


def verify_form(subst: Substitution, alpha) -> bool:
    """Check the stretched shape of a long irreducible sequence.

    After dropping the head and the final letter, letters above 1 may
    only sit at block starts, i.e. the remainder is a stretched word.
    """
    if not subst.uniform:
        raise UnsupportedInputError("form check requires a uniform substitution")
    if not subst.left_marked:
        raise UnsupportedInputError("form check requires a left-marked substitution")
    alpha = tuple(alpha)
    if not is_irreducible(alpha):
        raise PreconditionError("choice sequence must be irreducible")
    delay = _delay(subst)
    if len(alpha) <= delay:
        raise PreconditionError(f"form check needs length > the delay {delay}")
    M = subst.uniform_length
    head = (len(alpha) - 1) % M
    body = alpha[head:len(alpha) - 1]
    if len(body) % M:
        raise InternalConsistencyError("body length must be a block multiple")
    return all(x == 1 for p, x in enumerate(body) if p % M)


def _nodes_at_depth(tree: StrategyTree, depth: int) -> list[StrategyTree]:
    level = [tree]
    for _ in range(depth):
        level = [child for node in level for child in node.children.values()]
    return level


def _paths_to_depth(tree: StrategyTree, depth: int) -> list[tuple[Word, StrategyTree]]:
    level: list[tuple[Word, StrategyTree]] = [((), tree)]
    for _ in range(depth):
        level = [
            (prefix + (c,), child)
            for prefix, node in level
            for c, child in node.children.items()
        ]
    return level


def substitute_strategy(
    subst: Substitution, tree: StrategyTree, head_length: int, tail_length: int
) -> list[tuple[ChoiceSequence, StrategyTree]]:
    """Transport a winning strategy through the substitution.

    The long game plays image suffixes of length ``head_length`` first,
    whole images for every middle round of the short strategy, and image
    prefixes of length ``tail_length`` last.  Every combination of
    winning block sequences yields a winning long sequence together with
    a branch-preserving strategy for it.
    """
    if not subst.uniform:
        raise UnsupportedInputError("strategy substitution requires a uniform substitution")
    M = subst.uniform_length
    if not 1 <= head_length <= M or not 1 <= tail_length <= M:
        raise PreconditionError(f"head and tail lengths must lie in 1..{M}")
    base_seq = strategy_choice_sequence(tree)
    n = len(base_seq)
    if n < 2:
        raise PreconditionError("base strategy must have at least two rounds")
    if not strategy_plays(tree) <= language(subst, n).word_set:
        raise PreconditionError("base strategy is not winning for the factor language")
    head_target = _suffix_target(subst, tree.offer, head_length)
    block_choices: list[frozenset[ChoiceSequence]] = [winning_members(head_target)]
    for depth in range(1, n - 1):
        per_node = [
            winning_members(frozenset(subst.image(c) for c in node.offer))
            for node in _nodes_at_depth(tree, depth)
        ]
        block_choices.append(frozenset.intersection(*per_node))
    per_node = [
        winning_members(frozenset(subst.image(c)[:tail_length] for c in node.offer))
        for node in _nodes_at_depth(tree, n - 1)
    ]
    block_choices.append(frozenset.intersection(*per_node))
    results = []
    for blocks in product(*(sorted(choice) for choice in block_choices)):
        beta = sum(blocks, ())
        results.append(
            (beta, _substituted_tree(subst, tree, head_target, tail_length, blocks))
        )
    return sorted(results, key=lambda pair: pair[0])


def _substituted_tree(
    subst: Substitution,
    short: StrategyTree,
    head_target: frozenset[Word],
    tail_length: int,
    blocks,
) -> StrategyTree:
    # Phase 0 plays the head game; phase r >= 1 plays on the images of
    # the offer at short depth r, cut to tail_length in the last phase.
    # Between phases any short play whose image ends with the word built
    # so far is a valid ancestor; the least one keeps output canonical.
    phases = len(blocks)

    def phase_target(phase: int, played: Word) -> frozenset[Word]:
        candidates = [
            prefix
            for prefix, _ in _paths_to_depth(short, phase)
            if subst.apply(prefix)[len(subst.apply(prefix)) - len(played):] == played
        ]
        if not candidates:
            raise InternalConsistencyError("no short play matches the built word")
        node = short
        for c in min(candidates):
            node = node.children[c]
        if phase < phases - 1:
            return frozenset(subst.image(c) for c in node.offer)
        return frozenset(subst.image(c)[:tail_length] for c in node.offer)

    def walk(phase: int, played: Word, node: StrategyTree) -> StrategyTree:
        if node.is_leaf:
            if phase == phases - 1:
                return StrategyTree(())
            outcome = member(
                phase_target(phase + 1, played), blocks[phase + 1], alphabet_size=subst.size
            )
            if not outcome.win:
                raise InternalConsistencyError("block sequence lost a block game")
            return walk(phase + 1, played, outcome.strategy)
        return StrategyTree(
            node.offer,
            {c: walk(phase, played + (c,), child) for c, child in node.children.items()},
        )

    first = member(head_target, blocks[0], alphabet_size=subst.size)
    if not first.win:
        raise InternalConsistencyError("head sequence lost the head game")
    return walk(0, (), first.strategy)


def desubstitute_strategy(subst: Substitution, tree: StrategyTree) -> StrategyTree:
    """Invert the forward substitution on a winning strategy.

    The head rounds contract to a single choice (last image letters are
    distinct), middle blocks desubstitute through exact image lookup,
    and the final letters map through the first-letter permutation.
    """
    M = _require_marked(subst, "strategy desubstitution")
    seq = strategy_choice_sequence(tree)
    total = len(seq)
    if not seq or seq[-1] == 1:
        raise PreconditionError("strategy must realize an irreducible choice sequence")
    delay = _delay(subst)
    if total <= delay:
        raise PreconditionError(f"nothing to desubstitute at or below length {delay}")
    head = (total - 2) % M + 1
    by_last = {subst.image(a)[-1]: a for a in subst.letters}
    by_first = {subst.image(a)[0]: a for a in subst.letters}
    by_image = {subst.image(a): a for a in subst.letters}

    def desub(node: StrategyTree, done: int) -> StrategyTree:
        if done == total - 1:
            for child in node.children.values():
                if not child.is_leaf:
                    raise InternalConsistencyError("final round must end the strategy")
            offer = tuple(sorted(by_first[c] for c in node.offer))
            return StrategyTree(offer, {a: StrategyTree(()) for a in offer})
        children: dict[int, StrategyTree] = {}
        for c in node.offer:
            segment = [c]
            cursor = node.children[c]
            for _ in range(M - 1):
                if len(cursor.offer) != 1:
                    raise InternalConsistencyError("branch inside an image block")
                (d,) = cursor.offer
                segment.append(d)
                cursor = cursor.children[d]
            letter = by_image.get(tuple(segment))
            if letter is None:
                raise InternalConsistencyError("block segment is not an image")
            children[letter] = desub(cursor, done + M)
        return StrategyTree(tuple(sorted(children)), children)

    heads: dict[int, StrategyTree] = {}
    for played, node in _paths_to_depth(tree, head):
        a = by_last.get(played[-1])
        if a is None or subst.image(a)[M - head:] != played:
            raise InternalConsistencyError("head play is not an image suffix")
        heads[a] = desub(node, head)
    return StrategyTree(tuple(sorted(heads)), heads)
