import pytest

from winshift import (
    PreconditionError,
    UnsupportedInputError,
    branch_profile,
    choice_decomposition,
    desubstitute_strategy,
    enumerate_irreducible,
    extend_level,
    extension_plan,
    language,
    level_data,
    member,
    parse_choices,
    strategy_choice_sequence,
    stretch,
    substitute_strategy,
    sync_delay,
    validate_strategy,
    verify_form,
)
from winshift.tm_reference import expand_row


def rows(texts, m=2):
    return frozenset(parse_choices(t, m) for t in texts)


def test_extension_plan():
    plan = extension_plan(5, 2)
    assert (plan.head_length, plan.base_length) == (2, 3)
    assert extension_plan(8, 2).base_length == 5
    assert extension_plan(9, 4).base_length == 3  # head 4, one middle block
    for n in range(2, 40):
        for M in (2, 3, 4):
            plan = extension_plan(n, M)
            assert 1 <= plan.head_length <= M
            assert plan.head_length + (plan.base_length - 2) * M + 1 == n


def test_brute_level_entries_tm(tm):
    level = level_data(tm, 4)
    assert level.source == "brute"
    assert level.entries == {
        (1, 1, 2): (2, (0, 1)),
        (2, 1, 2): (2, (0, 1)),
    }


def test_extend_level_reproduces_reference_rows(tm):
    level = level_data(tm, 4)
    # head 2 lands on length 7, head 1 on length 6; both reproduce the table
    assert extend_level(tm, level, 2) == rows(
        ["1111112", "2111112", "1121112", "2121112"]
    )
    assert extend_level(tm, level, 1) == rows(
        ["111112", "211112", "121112", "221112"]
    )


def test_enumerate_matches_reference_table(tm):
    for n in range(1, 13):
        assert enumerate_irreducible(tm, n, "brute") == expand_row(n)
    for n in range(1, 25):
        assert enumerate_irreducible(tm, n, "substitutive") == expand_row(n)


def test_enumerate_named_rows(tm, ex42):
    assert enumerate_irreducible(tm, 10) == rows(
        ["1111111112", "2111111112", "1211111112", "2211111112"]
    )
    assert enumerate_irreducible(tm, 14) == rows(["11111111111112", "21111111111112"])
    assert len(enumerate_irreducible(ex42, 14, "brute")) == 5


def test_substitutive_equals_brute_past_delay(tm, gtm23, gtm33, marked_nonpermutive):
    for subst in (tm, gtm23, gtm33, marked_nonpermutive):
        delay = sync_delay(subst).delay
        M = subst.uniform_length
        for n in range(delay + 1, delay + 2 * M + 1):
            assert enumerate_irreducible(subst, n, "substitutive") == enumerate_irreducible(
                subst, n, "brute"
            ), (subst.images, n)


def test_substitutive_recursion_depth_two(marked_nonpermutive):
    # lengths 17 and 18 decompose onto base level 7, itself past the delay 6,
    # so the extension recurses through a non-brute level
    subst = marked_nonpermutive
    for n in (17, 18):
        plan = extension_plan(n, subst.uniform_length)
        assert plan.base_length > sync_delay(subst).delay
        assert enumerate_irreducible(subst, n, "substitutive") == enumerate_irreducible(
            subst, n, "brute"
        )


def test_substitutive_requires_marked(ex42, ex46):
    for subst in (ex42, ex46):
        with pytest.raises(UnsupportedInputError):
            enumerate_irreducible(subst, 14, "substitutive")
        # auto silently falls back to brute force
        assert enumerate_irreducible(subst, 6, "auto") == enumerate_irreducible(
            subst, 6, "brute"
        )


def test_head_words_closed_form_matches_solver(gtm33, gtm42, marked_nonpermutive):
    from winshift.game import winning_members
    from winshift.shift import _suffix_target, head_words_closed_form

    for subst in (gtm33, gtm42):
        letters = tuple(subst.letters)
        M = subst.uniform_length
        for size in range(1, subst.size + 1):
            chosen = letters[:size]
            for head in range(1, M + 1):
                target = _suffix_target(subst, chosen, head)
                assert winning_members(target) == head_words_closed_form(size, head)
    # the closed form is specific to permutive substitutions
    target = _suffix_target(marked_nonpermutive, (0, 1, 2), 2)
    assert winning_members(target) != head_words_closed_form(3, 2)


def test_choice_decomposition(tm, ex42, ex46):
    alpha = parse_choices("12111111111112", 3)
    assert choice_decomposition(ex42, alpha, verify=True) == 1
    assert choice_decomposition(tm, parse_choices("2121112", 2), verify=True) == 0
    assert choice_decomposition(tm, (1,) * 7 + (2,)) == 1
    with pytest.raises(UnsupportedInputError):
        choice_decomposition(ex46, parse_choices("3111112", 3))
    with pytest.raises(PreconditionError):
        choice_decomposition(tm, (2, 2, 1, 2))  # not past the delay
    with pytest.raises(PreconditionError):
        choice_decomposition(tm, (2, 1, 2, 1, 1, 1, 2, 1))  # reducible


def test_verify_form(tm):
    assert verify_form(tm, parse_choices("2121112", 2))
    assert verify_form(tm, (1,) + parse_choices("1111121111111111111112", 2))
    assert not verify_form(tm, (2, 2, 1, 1, 2))
    with pytest.raises(PreconditionError):
        verify_form(tm, (2, 2, 1, 2))


def test_enumerated_sequences_satisfy_form_and_decomposition(tm, gtm23, gtm33):
    for subst in (tm, gtm23, gtm33):
        delay = sync_delay(subst).delay
        M = subst.uniform_length
        for n in range(delay + 1, delay + 2 * M + 1):
            for alpha in enumerate_irreducible(subst, n):
                assert verify_form(subst, alpha)
                assert choice_decomposition(subst, alpha) == (n - 1) % M


def test_substitute_strategy_fig_sequences(tm):
    base = member(language(tm, 4).words, (2, 2, 1, 2)).strategy
    produced = dict(substitute_strategy(tm, base, 2, 2))
    long_seq = parse_choices("21211121", 2)
    assert long_seq in produced
    tree = produced[long_seq]
    assert validate_strategy(tree, language(tm, 8).words)
    assert strategy_choice_sequence(tree) == long_seq
    shorter = dict(substitute_strategy(tm, base, 1, 2))
    assert parse_choices("2211121", 2) in shorter


def test_substitute_strategy_outputs_all_win(tm, gtm23):
    for subst, n in ((tm, 4), (gtm23, 3)):
        X = language(subst, n).words
        target_rows = sorted(enumerate_irreducible(subst, n))[:3]
        for alpha in target_rows:
            base = member(X, alpha, alphabet_size=subst.size).strategy
            M = subst.uniform_length
            for head in range(1, M + 1):
                for tail in range(1, M + 1):
                    for beta, tree in substitute_strategy(subst, base, head, tail):
                        size = head + (n - 2) * M + tail
                        assert len(beta) == size
                        assert validate_strategy(tree, language(subst, size).words)


def test_degenerate_substitution_forces_ones(tm):
    # a branchless base strategy yields all-1 middle blocks
    base = member(frozenset({(0, 1, 1)}), (1, 1, 1)).strategy
    for beta, _ in substitute_strategy(tm, base, 1, 1):
        assert set(beta[1:-1]) <= {1}


def test_desubstitute_inverts_known_pair(tm):
    long_tree = member(language(tm, 7).words, parse_choices("2121112", 2)).strategy
    back = desubstitute_strategy(tm, long_tree)
    assert strategy_choice_sequence(back) == (2, 2, 1, 2)
    assert validate_strategy(back, language(tm, 4).words)


def test_desubstitute_rejects_unmarked(ex42):
    alpha = parse_choices("12111111111112", 3)
    tree = member(language(ex42, 14).words, alpha, alphabet_size=3).strategy
    with pytest.raises(UnsupportedInputError):
        desubstitute_strategy(ex42, tree)


def test_round_trip_preserves_branch_structure(tm, gtm33):
    for subst, n in ((tm, 4), (gtm33, 4)):
        X = language(subst, n).words
        M = subst.uniform_length
        for alpha in sorted(enumerate_irreducible(subst, n))[:4]:
            base = member(X, alpha, alphabet_size=subst.size).strategy
            for head in range(1, M + 1):
                canonical = (
                    (alpha[0],) + (1,) * (head - 1) + stretch(alpha[1:-1], M) + (alpha[-1],)
                )
                for beta, tree in substitute_strategy(subst, base, head, 1):
                    if beta[-1] == 1 or len(beta) <= sync_delay(subst).delay:
                        continue
                    back = desubstitute_strategy(subst, tree)
                    # block letters of the long sequence come back out
                    assert strategy_choice_sequence(back) == (beta[0],) + beta[head::M]
                    assert validate_strategy(back, X)
                    if beta == canonical:
                        assert branch_profile(back) == branch_profile(base)


def test_bounded_branching_tm(tm):
    # every winning sequence carries at most three letters above 1
    seen = set()
    for n in range(1, 25):
        for alpha in enumerate_irreducible(tm, n):
            seen.add(sum(1 for a in alpha if a > 1))
    assert max(seen) == 3


def test_tm_closure_rule(tm):
    # from d w 2 winning also d stretch(w) 2 and stretch(d w) 2 are winning
    for n in range(2, 13):
        for alpha in enumerate_irreducible(tm, n):
            head, middle, last = alpha[0], alpha[1:-1], alpha[-1]
            assert last == 2
            first = (head,) + stretch(middle, 2) + (2,)
            second = stretch((head,) + middle, 2) + (2,)
            assert first in enumerate_irreducible(tm, len(first))
            assert second in enumerate_irreducible(tm, len(second))
