import random

import pytest

from winshift import (
    ConstructionError,
    PreconditionError,
    UnsupportedInputError,
    factors,
    fixed_point_prefix,
    language,
    make_substitution,
    parse_word,
    periodicity_probe,
)


def test_tm_classification(tm):
    assert tm.uniform and tm.uniform_length == 2
    assert tm.left_marked and tm.right_marked and tm.marked
    assert tm.permutive
    assert tm.primitive


def test_ex42_classification(ex42):
    assert ex42.uniform and ex42.uniform_length == 3
    assert ex42.left_marked
    assert not ex42.right_marked  # last letters 1, 0, 1
    assert not ex42.marked
    assert ex42.primitive


def test_ex46_classification(ex46):
    assert not ex46.left_marked  # first letters 0, 0, 2
    assert not ex46.permutive
    assert ex46.primitive


def test_permutive_implies_marked(tm, gtm23, gtm33, gtm42):
    for subst in (tm, gtm23, gtm33, gtm42):
        assert subst.permutive
        assert subst.marked and subst.left_marked and subst.right_marked


def test_construction_errors():
    with pytest.raises(ConstructionError):
        make_substitution([(0, 1)])  # single letter alphabet
    with pytest.raises(ConstructionError):
        make_substitution([(0, 1), ()])  # empty image
    with pytest.raises(ConstructionError):
        make_substitution([(0, 2), (1, 0)])  # letter out of range
    with pytest.raises(ConstructionError):
        make_substitution([(0,), (1,)])  # uniform with image length 1
    with pytest.raises(ConstructionError):
        make_substitution([(0, 1), (1, 0)], alphabet_size=3)


def test_nonuniform_construction_is_allowed():
    subst = make_substitution([(0, 1), (0,)])
    assert not subst.uniform
    assert subst.uniform_length is None


def test_apply(tm, ex42):
    assert tm.apply((0, 1)) == (0, 1, 1, 0)
    assert tm.apply(()) == ()
    assert ex42.apply((0, 1)) == (0, 0, 1, 1, 2, 0)


def test_apply_is_homomorphism(tm, ex42):
    rng = random.Random(7)
    for subst in (tm, ex42):
        for _ in range(200):
            u = tuple(rng.randrange(subst.size) for _ in range(rng.randrange(6)))
            v = tuple(rng.randrange(subst.size) for _ in range(rng.randrange(6)))
            assert subst.apply(u + v) == subst.apply(u) + subst.apply(v)


def test_primitivity(tm, ex46):
    assert tm.primitive
    assert not make_substitution([(0, 0), (1, 1)]).primitive
    assert ex46.primitive


def test_fixed_point_prefixes(tm, ex42):
    assert fixed_point_prefix(tm, 0, 16) == parse_word("0110100110010110", 2)
    assert fixed_point_prefix(ex42, 0, 12) == parse_word("001001120001", 3)
    assert fixed_point_prefix(tm, 0, 1) == (0,)
    assert fixed_point_prefix(tm, 1, 4) == parse_word("1001", 2)


def test_fixed_point_requires_matching_first_letter(ex46):
    with pytest.raises(PreconditionError):
        fixed_point_prefix(ex46, 1, 4)  # image of 1 is 010


def test_language_small_cases(tm):
    assert [w for w in language(tm, 2).words] == [
        (0, 0), (0, 1), (1, 0), (1, 1),
    ]
    assert len(language(tm, 3)) == 6
    assert language(tm, 0).words == ((),)


def test_language_matches_long_prefix_scan(tm, ex42):
    # independent oracle: factors of a long fixed-point prefix
    for subst in (tm, ex42):
        prefix = fixed_point_prefix(subst, 0, 600)
        for n in range(1, 7):
            assert set(language(subst, n).words) == factors(prefix, n)


def test_language_factor_closed(tm, ex42, gtm33):
    for subst in (tm, ex42, gtm33):
        for n in range(2, 9):
            longer = language(subst, n).words
            shorter = set(language(subst, n - 1).words)
            for w in longer:
                assert w[:-1] in shorter and w[1:] in shorter


def test_language_sizes_nondecreasing(tm, ex42, ex46):
    for subst in (tm, ex42, ex46):
        sizes = [len(language(subst, n)) for n in range(1, 17)]
        assert sizes == sorted(sizes)
        assert len(set(sizes)) == len(sizes)  # strictly increasing: aperiodic


def test_language_requires_primitive():
    stuck = make_substitution([(0, 0), (1, 1)])
    with pytest.raises(UnsupportedInputError):
        language(stuck, 2)


def test_tm_is_overlap_free(tm):
    # no factor a u a u a: no block of length 2p+1 with period p
    for w in language(tm, 16).words:
        for start in range(len(w)):
            for period in range(1, (len(w) - start) // 2 + 1):
                end = start + 2 * period
                if end < len(w):
                    chunk = w[start:end + 1]
                    assert any(
                        chunk[i] != chunk[i + period] for i in range(period + 1)
                    ), (w, start, period)


def test_periodicity_probe(tm, gtm23):
    assert not periodicity_probe(tm, 16).periodic
    assert not periodicity_probe(gtm23, 16).periodic
    twin = make_substitution([(0, 1), (0, 1)])  # fixed point (01)^w
    probe = periodicity_probe(twin)
    assert probe.periodic and probe.detected_at == 1


def test_periodicity_probe_gtm_periodic_parameters():
    from winshift import gtm_substitution

    probe = periodicity_probe(gtm_substitution(3, 2))
    assert probe.periodic
