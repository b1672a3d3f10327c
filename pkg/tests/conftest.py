import pytest

from winshift import builtin_substitution, gtm_substitution, make_substitution


@pytest.fixture(scope="session")
def tm():
    return builtin_substitution("tm")


@pytest.fixture(scope="session")
def ex42():
    return builtin_substitution("ex42")


@pytest.fixture(scope="session")
def ex46():
    return builtin_substitution("ex46")


@pytest.fixture(scope="session")
def gtm23():
    return gtm_substitution(2, 3)


@pytest.fixture(scope="session")
def gtm33():
    return gtm_substitution(3, 3)


@pytest.fixture(scope="session")
def gtm42():
    return gtm_substitution(4, 2)


@pytest.fixture(scope="session")
def marked_nonpermutive():
    # first letters 0,1,2 and last letters 1,2,0 are distinct, but the middle
    # column 0,0,1 is not a permutation; synchronization delay is 6
    return make_substitution([(0, 0, 1), (1, 0, 2), (2, 1, 0)])
