import pytest

from semwalk import Alphabet, enumerate_all, validate


@pytest.fixture(scope="session")
def ab():
    return Alphabet("ab")


@pytest.fixture(scope="session")
def five_class(ab):
    """The five-class running example on A^3: not special, resets {aa, ab}."""
    W = ab.word
    return validate(
        ab,
        3,
        [[W("aaa"), W("baa"), W("aba")], [W("bba")], [W("aab"), W("bab")], [W("abb")], [W("bbb")]],
    )


@pytest.fixture(scope="session")
def five_class_variant(ab):
    """Same resets and same block lcs ideal as five_class, but a different relation."""
    W = ab.word
    return validate(
        ab,
        3,
        [[W("aaa"), W("bba"), W("baa")], [W("bab"), W("aab")], [W("abb")], [W("aba")], [W("bbb")]],
    )


@pytest.fixture(scope="session")
def four_class(ab):
    """The special congruence with code {a, ab, abb, bbb}; hitting time 7/4
    at the uniform distribution."""
    W = ab.word
    return validate(
        ab,
        3,
        [[W("aaa"), W("baa"), W("aba"), W("bba")], [W("aab"), W("bab")], [W("abb")], [W("bbb")]],
    )


@pytest.fixture(scope="session")
def rc_a2(ab):
    return enumerate_all(ab, 2)


@pytest.fixture(scope="session")
def rc_a3(ab):
    return enumerate_all(ab, 3)
