"""Shared fixtures: small groups and the standard calculi on S3."""

import pytest

from finitegeo import calculus, groups


@pytest.fixture(scope="session")
def z3():
    return groups.cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return groups.cyclic(4)


@pytest.fixture(scope="session")
def s3():
    return groups.symmetric(3)


@pytest.fixture(scope="session")
def s3_universal(s3):
    return calculus.universal(s3)


@pytest.fixture(scope="session")
def s3_cycle_calculus(s3):
    """The bicovariant calculus on the two 3-cycles."""
    return calculus.from_hatG(s3, [s3.element_index("ab"), s3.element_index("ba")])


@pytest.fixture(scope="session")
def s3_transposition_calculus(s3):
    """The 3-dimensional bicovariant calculus on the transpositions."""
    return calculus.from_hatG(
        s3, [s3.element_index(x) for x in ("a", "b", "c")]
    )
