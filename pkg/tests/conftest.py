import pytest

from pochzeta import PrecisionContext, bundled_zeros, first_n_primes


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30, 10)


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext(20, 10)


@pytest.fixture(scope="session")
def zeros100():
    return bundled_zeros()


@pytest.fixture(scope="session")
def primes5000():
    return first_n_primes(5000)
