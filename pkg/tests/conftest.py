import pytest

from powres import build_prime_context


@pytest.fixture(scope="session")
def ctx7():
    return build_prime_context(7)


@pytest.fixture(scope="session")
def ctx11():
    return build_prime_context(11)


@pytest.fixture(scope="session")
def ctx13():
    return build_prime_context(13)
