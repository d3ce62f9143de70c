import pytest

from hurwitzsums.hurwitz import hurwitz_table


@pytest.fixture(scope="session")
def table20k():
    return hurwitz_table(20_000)


@pytest.fixture(scope="session")
def table_big():
    # covers 4p for every p < 10^5, plus room for scanner hold-out primes
    return hurwitz_table(4 * (100_000 + 2_000))
