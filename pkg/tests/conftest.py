import pytest

from omhk.fixtures import all_plus, ic842, rank3_shelling, triangle_program
from omhk.matroid import OrientedMatroid


@pytest.fixture(scope="session")
def ic842_om() -> OrientedMatroid:
    return OrientedMatroid.from_chirotope(ic842())


@pytest.fixture(scope="session")
def all_plus84_om() -> OrientedMatroid:
    return OrientedMatroid.from_chirotope(all_plus(8, 4))


@pytest.fixture(scope="session")
def triangle_om() -> OrientedMatroid:
    return OrientedMatroid.from_chirotope(triangle_program())


@pytest.fixture(scope="session")
def shelling_om() -> OrientedMatroid:
    return OrientedMatroid.from_chirotope(rank3_shelling())
