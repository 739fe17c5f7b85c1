import pytest

from qsweedler import FinSet, builtin


@pytest.fixture(scope="session")
def boolq():
    return builtin("bool")


@pytest.fixture(scope="session")
def godel3():
    return builtin("godel", 3)


@pytest.fixture(scope="session")
def luk3():
    return builtin("lukasiewicz", 3)


@pytest.fixture(params=[("bool", 2), ("godel", 3), ("lukasiewicz", 3), ("godel", 4), ("lukasiewicz", 5)],
                ids=lambda p: f"{p[0]}{p[1]}")
def anyq(request):
    return builtin(*request.param)


def fs(name, *elems):
    return FinSet(name, elems)
