import pytest

from core.model_factory import builtin


@pytest.fixture(scope="session")
def o6():
    return builtin("o6")


@pytest.fixture(scope="session")
def mo2():
    return builtin("mo2")


@pytest.fixture(scope="session")
def woml20():
    return builtin("woml20")


@pytest.fixture(scope="session")
def free2():
    return builtin("free2")


@pytest.fixture(scope="session")
def boolean4():
    return builtin("boolean_4")
