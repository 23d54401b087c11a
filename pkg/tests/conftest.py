"""Shared fixtures. The engine caches its heavyweight objects at module
level, so these are thin handles that also make test dependencies explicit."""
import pytest

from so41inv.sym_ext import build_st_catalog
from so41inv.tensor_algebra import accepted_catalog, adjudicate_convention


@pytest.fixture(scope="session")
def adjudication():
    return adjudicate_convention()


@pytest.fixture(scope="session")
def cat(adjudication):
    return accepted_catalog()


@pytest.fixture(scope="session")
def st():
    return build_st_catalog()
