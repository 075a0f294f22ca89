import pytest

from src import config
from src.constructions import FamilySpec, build_bn, build_family
from src.graph_core import build


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("DATABASE_PATH", str(tmp_path / "catalog_cache.db"))
    monkeypatch.setenv("TOOLKIT_CACHE", "0")
    monkeypatch.setenv("TOOLKIT_THREADS", "1")
    config.reset_settings()
    yield
    config.reset_settings()


@pytest.fixture
def star3():
    return build_family(FamilySpec("star", (3,)))


@pytest.fixture
def p4():
    return build_family(FamilySpec("path", (4,)))


@pytest.fixture
def c6():
    return build_family(FamilySpec("cycle", (6,)))


@pytest.fixture
def k33():
    return build_family(FamilySpec("complete_bipartite", (3, 3)))


@pytest.fixture
def petersen():
    return build_family(FamilySpec("petersen"))


@pytest.fixture
def b6():
    return build_bn(6)[0]


@pytest.fixture
def b8():
    return build_bn(8)[0]


@pytest.fixture
def b9():
    return build_bn(9)[0]


@pytest.fixture
def two_edges():
    return build(4, [(0, 1), (2, 3)])
