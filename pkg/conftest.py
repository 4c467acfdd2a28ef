"""
KappaLat 테스트 공용 픽스처
figure1.lat 격자(A2 꼬임류), M3, 오각형, S3 약순서, 작은 Nakayama 꼬임류 격자
"""

from pathlib import Path

import pytest

from kappalat.algebra_generators import nakayama_algebra, torsion_classes, weak_order
from kappalat.config import use_settings
from kappalat.corpus import diamond_m3, pentagon_n5
from kappalat.lattice_core import parse_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def reset_settings():
    use_settings(None)
    yield
    use_settings(None)


@pytest.fixture
def figure1_path() -> str:
    return str(FIXTURES / "figure1.lat")


@pytest.fixture
def m3_path() -> str:
    return str(FIXTURES / "m3.lat")


@pytest.fixture
def figure1(figure1_path):
    return parse_document(Path(figure1_path).read_text(encoding="utf-8")).lattice


@pytest.fixture
def m3():
    return diamond_m3()


@pytest.fixture
def pentagon():
    return pentagon_n5()


@pytest.fixture
def s3():
    return weak_order(3)


@pytest.fixture(scope="session")
def tors_a2():
    return torsion_classes(nakayama_algebra(2))


@pytest.fixture(scope="session")
def tors_a3():
    return torsion_classes(nakayama_algebra(3))


@pytest.fixture(scope="session")
def tors_lambda5():
    # kA3 / (경로 1→3)
    return torsion_classes(nakayama_algebra(3, [(1, 3)]))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow corpus sweeps")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long corpus sweep, enabled with --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
