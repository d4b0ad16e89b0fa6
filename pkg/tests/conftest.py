"""
공용 pytest 픽스처
번들 명세 파일을 읽어 해석된 명세와 군을 제공한다.
"""
import pytest

from algebra import get_field
from algebra.poly import PolyRing
from utils.spec_parser import load_fixture, resolve_spec


def _resolved(name):
    return resolve_spec(load_fixture(name))


@pytest.fixture(scope="session")
def shank_wehlau():
    return _resolved("shank_wehlau")


@pytest.fixture(scope="session")
def stong_p2():
    return _resolved("stong_p2")


@pytest.fixture(scope="session")
def stong_p3():
    return _resolved("stong_p3")


@pytest.fixture(scope="session")
def example_main_p2():
    return _resolved("example_main_p2")


@pytest.fixture(scope="session")
def example_main_p3():
    return _resolved("example_main_p3")


@pytest.fixture
def gf2_ring():
    """GF(2)[x1, x2, x3, x4]"""
    return PolyRing(get_field(2), 4)


@pytest.fixture
def gf3_ring():
    """GF(3)[x1, x2, x3]"""
    return PolyRing(get_field(3), 3)
