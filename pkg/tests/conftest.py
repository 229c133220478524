import pytest

from qhowe.template import Templater
from utils_test import _search_path


@pytest.fixture(scope="function")
def templater():
    return Templater()


@pytest.fixture(scope="function")
def fixture_templater():
    return Templater(searchpath=_search_path)
