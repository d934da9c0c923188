import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from corpus import small_groups, small_quandles, tait as build_tait  # noqa: E402
from permgroup import symmetric_perm_group  # noqa: E402

settings.register_profile("workbench", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("workbench")

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def tait():
    return build_tait()


@pytest.fixture(scope="session")
def S3():
    return symmetric_perm_group(3)


@pytest.fixture(scope="session")
def S4():
    return symmetric_perm_group(4)


@pytest.fixture(scope="session")
def groups():
    return small_groups(12)


@pytest.fixture(scope="session")
def quandles():
    return small_quandles(5)
