# SPDX-License-Identifier: Apache-2.0
import os
import sys

import pytest


@pytest.fixture(scope="session")
def core():
    """The compiled extension, either from the build tree or installed."""
    core_dir = os.environ.get("AEPD_CORE_DIR")
    if core_dir and core_dir not in sys.path:
        sys.path.insert(0, core_dir)
    try:
        import _core  # build-tree layout
        return _core
    except ImportError:
        aepd = pytest.importorskip("aepd")
        return aepd._core


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("AEPD_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("AEPD_CLI not set")
    return path
