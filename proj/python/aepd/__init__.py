# SPDX-License-Identifier: Apache-2.0
"""Active element pattern estimation for planar antenna arrays.

Estimates every active element pattern of an nx-by-ny dipole array from two
1-D full-wave solves plus one isolated-element solve, and provides the full
2-D solver as a reference oracle.
"""

from aepd._core import *  # noqa: F401,F403
from aepd import _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
