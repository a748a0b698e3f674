# Copyright 2026 The soctherm authors.
# SPDX-License-Identifier: Apache-2.0
"""Multi-core SoC thermal/DVFS co-simulator with a sensor-interface attack layer.

The heavy lifting lives in the `_soctherm` extension module; this package
re-exports its surface.
"""

try:
    from soctherm._soctherm import *  # noqa: F401,F403
    from soctherm._soctherm import __doc__ as _ext_doc
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _soctherm import *  # noqa: F401,F403
    from _soctherm import __doc__ as _ext_doc

__all__ = [name for name in dir() if not name.startswith("_")]
