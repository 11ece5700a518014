"""Traveling bore waves of the shallow free-boundary Navier-Stokes system."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # development tree: extension built by CMake outside the package
    import os as _os
    import sys as _sys

    _ext_dir = _os.environ.get("BOREFORGE_EXT_DIR")
    if not _ext_dir:
        raise
    _sys.path.insert(0, _ext_dir)
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
