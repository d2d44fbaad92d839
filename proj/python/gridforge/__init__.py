"""Secure job-grouping grid scheduling simulator.

The compiled extension carries the whole public surface; this package
re-exports it. When running from a build tree the extension sits next to
the build products instead of inside the package, hence the fallback.
"""

try:
    from gridforge._core import *  # noqa: F401,F403
    from gridforge._core import __doc__ as _core_doc
except ImportError:  # build tree: _core is on PYTHONPATH directly
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
