"""Exact intersection theory on normal surfaces and toric varieties."""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _core import *  # noqa: F401,F403  (build-tree layout)

__version__ = "0.1.0"
