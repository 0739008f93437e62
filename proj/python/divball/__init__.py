"""Worst-case expected payoffs over divergence balls.

Thin wrapper around the compiled extension module; see the project README
for the library and CLI tour.
"""

try:
    from ._divball import *  # noqa: F401,F403  (installed package layout)
    from ._divball import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on PYTHONPATH
    from _divball import *  # noqa: F401,F403
    from _divball import __version__  # noqa: F401
