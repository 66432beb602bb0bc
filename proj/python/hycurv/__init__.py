"""Extrinsic curvature integrals on hypersurfaces of hyperbolic space."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # running against a bare build tree
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
