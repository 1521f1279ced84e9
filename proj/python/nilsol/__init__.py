"""Structure-matrix toolkit for 2-step nilpotent metric Lie algebras:
moment maps, soliton certificates, gradient flows and the example catalogue.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._nilsol import *  # noqa: F401,F403
from ._nilsol import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
