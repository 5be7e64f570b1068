"""Geodesics of the sub-Lorentzian Engel group.

Group law and frame in :mod:`engel_slr.core`, elliptic functions in
:mod:`engel_slr.special`, the Hamiltonian system in
:mod:`engel_slr.hamiltonian`, closed-form geodesics in
:mod:`engel_slr.geodesics` and the reachable-set families in
:mod:`engel_slr.reachability`.
"""

__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .geodesics import *  # noqa: F401,F403
from .geodesics import __all__ as _geo_all
from .hamiltonian import *  # noqa: F401,F403
from .hamiltonian import __all__ as _ham_all
from .reachability import *  # noqa: F401,F403
from .reachability import __all__ as _reach_all

__all__ = ["__version__", *_core_all, *_ham_all, *_geo_all, *_reach_all]
