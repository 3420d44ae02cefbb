"""Shaped-photon pitch-and-catch simulator for two cascaded qubit-cavity nodes.

The compiled extension carries the full toolkit: effective two-photon drive
model, scalar Langevin pulse synthesis, the 16-dimensional cascaded master
equation, two-qubit tomography, and the calibration fits.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
