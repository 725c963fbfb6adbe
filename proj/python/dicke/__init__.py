"""Spectrum, entanglement structure, and trapping states of the two-qubit
Dicke model and its ion-trap variant.

The heavy lifting lives in the compiled extension ``dicke._dicke``; this
package re-exports its public surface.
"""

from ._dicke import *  # noqa: F401,F403
from ._dicke import __version__  # noqa: F401
