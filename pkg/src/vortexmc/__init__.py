"""Random-vortex Monte-Carlo schemes for 2D incompressible viscous flow.

Free-space schemes with external forcing (field-valued and per-particle
noise variants) and wall-bounded half-plane schemes with boundary
vorticity creation, plus the independent oracles used to verify them.
"""

from vortexmc.geometry import perp, reflect

__version__ = "0.1.0"

__all__ = ["perp", "reflect", "__version__"]
