"""Inverse scattering transform engine for the derivative NLS equation.

Direct map, contour-augmented Riemann-Hilbert solves, time evolution and
reconstruction, plus an independent pseudo-spectral PDE integrator used as
a verification oracle.
"""

__version__ = "0.1.0"
