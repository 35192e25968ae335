"""Gauge map between the two derivative-NLS variants.

Multiplication by the unimodular phase exp(i eps int_x^inf |u|^2 dy); the
modulus is untouched, so the inverse is the same map with the opposite
sign applied to the image.
"""

import numpy as np

from .potentials import Potential


def _tail_integral(x, f):
    """int_x^inf f dy on the grid by right-anchored cumulative trapezoid."""
    dx = x[1] - x[0]
    seg = 0.5 * dx * (f[1:] + f[:-1])
    out = np.zeros_like(f)
    out[:-1] = np.cumsum(seg[::-1])[::-1]
    return out


def gauge_forward(u: Potential, eps=-1):
    """q = G(u): u times exp(i eps int_x^inf |u|^2)."""
    if eps not in (-1, 1):
        raise ValueError("eps must be +-1")
    tail = _tail_integral(u.x, np.abs(u.q) ** 2)
    return Potential(u.x, u.q * np.exp(1j * eps * tail))


def gauge_inverse(q: Potential, eps=-1):
    """u with G(u) = q; |q| = |u| makes the phase integral the same."""
    if eps not in (-1, 1):
        raise ValueError("eps must be +-1")
    tail = _tail_integral(q.x, np.abs(q.q) ** 2)
    return Potential(q.x, q.q * np.exp(-1j * eps * tail))
