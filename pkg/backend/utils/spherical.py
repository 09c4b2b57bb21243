# backend/utils/spherical.py
"""
Kissing Spherical Geometry Helpers
Chordal metric, stereographic projection and closed-form cap diameters.
Exports:
- chordal_distance(z, w)
- stereographic(z) / from_sphere(x)
- cap_diameter(A, B, D) -> spherical diameter of the negative side of a Hermitian circle
"""

import cmath
import math
from typing import Optional, Tuple, Union

import numpy as np

INFINITY = complex(math.inf, 0.0)

ArrayLike = Union[float, np.ndarray]


def is_infinite(z: complex) -> bool:
    return cmath.isinf(z) or cmath.isnan(z)


def chordal_distance(z: complex, w: complex) -> float:
    """
    Chordal metric 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)) on the Riemann sphere
    """
    z_inf, w_inf = is_infinite(z), is_infinite(w)
    if z_inf and w_inf:
        return 0.0
    if z_inf:
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if w_inf:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def stereographic(z: complex) -> Tuple[float, float, float]:
    """Point of the unit sphere over z (north pole = infinity)"""
    if is_infinite(z):
        return (0.0, 0.0, 1.0)
    m = abs(z) ** 2
    return (2.0 * z.real / (m + 1.0), 2.0 * z.imag / (m + 1.0), (m - 1.0) / (m + 1.0))


def from_sphere(x: Tuple[float, float, float]) -> complex:
    x1, x2, x3 = x
    if x3 >= 1.0 - 1e-15:
        return INFINITY
    return complex(x1, x2) / (1.0 - x3)


def cap_diameter(A: ArrayLike, B, D: ArrayLike, discriminant: Optional[ArrayLike] = None) -> ArrayLike:
    """
    Chordal diameter of {A|z|^2 + 2Re(conj(B) z) + D < 0}

    On the sphere the region is the cap {u . x < s} with
    u ~ (2 Re B, 2 Im B, A - D) and s = -(A + D) / |(2B, A - D)|.
    A cap no larger than a hemisphere (s <= 0) has diameter
    2 sqrt(1 - s^2) = 4 sqrt(|B|^2 - AD) / |(2B, A - D)|; anything larger
    contains antipodal points and has diameter 2.

    Pass the discriminant |B|^2 - AD when it is known exactly; recomputing
    it loses every digit for small caps.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    B = np.asarray(B, dtype=complex)
    if discriminant is None:
        discriminant = np.abs(B) ** 2 - A * D
    delta = np.clip(np.asarray(discriminant, dtype=float), 0.0, None)
    norm = np.sqrt(4.0 * np.abs(B) ** 2 + (A - D) ** 2)
    s = -(A + D) / norm
    diameter = np.where(s <= 0.0, np.minimum(4.0 * np.sqrt(delta) / norm, 2.0), 2.0)
    return diameter if diameter.ndim else float(diameter)


__all__ = ['INFINITY', 'is_infinite', 'chordal_distance', 'stereographic', 'from_sphere', 'cap_diameter']
