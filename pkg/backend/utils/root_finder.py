# backend/utils/root_finder.py
"""
Kissing Polynomial Root Finder
Simultaneous Aberth iteration in numpy, multiplicity clustering, and Newton
polishing in mpmath.
Exports:
- find_roots(coeffs) -> list of Root(value, multiplicity, residual)
- relative_residual(coeffs, z)
Coefficients are ascending: coeffs[i] multiplies z**i.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath as mp
import numpy as np
from numpy.polynomial import polynomial as P

logger = logging.getLogger(__name__)

COARSE_RADIUS = 1e-4
POLISH_DPS = 60


@dataclass
class Root:
    value: complex
    multiplicity: int
    residual: float


def trim(coeffs: Sequence[complex]) -> np.ndarray:
    """Drop vanishing leading (highest-degree) coefficients"""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise ValueError("Zero polynomial has no roots")
    last = c.size - 1
    while last > 0 and abs(c[last]) <= 1e-15 * scale:
        last -= 1
    return c[:last + 1]


def relative_residual(coeffs: Sequence[complex], z: complex) -> float:
    """|p(z)| / sum |a_i| |z|^i evaluated in extended precision"""
    with mp.workdps(POLISH_DPS):
        zz = mp.mpc(z)
        value = mp.polyval([mp.mpc(a) for a in reversed(list(coeffs))], zz)
        scale = mp.polyval([mp.mpf(abs(a)) for a in reversed(list(coeffs))], abs(zz))
        if scale == 0:
            return 0.0
        return float(abs(value) / scale)


def aberth(coeffs: np.ndarray, seed: int = 0, tol: float = 1e-15, max_iter: int = 2000) -> np.ndarray:
    """
    All roots of a polynomial with nonzero constant term

    Initial guesses sit on the circle of radius |a_0/a_n|^(1/n) with a seeded
    random phase so symmetric polynomials do not stall.
    """
    n = coeffs.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    radius = np.exp(np.log(abs(coeffs[0]) / abs(coeffs[-1])) / n)
    phase = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi)
    x = radius * np.exp(1j * (2.0 * np.pi * np.arange(n) / n + phase + 0.25))
    deriv = P.polyder(coeffs)
    for iteration in range(max_iter):
        p = P.polyval(x, coeffs)
        dp = P.polyval(x, deriv)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            delta = w / (1.0 - w * inv.sum(axis=1))
        delta = np.where(np.isfinite(delta), delta, 0.0)
        x = x - delta
        if np.all(np.abs(delta) <= tol * np.maximum(1.0, np.abs(x))):
            logger.debug(f"Aberth converged after {iteration + 1} iterations (n={n})")
            break
    return x


def _group(points: np.ndarray, radius: float) -> List[List[int]]:
    groups: List[List[int]] = []
    for i, z in enumerate(points):
        for group in groups:
            if any(abs(z - points[j]) <= radius * max(1.0, abs(z)) for j in group):
                group.append(i)
                break
        else:
            groups.append([i])
    return groups


def _polish(coeffs: np.ndarray, z: complex, multiplicity: int) -> complex:
    """Newton on the (m-1)-th derivative, where a root of multiplicity m is simple"""
    poly = coeffs
    for _ in range(multiplicity - 1):
        poly = P.polyder(poly)
    with mp.workdps(POLISH_DPS):
        desc = [mp.mpc(a) for a in reversed(list(poly))]
        dpoly = [mp.mpc(a) for a in reversed(list(P.polyder(poly)))] if poly.size > 1 else [mp.mpc(0)]
        zz = mp.mpc(z)
        for _ in range(8):
            derivative = mp.polyval(dpoly, zz)
            if derivative == 0:
                break
            step = mp.polyval(desc, zz) / derivative
            zz -= step
            if abs(step) < mp.mpf(10) ** (-POLISH_DPS // 2):
                break
        return complex(zz)


def find_roots(
    coeffs: Sequence[complex],
    seed: int = 0,
    cluster_radius: float = 1e-6,
) -> List[Root]:
    """
    Distinct roots with multiplicities

    Args:
        coeffs: Ascending coefficients
        seed: Phase seed for the initial guesses
        cluster_radius: Roots closer than this (relative) after polishing merge

    Returns:
        Roots ordered by (real, imag)
    """
    c = trim(coeffs)
    zeros = 0
    while zeros < c.size - 1 and c[zeros] == 0:
        zeros += 1
    reduced = c[zeros:]

    raw = aberth(reduced, seed=seed)
    found: List[Root] = []
    for group in _group(raw, COARSE_RADIUS):
        m = len(group)
        center = complex(np.mean(raw[group]))
        value = _polish(reduced, center, m)
        found.append(Root(value, m, relative_residual(c, value)))
    if zeros:
        found.append(Root(0j, zeros, 0.0))

    merged: List[Root] = []
    for root in found:
        for other in merged:
            if abs(root.value - other.value) <= cluster_radius * max(1.0, abs(root.value)):
                other.multiplicity += root.multiplicity
                other.residual = max(other.residual, root.residual)
                break
        else:
            merged.append(root)
    merged.sort(key=lambda r: (round(r.value.real, 9), round(r.value.imag, 9)))
    return merged


def max_residual(roots: Sequence[Root], default: Optional[float] = 0.0) -> float:
    return max((r.residual for r in roots), default=default)


__all__ = ['Root', 'trim', 'relative_residual', 'aberth', 'find_roots', 'max_residual']
