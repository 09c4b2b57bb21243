#!/usr/bin/env python3
"""
Kissing - Graphs, Kissing Reflection Groups and Anti-Rational Maps
One plane graph, three readings: its circle packing's reflection group,
the principal lamination of d-fold angle doubling, and the critically
fixed anti-rational map with the same combinatorics.

Modules:
- plane_graph: combinatorial plane graphs, Hamiltonian cycles, gluing
- packing: circle packings, Moebius maps, contact certificates
- reflection_group: level disks, limit set, Nielsen map, side tiles
- angle_dynamics: angle maps, laminations, question-mark conjugacy
- antirational: critically fixed anti-rational maps and their portraits
- mating: ray classes, obstructions, matings of outerplanar graphs
"""

from .errors import KissingError

__version__ = "1.0.1"

__all__ = [
    '__version__',
    'KissingError',
    'plane_graph',
    'packing',
    'reflection_group',
    'angle_dynamics',
    'antirational',
    'mating',
]
