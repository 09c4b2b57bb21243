#!/usr/bin/env python3
"""
Kissing - Angle Dynamics
Exact rational dynamics of θ -> -dθ on the circle: fixed angles, 2-cycles,
itineraries, principal laminations of outerplanar graphs and the
question-mark conjugacy onto the Nielsen map of the polygon group.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from config import get_settings

from .errors import (
    AdjacentVertices,
    BoundaryHit,
    DegenerateLeaf,
    DegreeTooSmall,
    DepthInsufficient,
    DocumentError,
    LeafNotFound,
    LinkedLeaves,
    NonInvariantLamination,
)
from .packing import Moebius, regular_polygon_packing
from .plane_graph import PlaneGraph, chords, require_labelled_outerplanar
from .reflection_group import generators

logger = logging.getLogger(__name__)

AngleLike = Union[Fraction, int, str]

NESTED_WIDTH = 1e-9


# ============================================================================
# ANGLES
# ============================================================================

def angle(value: AngleLike) -> Fraction:
    """Reduced fraction in [0, 1)"""
    return Fraction(value) % 1


def _require_degree(d: int) -> None:
    if d < 2:
        raise DegreeTooSmall(f"Angle dynamics need d >= 2, got {d}")


def angle_map(theta: AngleLike, d: int) -> Fraction:
    """θ -> -dθ mod 1"""
    return (-d * angle(theta)) % 1


def fixed_angles(d: int) -> List[Fraction]:
    _require_degree(d)
    return [Fraction(j, d + 1) for j in range(d + 1)]


def arc_index(theta: AngleLike, d: int) -> Optional[int]:
    """j with θ in A_j = (j/(d+1), (j+1)/(d+1)); None on an endpoint"""
    scaled = angle(theta) * (d + 1)
    if scaled.denominator == 1:
        return None
    return math.floor(scaled)


def rotate_angle(theta: AngleLike, k: int, d: int) -> Fraction:
    return (angle(theta) + Fraction(k, d + 1)) % 1


# ============================================================================
# LEAVES AND LAMINATIONS
# ============================================================================

@dataclass(frozen=True, order=True)
class Leaf:
    """Unordered pair of distinct angles, stored low < high"""
    low: Fraction
    high: Fraction

    @classmethod
    def of(cls, a: AngleLike, b: AngleLike) -> "Leaf":
        x, y = angle(a), angle(b)
        if x == y:
            raise DegenerateLeaf(f"Leaf endpoints coincide at {x}", {"angle": str(x)})
        return cls(min(x, y), max(x, y))

    @property
    def angles(self) -> Tuple[Fraction, Fraction]:
        return (self.low, self.high)

    def links(self, other: "Leaf") -> bool:
        """True when the two chords cross inside the disk"""
        if set(self.angles) & set(other.angles):
            return False
        inside = [self.low < t < self.high for t in other.angles]
        return inside[0] != inside[1]

    def __str__(self) -> str:
        return f"{{{self.low}, {self.high}}}"


@dataclass(frozen=True)
class Lamination:
    degree: int
    leaves: FrozenSet[Leaf] = frozenset()
    singletons: FrozenSet[Fraction] = frozenset()

    def sorted_leaves(self) -> List[Leaf]:
        return sorted(self.leaves)

    def sorted_singletons(self) -> List[Fraction]:
        return sorted(self.singletons)

    def angles(self) -> List[Fraction]:
        found = set(self.singletons)
        for leaf in self.leaves:
            found.update(leaf.angles)
        return sorted(found)


def check_lamination(lam: Lamination) -> None:
    """
    Raise unless the leaves are pairwise unlinked and every leaf and singleton
    maps into the lamination.
    """
    leaves = lam.sorted_leaves()
    for i, a in enumerate(leaves):
        for b in leaves[i + 1:]:
            if a.links(b):
                raise LinkedLeaves(f"Leaves {a} and {b} cross", {"leaves": [str(a), str(b)]})
    for leaf in leaves:
        x, y = (angle_map(t, lam.degree) for t in leaf.angles)
        if x == y:
            if x not in lam.singletons:
                raise NonInvariantLamination(f"Leaf {leaf} collapses to {x}, which is not a singleton")
        elif Leaf.of(x, y) not in lam.leaves:
            raise NonInvariantLamination(f"Image of leaf {leaf} is not a leaf")
    for t in lam.singletons:
        image = angle_map(t, lam.degree)
        if image not in lam.singletons and not any(image in leaf.angles for leaf in lam.leaves):
            raise NonInvariantLamination(f"Image of singleton {t} leaves the lamination")


def two_cycles(d: int) -> List[Leaf]:
    """All {θ, -dθ} with θ of exact period 2, by exact search over m/(d^2-1)"""
    _require_degree(d)
    q = d * d - 1
    cycles = set()
    for m in range(q):
        theta = Fraction(m, q)
        image = angle_map(theta, d)
        if image != theta and angle_map(image, d) == theta:
            cycles.add(Leaf.of(theta, image))
    return sorted(cycles)


def leaf_for_chord(d: int, i: int, j: int) -> Leaf:
    """
    The 2-cycle with one angle in A_i and the other in A_j

    Args:
        d: Degree
        i, j: Non-adjacent vertices of the (d+1)-cycle

    Returns:
        Leaf landing at the fixed point created by pinching chord {i, j}
    """
    _require_degree(d)
    i, j = sorted((int(i), int(j)))
    m = d + 1
    if not 0 <= i < j <= d:
        raise AdjacentVertices(f"Chord {{{i},{j}}} out of range for d={d}")
    if (j - i) % m in (1, m - 1):
        raise AdjacentVertices(f"Vertices {i} and {j} are adjacent on the outer cycle")
    for leaf in two_cycles(d):
        arcs = sorted(arc_index(t, d) for t in leaf.angles)
        if arcs == [i, j]:
            return leaf
    raise LeafNotFound(f"No 2-cycle for chord {{{i},{j}}} at d={d}")


def lamination_of(g: PlaneGraph) -> Lamination:
    """Principal lamination of the critically fixed anti-polynomial of g"""
    require_labelled_outerplanar(g, "lamination")
    d = g.n - 1
    leaves = frozenset(leaf_for_chord(d, i, j) for i, j in chords(g))
    lam = Lamination(d, leaves, frozenset(fixed_angles(d)))
    check_lamination(lam)
    logger.debug(f"Lamination of {g!r}: {[str(leaf) for leaf in lam.sorted_leaves()]}")
    return lam


def mirror(lam: Lamination) -> Lamination:
    """θ -> -θ on every angle"""
    leaves = frozenset(Leaf.of(-leaf.low, -leaf.high) for leaf in lam.leaves)
    return Lamination(lam.degree, leaves, frozenset(angle(-t) for t in lam.singletons))


def rotate(lam: Lamination, k: int) -> Lamination:
    """Rotation by k/(d+1); commutes with θ -> -dθ"""
    d = lam.degree
    leaves = frozenset(Leaf.of(rotate_angle(leaf.low, k, d), rotate_angle(leaf.high, k, d))
                       for leaf in lam.leaves)
    return Lamination(d, leaves, frozenset(rotate_angle(t, k, d) for t in lam.singletons))


# ============================================================================
# ORBITS AND ITINERARIES
# ============================================================================

@dataclass
class Orbit:
    """θ_0, ..., θ_{preperiod + period - 1}; θ_{preperiod + period} = θ_preperiod"""
    points: List[Fraction]
    preperiod: int
    period: int


def orbit(theta: AngleLike, d: int, cap: Optional[int] = None) -> Orbit:
    cap = get_settings().orbit_cap if cap is None else cap
    seen: Dict[Fraction, int] = {}
    points: List[Fraction] = []
    current = angle(theta)
    while current not in seen:
        if len(points) >= cap:
            raise DepthInsufficient(f"Orbit of {theta} longer than {cap}")
        seen[current] = len(points)
        points.append(current)
        current = angle_map(current, d)
    start = seen[current]
    return Orbit(points, start, len(points) - start)


@dataclass
class Itinerary:
    symbols: List[int]
    boundary_hit: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        hit = None
        if self.boundary_hit is not None:
            hit = {"step": self.boundary_hit[0], "index": self.boundary_hit[1]}
        return {"symbols": self.symbols, "boundary_hit": hit}


def angle_itinerary(theta: AngleLike, d: int, steps: int, strict: bool = False) -> Itinerary:
    """
    Arc indices of θ, -dθ, (-d)^2 θ, ...

    Iteration stops at the first iterate equal to some j/(d+1); the step and j
    are reported in boundary_hit (or raised as BoundaryHit when strict).
    """
    _require_degree(d)
    symbols: List[int] = []
    current = angle(theta)
    for step in range(steps):
        index = arc_index(current, d)
        if index is None:
            hit = int(current * (d + 1))
            if strict:
                raise BoundaryHit(step, hit)
            return Itinerary(symbols, (step, hit))
        symbols.append(index)
        current = angle_map(current, d)
    return Itinerary(symbols)


# ============================================================================
# QUESTION-MARK CONJUGACY
# ============================================================================

def _attracting_fixed_point(w: Moebius) -> complex:
    (a, b), (c, dd) = w.matrix
    if abs(c) < 1e-14:
        return b / (dd - a) if abs(dd / a) > 1.0 else complex(math.inf, 0.0)
    candidates = w.fixed_points()
    return min(candidates, key=lambda z: abs(c * z + dd) ** -2)


def question_mark(theta: AngleLike, d: int, depth: Optional[int] = None) -> complex:
    """
    φ(θ) on the limit set (the unit circle) of the polygon group

    Without depth the value is exact up to rounding: a boundary-hitting θ is
    pulled back from its cusp, a periodic tail uses the attracting fixed point
    of its cycle word. With depth, the nested level disk along the itinerary
    is used and DepthInsufficient is raised if it is wider than 1e-9.
    """
    _require_degree(d)
    gens = generators(regular_polygon_packing(d))
    m = d + 1

    def pull_back(symbols: Sequence[int], z: complex) -> complex:
        for s in reversed(symbols):
            z = gens[s](z)
        return z

    if depth is not None:
        it = angle_itinerary(theta, d, depth + 1)
        if it.boundary_hit is None:
            packing = regular_polygon_packing(d)
            disk = packing.circles[it.symbols[depth]]
            element = Moebius.identity()
            for s in it.symbols[:depth]:
                element = element.compose(gens[s])
            nested = disk.image(element)
            if 2.0 * nested.radius > NESTED_WIDTH:
                raise DepthInsufficient(f"Nested arc at depth {depth} has width {2.0 * nested.radius:.3e}",
                                        {"depth": depth})
            return nested.center / abs(nested.center)

    orb = orbit(theta, d)
    symbols: List[int] = []
    for t in orb.points:
        index = arc_index(t, d)
        if index is None:
            hit = int(t * m)
            return pull_back(symbols, cmath.exp(2j * math.pi * hit / m))
        symbols.append(index)

    cycle = symbols[orb.preperiod:]
    word = Moebius.identity()
    for s in cycle:
        word = word.compose(gens[s])
    if word.ORIENTATION_REVERSING:
        word = word.compose(word)
    point = _attracting_fixed_point(word)
    return pull_back(symbols[:orb.preperiod], point)


# ============================================================================
# DOCUMENTS
# ============================================================================

def _angle_to_json(t: Fraction) -> List[str]:
    return [str(t.numerator), str(t.denominator)]


def _angle_from_json(value: Any) -> Fraction:
    try:
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return angle(Fraction(int(value[0]), int(value[1])))
        return angle(Fraction(str(value)))
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise DocumentError(f"Malformed angle {value!r}: {e}") from e


def lamination_to_json(lam: Lamination) -> Dict[str, Any]:
    return {
        "d": lam.degree,
        "leaves": [[_angle_to_json(leaf.low), _angle_to_json(leaf.high)] for leaf in lam.sorted_leaves()],
        "singletons": [_angle_to_json(t) for t in lam.sorted_singletons()],
    }


def lamination_from_json(document: Dict[str, Any], check: bool = True) -> Lamination:
    """
    Lamination document {"d": int, "leaves": [[a, b], ...], "singletons": [a, ...]}
    with angles as ["p", "q"] pairs or "p/q" strings.
    """
    if not isinstance(document, dict) or not isinstance(document.get("d"), int):
        raise DocumentError("Lamination document needs an integer 'd'")
    d = document["d"]
    _require_degree(d)
    leaves = set()
    for entry in document.get("leaves", []):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise DocumentError(f"Leaf {entry!r} must list two angles")
        a, b = (_angle_from_json(x) for x in entry)
        if a == b:
            raise DocumentError(f"Leaf {entry!r} has equal endpoints")
        leaves.add(Leaf.of(a, b))
    singletons = frozenset(_angle_from_json(x) for x in document.get("singletons", []))
    lam = Lamination(d, frozenset(leaves), singletons)
    if check:
        check_lamination(lam)
    return lam


__all__ = [
    'Leaf', 'Lamination', 'Orbit', 'Itinerary', 'angle', 'angle_map', 'fixed_angles',
    'arc_index', 'rotate_angle', 'check_lamination', 'two_cycles', 'leaf_for_chord',
    'lamination_of', 'mirror', 'rotate', 'orbit', 'angle_itinerary', 'question_mark',
    'lamination_to_json', 'lamination_from_json',
]
