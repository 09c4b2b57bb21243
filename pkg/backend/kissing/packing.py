#!/usr/bin/env python3
"""
Kissing - Circle Packings
Oriented circles as Hermitian forms, Möbius / anti-Möbius matrix maps, and a
circle-packing solver for connected simple plane graphs.

Provides:
- Moebius / AntiMoebius: normalized 2x2 complex matrices acting on the sphere
- Circle: {A|z|^2 + 2Re(conj(B) z) + D = 0}; the disk is the negative side
- regular_polygon_packing: closed-form packing of the polygon graph
- solve_packing: angle-sum iteration in the Poincaré disk plus tangency layout
- verify_contact / normalize / dual_orthocircle_fit
"""

import cmath
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import get_settings
from utils.spherical import INFINITY, cap_diameter, is_infinite

from .errors import (
    DegenerateCircle,
    DegeneratePoints,
    DocumentError,
    NoConvergence,
    NotPolyhedral,
    NotSimple,
    PackingError,
    ResidualTooLarge,
)
from .plane_graph import PlaneGraph, faces, is_k_connected, is_simple, polygon_graph
from .plane_graph import from_json as graph_from_json
from .plane_graph import to_json as graph_to_json

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


# ============================================================================
# MÖBIUS AND ANTI-MÖBIUS MAPS
# ============================================================================

class Moebius:
    """z -> (az + b) / (cz + d) with det = 1"""

    ORIENTATION_REVERSING = False

    def __init__(self, matrix: Any):
        m = np.array(matrix, dtype=complex).reshape(2, 2)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < 1e-300:
            raise PackingError("Singular Möbius matrix", {"matrix": m.tolist()})
        self.matrix = m / cmath.sqrt(det)

    @classmethod
    def _unit(cls, matrix: np.ndarray) -> "Moebius":
        """Wrap a matrix whose determinant is 1 in exact arithmetic, without renormalizing"""
        f = cls.__new__(cls)
        f.matrix = matrix
        return f

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(np.eye(2))

    @classmethod
    def three_point_map(cls, points: Sequence[complex], targets: Sequence[complex]) -> "Moebius":
        """
        The unique Möbius map sending points[i] to targets[i]

        Raises:
            DegeneratePoints: if either triple repeats a point
        """
        return _to_zero_one_inf(targets).inverse().compose(_to_zero_one_inf(points))

    def __call__(self, z: complex) -> complex:
        (a, b), (c, d) = self.matrix
        if is_infinite(z):
            return a / c if abs(c) > 1e-300 else INFINITY
        if self.ORIENTATION_REVERSING:
            z = z.conjugate()
        den = c * z + d
        if abs(den) < 1e-300:
            return INFINITY
        return (a * z + b) / den

    def compose(self, other: "Moebius") -> "Moebius":
        """
        self ∘ other

        Both factors have det 1, so the product does too. Deep words have
        entries whose computed ad - bc cancels, hence no renormalization.
        """
        right = np.conj(other.matrix) if self.ORIENTATION_REVERSING else other.matrix
        product = self.matrix @ right
        if self.ORIENTATION_REVERSING != other.ORIENTATION_REVERSING:
            return AntiMoebius._unit(product)
        return Moebius._unit(product)

    def inverse(self) -> "Moebius":
        """Adjugate of the det-1 matrix"""
        (a, b), (c, d) = self.matrix
        inv = np.array([[d, -b], [-c, a]], dtype=complex)
        if self.ORIENTATION_REVERSING:
            return AntiMoebius._unit(np.conj(inv))
        return Moebius._unit(inv)

    @property
    def trace(self) -> complex:
        return complex(self.matrix[0, 0] + self.matrix[1, 1])

    def is_identity(self, tol: float = 1e-12) -> bool:
        if self.ORIENTATION_REVERSING:
            return False
        m = self.matrix
        return bool(min(np.abs(m - np.eye(2)).max(), np.abs(m + np.eye(2)).max()) <= tol)

    def fixed_points(self) -> List[complex]:
        """Roots of c z^2 + (d - a) z - b = 0, with infinity when c = 0"""
        (a, b), (c, d) = self.matrix
        if abs(c) < 1e-14:
            if abs(a - d) < 1e-14:
                return [INFINITY]
            return [b / (d - a), INFINITY]
        disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
        q = a - d
        s = disc if (q.conjugate() * disc).real >= 0.0 else -disc
        if abs(q + s) < 1e-300:
            return [q / (2 * c)]
        # second root from the product -b/c; the textbook form cancels for long words
        return [(q + s) / (2 * c), -2 * b / (q + s)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.round(self.matrix, 6).tolist()})"


class AntiMoebius(Moebius):
    """z -> (a conj(z) + b) / (c conj(z) + d)"""

    ORIENTATION_REVERSING = True

    def fixed_points(self) -> List[complex]:
        """Isolated fixed points only: candidates from the square, filtered"""
        square = self.compose(self)
        if square.is_identity():
            return []
        return [z for z in square.fixed_points()
                if (is_infinite(z) and is_infinite(self(z))) or abs(self(z) - z) < 1e-9]


def _to_zero_one_inf(points: Sequence[complex]) -> Moebius:
    z1, z2, z3 = (complex(p) for p in points)
    if min(abs(z1 - z2), abs(z2 - z3), abs(z1 - z3)) < 1e-12:
        raise DegeneratePoints("Normalization points must be distinct",
                               {"points": [str(z1), str(z2), str(z3)]})
    return Moebius([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])


# ============================================================================
# CIRCLES
# ============================================================================

@dataclass(frozen=True)
class Circle:
    """
    Oriented generalized circle A|z|^2 + 2Re(conj(B) z) + D = 0.

    The closed disk is the non-positive side, so A > 0 is an ordinary disk and
    A < 0 the outside of a circle. A = 0 is a line (internal use only).
    Instances are scaled to |B|^2 - AD = 1 when built, and that value is
    carried through det-1 congruences instead of being recomputed: for small
    disks |B|^2 and AD agree to more digits than a float holds.
    """
    A: float
    B: complex
    D: float

    LINE_TOL = 1e-14

    def __post_init__(self):
        if not (math.isfinite(self.A) and cmath.isfinite(self.B) and math.isfinite(self.D)):
            raise DegenerateCircle("Circle coefficients must be finite",
                                   {"A": self.A, "B": str(self.B), "D": self.D})

    @classmethod
    def from_center_radius(cls, center: complex, radius: float, orientation: int = 1) -> "Circle":
        if not radius > 0.0:
            raise DegenerateCircle(f"Radius must be positive, got {radius}")
        c = complex(center)
        sign = 1.0 if orientation >= 0 else -1.0
        return cls(sign / radius, -sign * c / radius, sign * (abs(c) ** 2 - radius ** 2) / radius)

    @property
    def discriminant(self) -> float:
        return 1.0

    @property
    def is_line(self) -> bool:
        return abs(self.A) <= self.LINE_TOL

    @property
    def orientation(self) -> int:
        return 1 if self.A > 0 else -1

    @property
    def center(self) -> complex:
        if self.is_line:
            raise PackingError("A line has no center")
        return -self.B / self.A

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return 1.0 / abs(self.A)

    def hermitian(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.B.conjugate(), self.D]], dtype=complex)

    def value(self, z: complex) -> float:
        return self.A * abs(z) ** 2 + 2.0 * (self.B.conjugate() * z).real + self.D

    def reversed(self) -> "Circle":
        return Circle(-self.A, -self.B, -self.D)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        """Closed-disk membership"""
        if is_infinite(z):
            return self.A <= 0.0
        if self.is_line:
            return self.value(z) <= tol
        distance = abs(z - self.center)
        if self.A > 0:
            return distance <= self.radius + tol
        return distance >= self.radius - tol

    def contains_circle(self, other: "Circle", tol: float = 0.0) -> bool:
        """Whether other's closed disk lies in this closed disk"""
        if self.is_line or other.is_line:
            raise PackingError("Containment is only decided for proper circles")
        d = abs(self.center - other.center)
        if self.A > 0 and other.A > 0:
            return d + other.radius <= self.radius + tol
        if self.A < 0 and other.A > 0:
            return d >= self.radius + other.radius - tol
        if self.A < 0 and other.A < 0:
            return d + self.radius <= other.radius + tol
        return False

    def image(self, f: Moebius) -> "Circle":
        """
        Image under a Möbius or anti-Möbius map, orientation carried along

        Möbius: H' = N* H N with N = M^-1; anti-Möbius: H' = N* H^T N.
        N has det 1, so the discriminant stays 1.
        """
        (a, b), (c, d) = f.matrix
        n = np.array([[d, -b], [-c, a]], dtype=complex)
        h = self.hermitian()
        if f.ORIENTATION_REVERSING:
            h = h.T
        h2 = n.conj().T @ h @ n
        return Circle(float(h2[0, 0].real), complex(h2[0, 1]), float(h2[1, 1].real))

    def inversive_distance(self, other: "Circle") -> float:
        """+1 for tangent disks with disjoint interiors, > 1 when separated"""
        if self.is_line or other.is_line:
            num = self.A * other.D + other.A * self.D - 2.0 * (self.B * other.B.conjugate()).real
            return num / 2.0
        return 1.0 + float(inversive_defect(self.A, self.B, other.A, other.B))

    def spherical_diameter(self) -> float:
        return float(cap_diameter(self.A, self.B, self.D, discriminant=1.0))

    def tangency_point(self, other: "Circle") -> complex:
        """Contact point of two (nearly) tangent proper circles"""
        if self.is_line or other.is_line:
            raise PackingError("Tangency points are only computed for proper circles")
        c1, r1, c2, r2 = self.center, self.radius, other.center, other.radius
        if self.A > 0 and other.A > 0:
            return c1 + (c2 - c1) * r1 / (r1 + r2)
        outer, inner = (self, other) if self.A < 0 else (other, self)
        direction = inner.center - outer.center
        if abs(direction) < 1e-300:
            raise PackingError("Concentric circles have no single tangency point")
        return outer.center + direction * outer.radius / abs(direction)

    def to_dict(self) -> Dict[str, Any]:
        c = self.center
        return {"cx": c.real, "cy": c.imag, "r": self.radius, "orient": self.orientation}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Circle":
        try:
            center = complex(float(data["cx"]), float(data["cy"]))
            radius = float(data["r"])
            orient = int(data.get("orient", 1))
        except (KeyError, TypeError, ValueError) as e:
            raise DocumentError(f"Malformed circle entry {data!r}: {e}") from e
        return cls.from_center_radius(center, radius, orient)


def inversive_defect(A1: Any, B1: Any, A2: Any, B2: Any) -> Any:
    """
    Inversive distance minus one for unit-discriminant circles, vectorized.

    Zero for tangent disks with disjoint interiors, positive when they are
    apart, negative when the interiors overlap. Worked from centers and radii
    as (gap) * (sum) / (2 r1 r2), which stays relative for small disks where
    the Hermitian pairing A1 D2 + A2 D1 - 2 Re(B1 conj(B2)) cancels.
    Two outsides of circles always overlap at infinity.
    """
    A1, A2 = np.asarray(A1, dtype=float), np.asarray(A2, dtype=float)
    B1, B2 = np.asarray(B1, dtype=complex), np.asarray(B2, dtype=complex)
    r1, r2 = 1.0 / np.abs(A1), 1.0 / np.abs(A2)
    dist = np.abs(B1 / A1 - B2 / A2)
    inner1, inner2 = A1 > 0, A2 > 0
    external = (dist - r1 - r2) * (dist + r1 + r2) / (2.0 * r1 * r2)
    hole = np.where(inner1, r2, r1) - np.where(inner1, r1, r2)
    internal = (hole - dist) * (hole + dist) / (2.0 * r1 * r2)
    defect = np.where(inner1 & inner2, external, np.where(inner1 | inner2, internal, -1.0))
    return defect if defect.ndim else float(defect)


def gap(c1: Circle, c2: Circle) -> float:
    """
    Signed Euclidean gap between two disks: zero when tangent, negative when
    the interiors overlap.
    """
    if c1.is_line or c2.is_line:
        raise PackingError("Packing contains a line")
    d = abs(c1.center - c2.center)
    r1, r2 = c1.radius, c2.radius
    if c1.A > 0 and c2.A > 0:
        return d - (r1 + r2)
    if c1.A < 0 and c2.A < 0:
        return -(r1 + r2)
    outer, inner = (r1, r2) if c1.A < 0 else (r2, r1)
    return (outer - inner) - d


# ============================================================================
# PACKINGS
# ============================================================================

@dataclass(frozen=True)
class CirclePacking:
    """Vertex-indexed circles for a plane graph"""
    graph: PlaneGraph
    circles: Tuple[Circle, ...]
    tolerance: float
    residual: float = 0.0

    def __post_init__(self):
        if len(self.circles) != self.graph.n:
            raise PackingError(f"{len(self.circles)} circles for {self.graph.n} vertices")

    @property
    def n(self) -> int:
        return self.graph.n

    def edge_residual(self) -> float:
        residuals = [abs(gap(self.circles[u], self.circles[v])) for u, v, _ in self.graph.edges()]
        return max(residuals, default=0.0)


@dataclass
class ContactReport:
    """Outcome of verify_contact"""
    passed: bool
    tolerance: float
    max_residual: float
    worst_edge: Optional[Pair]
    failing_edges: List[Pair] = field(default_factory=list)
    spurious: List[Pair] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "worst_edge": list(self.worst_edge) if self.worst_edge else None,
            "failing_edges": [list(e) for e in self.failing_edges],
            "spurious": [list(e) for e in self.spurious],
        }


def regular_polygon_packing(d: int) -> CirclePacking:
    """
    C_j orthogonal to the unit circle through e^{2πij/(d+1)} and e^{2πi(j+1)/(d+1)}

    Args:
        d: Degree, at least 2

    Returns:
        Packing of polygon_graph(d) with circles of radius tan(π/(d+1))
    """
    graph = polygon_graph(d)
    m = d + 1
    radius = math.tan(math.pi / m)
    modulus = 1.0 / math.cos(math.pi / m)
    circles = tuple(
        Circle.from_center_radius(modulus * cmath.exp(1j * math.pi * (2 * j + 1) / m), radius)
        for j in range(m)
    )
    packing = CirclePacking(graph, circles, get_settings().tangency_tol)
    return CirclePacking(graph, circles, packing.tolerance, packing.edge_residual())


def verify_contact(p: CirclePacking, tol: Optional[float] = None) -> ContactReport:
    """
    Check tangency on every edge and separation on every non-edge

    Args:
        p: Packing to certify
        tol: Override for p.tolerance

    Returns:
        ContactReport; passed iff every edge gap is within tol and every
        non-edge gap exceeds tol
    """
    tol = p.tolerance if tol is None else tol
    edges = p.graph.edge_set()
    worst: Optional[Pair] = None
    max_residual = 0.0
    failing: List[Pair] = []
    spurious: List[Pair] = []
    for u in range(p.n):
        for v in range(u + 1, p.n):
            g = gap(p.circles[u], p.circles[v])
            if frozenset((u, v)) in edges:
                if abs(g) >= max_residual:
                    max_residual, worst = abs(g), (u, v)
                if abs(g) > tol:
                    failing.append((u, v))
            elif g <= tol:
                spurious.append((u, v))

    report = ContactReport(not failing and not spurious, tol, max_residual, worst, failing, spurious)
    if report.passed:
        logger.debug(f"✅ Contact verified: max residual {max_residual:.3e}")
    else:
        logger.info(f"❌ Contact check failed: {len(failing)} edges off, {len(spurious)} spurious")
    return report


def normalize(p: CirclePacking, points: Sequence[complex], targets: Sequence[complex]) -> CirclePacking:
    """Apply the Möbius map sending three tangency points to three targets"""
    f = Moebius.three_point_map(points, targets)
    circles = tuple(c.image(f) for c in p.circles)
    if any(c.is_line for c in circles):
        raise PackingError("Normalization sends a circle through infinity")
    moved = CirclePacking(p.graph, circles, p.tolerance)
    return CirclePacking(p.graph, circles, p.tolerance, moved.edge_residual())


# ============================================================================
# AUGMENTATION
# ============================================================================

@dataclass(frozen=True)
class Augmentation:
    """Triangulation built around g; original vertices keep their indices"""
    graph: PlaneGraph
    added: Tuple[bool, ...]
    face_centers: Tuple[int, ...]


def augment_to_triangulation(g: PlaneGraph) -> Augmentation:
    """
    Star every face of g from a new centre vertex

    A face whose boundary walk repeats a vertex first gets a ring of corner
    vertices (one per boundary dart) so that the result stays simple.

    Returns:
        Augmentation: triangulation, added-vertex marker, centre per face
    """
    corner_entries: Dict[int, List[Tuple[int, str]]] = {}
    extra_rotation: List[List[Tuple[int, str]]] = []
    centers: List[int] = []
    next_vertex = g.n

    def new_vertex() -> int:
        nonlocal next_vertex
        extra_rotation.append([])
        next_vertex += 1
        return next_vertex - 1

    for f, cycle in enumerate(faces(g)):
        walk = [g.origin[e] for e in cycle]
        center = new_vertex()
        centers.append(center)
        length = len(cycle)
        if length >= 3 and len(set(walk)) == length:
            for e in cycle:
                corner_entries[g.prev_ccw[e]] = [(center, f"k{g.prev_ccw[e]}")]
            extra_rotation[center - g.n] = [
                (g.origin[e], f"k{g.prev_ccw[e]}") for e in reversed(cycle)
            ]
            continue

        ring = [new_vertex() for _ in range(length)]
        for i, e in enumerate(cycle):
            prev_i, next_i = (i - 1) % length, (i + 1) % length
            corner_entries[g.prev_ccw[e]] = [
                (ring[prev_i], f"f{f}b{prev_i}"),
                (ring[i], f"f{f}a{i}"),
            ]
            extra_rotation[ring[i] - g.n] = [
                (g.origin[cycle[next_i]], f"f{f}b{i}"),
                (g.origin[e], f"f{f}a{i}"),
                (ring[prev_i], f"f{f}x{prev_i}"),
                (center, f"f{f}c{i}"),
                (ring[next_i], f"f{f}x{i}"),
            ]
        extra_rotation[center - g.n] = [(ring[i], f"f{f}c{i}") for i in reversed(range(length))]

    rotation: List[List[int]] = []
    edge_ids: List[List[str]] = []
    for v in range(g.n):
        row: List[int] = []
        ids: List[str] = []
        for a in g.darts_at(v):
            row.append(g.target(a))
            ids.append(f"e{min(a, g.twin[a])}")
            for u, tag in corner_entries[a]:
                row.append(u)
                ids.append(tag)
        rotation.append(row)
        edge_ids.append(ids)
    for entries in extra_rotation:
        rotation.append([u for u, _ in entries])
        edge_ids.append([tag for _, tag in entries])

    triangulation = PlaneGraph.from_rotation(next_vertex, rotation, edge_ids)
    added = tuple(v >= g.n for v in range(next_vertex))
    logger.debug(f"Augmented {g!r} to {triangulation!r}")
    return Augmentation(triangulation, added, tuple(centers))


# ============================================================================
# SOLVER
# ============================================================================

def _f(sv: float, su: float) -> float:
    """sin^2 of the half-angle factor contributed by neighbour u at v"""
    return sv * (1.0 - su * su) / (1.0 - sv * sv * su * su)


def _corner_angle(sv: float, su: float, sw: float) -> float:
    x = math.sqrt(max(_f(sv, su) * _f(sv, sw), 0.0))
    return 2.0 * math.asin(min(x, 1.0))


def _angle_sum(v: int, s: List[float], flower: Sequence[int]) -> float:
    k = len(flower)
    return sum(_corner_angle(s[v], s[flower[i]], s[flower[(i + 1) % k]]) for i in range(k))


def _uniform_neighbour_step(sv: float, theta: float, k: int) -> float:
    sigma = math.sin(theta / (2.0 * k))
    hat2 = (sv - sigma) / (sv * (1.0 - sigma * sv)) if sv > sigma else 0.0
    target = math.sin(math.pi / k)
    if hat2 <= 0.0:
        return target
    a = 1.0 - hat2
    return (-a + math.sqrt(a * a + 4.0 * target * target * hat2)) / (2.0 * target * hat2)


def _solve_radii(
    flowers: Dict[int, List[int]], s: List[float], angle_tol: float, max_sweeps: int
) -> int:
    interior = sorted(flowers)
    for sweep in range(1, max_sweeps + 1):
        for v in interior:
            theta = _angle_sum(v, s, flowers[v])
            s[v] = _uniform_neighbour_step(s[v], theta, len(flowers[v]))
        error = max(abs(_angle_sum(v, s, flowers[v]) - 2.0 * math.pi) for v in interior)
        if sweep % 1000 == 0:
            logger.debug(f"🧮 sweep {sweep}: angle error {error:.3e}")
        if error < angle_tol:
            return sweep
    raise NoConvergence(f"Radius iteration did not converge in {max_sweeps} sweeps",
                        {"max_iters": max_sweeps, "angle_error": error})


def _disk_automorphism(z0: complex) -> Moebius:
    """z -> (z - z0) / (1 - conj(z0) z)"""
    return Moebius([[1.0, -z0], [-z0.conjugate(), 1.0]])


def _rho(s: float) -> float:
    return (1.0 - s) / (1.0 + s)


class _DiskLayout:
    """Places hyperbolic circles and horocycles from solved s-radii"""

    def __init__(self, s: List[float]):
        self.s = s
        self.circles: Dict[int, Circle] = {}
        self.centers: Dict[int, complex] = {}

    def put_interior(self, v: int, p: complex, back: Moebius) -> None:
        local = Circle.from_center_radius(0.0, _rho(self.s[v])).image(
            Moebius([[1.0, p], [p.conjugate(), 1.0]]))
        self.circles[v] = local.image(back)
        self.centers[v] = back(p)

    def put_horocycle(self, v: int, rho: float, alpha: float, back: Moebius) -> None:
        local = Circle.from_center_radius((1.0 - rho) * cmath.exp(1j * alpha), rho)
        self.circles[v] = local.image(back)

    def place_from_pivot(self, pivot: int, alpha: float, w: int) -> None:
        """Place w tangent to an interior pivot in direction alpha (pivot-centred coords)"""
        to_pivot = _disk_automorphism(self.centers[pivot])
        back = to_pivot.inverse()
        sp, sw = self.s[pivot], self.s[w]
        if sw > 0.0:
            self.put_interior(w, (1.0 - sp * sw) / (1.0 + sp * sw) * cmath.exp(1j * alpha), back)
        else:
            self.put_horocycle(w, (1.0 - _rho(sp)) / 2.0, alpha, back)

    def direction(self, pivot: int, u: int) -> float:
        moved = self.circles[u].image(_disk_automorphism(self.centers[pivot]))
        return cmath.phase(moved.center)

    def place(self, a: int, b: int, w: int) -> None:
        """Place w given the counterclockwise triangle (a, b, w)"""
        s = self.s
        if s[a] > 0.0:
            alpha = self.direction(a, b) + _corner_angle(s[a], s[b], s[w])
            self.place_from_pivot(a, alpha, w)
        elif s[b] > 0.0:
            alpha = self.direction(b, a) - _corner_angle(s[b], s[w], s[a])
            self.place_from_pivot(b, alpha, w)
        else:
            touch = self.circles[a].tangency_point(self.circles[b])
            shift = _disk_automorphism(touch)
            ideal = self.circles[a].image(shift).center
            spin = Moebius([[cmath.exp(-0.5j * cmath.phase(ideal)), 0.0],
                            [0.0, cmath.exp(0.5j * cmath.phase(ideal))]])
            back = spin.compose(shift).inverse()
            y = math.sqrt((1.0 - s[w]) / (1.0 + s[w]))
            self.put_interior(w, -1j * y, back)


def _small_packing(g: PlaneGraph, tol: float) -> CirclePacking:
    """Unit circles at -1 and +1, tangent at the origin when g is an edge"""
    circles = tuple(Circle.from_center_radius(complex(2 * v - g.n + 1, 0.0), 1.0) for v in range(g.n))
    residual = max((abs(gap(circles[u], circles[v])) for u, v, _ in g.edges()), default=0.0)
    logger.info(f"🧮 Closed-form packing for {g!r}")
    return CirclePacking(g, circles, tol, residual)


def solve_packing(g: PlaneGraph, tol: float = 1e-8) -> CirclePacking:
    """
    Circle packing with contact graph g

    The augmented triangulation is packed inside the unit disk with one added
    face vertex playing the outer (reversed) unit circle. Its neighbours become
    horocycles, every other vertex gets s = exp(-hyperbolic radius) solved from
    the angle-sum condition, and circles are laid out triangle by triangle.

    Args:
        g: Connected simple plane graph
        tol: Tangency tolerance to certify

    Returns:
        CirclePacking of g
    """
    if not is_simple(g):
        raise NotSimple("Circle packings need a simple graph")
    if g.n < 3:
        return _small_packing(g, tol)
    settings = get_settings()
    logger.info(f"🚀 Solving packing for {g!r}")

    aug = augment_to_triangulation(g)
    tri = aug.graph
    face_sizes = [len(cycle) for cycle in faces(g)]
    outer = aug.face_centers[max(range(len(face_sizes)), key=lambda f: (face_sizes[f], -f))]
    boundary = {tri.target(e) for e in tri.darts_at(outer)}

    s = [0.0] * tri.n
    flowers: Dict[int, List[int]] = {}
    for v in range(tri.n):
        if v != outer and v not in boundary:
            flowers[v] = [tri.target(e) for e in tri.darts_at(v)]
            s[v] = 0.5

    angle_tol = min(settings.solver_tol, tol * 1e-2)
    sweeps = _solve_radii(flowers, s, angle_tol, settings.max_sweeps)
    logger.info(f"🧮 Radii converged after {sweeps} sweeps")

    triangles = []
    for cycle in faces(tri):
        corners = [tri.origin[e] for e in reversed(cycle)]
        if outer not in corners:
            triangles.append(tuple(corners))

    layout = _DiskLayout(s)
    root = min(flowers)
    layout.put_interior(root, 0j, Moebius.identity())
    layout.place_from_pivot(root, 0.0, flowers[root][0])

    pending = deque(triangles)
    stalled = 0
    while pending and stalled <= len(pending):
        tri_vertices = pending.popleft()
        placed = [v in layout.circles for v in tri_vertices]
        if sum(placed) == 3:
            stalled = 0
            continue
        if sum(placed) < 2:
            pending.append(tri_vertices)
            stalled += 1
            continue
        i = placed.index(False)
        a, b, w = tri_vertices[(i + 1) % 3], tri_vertices[(i + 2) % 3], tri_vertices[i]
        layout.place(a, b, w)
        stalled = 0

    missing = [v for v in range(tri.n) if v != outer and v not in layout.circles]
    if missing:
        raise PackingError("Layout did not reach every vertex", {"missing": missing})
    layout.circles[outer] = Circle(-1.0, 0j, 1.0)

    full = CirclePacking(tri, tuple(layout.circles[v] for v in range(tri.n)), tol)
    residual = full.edge_residual()
    if residual > tol:
        raise ResidualTooLarge(f"Layout residual {residual:.3e} exceeds {tol:.1e}",
                               {"residual": residual, "tol": tol})

    packing = CirclePacking(g, tuple(layout.circles[v] for v in range(g.n)), tol, residual)
    report = verify_contact(packing)
    if not report.passed:
        raise ResidualTooLarge("Solved packing fails contact certification", report.to_dict())
    logger.info(f"✅ Packing solved: residual {residual:.3e}")
    return packing


# ============================================================================
# DUAL CIRCLES
# ============================================================================

@dataclass
class FaceFit:
    """Least-squares circle through a face's tangency points"""
    face: int
    circle: Circle
    fit_residual: float
    orthogonality_defect: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "face": self.face,
            "circle": self.circle.to_dict(),
            "fit_residual": self.fit_residual,
            "orthogonality_defect": self.orthogonality_defect,
        }


def _fit_circle(points: Sequence[complex]) -> Tuple[complex, float]:
    xs = np.array([p.real for p in points])
    ys = np.array([p.imag for p in points])
    design = np.column_stack([xs, ys, np.ones_like(xs)])
    rhs = -(xs ** 2 + ys ** 2)
    (dx, ey, f), *_ = np.linalg.lstsq(design, rhs, rcond=None)
    center = complex(-dx / 2.0, -ey / 2.0)
    radius_sq = abs(center) ** 2 - f
    if radius_sq <= 0.0:
        raise PackingError("Tangency points do not determine a circle")
    return center, math.sqrt(radius_sq)


def dual_orthocircle_fit(p: CirclePacking) -> List[FaceFit]:
    """
    Fit one circle per face through the tangency points on its boundary.
    EXPERIMENTAL: residuals are only small near the midsphere normalization.
    """
    g = p.graph
    if not is_simple(g) or not is_k_connected(g, 3):
        raise NotPolyhedral("Dual circles need a 3-connected simple graph")
    fits: List[FaceFit] = []
    for face_id, cycle in enumerate(faces(g)):
        points = [p.circles[g.origin[e]].tangency_point(p.circles[g.target(e)]) for e in cycle]
        center, radius = _fit_circle(points)
        fit_residual = max(abs(abs(z - center) - radius) for z in points)
        defect = 0.0
        for e in cycle:
            c = p.circles[g.origin[e]]
            cosine = (abs(center - c.center) ** 2 - radius ** 2 - c.radius ** 2) / (2.0 * radius * c.radius)
            defect = max(defect, abs(cosine))
        fits.append(FaceFit(face_id, Circle.from_center_radius(center, radius), fit_residual, defect))
    logger.info(f"⚠️ Dual circle fit is experimental: worst defect "
                f"{max(f.orthogonality_defect for f in fits):.3e}")
    return fits


# ============================================================================
# DOCUMENTS
# ============================================================================

def packing_to_json(p: CirclePacking) -> Dict[str, Any]:
    return {
        "graph": graph_to_json(p.graph),
        "circles": [c.to_dict() for c in p.circles],
        "residual": p.residual,
        "tolerance": p.tolerance,
    }


def packing_from_json(document: Dict[str, Any]) -> CirclePacking:
    """Packing document: {"graph": ..., "circles": [{"cx","cy","r","orient"}, ...], "residual": float}"""
    if not isinstance(document, dict) or "graph" not in document or "circles" not in document:
        raise DocumentError("Packing document needs 'graph' and 'circles'")
    graph = graph_from_json(document["graph"])
    if not isinstance(document["circles"], list):
        raise DocumentError("'circles' must be a list")
    circles = tuple(Circle.from_dict(c) for c in document["circles"])
    if len(circles) != graph.n:
        raise DocumentError(f"{len(circles)} circles for {graph.n} vertices")
    tolerance = float(document.get("tolerance", get_settings().tangency_tol))
    draft = CirclePacking(graph, circles, tolerance)
    return CirclePacking(graph, circles, tolerance, float(document.get("residual", draft.edge_residual())))


__all__ = [
    'Moebius', 'AntiMoebius', 'Circle', 'CirclePacking', 'ContactReport', 'Augmentation',
    'FaceFit', 'gap', 'inversive_defect', 'regular_polygon_packing', 'augment_to_triangulation', 'solve_packing',
    'verify_contact', 'normalize', 'dual_orthocircle_fit', 'packing_to_json',
    'packing_from_json',
]
