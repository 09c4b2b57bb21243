#!/usr/bin/env python3
"""
Kissing - Anti-Rational Maps
Explicit maps z -> P(conj z) / Q(conj z): evaluation on the sphere, critical
and fixed point portraits, the Platonic table, basin rendering and the
graph-versus-map dictionary check.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from PIL import Image
from matplotlib import colormaps

from config import get_settings
from utils.root_finder import Root, find_roots, max_residual, relative_residual
from utils.spherical import INFINITY, chordal_distance, is_infinite

from .errors import (
    CountMismatch,
    DegreeTooSmall,
    DocumentError,
    GraphError,
    InputError,
    KissingError,
    NeutralDetected,
    NotSimple,
    RootFindingFailure,
)
from .plane_graph import PlaneGraph, face_degrees, is_k_connected, is_simple

logger = logging.getLogger(__name__)

Window = Tuple[float, float, float, float]

COPRIME_TOL = 1e-9
NEUTRAL_BAND = 1e-6
BASIN_RADIUS = 1e-6
JULIA_LABEL = -1
CHUNK_ROWS = 32


def _trimmed(coeffs: Sequence[complex]) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    last = c.size - 1
    while last > 0 and c[last] == 0:
        last -= 1
    return c[:last + 1]


def _padded(coeffs: np.ndarray, d: int) -> np.ndarray:
    return np.concatenate([coeffs, np.zeros(d + 1 - coeffs.size, dtype=complex)])


# ============================================================================
# MAPS
# ============================================================================

@dataclass(frozen=True)
class AntiRationalMap:
    """
    z -> P(conj z) / Q(conj z)

    Coefficients are ascending (num[i] multiplies z**i). The degree is
    max(deg P, deg Q); P and Q must not share a root.
    """
    num: Tuple[complex, ...]
    den: Tuple[complex, ...]
    name: Optional[str] = None

    def __post_init__(self):
        p, q = _trimmed(self.num), _trimmed(self.den)
        if not np.any(p) or not np.any(q):
            raise InputError("Numerator and denominator must be nonzero polynomials")
        object.__setattr__(self, "num", tuple(complex(a) for a in p))
        object.__setattr__(self, "den", tuple(complex(a) for a in q))
        if self.degree < 1:
            raise DegreeTooSmall("Constant maps are not anti-rational maps of positive degree")
        _require_coprime(p, q)

    @property
    def p(self) -> np.ndarray:
        return np.asarray(self.num, dtype=complex)

    @property
    def q(self) -> np.ndarray:
        return np.asarray(self.den, dtype=complex)

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def holomorphic(self, w: Any) -> np.ndarray:
        """
        f(w) = P(w) / Q(w) on the sphere, vectorized; inf in, inf out

        Points outside the unit disk are evaluated in the chart u = 1/w where
        f = P~(u) / Q~(u) with reversed padded coefficients.
        """
        d = self.degree
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        p_rev = _padded(self.p, d)[::-1]
        q_rev = _padded(self.q, d)[::-1]

        infinite = ~np.isfinite(w)
        outside = ~infinite & (np.abs(w) > 1.0)
        inside = ~infinite & ~outside
        u = np.zeros_like(w)
        u[outside] = 1.0 / w[outside]
        chart = ~inside

        num = np.empty_like(w)
        den = np.empty_like(w)
        num[inside] = P.polyval(w[inside], self.p)
        den[inside] = P.polyval(w[inside], self.q)
        num[chart] = P.polyval(u[chart], p_rev)
        den[chart] = P.polyval(u[chart], q_rev)

        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = num / den
        out[(den == 0) | ~np.isfinite(out)] = INFINITY
        return out

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def to_dict(self) -> Dict[str, Any]:
        return map_to_json(self)


def _require_coprime(p: np.ndarray, q: np.ndarray) -> None:
    small, other = (p, q) if p.size <= q.size else (q, p)
    if small.size < 2 or other.size < 2:
        return
    for root in find_roots(small):
        if relative_residual(other, root.value) <= COPRIME_TOL:
            raise InputError(
                "Numerator and denominator share a root",
                {"root": [root.value.real, root.value.imag]},
            )


def evaluate(R: AntiRationalMap, z: complex) -> complex:
    """R(z) with projective handling of poles and infinity"""
    w = INFINITY if is_infinite(z) else complex(z).conjugate()
    return complex(R.holomorphic(w)[0])


def _sparse(degree: int, terms: Dict[int, float]) -> Tuple[complex, ...]:
    coeffs = [0j] * (degree + 1)
    for power, value in terms.items():
        coeffs[power] = complex(value)
    return tuple(coeffs)


PLATONIC_SOLIDS = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")


def platonic_maps() -> Dict[str, AntiRationalMap]:
    """
    The five critically fixed maps attached to the Platonic solids

    The map named after a solid pairs with that solid's graph: degree is the
    vertex count minus one and the critical points sit over its faces.
    """
    return {
        "tetrahedron": AntiRationalMap(_sparse(2, {2: 3}), _sparse(3, {0: 1, 3: 2}), "tetrahedron"),
        "octahedron": AntiRationalMap(_sparse(4, {0: 1, 4: 5}), _sparse(5, {1: 5, 5: 1}), "octahedron"),
        "cube": AntiRationalMap(_sparse(7, {3: 7, 7: 1}), _sparse(4, {0: 1, 4: 7}), "cube"),
        "icosahedron": AntiRationalMap(
            _sparse(10, {0: -1, 5: 66, 10: 11}),
            _sparse(11, {1: -11, 6: 66, 11: 1}),
            "icosahedron",
        ),
        "dodecahedron": AntiRationalMap(
            _sparse(19, {4: 57, 9: 247, 14: -171, 19: 1}),
            _sparse(15, {0: 1, 5: 171, 10: 247, 15: -57}),
            "dodecahedron",
        ),
    }


def polygon_map(d: int) -> AntiRationalMap:
    """conj(z)^d, the critically fixed anti-polynomial of the polygon graph"""
    if d < 2:
        raise DegreeTooSmall(f"Polygon maps need d >= 2, got {d}")
    return AntiRationalMap(_sparse(d, {d: 1}), (1 + 0j,), f"polygon{d}")


def named_map(name: str) -> AntiRationalMap:
    """Platonic solid name or polygon<d>"""
    if name.startswith("polygon") and name[len("polygon"):].isdigit():
        return polygon_map(int(name[len("polygon"):]))
    if name in PLATONIC_SOLIDS:
        return platonic_maps()[name]
    raise InputError(f"Unknown map {name!r}", {"known": list(PLATONIC_SOLIDS) + ["polygon<d>"]})


# ============================================================================
# CRITICAL POINTS
# ============================================================================

@dataclass
class CriticalPoint:
    value: complex
    local_degree: int
    fixed: bool
    residual: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": _point_json(self.value),
            "local_degree": self.local_degree,
            "fixed": self.fixed,
        }


@dataclass
class CriticalPortrait:
    degree: int
    points: List[CriticalPoint]

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def critically_fixed(self) -> bool:
        return all(c.fixed for c in self.points)

    @property
    def multiplicity_total(self) -> int:
        return sum(c.local_degree - 1 for c in self.points)

    @property
    def local_degrees(self) -> List[int]:
        return sorted(c.local_degree for c in self.points)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "k": self.k,
            "critically_fixed": self.critically_fixed,
            "multiplicity_total": self.multiplicity_total,
            "points": [c.to_dict() for c in self.points],
        }


def wronskian(R: AntiRationalMap) -> np.ndarray:
    """P'Q - PQ' of the holomorphic parts, ascending"""
    return _trimmed(P.polysub(P.polymul(P.polyder(R.p), R.q), P.polymul(R.p, P.polyder(R.q))))


def _is_fixed(R: AntiRationalMap, z: complex, tol: float) -> bool:
    return chordal_distance(evaluate(R, z), z) <= tol


def _require_residuals(roots: Sequence[Root], what: str) -> None:
    settings = get_settings()
    worst = max_residual(roots)
    if worst > settings.root_tol:
        raise RootFindingFailure(
            f"{what}: root residual {worst:.3e} above {settings.root_tol:.1e}",
            {"residual": worst, "tolerance": settings.root_tol},
        )


def critical_points(R: AntiRationalMap) -> CriticalPortrait:
    """
    Critical points with local degrees

    The critical points of z -> f(conj z) are the conjugates of the zeros of
    the Wronskian of f = P/Q; infinity carries whatever multiplicity the
    Wronskian loses below 2d - 2.

    Returns:
        CriticalPortrait with fixed flags from evaluation
    """
    d = R.degree
    if d < 2:
        raise DegreeTooSmall(f"Critical portraits need d >= 2, got {d}")
    settings = get_settings()

    W = wronskian(R)
    roots = find_roots(W, seed=settings.seed, cluster_radius=settings.cluster_radius) if W.size > 1 else []
    _require_residuals(roots, "Wronskian")

    points = [
        CriticalPoint(r.value.conjugate(), r.multiplicity + 1, False, r.residual)
        for r in roots
    ]
    at_infinity = 2 * d - 2 - (W.size - 1)
    if at_infinity > 0:
        points.append(CriticalPoint(INFINITY, at_infinity + 1, False))
    for c in points:
        c.fixed = _is_fixed(R, c.value, settings.fixed_tol)

    portrait = CriticalPortrait(d, points)
    if portrait.multiplicity_total != 2 * d - 2:
        logger.warning(f"⚠️ Critical multiplicities sum to {portrait.multiplicity_total}, expected {2 * d - 2}")
    logger.info(f"🌀 {R.name or 'map'}: k={portrait.k}, critically fixed={portrait.critically_fixed}")
    return portrait


# ============================================================================
# FIXED POINTS
# ============================================================================

def second_iterate(R: AntiRationalMap) -> Tuple[np.ndarray, np.ndarray]:
    """
    Holomorphic numerator and denominator of R o R

    R(R(z)) = f(conj f(conj z)) = f(Pc(z) / Qc(z)) with conjugated
    coefficients, so the numerator is sum p_i Pc^i Qc^(d-i) and likewise
    for the denominator.
    """
    d = R.degree
    p, q = _padded(R.p, d), _padded(R.q, d)
    pc, qc = np.conj(R.p), np.conj(R.q)

    pc_pows = [np.ones(1, dtype=complex)]
    qc_pows = [np.ones(1, dtype=complex)]
    for _ in range(d):
        pc_pows.append(P.polymul(pc_pows[-1], pc))
        qc_pows.append(P.polymul(qc_pows[-1], qc))

    num = np.zeros(1, dtype=complex)
    den = np.zeros(1, dtype=complex)
    for i in range(d + 1):
        term = P.polymul(pc_pows[i], qc_pows[d - i])
        num = P.polyadd(num, p[i] * term)
        den = P.polyadd(den, q[i] * term)
    return _trimmed(num), _trimmed(den)


def multiplier_modulus(R: AntiRationalMap, z: complex) -> float:
    """
    |dR| at a fixed point z, |f'(conj z)| for f = P/Q

    Infinity is read in the chart w = 1/z, where the map becomes
    Q~(conj w) / P~(conj w) with reversed padded coefficients.
    """
    if is_infinite(z):
        d = R.degree
        p_rev = _padded(R.p, d)[::-1]
        q_rev = _padded(R.q, d)[::-1]
        if p_rev[0] == 0:
            return math.inf
        derivative = q_rev[1] * p_rev[0] - q_rev[0] * p_rev[1]
        return float(abs(derivative) / abs(p_rev[0]) ** 2)
    w = complex(z).conjugate()
    qw = P.polyval(w, R.q)
    if qw == 0:
        return math.inf
    return float(abs(P.polyval(w, wronskian(R))) / abs(qw) ** 2)


@dataclass
class FixedPoint:
    value: complex
    multiplier: float
    kind: str

    def to_dict(self) -> Dict[str, Any]:
        return {"point": _point_json(self.value), "multiplier": self.multiplier, "kind": self.kind}


@dataclass
class FixedPointPortrait:
    degree: int
    k: int
    points: List[FixedPoint]
    critically_fixed: bool = True

    @property
    def total(self) -> int:
        return len(self.points)

    @property
    def repelling(self) -> int:
        return sum(1 for f in self.points if f.kind == "repelling")

    @property
    def attracting(self) -> int:
        return sum(1 for f in self.points if f.kind == "attracting")

    @property
    def on_julia(self) -> int:
        return self.repelling

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "k": self.k,
            "total": self.total,
            "repelling": self.repelling,
            "attracting": self.attracting,
            "points": [f.to_dict() for f in self.points],
        }


def _classify(R: AntiRationalMap, z: complex, strict: bool) -> FixedPoint:
    modulus = multiplier_modulus(R, z)
    if abs(modulus - 1.0) <= NEUTRAL_BAND:
        if strict:
            raise NeutralDetected(
                f"Fixed point with |multiplier| = {modulus:.9f}",
                {"point": _point_json(z), "multiplier": modulus},
            )
        return FixedPoint(z, modulus, "neutral")
    return FixedPoint(z, modulus, "attracting" if modulus < 1.0 else "repelling")


def fixed_points(R: AntiRationalMap, portrait: Optional[CriticalPortrait] = None) -> FixedPointPortrait:
    """
    Fixed points of R classified by multiplier

    Candidates are the fixed points of the holomorphic second iterate, kept
    when R itself fixes them. For critically fixed maps the counts must be
    d + 2k - 1 in total and d + k - 1 repelling.

    Args:
        R: The map
        portrait: Critical portrait, computed when omitted

    Returns:
        FixedPointPortrait ordered by (real, imag) with infinity last
    """
    settings = get_settings()
    portrait = portrait or critical_points(R)
    d, k = R.degree, portrait.k
    strict = portrait.critically_fixed

    num, den = second_iterate(R)
    equation = _trimmed(P.polysub(num, P.polymulx(den)))
    roots = find_roots(equation, seed=settings.seed, cluster_radius=settings.cluster_radius)
    _require_residuals(roots, "Second iterate")

    candidates = [r.value for r in roots if _is_fixed(R, r.value, settings.fixed_tol)]
    for r in roots:
        if r.multiplicity > 1 and _is_fixed(R, r.value, settings.fixed_tol):
            logger.warning(f"⚠️ Fixed point {r.value:.6g} found with multiplicity {r.multiplicity}")
    if len(R.num) > len(R.den):
        candidates.append(INFINITY)

    points = [_classify(R, z, strict) for z in candidates]
    result = FixedPointPortrait(d, k, points, portrait.critically_fixed)
    logger.info(f"🧮 {R.name or 'map'}: {result.total} fixed points, {result.repelling} repelling")

    if strict:
        expected_total, expected_repelling = d + 2 * k - 1, d + k - 1
        if result.total != expected_total or result.repelling != expected_repelling:
            raise CountMismatch(
                f"Found {result.total} fixed ({result.repelling} repelling), "
                f"expected {expected_total} ({expected_repelling} repelling)",
                {
                    "total": result.total,
                    "repelling": result.repelling,
                    "expected_total": expected_total,
                    "expected_repelling": expected_repelling,
                },
            )
    else:
        logger.warning(f"⚠️ {R.name or 'map'} is not critically fixed; fixed point counts not checked")
    return result


# ============================================================================
# DICTIONARY
# ============================================================================

@dataclass
class PortraitPrediction:
    """What a critically fixed map dual to the graph must look like"""
    degree: int
    k: int
    local_degrees: List[int]
    total_fixed: int
    repelling: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "k": self.k,
            "local_degrees": self.local_degrees,
            "total_fixed": self.total_fixed,
            "repelling": self.repelling,
        }


def predict_portrait(g: PlaneGraph) -> PortraitPrediction:
    if not is_simple(g):
        raise NotSimple("Graph has loops or multi-edges")
    if not is_k_connected(g, 2):
        raise GraphError("Graph is not 2-connected")
    d, k = g.n - 1, g.face_count
    return PortraitPrediction(
        degree=d,
        k=k,
        local_degrees=sorted(deg - 1 for deg in face_degrees(g)),
        total_fixed=d + 2 * k - 1,
        repelling=g.edge_count,
    )


@dataclass
class CheckItem:
    name: str
    expected: Any
    observed: Any
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "expected": self.expected, "observed": self.observed,
                "verdict": "PASS" if self.passed else "FAIL"}


@dataclass
class DictionaryCheck:
    map_name: Optional[str]
    items: List[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    @property
    def mismatches(self) -> List[str]:
        return [item.name for item in self.items if not item.passed]

    def add(self, name: str, expected: Any, observed: Any) -> None:
        self.items.append(CheckItem(name, expected, observed, expected == observed))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "map": self.map_name,
            "verdict": "PASS" if self.passed else "FAIL",
            "mismatches": self.mismatches,
            "items": [item.to_dict() for item in self.items],
        }


def verify_dictionary(g: PlaneGraph, R: AntiRationalMap) -> DictionaryCheck:
    """
    Compare a graph with a candidate map item by item

    Faces of the graph correspond to critical points, face degrees to local
    degree plus one, edges to repelling fixed points and vertices to d + 1.
    Failures are recorded, never raised.
    """
    report = DictionaryCheck(R.name)
    try:
        prediction = predict_portrait(g)
    except KissingError as exc:
        report.items.append(CheckItem("graph", "simple and 2-connected", exc.message, False))
        return report

    try:
        portrait = critical_points(R)
    except KissingError as exc:
        report.items.append(CheckItem("critical_points", "computed", exc.message, False))
        return report

    report.add("critically_fixed", True, portrait.critically_fixed)
    report.add("critical_count", prediction.k, portrait.k)
    report.add("face_degrees", sorted(m + 1 for m in prediction.local_degrees),
               sorted(m + 1 for m in portrait.local_degrees))
    report.add("degree", prediction.degree, portrait.multiplicity_total // 2 + 1)

    try:
        fixed = fixed_points(R, portrait)
        report.add("repelling_fixed", prediction.repelling, fixed.repelling)
        report.add("total_fixed", portrait.degree + 2 * portrait.k - 1, fixed.total)
    except KissingError as exc:
        report.items.append(CheckItem("fixed_points", "computed", exc.message, False))

    verdict = "✅ PASS" if report.passed else f"❌ FAIL {report.mismatches}"
    logger.info(f"{verdict} dictionary check for {R.name or 'map'}")
    return report


# ============================================================================
# BASIN RENDERING
# ============================================================================

@dataclass
class JuliaRaster:
    """Basin labels per pixel, row 0 at the top of the window"""
    labels: np.ndarray
    window: Window
    targets: List[complex]
    max_iters: int

    @property
    def julia_fraction(self) -> float:
        return float(np.mean(self.labels == JULIA_LABEL))

    def basin_pixels(self) -> List[int]:
        return [int(np.count_nonzero(self.labels == i)) for i in range(len(self.targets))]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "resolution": list(self.labels.shape),
            "window": list(self.window),
            "max_iters": self.max_iters,
            "targets": [_point_json(t) for t in self.targets],
            "basin_pixels": self.basin_pixels(),
            "julia_fraction": self.julia_fraction,
        }


def _chordal(z: np.ndarray, target: complex) -> np.ndarray:
    finite = np.isfinite(z)
    zf = np.where(finite, z, 0)
    if is_infinite(target):
        return np.where(finite, 2.0 / np.sqrt(1.0 + np.abs(zf) ** 2), 0.0)
    dist = 2.0 * np.abs(zf - target) / np.sqrt((1.0 + np.abs(zf) ** 2) * (1.0 + abs(target) ** 2))
    return np.where(finite, dist, 2.0 / math.sqrt(1.0 + abs(target) ** 2))


def classify_points(
    R: AntiRationalMap,
    points: np.ndarray,
    targets: Sequence[complex],
    max_iters: int,
    radius: float = BASIN_RADIUS,
) -> np.ndarray:
    """Index of the target each orbit reaches within radius, or JULIA_LABEL"""
    z = np.asarray(points, dtype=complex).ravel().copy()
    labels = np.full(z.shape, JULIA_LABEL, dtype=np.int16)
    active = np.ones(z.shape, dtype=bool)
    for step in range(max_iters + 1):
        for index, target in enumerate(targets):
            hit = active & (_chordal(z, target) <= radius)
            labels[hit] = index
            active &= ~hit
        if step == max_iters or not active.any():
            break
        z[active] = R.holomorphic(np.conj(z[active]))
    return labels.reshape(np.shape(points))


def julia_render(
    R: AntiRationalMap,
    window: Window = (-2.0, 2.0, -2.0, 2.0),
    resolution: int = 512,
    max_iters: int = 200,
    threads: Optional[int] = None,
) -> JuliaRaster:
    """
    Label every pixel by the fixed critical point its orbit converges to

    Args:
        R: A critically fixed map
        window: (xmin, xmax, ymin, ymax)
        resolution: Pixels per side
        max_iters: Iterations before a pixel is labelled Julia
        threads: Worker threads over row chunks (settings when omitted)
    """
    if resolution <= 0 or max_iters < 0:
        raise InputError("Resolution must be positive and max_iters non-negative")
    threads = threads or get_settings().threads
    portrait = critical_points(R)
    targets = [c.value for c in portrait.points if c.fixed]
    if not targets:
        logger.warning(f"⚠️ {R.name or 'map'} has no fixed critical points; every pixel is Julia")

    xmin, xmax, ymin, ymax = window
    xs = xmin + (np.arange(resolution) + 0.5) * (xmax - xmin) / resolution
    ys = ymax - (np.arange(resolution) + 0.5) * (ymax - ymin) / resolution
    grid = xs[None, :] + 1j * ys[:, None]

    chunks = [grid[i:i + CHUNK_ROWS] for i in range(0, resolution, CHUNK_ROWS)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda rows: classify_points(R, rows, targets, max_iters), chunks))
    else:
        parts = [classify_points(R, rows, targets, max_iters) for rows in chunks]

    raster = JuliaRaster(np.vstack(parts), window, targets, max_iters)
    logger.info(f"✅ Rendered {resolution}x{resolution}, Julia fraction {raster.julia_fraction:.4f}")
    return raster


def render_png(raster: JuliaRaster, path: str) -> None:
    """Palette PNG: black for Julia pixels, one colour per basin"""
    palette_map = colormaps["tab20"]
    palette = [0, 0, 0]
    for i in range(len(raster.targets)):
        r, g, b, _ = palette_map(i % palette_map.N)
        palette.extend(int(round(255 * c)) for c in (r, g, b))

    index = (raster.labels.astype(np.int32) + 1).astype(np.uint8)
    height, width = index.shape
    image = Image.frombytes("P", (width, height), index.tobytes())
    image.putpalette(palette)
    image.save(path, format="PNG")
    logger.info(f"💾 Saved basin image to {path}")


# ============================================================================
# DOCUMENTS
# ============================================================================

def _point_json(z: complex) -> Optional[List[float]]:
    """[re, im], or None for infinity"""
    if is_infinite(z):
        return None
    return [float(z.real), float(z.imag)]


def _coeff_from_json(value: Any) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        return complex(value[0], value[1])
    raise DocumentError(f"Coefficient must be a number or [re, im], got {value!r}")


def map_to_json(R: AntiRationalMap) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "num": [[a.real, a.imag] for a in R.num],
        "den": [[a.real, a.imag] for a in R.den],
    }
    if R.name:
        document["name"] = R.name
    return document


def map_from_json(document: Dict[str, Any]) -> AntiRationalMap:
    """{"num": [[re, im], ...], "den": [[re, im], ...]} with ascending coefficients"""
    if not isinstance(document, dict):
        raise DocumentError("Map document must be an object")
    for key in ("num", "den"):
        if not isinstance(document.get(key), list) or not document[key]:
            raise DocumentError(f"Map document needs a non-empty '{key}' list")
    name = document.get("name")
    return AntiRationalMap(
        tuple(_coeff_from_json(a) for a in document["num"]),
        tuple(_coeff_from_json(a) for a in document["den"]),
        name if isinstance(name, str) else None,
    )


__all__ = [
    'AntiRationalMap', 'evaluate', 'PLATONIC_SOLIDS', 'platonic_maps', 'polygon_map', 'named_map',
    'CriticalPoint', 'CriticalPortrait', 'wronskian', 'critical_points',
    'second_iterate', 'multiplier_modulus', 'FixedPoint', 'FixedPointPortrait', 'fixed_points',
    'PortraitPrediction', 'predict_portrait', 'CheckItem', 'DictionaryCheck', 'verify_dictionary',
    'JuliaRaster', 'classify_points', 'julia_render', 'render_png', 'JULIA_LABEL',
    'map_to_json', 'map_from_json',
]
