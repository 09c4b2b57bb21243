#!/usr/bin/env python3
"""
Kissing - Kissing Reflection Groups
The group generated by reflections in the circles of a packing.

Provides:
- reflection / generators / word_element / apply
- Level-disk recursion by reduced words, with spherical-diameter pruning
- Limit-set covers, level connectivity, cusp certificates
- The Nielsen map and its itineraries
- Side tiles of the fundamental domain for a Hamiltonian cycle
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from matplotlib.path import Path

from config import get_settings
from utils.spherical import INFINITY, is_infinite

from .errors import (
    EscapedToOmega,
    ExplosionGuard,
    InputError,
    NotHamiltonianCycle,
    OutsideDomain,
    TooLarge,
    WordNotReduced,
)
from .packing import AntiMoebius, Circle, CirclePacking, Moebius, inversive_defect
from .plane_graph import (
    PlaneGraph,
    faces,
    hamiltonian_cycles,
    is_k_connected,
    is_simple,
    outerplanar_face,
    split_by_cycle,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
Pair = Tuple[int, int]

POINT_TOL = 1e-9
ARC_SAMPLES = 24
TOUCH_BLOCK = 512


# ============================================================================
# REFLECTIONS AND WORDS
# ============================================================================

def reflection(c: Circle) -> AntiMoebius:
    """
    Reflection in c: z -> q + r^2 / (conj(z) - conj(q)) for center q, radius r

    In Hermitian form the matrix is [[-B, -D], [A, conj(B)]], which also
    covers lines.
    """
    return AntiMoebius([[-c.B, -c.D], [c.A, c.B.conjugate()]])


def generators(p: CirclePacking) -> List[AntiMoebius]:
    return [reflection(c) for c in p.circles]


def check_reduced(w: Sequence[int], n: int) -> Word:
    word = tuple(int(i) for i in w)
    for i in word:
        if not 0 <= i < n:
            raise WordNotReduced(f"Letter {i} outside 0..{n - 1}", {"word": list(word)})
    for r in range(len(word) - 1):
        if word[r] == word[r + 1]:
            raise WordNotReduced(f"Letters {r} and {r + 1} repeat {word[r]}", {"word": list(word)})
    return word


def word_element(p: CirclePacking, w: Sequence[int]) -> Moebius:
    """g_{w_1} ∘ ... ∘ g_{w_l}"""
    word = check_reduced(w, p.n)
    gens = generators(p)
    element: Moebius = Moebius.identity()
    for i in word:
        element = element.compose(gens[i])
    return element


def apply(w: Sequence[int], p: CirclePacking, x: Union[complex, Circle]) -> Union[complex, Circle]:
    """Apply g_{w_1} ∘ ... ∘ g_{w_l} to a point or a circle"""
    element = word_element(p, w)
    if isinstance(x, Circle):
        return x.image(element)
    return element(complex(x)) if not is_infinite(x) else element(INFINITY)


def reduced_words(n: int, l: int) -> List[Word]:
    """All reduced words of length l in lexicographic order"""
    if l == 0:
        return [()]
    return [w for w in product(range(n), repeat=l)
            if all(w[r] != w[r + 1] for r in range(l - 1))]


def nielsen_degree(p: CirclePacking) -> int:
    return p.n - 1


# ============================================================================
# LEVEL DISKS
# ============================================================================

@dataclass
class LevelDisk:
    """g_word(D_vertex); level = len(word)"""
    word: Word
    vertex: int
    circle: Circle
    diameter: float

    @property
    def level(self) -> int:
        return len(self.word)

    def to_dict(self) -> Dict[str, Any]:
        return {"word": list(self.word), "vertex": self.vertex,
                "circle": self.circle.to_dict(), "diameter": self.diameter}


@dataclass
class DiskLevel:
    level: int
    disks: List[LevelDisk]
    max_spherical_diameter: float
    pruned: bool = False


@dataclass
class _Node:
    disk: LevelDisk
    element: Moebius


def _root_nodes(p: CirclePacking) -> List[_Node]:
    identity = Moebius.identity()
    return [_Node(LevelDisk((), j, c, c.spherical_diameter()), identity)
            for j, c in enumerate(p.circles)]


def _children(node: _Node, p: CirclePacking, gens: Sequence[AntiMoebius]) -> List[_Node]:
    """Disks of the next level nested in node's disk, in vertex order"""
    k = node.disk.vertex
    element = node.element.compose(gens[k])
    word = node.disk.word + (k,)
    kids = []
    for j, base in enumerate(p.circles):
        if j == k:
            continue
        circle = base.image(element)
        kids.append(_Node(LevelDisk(word, j, circle, circle.spherical_diameter()), element))
    return kids


def _expand(nodes: List[_Node], p: CirclePacking, gens: Sequence[AntiMoebius], threads: int) -> List[_Node]:
    if threads <= 1 or len(nodes) < 2 * threads:
        return [kid for node in nodes for kid in _children(node, p, gens)]
    chunk = math.ceil(len(nodes) / threads)
    parts = [nodes[i:i + chunk] for i in range(0, len(nodes), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = pool.map(lambda part: [kid for node in part for kid in _children(node, p, gens)], parts)
    return [kid for part in results for kid in part]


def level_disks(
    p: CirclePacking,
    l: int,
    prune_below: Optional[float] = None,
    cap: Optional[int] = None,
    threads: Optional[int] = None,
) -> DiskLevel:
    """
    Level-l disks by breadth-first expansion over reduced words

    Args:
        p: Certified packing
        l: Level (word length)
        prune_below: Drop disks whose spherical diameter is below this
        cap: Explosion guard on the number of disks (default KISSING_ORBIT_CAP)
        threads: Worker threads for the expansion

    Returns:
        DiskLevel with disks ordered by (word, vertex)
    """
    if l < 0:
        raise InputError(f"Level must be non-negative, got {l}")
    settings = get_settings()
    cap = settings.orbit_cap if cap is None else cap
    threads = settings.threads if threads is None else threads
    n = p.n
    if prune_below is None and n * (n - 1) ** l > cap:
        raise ExplosionGuard(f"Level {l} has {n * (n - 1) ** l} disks, cap is {cap}",
                             {"level": l, "cap": cap})

    gens = generators(p)
    nodes = _root_nodes(p)
    pruned = False
    for depth in range(l + 1):
        if prune_below is not None:
            kept = [node for node in nodes if node.disk.diameter >= prune_below]
            pruned = pruned or len(kept) < len(nodes)
            nodes = kept
        if len(nodes) > cap:
            raise ExplosionGuard(f"Level {depth} holds {len(nodes)} disks, cap is {cap}",
                                 {"level": depth, "cap": cap})
        if depth < l:
            nodes = _expand(nodes, p, gens, threads)
            logger.debug(f"🌀 level {depth + 1}: {len(nodes)} disks")

    disks = [node.disk for node in nodes]
    max_diameter = max((d.diameter for d in disks), default=0.0)
    return DiskLevel(l, disks, max_diameter, pruned)


def decay_level(p: CirclePacking, threshold: float, max_level: int = 200) -> int:
    """
    First level whose largest disk has spherical diameter below threshold.
    Nested disks are never larger than their parents, so only disks at or
    above the threshold need expanding.
    """
    gens = generators(p)
    threads = get_settings().threads
    nodes = _root_nodes(p)
    for level in range(max_level + 1):
        nodes = [node for node in nodes if node.disk.diameter >= threshold]
        if not nodes:
            logger.info(f"✅ Diameters below {threshold} from level {level}")
            return level
        nodes = _expand(nodes, p, gens, threads)
    raise ExplosionGuard(f"Diameters still above {threshold} at level {max_level}",
                         {"threshold": threshold, "max_level": max_level})


@dataclass
class LimitSetCover:
    disks: List[LevelDisk]
    eps: float
    deepest_level: int


def limit_set_approx(p: CirclePacking, eps: float, cap: Optional[int] = None) -> LimitSetCover:
    """
    Cover of the limit set by level disks of spherical diameter at most eps

    A disk is expanded into its children until it is small enough; the
    output is ordered by word.
    """
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")
    cap = get_settings().orbit_cap if cap is None else cap
    gens = generators(p)
    stack = list(reversed(_root_nodes(p)))
    cover: List[LevelDisk] = []
    deepest = 0
    visited = 0
    while stack:
        node = stack.pop()
        visited += 1
        if visited > cap:
            raise ExplosionGuard(f"Cover needs more than {cap} disks at eps={eps}",
                                 {"eps": eps, "cap": cap})
        if node.disk.diameter <= eps:
            cover.append(node.disk)
            deepest = max(deepest, node.disk.level)
        else:
            stack.extend(reversed(_children(node, p, gens)))
    logger.info(f"🌀 Limit set cover: {len(cover)} disks, deepest level {deepest}")
    return LimitSetCover(cover, eps, deepest)


def tangency_defect(p: CirclePacking) -> float:
    """Largest |inversive distance - 1| over the edges of the packing"""
    worst = 0.0
    for u, v, _ in p.graph.edges():
        a, b = p.circles[u], p.circles[v]
        worst = max(worst, abs(float(inversive_defect(a.A, a.B, b.A, b.B))))
    return worst


def _touching_pairs(circles: Sequence[Circle], slack: float, block: int = TOUCH_BLOCK) -> List[Pair]:
    """
    Index pairs (i < j) whose disks touch or overlap

    The inversive distance is Möbius invariant, so a tangency of the base
    packing keeps its defect at every level; the slack is absolute in that
    invariant and so relative to the disk sizes.
    """
    A = np.array([c.A for c in circles], dtype=float)
    B = np.array([c.B for c in circles], dtype=complex)
    pairs: List[Pair] = []
    for start in range(0, len(circles), block):
        stop = min(start + block, len(circles))
        defect = inversive_defect(A[start:stop, None], B[start:stop, None], A[None, :], B[None, :])
        rows, cols = np.nonzero(defect <= slack)
        rows = rows + start
        keep = cols > rows
        pairs.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return pairs


def level_connectivity(p: CirclePacking, l: int) -> bool:
    """Whether the tangency graph of the level-l disks is connected"""
    level = level_disks(p, l)
    circles = [d.circle for d in level.disks]
    slack = max(1e-6, 10.0 * tangency_defect(p))
    graph = nx.Graph()
    graph.add_nodes_from(range(len(circles)))
    graph.add_edges_from(_touching_pairs(circles, slack))
    connected = nx.is_connected(graph)
    logger.debug(f"Level {l}: {len(circles)} disks, connected={connected}")
    return connected


# ============================================================================
# CUSPS AND THE NIELSEN MAP
# ============================================================================

def cusp_points(p: CirclePacking) -> Dict[Pair, complex]:
    """Tangency point of every edge, keyed (u, v) with u < v"""
    cusps: Dict[Pair, complex] = {}
    for u, v, _ in p.graph.edges():
        a, b = min(u, v), max(u, v)
        cusps[(a, b)] = p.circles[a].tangency_point(p.circles[b])
    worst = max((parabolic_defect(p, u, v) for u, v in cusps), default=0.0)
    if worst > 1e-6:
        logger.warning(f"⚠️ Cusp composite far from parabolic: ||trace| - 2| = {worst:.3e}")
    return cusps


def parabolic_defect(p: CirclePacking, u: int, v: int) -> float:
    """||trace(g_u g_v)| - 2|; zero exactly when the circles are tangent"""
    composite = reflection(p.circles[u]).compose(reflection(p.circles[v]))
    return abs(abs(composite.trace) - 2.0)


@dataclass
class NielsenStep:
    point: complex
    index: int
    tie: bool


def _domain_indices(p: CirclePacking, z: complex, tol: float) -> List[int]:
    return [j for j, c in enumerate(p.circles) if c.contains(z, tol)]


def nielsen_step(p: CirclePacking, z: complex, tol: float = POINT_TOL) -> NielsenStep:
    """g_j(z) for the lowest j with z in the closed disk D_j"""
    candidates = _domain_indices(p, z, tol)
    if not candidates:
        raise OutsideDomain(f"{z} lies in the fundamental domain", {"point": [z.real, z.imag]})
    j = candidates[0]
    return NielsenStep(reflection(p.circles[j])(z), j, len(candidates) > 1)


@dataclass
class NielsenItinerary:
    symbols: List[int]
    ties: List[int] = field(default_factory=list)
    final_point: complex = 0j


def nielsen_itinerary(p: CirclePacking, z: complex, steps: int, tol: float = POINT_TOL) -> NielsenItinerary:
    """
    First `steps` symbols of z under the Nielsen map

    At a cusp (z on two circles) the lowest index different from the previous
    symbol is taken and the step is recorded in `ties`.
    """
    gens = generators(p)
    symbols: List[int] = []
    ties: List[int] = []
    for step in range(steps):
        candidates = _domain_indices(p, z, tol)
        if not candidates:
            if step == 0:
                raise OutsideDomain(f"{z} lies in the fundamental domain", {"point": [z.real, z.imag]})
            raise EscapedToOmega(f"Iterate {step} left the disks", {"step": step, "symbols": symbols})
        previous = symbols[-1] if symbols else None
        fresh = [j for j in candidates if j != previous]
        if not fresh:
            raise EscapedToOmega(f"Iterate {step} is stuck on circle {previous}",
                                 {"step": step, "symbols": symbols})
        if len(candidates) > 1:
            ties.append(step)
        j = fresh[0]
        symbols.append(j)
        z = gens[j](z)
    return NielsenItinerary(symbols, ties, z)


# ============================================================================
# SIDE TILES
# ============================================================================

@dataclass
class Arc:
    """Arc of `circle` from start to end, swept with the circle's disk on the left"""
    circle: Circle
    start: complex
    end: complex


@dataclass
class Tile:
    """g_word applied to one interstice (face) of the packing"""
    face: int
    side: str
    word: Word
    arcs: List[Arc]
    boundary: np.ndarray
    contains_infinity: bool = False

    def path(self) -> Path:
        return Path(np.column_stack([self.boundary.real, self.boundary.imag]), closed=False)

    def contains(self, z: complex) -> bool:
        if is_infinite(z):
            return self.contains_infinity
        inside = bool(self.path().contains_point((z.real, z.imag)))
        return not inside if self.contains_infinity else inside

    def to_dict(self) -> Dict[str, Any]:
        return {
            "face": self.face,
            "side": self.side,
            "word": list(self.word),
            "arcs": [{"circle": a.circle.to_dict(), "start": [a.start.real, a.start.imag],
                      "end": [a.end.real, a.end.imag]} for a in self.arcs],
        }


@dataclass
class SideTiles:
    level: int
    cycle: Tuple[int, ...]
    plus: List[Tile]
    minus: List[Tile]


def _arc_samples(circle: Circle, start: complex, end: complex) -> np.ndarray:
    center, radius = circle.center, circle.radius
    a0 = cmath.phase(start - center)
    a1 = cmath.phase(end - center)
    if circle.orientation > 0:
        sweep = (a1 - a0) % (2.0 * math.pi)
    else:
        sweep = -((a0 - a1) % (2.0 * math.pi))
    angles = a0 + sweep * np.linspace(0.0, 1.0, ARC_SAMPLES)
    return center + radius * np.exp(1j * angles)


def _signed_area(points: np.ndarray) -> float:
    x, y = points.real, points.imag
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _face_sides(g: PlaneGraph, cycle: Tuple[int, ...]) -> List[str]:
    """'+' for faces left of the directed cycle, '-' for faces on its right"""
    m = len(cycle)
    position = {v: i for i, v in enumerate(cycle)}
    left, right = split_by_cycle(g, cycle)
    left_set = set(left)
    sides: List[str] = []
    for face_cycle in faces(g):
        e = face_cycle[0]
        i, j = position[g.origin[e]], position[g.target(e)]
        if (j - i) % m == 1:
            sides.append("-")
        elif (i - j) % m == 1:
            sides.append("+")
        else:
            sides.append("+" if (min(i, j), max(i, j)) in left_set else "-")
    return sides


def _base_tiles(p: CirclePacking, sides: List[str]) -> List[Tile]:
    g = p.graph
    cusps = cusp_points(p)
    tiles = []
    for face_id, face_cycle in enumerate(faces(g)):
        arcs = []
        samples = []
        length = len(face_cycle)
        for i, e in enumerate(face_cycle):
            incoming = face_cycle[(i - 1) % length]
            v = g.origin[e]
            a = cusps[tuple(sorted((g.origin[incoming], v)))]
            b = cusps[tuple(sorted((v, g.target(e))))]
            arcs.append(Arc(p.circles[v], a, b))
            samples.append(_arc_samples(p.circles[v], a, b))
        boundary = np.concatenate(samples)
        outer = _signed_area(boundary) > 0.0 and all(c.A > 0 for c in p.circles)
        tiles.append(Tile(face_id, sides[face_id], (), arcs, boundary, outer))
    return tiles


def _push_tile(tile: Tile, word: Word, element: Moebius) -> Tile:
    arcs = [Arc(a.circle.image(element), element(a.start), element(a.end)) for a in tile.arcs]
    boundary = np.array([element(complex(z)) for z in tile.boundary])
    preimage = element.inverse()(INFINITY)
    contains_inf = tile.contains(preimage)
    return Tile(tile.face, tile.side, word, arcs, boundary, contains_inf)


def omega_side_tiles(p: CirclePacking, cycle: Sequence[int], l: int) -> SideTiles:
    """
    Split the interstices by a Hamiltonian cycle and push them forward by
    every reduced word of length l

    Returns:
        SideTiles; each side holds F_± tiles at level 0 and F_± n(n-1)^(l-1)
        tiles at level l >= 1
    """
    g = p.graph
    if not is_simple(g):
        raise NotHamiltonianCycle("Side tiles need a simple contact graph")
    cycle = tuple(int(v) for v in cycle)
    sides = _face_sides(g, cycle)
    base = _base_tiles(p, sides)
    gens = generators(p)

    plus: List[Tile] = []
    minus: List[Tile] = []
    for word in reduced_words(p.n, l):
        element: Moebius = Moebius.identity()
        for i in word:
            element = element.compose(gens[i])
        for tile in base:
            pushed = _push_tile(tile, word, element) if word else tile
            (plus if pushed.side == "+" else minus).append(pushed)
    logger.info(f"🌀 Level {l} side tiles: {len(plus)} plus, {len(minus)} minus")
    return SideTiles(l, cycle, plus, minus)


def tile_interior_point(tile: Tile, p: CirclePacking, seed: int = 0) -> complex:
    """A point inside a level-0 tile and outside every packing disk"""
    def ok(z: complex) -> bool:
        return tile.contains(z) and not any(c.contains(z, POINT_TOL) for c in p.circles)

    cusps = [a.start for a in tile.arcs]
    if tile.contains_infinity:
        extent = max(abs(z) for z in tile.boundary)
        for angle in np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False):
            z = 4.0 * extent * cmath.exp(1j * angle)
            if ok(z):
                return z
    centroid = sum(cusps) / len(cusps)
    if ok(centroid):
        return centroid
    rng = np.random.default_rng(seed)
    xs, ys = tile.boundary.real, tile.boundary.imag
    for _ in range(2000):
        z = complex(rng.uniform(xs.min(), xs.max()), rng.uniform(ys.min(), ys.max()))
        if ok(z):
            return z
    raise OutsideDomain(f"No interior point found for face {tile.face}")


# ============================================================================
# PREDICTIONS
# ============================================================================

@dataclass
class LimitSetPrediction:
    """What the contact graph says about the limit set"""
    connected: bool
    gasket: bool
    function_group: bool
    mating_of_groups: bool

    def to_dict(self) -> Dict[str, bool]:
        return {"connected": self.connected, "gasket": self.gasket,
                "function_group": self.function_group, "mating_of_groups": self.mating_of_groups}


def predict_limit_set(g: PlaneGraph) -> LimitSetPrediction:
    simple = is_simple(g)
    two = simple and is_k_connected(g, 2)
    three = two and is_k_connected(g, 3)
    hamiltonian = False
    if two:
        try:
            hamiltonian = bool(hamiltonian_cycles(g))
        except TooLarge:
            logger.warning(f"⚠️ Hamiltonicity not decided for {g!r}")
    return LimitSetPrediction(
        connected=two,
        gasket=three,
        function_group=two and outerplanar_face(g) is not None,
        mating_of_groups=hamiltonian,
    )


__all__ = [
    'Word', 'LevelDisk', 'DiskLevel', 'LimitSetCover', 'NielsenStep', 'NielsenItinerary',
    'Arc', 'Tile', 'SideTiles', 'LimitSetPrediction', 'reflection', 'generators',
    'check_reduced', 'word_element', 'apply', 'reduced_words', 'nielsen_degree',
    'level_disks', 'decay_level', 'limit_set_approx', 'level_connectivity', 'tangency_defect',
    'cusp_points', 'parabolic_defect', 'nielsen_step', 'nielsen_itinerary', 'omega_side_tiles',
    'tile_interior_point', 'predict_limit_set',
]
