#!/usr/bin/env python3
"""
Kissing - Plane Graphs
Combinatorial plane graphs stored as rotation systems (darts, twins, ccw successor).

Provides:
- PlaneGraph: validated sphere embedding with face traversal
- Predicates the dictionary keys on: simplicity, k-connectivity, outerplanarity, Hamiltonicity
- Planar duals, polygon graphs, gluing along the outer cycle and unmating
- Rooted canonical forms for plane-graph isomorphism
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import (
    Disconnected,
    DegreeTooSmall,
    DocumentError,
    EulerViolation,
    InputError,
    LengthMismatch,
    MalformedRotation,
    NotHamiltonianCycle,
    NotOuterplanar,
    NotSimple,
    TooLarge,
)

logger = logging.getLogger(__name__)

DEFAULT_HAMILTONIAN_CAP = 16

PLATONIC_BUILDERS = {
    "tetrahedron": nx.tetrahedral_graph,
    "octahedron": nx.octahedral_graph,
    "cube": nx.cubical_graph,
    "icosahedron": nx.icosahedral_graph,
    "dodecahedron": nx.dodecahedral_graph,
}

Cycle = Tuple[int, ...]
Chord = Tuple[int, int]


# ============================================================================
# PLANE GRAPH
# ============================================================================

class PlaneGraph:
    """
    Rotation system on the sphere.

    Dart e runs from origin[e] to origin[twin[e]]; next_ccw[e] is the dart
    following e counterclockwise around its origin. Faces are the cycles of
    e -> next_ccw[twin[e]], which keeps the face on the right of each dart.
    """

    def __init__(
        self,
        vertex_count: int,
        origin: Sequence[int],
        twin: Sequence[int],
        next_ccw: Sequence[int],
        labels: Optional[Sequence[int]] = None,
    ):
        self.vertex_count = int(vertex_count)
        self.origin: Tuple[int, ...] = tuple(origin)
        self.twin: Tuple[int, ...] = tuple(twin)
        self.next_ccw: Tuple[int, ...] = tuple(next_ccw)
        self.labels: Optional[Tuple[int, ...]] = tuple(labels) if labels is not None else None

        self._validate_permutations()

        prev = [0] * len(self.next_ccw)
        for e, nxt in enumerate(self.next_ccw):
            prev[nxt] = e
        self.prev_ccw: Tuple[int, ...] = tuple(prev)

        first: List[Optional[int]] = [None] * self.vertex_count
        for e, v in enumerate(self.origin):
            if first[v] is None:
                first[v] = e
        if any(f is None for f in first):
            raise Disconnected("Isolated vertex in rotation system",
                               {"vertices": [v for v, f in enumerate(first) if f is None]})
        self._first_dart: Tuple[int, ...] = tuple(int(f) for f in first)  # type: ignore[arg-type]

        self._face_of, self._faces = self._trace_faces()
        self._check_connected()

        euler = self.vertex_count - self.edge_count + self.face_count
        if euler != 2:
            raise EulerViolation(
                f"V - E + F = {euler}, rotation system is not a sphere embedding",
                {"V": self.vertex_count, "E": self.edge_count, "F": self.face_count},
            )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rotation(
        cls,
        n: int,
        rotation: Sequence[Sequence[int]],
        edge_ids: Optional[Sequence[Sequence[Any]]] = None,
        labels: Optional[Sequence[int]] = None,
    ) -> "PlaneGraph":
        """
        Build from counterclockwise neighbour lists

        Args:
            n: Vertex count
            rotation: rotation[v] lists v's neighbours counterclockwise
            edge_ids: Optional parallel structure naming the edge of every entry;
                each id must occur exactly twice. Needed to pair parallel edges
                and loops unambiguously.
            labels: Optional integer vertex labels

        Returns:
            Validated PlaneGraph
        """
        if len(rotation) != n:
            raise MalformedRotation(f"Expected {n} neighbour lists, got {len(rotation)}")

        origin: List[int] = []
        target: List[int] = []
        next_ccw: List[int] = []
        slot: Dict[Tuple[int, int], int] = {}
        for v, neighbours in enumerate(rotation):
            start = len(origin)
            for i, u in enumerate(neighbours):
                if not isinstance(u, int) or isinstance(u, bool) or not 0 <= u < n:
                    raise MalformedRotation(f"Vertex {v} lists invalid neighbour {u!r}")
                slot[(v, i)] = len(origin)
                origin.append(v)
                target.append(u)
            k = len(neighbours)
            for i in range(k):
                next_ccw.append(start + (i + 1) % k)

        twin = [-1] * len(origin)
        if edge_ids is not None:
            _pair_by_ids(rotation, edge_ids, slot, twin)
        else:
            _pair_by_order(n, rotation, slot, twin)

        for e, t in enumerate(twin):
            if t < 0 or target[e] != origin[t] or target[t] != origin[e]:
                raise MalformedRotation(f"Dart {origin[e]}->{target[e]} has no consistent twin")

        return cls(n, origin, twin, next_ccw, labels)

    def _validate_permutations(self) -> None:
        size = len(self.origin)
        if size == 0:
            raise MalformedRotation("Graph needs at least one edge")
        if len(self.twin) != size or len(self.next_ccw) != size:
            raise MalformedRotation("Dart arrays have different lengths")
        if sorted(self.twin) != list(range(size)) or sorted(self.next_ccw) != list(range(size)):
            raise MalformedRotation("twin and next_ccw must be permutations of the darts")
        for e in range(size):
            if self.twin[e] == e or self.twin[self.twin[e]] != e:
                raise MalformedRotation(f"twin is not a fixed-point-free involution at dart {e}")
            if self.origin[self.next_ccw[e]] != self.origin[e]:
                raise MalformedRotation(f"next_ccw leaves vertex {self.origin[e]} at dart {e}")
        for v in self.origin:
            if not 0 <= v < self.vertex_count:
                raise MalformedRotation(f"Dart origin {v} out of range")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise MalformedRotation("labels must name every vertex")

    def _trace_faces(self) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
        face_of = [-1] * len(self.origin)
        faces: List[Tuple[int, ...]] = []
        for start in range(len(self.origin)):
            if face_of[start] >= 0:
                continue
            cycle = []
            e = start
            while face_of[e] < 0:
                face_of[e] = len(faces)
                cycle.append(e)
                e = self.face_next(e)
            faces.append(tuple(cycle))
        return tuple(face_of), tuple(faces)

    def _check_connected(self) -> None:
        seen = {0}
        queue = deque([0])
        adjacency = self.adjacency()
        while queue:
            v = queue.popleft()
            for u in adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != self.vertex_count:
            raise Disconnected(
                "Graph has unreachable vertices",
                {"unreachable": sorted(set(range(self.vertex_count)) - seen)},
            )

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def dart_count(self) -> int:
        return len(self.origin)

    @property
    def edge_count(self) -> int:
        return len(self.origin) // 2

    @property
    def face_count(self) -> int:
        return len(self._faces)

    def target(self, e: int) -> int:
        return self.origin[self.twin[e]]

    def face_next(self, e: int) -> int:
        return self.next_ccw[self.twin[e]]

    def face_of(self, e: int) -> int:
        return self._face_of[e]

    def darts_at(self, v: int) -> List[int]:
        """Darts leaving v in counterclockwise order"""
        start = self._first_dart[v]
        darts = [start]
        e = self.next_ccw[start]
        while e != start:
            darts.append(e)
            e = self.next_ccw[e]
        return darts

    def rotation(self) -> List[List[int]]:
        return [[self.target(e) for e in self.darts_at(v)] for v in range(self.vertex_count)]

    def degree(self, v: int) -> int:
        return len(self.darts_at(v))

    def edges(self) -> List[Tuple[int, int, int]]:
        """(u, v, dart) for every edge, one representative dart each"""
        return [(self.origin[e], self.target(e), e)
                for e in range(self.dart_count) if e < self.twin[e]]

    def edge_set(self) -> Set[frozenset]:
        return {frozenset((u, v)) for u, v, _ in self.edges()}

    def adjacency(self) -> List[Set[int]]:
        adjacency: List[Set[int]] = [set() for _ in range(self.vertex_count)]
        for e in range(self.dart_count):
            u, v = self.origin[e], self.target(e)
            if u != v:
                adjacency[u].add(v)
        return adjacency

    def face_vertices(self, face_id: int) -> List[int]:
        return [self.origin[e] for e in self._faces[face_id]]

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"


def _pair_by_ids(rotation, edge_ids, slot, twin) -> None:
    if len(edge_ids) != len(rotation):
        raise MalformedRotation("rotation_edges must parallel rotation")
    seen: Dict[Any, int] = {}
    for v, ids in enumerate(edge_ids):
        if len(ids) != len(rotation[v]):
            raise MalformedRotation(f"rotation_edges[{v}] has the wrong length")
        for i, edge_id in enumerate(ids):
            dart = slot[(v, i)]
            key = edge_id if not isinstance(edge_id, list) else tuple(edge_id)
            if key in seen:
                other = seen.pop(key)
                twin[dart] = other
                twin[other] = dart
            else:
                seen[key] = dart
    if seen:
        raise MalformedRotation(f"Edge ids used only once: {sorted(map(str, seen))}")


def _pair_by_order(n, rotation, slot, twin) -> None:
    # k-th occurrence of v at u pairs with the mirrored occurrence of u at v
    occurrences: Dict[Tuple[int, int], List[int]] = {}
    for v, neighbours in enumerate(rotation):
        for i, u in enumerate(neighbours):
            occurrences.setdefault((v, u), []).append(slot[(v, i)])
    for (v, u), darts in occurrences.items():
        if v == u:
            if len(darts) % 2:
                raise MalformedRotation(f"Loop at {v} listed an odd number of times")
            for a, b in zip(darts[0::2], darts[1::2]):
                twin[a], twin[b] = b, a
        elif v < u:
            back = occurrences.get((u, v), [])
            if len(back) != len(darts):
                raise MalformedRotation(f"Edge {{{v},{u}}} listed {len(darts)} vs {len(back)} times")
            for a, b in zip(darts, reversed(back)):
                twin[a], twin[b] = b, a
        elif (u, v) not in occurrences:
            raise MalformedRotation(f"{v} lists {u} but {u} does not list {v}")


# ============================================================================
# CLASSIFICATION
# ============================================================================

@dataclass
class GraphClassification:
    """Everything the dictionary keys on"""
    is_simple: bool
    k_connectivity: int
    outerplanar_face: Optional[int]
    hamiltonian_cycles: List[Cycle] = field(default_factory=list)
    is_polyhedral: bool = False
    hamiltonian_searched: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "simple": self.is_simple,
            "k_connectivity": self.k_connectivity,
            "two_connected": self.k_connectivity >= 2,
            "three_connected": self.k_connectivity >= 3,
            "polyhedral": self.is_polyhedral,
            "outerplanar": self.outerplanar_face is not None,
            "outerplanar_face": self.outerplanar_face,
            "hamiltonian": bool(self.hamiltonian_cycles) if self.hamiltonian_searched else None,
            "hamiltonian_count": len(self.hamiltonian_cycles) if self.hamiltonian_searched else None,
            "hamiltonian_cycles": [list(c) for c in self.hamiltonian_cycles],
        }


def is_simple(g: PlaneGraph) -> bool:
    seen: Set[frozenset] = set()
    for u, v, _ in g.edges():
        key = frozenset((u, v))
        if u == v or key in seen:
            return False
        seen.add(key)
    return True


def _connected_without(adjacency: List[Set[int]], removed: Iterable[int]) -> bool:
    removed = set(removed)
    remaining = [v for v in range(len(adjacency)) if v not in removed]
    if not remaining:
        return False
    seen = {remaining[0]}
    queue = deque([remaining[0]])
    while queue:
        v = queue.popleft()
        for u in adjacency[v]:
            if u not in removed and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(remaining)


def _k_connected(adjacency: List[Set[int]], k: int) -> bool:
    n = len(adjacency)
    if n <= k:
        return False
    return all(_connected_without(adjacency, removed)
               for removed in combinations(range(n), k - 1))


def is_k_connected(g: PlaneGraph, k: int) -> bool:
    """
    True iff g has more than k vertices and stays connected after removing any k-1

    Args:
        g: Simple plane graph
        k: 2 or 3 (1 accepted for completeness)
    """
    if not is_simple(g):
        raise NotSimple("Connectivity is defined here for simple graphs only")
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    return _k_connected(g.adjacency(), k)


def k_connectivity(g: PlaneGraph) -> int:
    """Connectivity clipped to {0, 1, 2, 3}; 3 means 3 or more"""
    adjacency = g.adjacency()
    level = 0
    for k in (1, 2, 3):
        if not _k_connected(adjacency, k):
            break
        level = k
    return level


def outerplanar_face(g: PlaneGraph) -> Optional[int]:
    """Lowest face id whose boundary visits every vertex"""
    everything = set(range(g.n))
    for face_id in range(g.face_count):
        if set(g.face_vertices(face_id)) == everything:
            return face_id
    return None


def faces(g: PlaneGraph) -> List[Tuple[int, ...]]:
    return list(g._faces)


def face_degrees(g: PlaneGraph) -> List[int]:
    return [len(cycle) for cycle in g._faces]


def hamiltonian_cycles(g: PlaneGraph, cap: Optional[int] = None) -> List[Cycle]:
    """
    All Hamiltonian cycles up to rotation and reflection of the cycle word

    Cycles start at vertex 0 with cycle[1] < cycle[-1]; output is lexicographic.
    """
    cap = DEFAULT_HAMILTONIAN_CAP if cap is None else cap
    if g.n > cap:
        raise TooLarge(f"Hamiltonian search capped at {cap} vertices (graph has {g.n})",
                       {"cap": cap, "n": g.n})
    n = g.n
    if n < 3:
        return []
    adjacency = [sorted(nbrs) for nbrs in g.adjacency()]
    cycles: List[Cycle] = []
    path = [0]
    on_path = [False] * n
    on_path[0] = True

    def extend() -> None:
        if len(path) == n:
            if 0 in adjacency[path[-1]] and path[1] < path[-1]:
                cycles.append(tuple(path))
            return
        for u in adjacency[path[-1]]:
            if not on_path[u]:
                on_path[u] = True
                path.append(u)
                extend()
                path.pop()
                on_path[u] = False

    extend()
    return cycles


def classify(g: PlaneGraph, cap: Optional[int] = None) -> GraphClassification:
    simple = is_simple(g)
    connectivity = k_connectivity(g)
    try:
        cycles = hamiltonian_cycles(g, cap)
        searched = True
    except TooLarge:
        logger.warning(f"⚠️ Skipping Hamiltonian search on {g.n} vertices")
        cycles, searched = [], False
    return GraphClassification(
        is_simple=simple,
        k_connectivity=connectivity,
        outerplanar_face=outerplanar_face(g) if simple else None,
        hamiltonian_cycles=cycles,
        is_polyhedral=simple and connectivity >= 3,
        hamiltonian_searched=searched,
    )


# ============================================================================
# DUALS AND ISOMORPHISM
# ============================================================================

def planar_dual(g: PlaneGraph) -> PlaneGraph:
    """
    Dual plane graph: one vertex per face, one dual dart per dart.
    The dual dart of e leaves the face on the right of e; the ccw successor of
    that dual dart is the dual of the face-predecessor of e.
    """
    origin = [g.face_of(e) for e in range(g.dart_count)]
    next_ccw = [g.twin[g.prev_ccw[e]] for e in range(g.dart_count)]
    return PlaneGraph(g.face_count, origin, g.twin, next_ccw)


def _rooted_code(g: PlaneGraph, root: int, mirrored: bool) -> Tuple[int, ...]:
    step = g.prev_ccw if mirrored else g.next_ccw
    label = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        e = queue.popleft()
        for succ in (g.twin[e], step[e]):
            if succ not in label:
                label[succ] = len(order)
                order.append(succ)
                queue.append(succ)
    code: List[int] = []
    for e in order:
        code.append(label[g.twin[e]])
        code.append(label[step[e]])
    return tuple(code)


def canonical_form(g: PlaneGraph, allow_reflection: bool = True) -> Tuple[int, ...]:
    """Minimum rooted code over every (dart, reflection) root"""
    mirrors = (False, True) if allow_reflection else (False,)
    return min(_rooted_code(g, root, mirrored)
               for root in range(g.dart_count) for mirrored in mirrors)


def is_isomorphic(g: PlaneGraph, h: PlaneGraph, allow_reflection: bool = True) -> bool:
    if (g.n, g.edge_count, g.face_count) != (h.n, h.edge_count, h.face_count):
        return False
    return canonical_form(g, allow_reflection) == canonical_form(h, allow_reflection)


# ============================================================================
# POLYGONS, OUTERPLANAR GRAPHS, GLUING
# ============================================================================

def polygon_graph(d: int) -> PlaneGraph:
    """Cycle v_0 ... v_d, counterclockwise"""
    if d < 2:
        raise DegreeTooSmall(f"Polygon graph needs d >= 2, got {d}")
    return outerplanar_graph(d, [])


def _normalize_chords(d: int, chords: Iterable[Sequence[int]]) -> List[Chord]:
    m = d + 1
    normalized: Set[Chord] = set()
    for chord in chords:
        i, j = sorted(int(x) for x in chord)
        if not (0 <= i < j <= d):
            raise NotOuterplanar(f"Chord {chord} out of range for d={d}")
        if (j - i) % m in (1, m - 1):
            raise NotOuterplanar(f"Chord {{{i},{j}}} joins adjacent vertices")
        normalized.add((i, j))
    ordered = sorted(normalized)
    for (a, b), (c, e) in combinations(ordered, 2):
        if a < c < b < e or c < a < e < b:
            raise NotOuterplanar(f"Chords {{{a},{b}}} and {{{c},{e}}} cross")
    return ordered


def _polygon_rotation(
    d: int, inside: Sequence[Chord], outside: Sequence[Chord]
) -> Tuple[List[List[int]], List[List[Any]]]:
    m = d + 1
    inner: Dict[int, List[int]] = {v: [] for v in range(m)}
    outer: Dict[int, List[int]] = {v: [] for v in range(m)}
    for i, j in inside:
        inner[i].append(j)
        inner[j].append(i)
    for i, j in outside:
        outer[i].append(j)
        outer[j].append(i)

    rotation: List[List[int]] = []
    edge_ids: List[List[Any]] = []
    for v in range(m):
        after, before = (v + 1) % m, (v - 1) % m
        ins = sorted(inner[v], key=lambda u: (u - v) % m)
        outs = sorted(outer[v], key=lambda u: (u - v) % m, reverse=True)
        rotation.append([after] + ins + [before] + outs)
        edge_ids.append(
            [f"c{v}"]
            + [f"i{min(v, u)}-{max(v, u)}" for u in ins]
            + [f"c{before}"]
            + [f"o{min(v, u)}-{max(v, u)}" for u in outs]
        )
    return rotation, edge_ids


def outerplanar_graph(d: int, chords: Iterable[Sequence[int]]) -> PlaneGraph:
    """
    Labelled polygon v_0..v_d with non-crossing chords drawn inside

    Args:
        d: Degree; the outer cycle has d+1 vertices
        chords: Pairs {i, j} of non-adjacent cycle vertices

    Returns:
        2-connected outerplanar PlaneGraph; vertex i is label i
    """
    if d < 2:
        raise DegreeTooSmall(f"Outer cycle needs d >= 2, got {d}")
    inside = _normalize_chords(d, chords)
    rotation, edge_ids = _polygon_rotation(d, inside, [])
    return PlaneGraph.from_rotation(d + 1, rotation, edge_ids)


def require_labelled_outerplanar(g: PlaneGraph, role: str) -> None:
    m = g.n
    edges = g.edge_set()
    if m < 3 or any(frozenset((v, (v + 1) % m)) not in edges for v in range(m)):
        raise NotOuterplanar(f"{role} graph is not labelled 0..{m - 1} along its outer cycle")
    if not is_simple(g) or outerplanar_face(g) is None:
        raise NotOuterplanar(f"{role} graph has no face through every vertex")


def chords(g: PlaneGraph) -> List[Chord]:
    """Chords of a graph labelled along its outer cycle"""
    m = g.n
    result = []
    for u, v, _ in g.edges():
        if (v - u) % m not in (1, m - 1):
            result.append((min(u, v), max(u, v)))
    return sorted(result)


def glue_along_outer(plus: PlaneGraph, minus: PlaneGraph, offset: Optional[int] = None) -> PlaneGraph:
    """
    Glue two labelled outerplanar graphs along their outer cycles

    Plus-chords go inside the shared cycle, minus-chords outside; minus vertex j
    is identified with plus vertex (offset - j) mod (d+1). A chord present on both
    sides becomes a parallel edge and the result is not simple.

    Args:
        plus: Outerplanar graph labelled along its outer cycle
        minus: Same, with equal cycle length
        offset: Identification offset, default d

    Returns:
        Glued PlaneGraph
    """
    if plus.n != minus.n:
        raise LengthMismatch(f"Outer cycles differ: {plus.n} vs {minus.n}",
                             {"plus": plus.n, "minus": minus.n})
    require_labelled_outerplanar(plus, "plus")
    require_labelled_outerplanar(minus, "minus")
    m = plus.n
    d = m - 1
    offset = d if offset is None else offset % m

    inside = chords(plus)
    outside = sorted(
        (min((offset - i) % m, (offset - j) % m), max((offset - i) % m, (offset - j) % m))
        for i, j in chords(minus)
    )
    rotation, edge_ids = _polygon_rotation(d, inside, outside)
    glued = PlaneGraph.from_rotation(m, rotation, edge_ids)
    if not is_simple(glued):
        logger.info(f"⚠️ Glued graph has a doubled chord: {sorted(set(inside) & set(outside))}")
    return glued


def _validate_cycle(g: PlaneGraph, cycle: Sequence[int]) -> Cycle:
    cycle = tuple(int(v) for v in cycle)
    if sorted(cycle) != list(range(g.n)):
        raise NotHamiltonianCycle(f"{cycle} does not visit every vertex exactly once")
    adjacency = g.adjacency()
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if b not in adjacency[a]:
            raise NotHamiltonianCycle(f"{cycle} uses missing edge {{{a},{b}}}")
    return cycle


def split_by_cycle(g: PlaneGraph, cycle: Sequence[int]) -> Tuple[List[Chord], List[Chord]]:
    """
    Chords of g relative to a Hamiltonian cycle, split by side

    Returns:
        (left, right) chord lists in cycle positions; left means counterclockwise
        between the next and the previous cycle vertex at either endpoint
    """
    if not is_simple(g):
        raise NotSimple("Unmating needs a simple graph")
    cycle = _validate_cycle(g, cycle)
    m = len(cycle)
    position = {v: i for i, v in enumerate(cycle)}
    left: List[Chord] = []
    right: List[Chord] = []
    for u, v, dart in g.edges():
        i, j = position[u], position[v]
        if (j - i) % m in (1, m - 1):
            continue
        around = [g.target(e) for e in g.darts_at(u)]
        after, before = cycle[(i + 1) % m], cycle[(i - 1) % m]
        start = around.index(after)
        walk = around[start:] + around[:start]
        chord = (min(i, j), max(i, j))
        if walk.index(v) < walk.index(before):
            left.append(chord)
        else:
            right.append(chord)
    return sorted(left), sorted(right)


def unmate(g: PlaneGraph, cycle: Sequence[int], offset: Optional[int] = None) -> Tuple[PlaneGraph, PlaneGraph]:
    """
    Split g along a Hamiltonian cycle into (plus, minus) outerplanar graphs

    glue_along_outer(plus, minus, offset) reproduces g with vertex cycle[i] renamed i.
    """
    left, right = split_by_cycle(g, cycle)
    m = g.n
    d = m - 1
    offset = d if offset is None else offset % m
    minus = [tuple(sorted(((offset - i) % m, (offset - j) % m))) for i, j in right]
    return outerplanar_graph(d, left), outerplanar_graph(d, minus)


# ============================================================================
# INTEROP
# ============================================================================

def from_networkx(graph: nx.Graph) -> PlaneGraph:
    """
    PlaneGraph from networkx's planar embedding; nodes renumbered in sorted order.
    """
    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise EulerViolation("Graph is not planar", {"nodes": graph.number_of_nodes()})
    nodes = sorted(graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    rotation = [
        [index[u] for u in reversed(list(embedding.neighbors_cw_order(node)))]
        for node in nodes
    ]
    return PlaneGraph.from_rotation(len(nodes), rotation)


def to_networkx(g: PlaneGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from((u, v) for u, v, _ in g.edges() if u != v)
    return graph


def platonic_graph(name: str) -> PlaneGraph:
    try:
        builder = PLATONIC_BUILDERS[name]
    except KeyError:
        raise DocumentError(f"Unknown Platonic solid {name!r}",
                            {"known": sorted(PLATONIC_BUILDERS)}) from None
    return from_networkx(builder())


def from_json(document: Dict[str, Any]) -> PlaneGraph:
    """
    Graph document: {"n": int, "rotation": [[int, ...], ...]} with optional
    "rotation_edges" (parallel edge ids) and "labels".
    """
    if not isinstance(document, dict):
        raise DocumentError("Graph document must be a JSON object")
    n = document.get("n")
    rotation = document.get("rotation")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("Graph document needs a positive integer 'n'")
    if not isinstance(rotation, list) or not all(isinstance(r, list) for r in rotation):
        raise DocumentError("Graph document needs 'rotation' as a list of lists")
    return PlaneGraph.from_rotation(
        n, rotation, document.get("rotation_edges"), document.get("labels")
    )


def to_json(g: PlaneGraph) -> Dict[str, Any]:
    document: Dict[str, Any] = {"n": g.n, "rotation": g.rotation()}
    if not is_simple(g):
        document["rotation_edges"] = [
            [min(e, g.twin[e]) for e in g.darts_at(v)] for v in range(g.n)
        ]
    if g.labels is not None:
        document["labels"] = list(g.labels)
    return document


__all__ = [
    'PlaneGraph', 'GraphClassification', 'is_simple', 'is_k_connected', 'k_connectivity',
    'outerplanar_face', 'faces', 'face_degrees', 'hamiltonian_cycles', 'classify',
    'planar_dual', 'canonical_form', 'is_isomorphic', 'polygon_graph', 'outerplanar_graph',
    'chords', 'require_labelled_outerplanar', 'glue_along_outer', 'split_by_cycle', 'unmate',
    'from_networkx', 'to_networkx', 'platonic_graph', 'from_json', 'to_json',
]
