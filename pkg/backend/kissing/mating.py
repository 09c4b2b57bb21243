#!/usr/bin/env python3
"""
Kissing - Matings
Ray-equivalence classes of two laminations glued through the mirror θ -> -θ,
cycle (Moore) obstruction detection, the non-parallel test, and the graph
side of the same decision: gluing outerplanar graphs along their outer cycles.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx

from config import get_settings

from .angle_dynamics import (
    Lamination,
    check_lamination,
    fixed_angles,
    lamination_of,
    mirror,
    rotate,
)
from .errors import CrossCheckMismatch, DegreeMismatch, NotHamiltonian, NotSimple
from .plane_graph import (
    Chord,
    Cycle,
    PlaneGraph,
    canonical_form,
    chords,
    glue_along_outer,
    hamiltonian_cycles,
    is_k_connected,
    is_simple,
    outerplanar_graph,
    to_json,
    unmate,
)

logger = logging.getLogger(__name__)

ClassNode = Tuple[str, int]


def _require_same_degree(lp: Lamination, lq: Lamination) -> None:
    if lp.degree != lq.degree:
        raise DegreeMismatch(f"Laminations have degrees {lp.degree} and {lq.degree}",
                             {"plus": lp.degree, "minus": lq.degree})


def _partners(lam: Lamination) -> Dict[Fraction, Set[Fraction]]:
    partners: Dict[Fraction, Set[Fraction]] = {}
    for leaf in lam.leaves:
        partners.setdefault(leaf.low, set()).add(leaf.high)
        partners.setdefault(leaf.high, set()).add(leaf.low)
    return partners


def _class_index(angles: List[Fraction], partners: Dict[Fraction, Set[Fraction]]) -> Tuple[Dict[Fraction, int], List[List[Fraction]]]:
    graph = nx.Graph()
    graph.add_nodes_from(angles)
    for t in angles:
        graph.add_edges_from((t, u) for u in partners.get(t, ()))
    classes = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    index = {t: i for i, members in enumerate(classes) for t in members}
    return index, classes


def _fmt(t: Fraction) -> str:
    return str(t)


# ============================================================================
# RAY CLASSES
# ============================================================================

@dataclass
class RayClass:
    """One connected component of the class graph"""
    angles: List[Fraction]
    p_classes: List[List[Fraction]]
    q_classes: List[List[Fraction]]

    @property
    def vertex_count(self) -> int:
        return len(self.p_classes) + len(self.q_classes)

    @property
    def edge_count(self) -> int:
        return len(self.angles)

    @property
    def cycles(self) -> int:
        return self.edge_count - self.vertex_count + 1

    @property
    def is_tree(self) -> bool:
        return self.cycles == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "angles": [_fmt(t) for t in self.angles],
            "p_classes": [[_fmt(t) for t in c] for c in self.p_classes],
            "q_classes": [[_fmt(t) for t in c] for c in self.q_classes],
            "cycles": self.cycles,
        }


@dataclass
class RayClassGraph:
    """
    Bipartite incidence of P-classes and Q-classes

    Vertices are classes, edges are angles: angle θ joins its P-class to its
    Q-class. Q-classes come from mirror(L_Q).
    """
    degree: int
    angles: List[Fraction]
    p_index: Dict[Fraction, int]
    q_index: Dict[Fraction, int]
    p_classes: List[List[Fraction]]
    q_classes: List[List[Fraction]]
    graph: nx.MultiGraph = field(repr=False)

    @property
    def cycle_count(self) -> int:
        """E - V + C over the whole class graph"""
        g = self.graph
        return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)

    def components(self) -> List[RayClass]:
        result = []
        for nodes in nx.connected_components(self.graph):
            angles = sorted(t for _, _, t in self.graph.edges(nodes, keys=True))
            angles = sorted(set(angles))
            p = sorted(self.p_classes[i] for side, i in nodes if side == "P")
            q = sorted(self.q_classes[i] for side, i in nodes if side == "Q")
            result.append(RayClass(angles, p, q))
        return sorted(result, key=lambda c: c.angles[0])


def ray_classes(lp: Lamination, lq: Lamination) -> RayClassGraph:
    """
    Close the principal angles under both laminations

    Seeds are the angles of L_P plus the fixed angles; θ ~ θ' through a leaf of
    L_P or a leaf of mirror(L_Q). The closure only ever visits angles of the
    two laminations, so it is finite.
    """
    _require_same_degree(lp, lq)
    check_lamination(lp)
    check_lamination(lq)
    mirrored = mirror(lq)
    p_partners, q_partners = _partners(lp), _partners(mirrored)

    seen: Set[Fraction] = set(lp.angles()) | set(fixed_angles(lp.degree))
    queue = sorted(seen)
    while queue:
        t = queue.pop()
        for u in p_partners.get(t, set()) | q_partners.get(t, set()):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    angles = sorted(seen)

    p_index, p_classes = _class_index(angles, p_partners)
    q_index, q_classes = _class_index(angles, q_partners)
    graph = nx.MultiGraph()
    for t in angles:
        graph.add_edge(("P", p_index[t]), ("Q", q_index[t]), key=t)

    logger.debug(f"Ray classes: {len(angles)} angles, {len(p_classes)} P-classes, {len(q_classes)} Q-classes")
    return RayClassGraph(lp.degree, angles, p_index, q_index, p_classes, q_classes, graph)


def shortest_cycle_witness(graph: nx.MultiGraph) -> Optional[List[Fraction]]:
    """
    Angles along a shortest cycle of the class graph, or None for a forest

    Every edge is tried as the closing edge of a cycle; the rest of the cycle
    is a shortest path between its ends once that edge is removed.
    """
    best: Optional[List[Fraction]] = None
    for u, v, key in sorted(graph.edges(keys=True), key=lambda e: e[2]):
        rest = graph.copy()
        rest.remove_edge(u, v, key=key)
        try:
            path = nx.shortest_path(rest, v, u)
        except nx.NetworkXNoPath:
            continue
        cycle = [key] + [min(rest[a][b]) for a, b in zip(path, path[1:])]
        if best is None or len(cycle) < len(best):
            best = cycle
            if len(best) == 2:
                break
    return best


# ============================================================================
# OBSTRUCTIONS
# ============================================================================

@dataclass
class ObstructionReport:
    obstructed: bool
    witness: List[Fraction]
    classes: List[RayClass]

    @property
    def witness_length(self) -> int:
        return len(self.witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "obstructed": self.obstructed,
            "witness": [_fmt(t) for t in self.witness],
            "witness_length": self.witness_length,
            "classes": [c.to_dict() for c in self.classes],
        }


def detect_obstruction(lp: Lamination, lq: Lamination) -> ObstructionReport:
    """
    Obstructed iff some principal ray class contains a cycle (E >= V)

    The witness is a shortest cycle, listed by its angles; it alternates
    P-leaves and Q-leaves so its length is even.
    """
    rc = ray_classes(lp, lq)
    classes = rc.components()
    cyclic = [c for c in classes if not c.is_tree]
    witness: List[Fraction] = []
    if cyclic:
        nodes = {("P", rc.p_index[t]) for c in cyclic for t in c.angles}
        nodes |= {("Q", rc.q_index[t]) for c in cyclic for t in c.angles}
        witness = shortest_cycle_witness(rc.graph.subgraph(nodes).copy()) or []
        logger.info(f"⚠️ Obstruction: cycle through {[_fmt(t) for t in witness]}")
    return ObstructionReport(bool(cyclic), witness, classes)


def non_parallel(lp: Lamination, lq: Lamination) -> bool:
    """True iff L_P and mirror(L_Q) share no leaf"""
    _require_same_degree(lp, lq)
    return not (lp.leaves & mirror(lq).leaves)


# ============================================================================
# GRAPH MATINGS
# ============================================================================

def minus_lamination(minus: PlaneGraph, offset: int) -> Lamination:
    """Lamination of the minus graph, rotated to the gluing offset"""
    lam = lamination_of(minus)
    m = lam.degree + 1
    return rotate(lam, (lam.degree - offset) % m)


@dataclass
class CrossCheck:
    glued: PlaneGraph
    simple: bool
    non_parallel: bool
    report: ObstructionReport

    @property
    def consistent(self) -> bool:
        return self.simple == self.non_parallel == (not self.report.obstructed)


def _cross_check(plus: PlaneGraph, minus: PlaneGraph, offset: int) -> CrossCheck:
    glued = glue_along_outer(plus, minus, offset)
    lp, lq = lamination_of(plus), minus_lamination(minus, offset)
    return CrossCheck(glued, is_simple(glued), non_parallel(lp, lq), detect_obstruction(lp, lq))


@dataclass
class MatingVerdict:
    mateable: bool
    offset: int
    glued: Optional[PlaneGraph]
    doubled_chords: List[Chord]
    obstruction: ObstructionReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mateable": self.mateable,
            "offset": self.offset,
            "glued": to_json(self.glued) if self.glued is not None else None,
            "doubled_chords": [list(c) for c in self.doubled_chords],
            "witness": [_fmt(t) for t in self.obstruction.witness],
            "obstruction": self.obstruction.to_dict(),
        }


def mate_graphs(plus: PlaneGraph, minus: PlaneGraph, offset: Optional[int] = None) -> MatingVerdict:
    """
    Glue plus and minus along their outer cycles and decide mateability

    Args:
        plus: Labelled outerplanar graph
        minus: Labelled outerplanar graph of the same cycle length
        offset: Minus vertex j meets plus vertex (offset - j); default d

    Returns:
        MatingVerdict; the glued graph is kept only when it is simple
    """
    m = plus.n
    offset = (m - 1) if offset is None else offset % m
    check = _cross_check(plus, minus, offset)
    if not check.consistent:
        raise CrossCheckMismatch(
            "Graph gluing and lamination criteria disagree",
            {
                "offset": offset,
                "glued_simple": check.simple,
                "non_parallel": check.non_parallel,
                "obstructed": check.report.obstructed,
            },
        )
    inside = set(chords(plus))
    outside = {tuple(sorted(((offset - i) % m, (offset - j) % m))) for i, j in chords(minus)}
    doubled = sorted(inside & outside)
    verdict = MatingVerdict(check.simple, offset, check.glued if check.simple else None, doubled, check.report)
    logger.info(f"{'✅' if verdict.mateable else '❌'} Mating at offset {offset}: mateable={verdict.mateable}")
    return verdict


def mate_all_offsets(plus: PlaneGraph, minus: PlaneGraph) -> List[MatingVerdict]:
    return [mate_graphs(plus, minus, offset) for offset in range(plus.n)]


@dataclass
class SharedMating:
    cycle: Cycle
    plus: PlaneGraph
    minus: PlaneGraph

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cycle": list(self.cycle),
            "plus_chords": [list(c) for c in chords(self.plus)],
            "minus_chords": [list(c) for c in chords(self.minus)],
            "plus": to_json(self.plus),
            "minus": to_json(self.minus),
        }


def shared_matings(
    g: PlaneGraph,
    up_to_isomorphism: bool = False,
    unordered: bool = False,
    cap: Optional[int] = None,
) -> List[SharedMating]:
    """
    One unmating per Hamiltonian cycle

    Args:
        g: Simple 2-connected plane graph
        up_to_isomorphism: Collapse entries whose (plus, minus) pairs are isomorphic
        unordered: With up_to_isomorphism, also treat (A, B) and (B, A) as equal
        cap: Hamiltonian search cap (settings when omitted)

    Returns:
        SharedMating entries in cycle order
    """
    if not is_simple(g):
        raise NotSimple("Shared matings need a simple graph")
    cap = get_settings().hamiltonian_cap if cap is None else cap
    cycles = hamiltonian_cycles(g, cap)
    if not cycles or not is_k_connected(g, 2):
        raise NotHamiltonian("Graph has no Hamiltonian cycle", {"n": g.n})

    result: List[SharedMating] = []
    seen: Set[Any] = set()
    for cycle in cycles:
        plus, minus = unmate(g, cycle)
        if up_to_isomorphism:
            pair = (canonical_form(plus), canonical_form(minus))
            key = frozenset(pair) if unordered else pair
            if key in seen:
                continue
            seen.add(key)
        result.append(SharedMating(cycle, plus, minus))
    logger.info(f"✅ {len(result)} shared matings from {len(cycles)} Hamiltonian cycles")
    return result


# ============================================================================
# EXHAUSTIVE CROSS-CHECK
# ============================================================================

def _dissections(m: int) -> Iterator[List[Chord]]:
    candidates = [(i, j) for i in range(m) for j in range(i + 2, m) if not (i == 0 and j == m - 1)]

    def crosses(a: Chord, b: Chord) -> bool:
        return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]

    def extend(start: int, chosen: List[Chord]) -> Iterator[List[Chord]]:
        yield list(chosen)
        for k in range(start, len(candidates)):
            chord = candidates[k]
            if not any(crosses(chord, other) for other in chosen):
                chosen.append(chord)
                yield from extend(k + 1, chosen)
                chosen.pop()

    yield from extend(0, [])


def outerplanar_graphs(m: int) -> List[PlaneGraph]:
    """Every labelled 2-connected outerplanar graph on the m-cycle"""
    return [outerplanar_graph(m - 1, chord_set) for chord_set in _dissections(m)]


@dataclass
class SweepReport:
    max_vertices: int
    checked: int = 0
    mateable: int = 0
    obstructed: int = 0
    mismatches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_vertices": self.max_vertices,
            "checked": self.checked,
            "mateable": self.mateable,
            "obstructed": self.obstructed,
            "mismatches": self.mismatches,
            "verdict": "PASS" if self.passed else "FAIL",
        }


def _sweep_pair(pair: Tuple[PlaneGraph, PlaneGraph]) -> List[Tuple[int, CrossCheck]]:
    plus, minus = pair
    return [(offset, _cross_check(plus, minus, offset)) for offset in range(plus.n)]


def sweep_outerplanar_pairs(max_vertices: int = 6, threads: Optional[int] = None) -> SweepReport:
    """
    Glue-simplicity, non-parallel and obstruction-freeness must agree on
    every pair of labelled outerplanar graphs up to max_vertices, at every offset.
    """
    threads = threads or get_settings().threads
    report = SweepReport(max_vertices)
    for m in range(3, max_vertices + 1):
        graphs = outerplanar_graphs(m)
        pairs = list(product(graphs, graphs))
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_sweep_pair, pairs))
        else:
            results = [_sweep_pair(pair) for pair in pairs]
        for (plus, minus), checks in zip(pairs, results):
            for offset, check in checks:
                report.checked += 1
                report.mateable += int(check.simple)
                report.obstructed += int(check.report.obstructed)
                if not check.consistent:
                    report.mismatches.append({
                        "plus": [list(c) for c in chords(plus)],
                        "minus": [list(c) for c in chords(minus)],
                        "offset": offset,
                        "glued_simple": check.simple,
                        "non_parallel": check.non_parallel,
                        "obstructed": check.report.obstructed,
                    })
        logger.info(f"🧮 Swept {len(pairs)} pairs on {m} vertices")
    if report.passed:
        logger.info(f"✅ Cross-check clean over {report.checked} gluings")
    else:
        logger.error(f"❌ {len(report.mismatches)} cross-check mismatches")
    return report


__all__ = [
    'RayClass', 'RayClassGraph', 'ray_classes', 'shortest_cycle_witness',
    'ObstructionReport', 'detect_obstruction', 'non_parallel', 'minus_lamination',
    'CrossCheck', 'MatingVerdict', 'mate_graphs', 'mate_all_offsets',
    'SharedMating', 'shared_matings', 'outerplanar_graphs', 'SweepReport', 'sweep_outerplanar_pairs',
]
