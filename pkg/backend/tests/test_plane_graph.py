"""Plane graph construction, classification, duals, gluing and unmating"""

import itertools

import networkx as nx
import numpy as np
import pytest

from kissing.errors import (
    DegreeTooSmall,
    Disconnected,
    DocumentError,
    LengthMismatch,
    MalformedRotation,
    NotHamiltonianCycle,
    NotOuterplanar,
    TooLarge,
)
from kissing.plane_graph import (
    chords,
    classify,
    face_degrees,
    faces,
    from_json,
    from_networkx,
    glue_along_outer,
    hamiltonian_cycles,
    is_isomorphic,
    is_k_connected,
    is_simple,
    k_connectivity,
    outerplanar_face,
    outerplanar_graph,
    planar_dual,
    platonic_graph,
    polygon_graph,
    split_by_cycle,
    to_json,
    to_networkx,
    unmate,
)


class TestConstruction:
    def test_tetrahedron_counts(self, k4):
        assert (k4.n, k4.edge_count, k4.face_count) == (4, 6, 4)
        assert sorted(face_degrees(k4)) == [3, 3, 3, 3]

    def test_every_dart_in_one_face(self, k4):
        darts = sorted(e for cycle in faces(k4) for e in cycle)
        assert darts == list(range(k4.dart_count))

    def test_wrong_number_of_rotation_lists(self):
        with pytest.raises(MalformedRotation):
            from_json({"n": 3, "rotation": [[1, 2], [0, 2]]})

    def test_neighbour_out_of_range(self):
        with pytest.raises(MalformedRotation):
            from_json({"n": 3, "rotation": [[1, 5], [2, 0], [0, 1]]})

    def test_disconnected_rotation(self):
        rotation = [[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]]
        with pytest.raises(Disconnected):
            from_json({"n": 6, "rotation": rotation})

    def test_document_needs_n(self):
        with pytest.raises(DocumentError):
            from_json({"rotation": [[1], [0]]})

    def test_document_round_trip_keeps_embedding(self, k4):
        assert is_isomorphic(from_json(to_json(k4)), k4, allow_reflection=False)

    def test_polygon_graph(self):
        g = polygon_graph(5)
        assert g.n == 6 and g.edge_count == 6 and g.face_count == 2
        assert face_degrees(g) == [6, 6]

    def test_polygon_graph_needs_degree_two(self):
        with pytest.raises(DegreeTooSmall):
            polygon_graph(1)


class TestClassification:
    def test_tetrahedron_is_polyhedral(self, k4):
        c = classify(k4)
        assert c.is_simple and c.is_polyhedral
        assert c.k_connectivity == 3
        assert c.outerplanar_face is None
        assert len(c.hamiltonian_cycles) == 3

    def test_square_with_chord_is_outerplanar(self, square_02):
        assert is_simple(square_02)
        assert is_k_connected(square_02, 2)
        assert not is_k_connected(square_02, 3)
        assert outerplanar_face(square_02) is not None

    def test_bowtie_has_a_cut_vertex(self, bowtie):
        assert k_connectivity(bowtie) == 1
        assert hamiltonian_cycles(bowtie) == []

    def test_classification_document(self, k4):
        doc = classify(k4).to_dict()
        assert doc["polyhedral"] is True
        assert doc["hamiltonian_count"] == 3
        assert doc["outerplanar"] is False

    def test_hamiltonian_cycles_are_normalized(self, k4):
        assert hamiltonian_cycles(k4) == [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]

    def test_hamiltonian_cap(self):
        cube = platonic_graph("cube")
        with pytest.raises(TooLarge):
            hamiltonian_cycles(cube, cap=4)

    def test_classify_skips_search_above_cap(self):
        doc = classify(platonic_graph("dodecahedron"), cap=8).to_dict()
        assert doc["hamiltonian"] is None


class TestDuals:
    def test_tetrahedron_is_self_dual(self, k4):
        assert is_isomorphic(planar_dual(k4), k4)

    def test_cube_and_octahedron(self):
        assert is_isomorphic(planar_dual(platonic_graph("cube")), platonic_graph("octahedron"))

    def test_dual_of_polygon_has_parallel_edges(self):
        dual = planar_dual(polygon_graph(3))
        assert dual.n == 2 and dual.edge_count == 4
        assert not is_simple(dual)

    def test_dual_counts_swap(self):
        ico = platonic_graph("icosahedron")
        dual = planar_dual(ico)
        assert (dual.n, dual.edge_count, dual.face_count) == (ico.face_count, ico.edge_count, ico.n)


class TestOuterplanar:
    def test_chords(self, square_02):
        assert chords(square_02) == [(0, 2)]

    def test_crossing_chords_rejected(self):
        with pytest.raises(NotOuterplanar):
            outerplanar_graph(3, [(0, 2), (1, 3)])

    def test_adjacent_chord_rejected(self):
        with pytest.raises(NotOuterplanar):
            outerplanar_graph(4, [(0, 1)])

    def test_glue_two_diagonals_gives_tetrahedron(self, square_02, k4):
        glued = glue_along_outer(square_02, square_02)
        assert is_simple(glued)
        assert is_isomorphic(glued, k4)

    def test_glue_same_chord_doubles_it(self, square_02, square_13):
        glued = glue_along_outer(square_02, square_13, offset=3)
        assert not is_simple(glued)
        assert glued.edge_count == 6

    def test_glue_length_mismatch(self, square_02, triangle):
        with pytest.raises(LengthMismatch):
            glue_along_outer(square_02, triangle)

    def test_glue_rejects_non_outerplanar(self, k4, square_02):
        with pytest.raises(NotOuterplanar):
            glue_along_outer(k4, square_02)


class TestUnmating:
    @pytest.mark.parametrize("cycle", [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)])
    def test_unmate_then_glue_rebuilds_tetrahedron(self, k4, cycle):
        plus, minus = unmate(k4, cycle)
        assert len(chords(plus)) == 1 and len(chords(minus)) == 1
        assert is_isomorphic(glue_along_outer(plus, minus), k4)

    def test_split_sides(self, k4):
        left, right = split_by_cycle(k4, (0, 1, 2, 3))
        assert sorted(left + right) == [(0, 2), (1, 3)]
        assert len(left) == 1

    def test_cycle_must_be_hamiltonian(self, k4):
        with pytest.raises(NotHamiltonianCycle):
            unmate(k4, (0, 1, 2))

    def test_cycle_edges_must_exist(self, square_02):
        with pytest.raises(NotHamiltonianCycle):
            unmate(square_02, (0, 1, 3, 2))

    def test_octahedron_unmatings_rebuild(self):
        octa = platonic_graph("octahedron")
        for cycle in hamiltonian_cycles(octa)[:4]:
            plus, minus = unmate(octa, cycle)
            assert is_isomorphic(glue_along_outer(plus, minus), octa)


# ============================================================================
# BRUTE-FORCE ORACLES
# ============================================================================

def hamiltonian_count(graph: nx.Graph) -> int:
    """Undirected Hamiltonian cycles by trying every vertex order"""
    first, *rest = sorted(graph.nodes())
    count = 0
    for order in itertools.permutations(rest):
        cycle = (first,) + order
        if all(graph.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))):
            count += 1
    return count // 2


def is_outerplanar(graph: nx.Graph) -> bool:
    """A graph is outerplanar iff adding a vertex joined to everything keeps it planar"""
    apex = nx.Graph(graph)
    apex.add_edges_from((-1, v) for v in graph.nodes())
    return nx.check_planarity(apex)[0]


@pytest.fixture(scope="module")
def oracle_graphs(planar_atlas):
    """Atlas graphs plus random connected planar graphs on 8 vertices"""
    extra = []
    for seed in range(60):
        graph = nx.gnm_random_graph(8, 7 + seed % 12, seed=seed)
        if nx.is_connected(graph) and nx.check_planarity(graph)[0]:
            extra.append(graph)
    return list(planar_atlas) + extra


class TestAgainstNetworkx:
    def test_connectivity(self, oracle_graphs):
        for graph in oracle_graphs:
            g = from_networkx(graph)
            expected = min(nx.node_connectivity(graph), 3)
            assert k_connectivity(g) == expected, sorted(graph.edges())
            assert is_k_connected(g, 2) == nx.is_biconnected(graph)

    def test_hamiltonian_cycles(self, oracle_graphs):
        for graph in oracle_graphs:
            cycles = hamiltonian_cycles(from_networkx(graph))
            assert len(cycles) == hamiltonian_count(graph), sorted(graph.edges())
            assert len(set(cycles)) == len(cycles)

    def test_outerplanar_face_is_sound(self, oracle_graphs):
        for graph in oracle_graphs:
            if outerplanar_face(from_networkx(graph)) is not None:
                assert is_outerplanar(graph), sorted(graph.edges())

    def test_two_connected_outerplanar_graphs_have_one_cycle(self, oracle_graphs):
        for graph in oracle_graphs:
            if nx.is_biconnected(graph) and is_outerplanar(graph):
                assert len(hamiltonian_cycles(from_networkx(graph))) == 1, sorted(graph.edges())

    @pytest.mark.parametrize("seed", range(24))
    def test_labelled_outerplanar_graphs_are_detected(self, seed):
        rng = np.random.default_rng(seed)
        d = 3 + seed % 6
        candidates = [(i, j) for i in range(d + 1) for j in range(i + 2, d + 1) if (i, j) != (0, d)]
        picked = []
        for index in rng.permutation(len(candidates))[: int(rng.integers(0, len(candidates) + 1))]:
            a, b = candidates[index]
            if not any(a < c < b < e or c < a < e < b for c, e in picked):
                picked.append((a, b))
        g = outerplanar_graph(d, picked)
        assert outerplanar_face(g) is not None
        assert is_outerplanar(to_networkx(g))
        assert len(hamiltonian_cycles(g)) == 1

    def test_dual_of_dual(self, planar_atlas):
        for graph in planar_atlas:
            if graph.number_of_nodes() <= 6 and nx.is_biconnected(graph):
                g = from_networkx(graph)
                assert is_isomorphic(planar_dual(planar_dual(g)), g), sorted(graph.edges())
