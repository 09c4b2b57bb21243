"""Ray classes, obstructions and matings of outerplanar graphs"""

from fractions import Fraction as F

import networkx as nx
import pytest

from kissing.angle_dynamics import Lamination, Leaf, lamination_of, mirror
from kissing.errors import DegreeMismatch, NotHamiltonian, NotSimple
from kissing.mating import (
    detect_obstruction,
    mate_all_offsets,
    mate_graphs,
    minus_lamination,
    non_parallel,
    outerplanar_graphs,
    ray_classes,
    shared_matings,
    shortest_cycle_witness,
    sweep_outerplanar_pairs,
)
from kissing.plane_graph import is_isomorphic, planar_dual, platonic_graph, polygon_graph


@pytest.fixture
def basilica_tuned():
    """Degree-3 lamination joining neighbouring fixed angles"""
    return Lamination(3, frozenset({Leaf(F(0), F(3, 4)), Leaf(F(1, 4), F(1, 2))}))


class TestRayClasses:
    def test_classes_partition_the_angles(self, square_02, basilica_tuned):
        rc = ray_classes(lamination_of(square_02), basilica_tuned)
        assert rc.angles == [F(0), F(1, 8), F(1, 4), F(1, 2), F(5, 8), F(3, 4)]
        assert sorted(t for c in rc.p_classes for t in c) == rc.angles
        assert sorted(t for c in rc.q_classes for t in c) == rc.angles

    def test_q_classes_come_from_the_mirror(self, square_02, basilica_tuned):
        rc = ray_classes(lamination_of(square_02), basilica_tuned)
        assert [F(0), F(1, 4)] in rc.q_classes
        assert [F(1, 2), F(3, 4)] in rc.q_classes

    def test_degrees_must_match(self, square_02):
        with pytest.raises(DegreeMismatch):
            ray_classes(lamination_of(square_02), lamination_of(polygon_graph(4)))

    def test_forest_has_no_witness(self):
        graph = nx.MultiGraph()
        graph.add_edge(("P", 0), ("Q", 0), key=F(0))
        graph.add_edge(("P", 0), ("Q", 1), key=F(1, 2))
        assert shortest_cycle_witness(graph) is None


class TestObstructions:
    def test_doubled_leaf_is_obstructed(self, square_02, square_13):
        report = detect_obstruction(lamination_of(square_02), minus_lamination(square_13, 3))
        assert report.obstructed
        assert report.witness == [F(1, 8), F(5, 8)]
        assert report.to_dict()["witness"] == ["1/8", "5/8"]

    def test_basilica_tuning_is_unobstructed(self, square_02, basilica_tuned):
        report = detect_obstruction(lamination_of(square_02), basilica_tuned)
        assert not report.obstructed
        assert report.witness == []
        assert len(report.classes) == 3
        assert all(c.is_tree for c in report.classes)

    def test_non_parallel(self, square_02):
        lam = lamination_of(square_02)
        assert not non_parallel(lam, mirror(lam))
        assert non_parallel(lam, lam)


class TestMateGraphs:
    def test_diagonals_mate_to_tetrahedron(self, square_02, k4):
        verdict = mate_graphs(square_02, square_02)
        assert verdict.mateable
        assert verdict.offset == 3
        assert is_isomorphic(verdict.glued, k4)
        assert verdict.doubled_chords == []

    def test_same_diagonal_is_obstructed(self, square_02, square_13):
        verdict = mate_graphs(square_02, square_13, offset=3)
        assert not verdict.mateable
        assert verdict.glued is None
        assert verdict.doubled_chords == [(0, 2)]
        assert verdict.to_dict()["witness"] == ["1/8", "5/8"]

    def test_all_offsets(self, square_02):
        verdicts = mate_all_offsets(square_02, square_02)
        assert [v.offset for v in verdicts] == [0, 1, 2, 3]
        assert [v.mateable for v in verdicts] == [False, True, False, True]

    def test_polygons_always_mate(self):
        assert all(v.mateable for v in mate_all_offsets(polygon_graph(4), polygon_graph(4)))


class TestSharedMatings:
    def test_tetrahedron_has_three(self, k4):
        matings = shared_matings(k4)
        assert len(matings) == 3
        for m in matings:
            assert mate_graphs(m.plus, m.minus).mateable

    def test_tetrahedron_up_to_isomorphism(self, k4):
        assert len(shared_matings(k4, up_to_isomorphism=True)) == 1

    def test_octahedron_matings_rebuild(self):
        octa = platonic_graph("octahedron")
        for m in shared_matings(octa):
            verdict = mate_graphs(m.plus, m.minus)
            assert verdict.mateable
            assert is_isomorphic(verdict.glued, octa)

    def test_needs_a_hamiltonian_cycle(self, bowtie):
        with pytest.raises(NotHamiltonian):
            shared_matings(bowtie)

    def test_needs_a_simple_graph(self):
        with pytest.raises(NotSimple):
            shared_matings(planar_dual(polygon_graph(3)))


class TestSweep:
    def test_outerplanar_counts(self):
        assert [len(outerplanar_graphs(m)) for m in (3, 4, 5)] == [1, 3, 11]

    def test_small_sweep_is_consistent(self):
        report = sweep_outerplanar_pairs(5)
        assert report.passed
        assert report.checked == 3 + 9 * 4 + 121 * 5

    @pytest.mark.slow
    def test_six_vertex_sweep_is_consistent(self):
        report = sweep_outerplanar_pairs(6, threads=2)
        assert report.passed, report.mismatches
