"""Angle dynamics of θ -> -dθ, principal laminations and the question-mark map"""

import cmath
import math
from fractions import Fraction as F

import pytest

from kissing.angle_dynamics import (
    Lamination,
    Leaf,
    angle_itinerary,
    angle_map,
    arc_index,
    check_lamination,
    fixed_angles,
    lamination_from_json,
    lamination_of,
    lamination_to_json,
    leaf_for_chord,
    mirror,
    orbit,
    question_mark,
    rotate,
    two_cycles,
)
from kissing.errors import (
    AdjacentVertices,
    BoundaryHit,
    DegenerateLeaf,
    DegreeTooSmall,
    DepthInsufficient,
    DocumentError,
    InputError,
    LinkedLeaves,
    NonInvariantLamination,
)
from kissing.packing import regular_polygon_packing
from kissing.plane_graph import outerplanar_graph, polygon_graph
from kissing.reflection_group import generators, nielsen_itinerary


class TestAngleMap:
    def test_fixed_angles_are_fixed(self):
        for d in (2, 3, 6):
            for t in fixed_angles(d):
                assert angle_map(t, d) == t

    def test_map_reduces_mod_one(self):
        assert angle_map(F(1, 2), 2) == 0
        assert angle_map(F(1, 8), 3) == F(5, 8)

    def test_arc_index(self):
        assert arc_index(F(1, 8), 3) == 0
        assert arc_index(F(5, 8), 3) == 2
        assert arc_index(F(1, 4), 3) is None

    def test_degree_one_rejected(self):
        with pytest.raises(DegreeTooSmall):
            fixed_angles(1)

    def test_orbit(self):
        o = orbit(F(1, 7), 2)
        assert (o.preperiod, o.period) == (0, 6)
        pre = orbit(F(1, 2), 2)
        assert (pre.preperiod, pre.period) == (1, 1)


class TestTwoCycles:
    def test_degree_two_has_none(self):
        assert two_cycles(2) == []

    def test_degree_three(self):
        assert two_cycles(3) == [Leaf(F(1, 8), F(5, 8)), Leaf(F(3, 8), F(7, 8))]

    def test_each_cycle_swaps(self):
        for d in (3, 4, 5):
            for leaf in two_cycles(d):
                assert angle_map(leaf.low, d) == leaf.high
                assert angle_map(leaf.high, d) == leaf.low

    @pytest.mark.parametrize("d", range(2, 13))
    def test_chords_and_two_cycles_correspond(self, d):
        cycles = two_cycles(d)
        assert len(cycles) == (d + 1) * (d - 2) // 2
        chords = [(i, j) for i in range(d + 1) for j in range(i + 2, d + 1) if (i, j) != (0, d)]
        leaves = [leaf_for_chord(d, i, j) for i, j in chords]
        assert len(set(leaves)) == len(chords)
        assert set(leaves) == set(cycles)

    def test_leaf_for_chord(self):
        assert leaf_for_chord(3, 0, 2) == Leaf(F(1, 8), F(5, 8))
        assert leaf_for_chord(3, 3, 1) == Leaf(F(3, 8), F(7, 8))

    def test_leaf_for_adjacent_vertices(self):
        with pytest.raises(AdjacentVertices):
            leaf_for_chord(3, 0, 1)
        with pytest.raises(AdjacentVertices):
            leaf_for_chord(3, 0, 3)

    def test_every_chord_lands_in_its_arcs(self):
        d = 5
        for i in range(d + 1):
            for j in range(i + 2, d + 1):
                if (i, j) == (0, d):
                    continue
                leaf = leaf_for_chord(d, i, j)
                assert sorted(arc_index(t, d) for t in leaf.angles) == [i, j]


class TestLaminations:
    def test_lamination_of_square(self, square_02):
        lam = lamination_of(square_02)
        assert lam.degree == 3
        assert lam.sorted_leaves() == [Leaf(F(1, 8), F(5, 8))]
        assert lam.sorted_singletons() == [F(0), F(1, 4), F(1, 2), F(3, 4)]

    def test_polygon_lamination_has_no_leaves(self):
        assert lamination_of(polygon_graph(4)).leaves == frozenset()

    def test_fan_lamination_is_unlinked(self):
        lam = lamination_of(outerplanar_graph(5, [(0, 2), (0, 3), (0, 4)]))
        assert len(lam.leaves) == 3
        check_lamination(lam)

    def test_linked_leaves_rejected(self):
        lam = Lamination(3, frozenset({Leaf(F(1, 8), F(5, 8)), Leaf(F(3, 8), F(7, 8))}))
        with pytest.raises(LinkedLeaves):
            check_lamination(lam)

    def test_non_invariant_rejected(self):
        lam = Lamination(3, frozenset({Leaf(F(1, 8), F(1, 4))}))
        with pytest.raises(NonInvariantLamination):
            check_lamination(lam)

    def test_leaf_with_equal_endpoints_rejected(self):
        with pytest.raises(DegenerateLeaf) as info:
            Leaf.of(F(1, 4), F(5, 4))
        assert isinstance(info.value, InputError)
        assert info.value.details == {"angle": "1/4"}

    def test_mirror(self, square_02):
        mirrored = mirror(lamination_of(square_02))
        assert mirrored.sorted_leaves() == [Leaf(F(3, 8), F(7, 8))]

    def test_rotate(self, square_02):
        rotated = rotate(lamination_of(square_02), 1)
        assert rotated.sorted_leaves() == [Leaf(F(3, 8), F(7, 8))]
        assert rotated.singletons == lamination_of(square_02).singletons

    def test_document(self, square_02):
        doc = lamination_to_json(lamination_of(square_02))
        assert doc["leaves"] == [[["1", "8"], ["5", "8"]]]
        lam = lamination_from_json({"d": 3, "leaves": [["1/8", "5/8"]]})
        assert lam.sorted_leaves() == [Leaf(F(1, 8), F(5, 8))]

    def test_document_rejects_bad_angles(self):
        with pytest.raises(DocumentError):
            lamination_from_json({"d": 3, "leaves": [["1/0", "5/8"]]})
        with pytest.raises(DocumentError):
            lamination_from_json({"leaves": []})


class TestItineraries:
    def test_periodic_itinerary(self):
        assert angle_itinerary(F(1, 8), 3, 4).symbols == [0, 2, 0, 2]

    def test_boundary_hit_is_reported(self):
        it = angle_itinerary(F(1, 2), 2, 5)
        assert it.symbols == [1]
        assert it.boundary_hit == (1, 0)
        assert it.to_dict()["boundary_hit"] == {"step": 1, "index": 0}

    def test_strict_boundary_hit(self):
        with pytest.raises(BoundaryHit):
            angle_itinerary(F(1, 2), 2, 5, strict=True)


class TestQuestionMark:
    def test_half_goes_to_minus_one(self):
        assert question_mark(F(1, 2), 2) == pytest.approx(-1 + 0j, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_fixed_angles_go_to_cusps(self, d):
        for j, t in enumerate(fixed_angles(d)):
            expected = cmath.exp(2j * math.pi * j / (d + 1))
            assert question_mark(t, d) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("theta", [F(1, 7), F(2, 9), F(5, 13)])
    def test_lands_on_the_unit_circle(self, theta):
        assert abs(question_mark(theta, 2)) == pytest.approx(1.0, abs=1e-9)

    def test_preserves_cyclic_order(self):
        angles = [F(k, 11) for k in range(1, 11)]
        phases = [cmath.phase(question_mark(t, 2)) % (2 * math.pi) for t in angles]
        assert phases == sorted(phases)

    def test_conjugates_angle_map_to_nielsen_map(self):
        theta = F(1, 7)
        point = question_mark(theta, 2)
        nielsen = nielsen_itinerary(regular_polygon_packing(2), point, 4)
        assert nielsen.symbols == angle_itinerary(theta, 2, 4).symbols

    @pytest.mark.parametrize("d", [2, 3])
    def test_conjugacy_pointwise_on_rational_angles(self, d):
        gens = generators(regular_polygon_packing(d))
        angles = [F(p, q) for q in range(2, 60) for p in range(1, q) if math.gcd(p, q) == 1]
        checked = 0
        for theta in angles:
            index = arc_index(theta, d)
            if index is None:
                continue
            image = gens[index](question_mark(theta, d))
            assert abs(image - question_mark(angle_map(theta, d), d)) < 1e-9, theta
            checked += 1
            if checked == 100:
                break
        assert checked == 100

    def test_shallow_depth_is_insufficient(self):
        with pytest.raises(DepthInsufficient):
            question_mark(F(1, 7), 2, depth=1)
