"""Circle packings, Möbius maps and contact certificates"""

import cmath
import math

import networkx as nx
import pytest

from kissing.errors import DegeneratePoints, NotPolyhedral, NotSimple
from kissing.packing import (
    AntiMoebius,
    Circle,
    CirclePacking,
    Moebius,
    augment_to_triangulation,
    dual_orthocircle_fit,
    gap,
    normalize,
    packing_from_json,
    packing_to_json,
    regular_polygon_packing,
    solve_packing,
    verify_contact,
)
from kissing.plane_graph import (
    face_degrees,
    from_networkx,
    is_simple,
    planar_dual,
    platonic_graph,
    polygon_graph,
)
from kissing.reflection_group import parabolic_defect


class TestMoebius:
    def test_three_point_map_hits_targets(self):
        points = [0j, 1 + 0j, 1j]
        targets = [2 + 1j, -1j, 3 + 0j]
        f = Moebius.three_point_map(points, targets)
        for z, w in zip(points, targets):
            assert abs(f(z) - w) < 1e-12

    def test_repeated_points_rejected(self):
        with pytest.raises(DegeneratePoints):
            Moebius.three_point_map([0j, 0j, 1j], [0j, 1 + 0j, 1j])

    def test_compose_with_inverse(self):
        f = Moebius([[2, 1j], [1, 3]])
        assert f.compose(f.inverse()).is_identity(1e-12)

    def test_fixed_points(self):
        affine = Moebius([[2, 1], [0, 1]])
        assert affine.fixed_points()[0] == pytest.approx(-1 + 0j)
        assert math.isinf(abs(affine.fixed_points()[1]))
        f = Moebius([[0, 1], [1, 0]])
        assert sorted(z.real for z in f.fixed_points()) == pytest.approx([-1.0, 1.0])

    def test_anti_moebius_composition_is_holomorphic(self):
        g = AntiMoebius([[1, 0], [0, 1]])
        assert not g.compose(g).ORIENTATION_REVERSING
        assert g(1 + 2j) == pytest.approx(1 - 2j)


class TestCircles:
    def test_center_radius(self):
        c = Circle.from_center_radius(1 + 1j, 2.0)
        assert c.center == pytest.approx(1 + 1j)
        assert c.radius == pytest.approx(2.0)
        assert c.orientation == 1

    def test_outside_disk_contains_infinity(self):
        c = Circle.from_center_radius(0j, 1.0, orientation=-1)
        assert c.contains(complex(math.inf, 0))
        assert not c.contains(0j)
        assert c.contains(3 + 0j)

    def test_tangent_gap(self):
        a = Circle.from_center_radius(0j, 1.0)
        b = Circle.from_center_radius(3 + 0j, 2.0)
        assert gap(a, b) == pytest.approx(0.0, abs=1e-12)
        assert a.tangency_point(b) == pytest.approx(1 + 0j)

    def test_image_of_unit_circle_under_inversion(self):
        c = Circle.from_center_radius(2 + 0j, 1.0)
        inversion = AntiMoebius([[0, 1], [1, 0]])
        image = c.image(inversion)
        assert image.center == pytest.approx(2 / 3 + 0j)
        assert image.radius == pytest.approx(1 / 3)

    def test_document_round_trip(self):
        c = Circle.from_center_radius(0.5 - 2j, 0.25, orientation=-1)
        back = Circle.from_dict(c.to_dict())
        assert back.center == pytest.approx(c.center)
        assert back.orientation == -1


class TestRegularPolygon:
    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_polygon_packing_is_certified(self, d):
        p = regular_polygon_packing(d)
        assert p.n == d + 1
        assert verify_contact(p).passed

    @pytest.mark.parametrize("d", [2, 4])
    def test_circles_are_orthogonal_to_unit_circle(self, d):
        for c in regular_polygon_packing(d).circles:
            assert abs(c.center) ** 2 == pytest.approx(1.0 + c.radius ** 2)

    def test_radius(self):
        p = regular_polygon_packing(3)
        assert all(c.radius == pytest.approx(math.tan(math.pi / 4)) for c in p.circles)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_closed_form(self, d):
        m = d + 1
        p = regular_polygon_packing(d)
        for j, c in enumerate(p.circles):
            for k in (j, j + 1):
                cusp = cmath.exp(2j * math.pi * k / m)
                assert abs(abs(cusp - c.center) - c.radius) < 1e-12
            assert abs(c.center) ** 2 == pytest.approx(1.0 + c.radius ** 2, rel=1e-12)
            assert c.radius == pytest.approx(math.tan(math.pi / m), rel=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_solver_agrees_after_normalization(self, d):
        m = d + 1
        solved = solve_packing(polygon_graph(d))
        reference = regular_polygon_packing(d)
        pairs = [(0, 1), (1, 2), (2, 3 % m)]
        points = [solved.circles[u].tangency_point(solved.circles[v]) for u, v in pairs]
        targets = [reference.circles[u].tangency_point(reference.circles[v]) for u, v in pairs]
        moved = normalize(solved, points, targets)
        for got, want in zip(moved.circles, reference.circles):
            assert abs(got.center - want.center) < 1e-6
            assert got.radius == pytest.approx(want.radius, abs=1e-6)


class TestAugmentation:
    def test_tetrahedron_gets_one_centre_per_face(self, k4):
        aug = augment_to_triangulation(k4)
        assert aug.graph.n == 8
        assert sum(aug.added) == 4
        assert set(face_degrees(aug.graph)) == {3}
        assert is_simple(aug.graph)

    def test_repeated_boundary_vertex_gets_a_ring(self, bowtie):
        aug = augment_to_triangulation(bowtie)
        assert set(face_degrees(aug.graph)) == {3}
        assert is_simple(aug.graph)
        assert aug.graph.n > bowtie.n + bowtie.face_count


class TestSolver:
    @pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "cube"])
    def test_platonic_packings_certify(self, name):
        p = solve_packing(platonic_graph(name))
        report = verify_contact(p)
        assert report.passed
        assert report.max_residual <= 1e-8

    def test_outerplanar_packing(self, square_02):
        assert verify_contact(solve_packing(square_02)).passed

    def test_bowtie_packing(self, bowtie):
        assert verify_contact(solve_packing(bowtie)).passed

    def test_single_edge_packs_in_closed_form(self):
        p = solve_packing(from_networkx(nx.Graph([(0, 1)])))
        assert p.n == 2
        assert p.residual == pytest.approx(0.0, abs=1e-15)
        assert verify_contact(p).passed
        assert [c.radius for c in p.circles] == pytest.approx([1.0, 1.0])

    def test_multigraph_rejected(self):
        with pytest.raises(NotSimple):
            solve_packing(planar_dual(polygon_graph(3)))

    def test_contact_fails_on_wrong_graph(self, k4):
        square = regular_polygon_packing(3)
        forged = CirclePacking(k4, square.circles, square.tolerance)
        report = verify_contact(forged)
        assert not report.passed
        assert report.failing_edges


class TestNormalization:
    def test_similarity_scales_radii(self, k4):
        p = solve_packing(k4)
        points = [p.circles[0].tangency_point(p.circles[j]) for j in (1, 2, 3)]
        moved = normalize(p, points, [2 * z for z in points])
        for before, after in zip(p.circles, moved.circles):
            assert after.radius == pytest.approx(2 * before.radius, rel=1e-9)
        assert verify_contact(moved).passed

    def test_rotation_keeps_contacts(self):
        p = regular_polygon_packing(4)
        turn = cmath.exp(0.3j)
        points = [p.circles[j].tangency_point(p.circles[j + 1]) for j in range(3)]
        moved = normalize(p, points, [turn * z for z in points])
        assert verify_contact(moved).passed


class TestDualCircles:
    def test_triangle_faces_fit_exactly(self, k4):
        fits = dual_orthocircle_fit(solve_packing(k4))
        assert len(fits) == 4
        for fit in fits:
            assert fit.fit_residual < 1e-9
            assert fit.orthogonality_defect < 1e-6

    def test_needs_three_connected(self, square_02):
        with pytest.raises(NotPolyhedral):
            dual_orthocircle_fit(solve_packing(square_02))


def test_packing_document(k4):
    p = solve_packing(k4)
    back = packing_from_json(packing_to_json(p))
    assert back.n == 4
    assert verify_contact(back).passed


class TestSmallGraphs:
    def test_two_connected_up_to_six_vertices(self, planar_atlas):
        for graph in planar_atlas:
            if graph.number_of_nodes() <= 6 and nx.is_biconnected(graph):
                assert verify_contact(solve_packing(from_networkx(graph))).passed, sorted(graph.edges())

    @pytest.mark.slow
    def test_two_connected_seven_vertices(self, planar_atlas):
        for graph in planar_atlas:
            if graph.number_of_nodes() == 7 and nx.is_biconnected(graph):
                assert verify_contact(solve_packing(from_networkx(graph))).passed, sorted(graph.edges())


@pytest.fixture(params=["triangle", "k4", "square_02", "square_13", "bowtie", "octahedron", "cube"])
def regression_graph(request):
    if request.param in ("octahedron", "cube"):
        return platonic_graph(request.param)
    return request.getfixturevalue(request.param)


def test_every_tangency_is_parabolic(regression_graph):
    graph = regression_graph
    p = solve_packing(graph)
    for u, v, _ in graph.edges():
        assert parabolic_defect(p, u, v) < 1e-9


@pytest.mark.parametrize("d", range(2, 9))
def test_polygon_tangencies_are_parabolic(d):
    p = regular_polygon_packing(d)
    for u, v, _ in p.graph.edges():
        assert parabolic_defect(p, u, v) < 1e-9
