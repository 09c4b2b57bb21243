"""Kissing reflection groups: level disks, limit set, Nielsen map, side tiles"""

import networkx as nx
import numpy as np
import pytest

from kissing.errors import ExplosionGuard, InputError, OutsideDomain, WordNotReduced
from kissing.packing import Circle, regular_polygon_packing, solve_packing
from kissing.plane_graph import (
    from_networkx,
    hamiltonian_cycles,
    is_k_connected,
    platonic_graph,
    polygon_graph,
)
from kissing.reflection_group import (
    apply,
    check_reduced,
    cusp_points,
    decay_level,
    level_connectivity,
    level_disks,
    limit_set_approx,
    nielsen_itinerary,
    nielsen_step,
    omega_side_tiles,
    parabolic_defect,
    predict_limit_set,
    reduced_words,
    reflection,
    tangency_defect,
    tile_interior_point,
    word_element,
)


@pytest.fixture
def k4_packing(k4):
    return solve_packing(k4)


@pytest.fixture
def triangle_packing():
    return regular_polygon_packing(2)


class TestReflections:
    def test_reflection_fixes_the_circle(self, k4_packing):
        c = k4_packing.circles[0]
        g = reflection(c)
        z = c.center + c.radius * 1j
        assert abs(g(z) - z) < 1e-12

    def test_reflection_is_an_involution(self, k4_packing):
        g = reflection(k4_packing.circles[2])
        assert g.compose(g).is_identity(1e-9)

    def test_involution_on_random_circles(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            center = complex(*rng.uniform(-1.0, 1.0, 2))
            orientation = int(rng.choice([-1, 1]))
            c = Circle.from_center_radius(center, float(rng.uniform(0.2, 2.0)), orientation)
            g = reflection(c)
            assert g.compose(g).is_identity(1e-12)

    def test_apply_nests_disks(self, k4_packing):
        inner = apply((0,), k4_packing, k4_packing.circles[1])
        assert k4_packing.circles[0].contains_circle(inner, 1e-9)

    def test_apply_to_a_point(self, triangle_packing):
        c = triangle_packing.circles[1]
        assert apply((1,), triangle_packing, c.center + c.radius) == pytest.approx(c.center + c.radius)

    def test_words_must_be_reduced(self):
        with pytest.raises(WordNotReduced):
            check_reduced((1, 1, 0), 3)
        with pytest.raises(WordNotReduced):
            check_reduced((0, 5), 3)

    def test_reduced_word_count(self):
        assert len(reduced_words(4, 0)) == 1
        assert len(reduced_words(4, 3)) == 4 * 3 ** 2


class TestLevelDisks:
    @pytest.mark.parametrize("level", [0, 1, 2, 3, 4, 5])
    def test_counts(self, k4_packing, level):
        assert len(level_disks(k4_packing, level).disks) == 4 * 3 ** level

    def test_diameters_shrink(self, k4_packing):
        diameters = [level_disks(k4_packing, l).max_spherical_diameter for l in range(6)]
        assert all(a > b for a, b in zip(diameters, diameters[1:]))

    def test_deep_disks_stay_circles(self, bowtie):
        level = level_disks(solve_packing(bowtie), 6)
        assert len(level.disks) == 5 * 4 ** 6
        assert all(0.0 < d.diameter < 2.0 for d in level.disks)

    def test_square_with_chord_at_level_seven(self, square_02):
        level = level_disks(solve_packing(square_02), 7)
        assert len(level.disks) == 4 * 3 ** 7
        assert all(d.diameter > 0.0 for d in level.disks)

    def test_tetrahedron_decays_below_five_hundredths(self, k4_packing):
        level = decay_level(k4_packing, 0.05)
        assert 0 < level < 200
        assert not level_disks(k4_packing, level, prune_below=0.05).disks
        assert level_disks(k4_packing, level - 1, prune_below=0.05).disks

    def test_disks_ordered_by_word(self, k4_packing):
        words = [(d.word, d.vertex) for d in level_disks(k4_packing, 2).disks]
        assert words == sorted(words)

    def test_threads_do_not_change_the_result(self, k4_packing):
        single = level_disks(k4_packing, 3, threads=1)
        pooled = level_disks(k4_packing, 3, threads=4)
        assert [(d.word, d.vertex) for d in single.disks] == [(d.word, d.vertex) for d in pooled.disks]

    def test_explosion_guard(self, k4_packing):
        with pytest.raises(ExplosionGuard):
            level_disks(k4_packing, 5, cap=100)

    def test_pruning(self, k4_packing):
        level = level_disks(k4_packing, 4, prune_below=0.05)
        assert level.pruned
        assert all(d.diameter >= 0.05 for d in level.disks)

    def test_decay_level(self, triangle_packing):
        level = decay_level(triangle_packing, 0.5)
        assert level >= 1
        assert level_disks(triangle_packing, level).max_spherical_diameter < 0.5


class TestConnectivity:
    @pytest.mark.parametrize("level", [0, 1, 2, 3, 4, 5])
    def test_tetrahedron_levels_connected(self, k4_packing, level):
        assert level_connectivity(k4_packing, level)

    def test_cut_vertex_disconnects_level_one(self, bowtie):
        p = solve_packing(bowtie)
        assert level_connectivity(p, 0)
        assert not level_connectivity(p, 1)
        assert not level_connectivity(p, 4)

    @pytest.mark.parametrize("name", ["triangle", "k4", "square_02", "square_13", "bowtie"])
    def test_level_four_matches_two_connectivity(self, request, name):
        g = request.getfixturevalue(name)
        assert level_connectivity(solve_packing(g), 4) == is_k_connected(g, 2)

    def test_octahedron_level_four(self):
        assert level_connectivity(solve_packing(platonic_graph("octahedron")), 4)

    def test_pentagon_with_a_chord(self):
        g = from_networkx(nx.Graph([(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]))
        assert level_connectivity(solve_packing(g), 4)

    def test_path_is_disconnected_at_depth(self):
        p = solve_packing(from_networkx(nx.path_graph(4)))
        assert not level_connectivity(p, 3)

    def test_tangency_defect_is_small(self, k4_packing):
        assert tangency_defect(k4_packing) < 1e-6

    def test_small_atlas_graphs_at_level_three(self, planar_atlas):
        for graph in planar_atlas:
            if graph.number_of_nodes() > 5:
                continue
            p = solve_packing(from_networkx(graph))
            assert level_connectivity(p, 3) == nx.is_biconnected(graph), sorted(graph.edges())

    @pytest.mark.slow
    def test_atlas_graphs_at_level_four(self, planar_atlas):
        for graph in planar_atlas:
            if graph.number_of_nodes() > 6:
                continue
            p = solve_packing(from_networkx(graph))
            assert level_connectivity(p, 4) == nx.is_biconnected(graph), sorted(graph.edges())

    @pytest.mark.slow
    def test_cube_level_four(self):
        assert level_connectivity(solve_packing(platonic_graph("cube")), 4)

    def test_predictions(self, k4, bowtie, square_02):
        assert predict_limit_set(k4).gasket
        assert not predict_limit_set(bowtie).connected
        square = predict_limit_set(square_02)
        assert square.function_group and square.mating_of_groups and not square.gasket


class TestLimitSet:
    def test_cover_respects_eps(self, triangle_packing):
        cover = limit_set_approx(triangle_packing, 0.2)
        assert cover.disks
        assert all(d.diameter <= 0.2 for d in cover.disks)

    def test_polygon_limit_set_is_the_unit_circle(self, triangle_packing):
        for disk in limit_set_approx(triangle_packing, 0.1).disks:
            c = disk.circle
            assert abs(c.center) ** 2 == pytest.approx(1.0 + c.radius ** 2, rel=1e-6)

    def test_eps_must_be_positive(self, triangle_packing):
        with pytest.raises(InputError):
            limit_set_approx(triangle_packing, 0.0)

    def test_cover_cap(self, k4_packing):
        with pytest.raises(ExplosionGuard):
            limit_set_approx(k4_packing, 1e-4, cap=50)


class TestCusps:
    def test_one_cusp_per_edge(self, k4_packing):
        cusps = cusp_points(k4_packing)
        assert sorted(cusps) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        for (u, v), z in cusps.items():
            for w in (u, v):
                c = k4_packing.circles[w]
                assert abs(abs(z - c.center) - c.radius) < 1e-7

    def test_tangent_pairs_are_parabolic(self, k4_packing):
        assert parabolic_defect(k4_packing, 0, 1) < 1e-6


class TestNielsen:
    def test_step_uses_the_containing_disk(self, triangle_packing):
        c = triangle_packing.circles[0]
        z = c.center + 0.5 * c.radius
        step = nielsen_step(triangle_packing, z)
        assert step.index == 0 and not step.tie
        assert not c.contains(step.point, -1e-12)

    def test_cusp_is_a_tie(self, triangle_packing):
        cusp = cusp_points(triangle_packing)[(0, 1)]
        assert nielsen_step(triangle_packing, cusp).tie

    def test_fundamental_domain_is_rejected(self, triangle_packing):
        with pytest.raises(OutsideDomain):
            nielsen_itinerary(triangle_packing, 0j, 3)

    def test_itinerary_of_a_cusp_records_ties(self, triangle_packing):
        cusp = cusp_points(triangle_packing)[(0, 1)]
        itinerary = nielsen_itinerary(triangle_packing, cusp, 3)
        assert itinerary.ties[0] == 0
        assert itinerary.symbols[0] == 0

    def test_tetrahedron_cusp_alternates_between_its_circles(self, k4_packing):
        cusp = cusp_points(k4_packing)[(0, 1)]
        assert abs(word_element(k4_packing, (0, 1))(cusp) - cusp) < 1e-6
        itinerary = nielsen_itinerary(k4_packing, cusp, 8, tol=1e-6)
        assert itinerary.symbols == [0, 1] * 4
        assert itinerary.ties == list(range(8))


class TestSideTiles:
    def test_level_zero_splits_faces(self, k4_packing):
        tiles = omega_side_tiles(k4_packing, (0, 1, 2, 3), 0)
        assert len(tiles.plus) + len(tiles.minus) == 4
        assert len(tiles.plus) == 2

    def test_level_one_counts(self, k4_packing):
        tiles = omega_side_tiles(k4_packing, (0, 1, 2, 3), 1)
        assert len(tiles.plus) == 2 * 4
        assert len(tiles.minus) == 2 * 4

    def test_every_cycle_splits_the_octahedron(self):
        octa = platonic_graph("octahedron")
        p = solve_packing(octa)
        cycle = hamiltonian_cycles(octa)[0]
        tiles = omega_side_tiles(p, cycle, 0)
        assert len(tiles.plus) + len(tiles.minus) == octa.face_count
        assert tiles.plus and tiles.minus

    def test_interior_point_avoids_disks(self, k4_packing):
        tile = omega_side_tiles(k4_packing, (0, 1, 2, 3), 0).plus[0]
        z = tile_interior_point(tile, k4_packing)
        assert tile.contains(z)
        assert not any(c.contains(z) for c in k4_packing.circles)

    def test_polygon_tiles(self):
        p = regular_polygon_packing(3)
        tiles = omega_side_tiles(p, (0, 1, 2, 3), 0)
        assert len(tiles.plus) == 1 and len(tiles.minus) == 1
        assert polygon_graph(3).face_count == 2

    @pytest.mark.parametrize("level", [0, 1])
    def test_tiles_have_disjoint_interiors(self, k4_packing, level):
        cycle = (0, 1, 2, 3)
        base = omega_side_tiles(k4_packing, cycle, 0)
        seeds = {tile.face: tile_interior_point(tile, k4_packing) for tile in base.plus + base.minus}
        tiles = omega_side_tiles(k4_packing, cycle, level)
        everything = tiles.plus + tiles.minus
        for tile in everything:
            z = word_element(k4_packing, tile.word)(seeds[tile.face])
            owners = [other for other in everything if other.contains(z)]
            assert len(owners) == 1 and owners[0] is tile
