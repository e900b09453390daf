import pytest

from conftest import cube3, instance, quadrant, square_incidence, square_pyramid, unit_square
from polybound.bounded import full_face_lattice
from polybound.errors import InputError
from polybound.incidence import (compute_incidences, far_face_vertices,
                                 indices_from_mask, is_simple, mask_from_indices,
                                 polytope_edges, restrict_to_near,
                                 vertex_edge_graph)
from polybound.polyhedron import (HRep, VRep, enumerate_vertices_bruteforce,
                                  projective_closure)


def test_square_incidences():
    h = unit_square()
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    assert inc.m == 4 and inc.n == 4
    assert inc.alpha == 8
    assert all(row.bit_count() == 2 for row in inc.row_masks)


def test_dwarfed_5_alpha():
    _, _, _, _, inc = instance("dwarfed-cube", 5)
    assert inc.alpha == 130


def test_thrackle_3_closure_counts():
    _, _, _, _, inc = instance("thrackle", 3)
    assert (inc.m, inc.n, inc.alpha) == (7, 7, 24)


def test_redundant_row_dropped():
    h = HRep.from_rows(2, [((1, 0), 1), ((0, 1), 1), ((-1, 0), 0), ((0, -1), 0),
                           ((1, 1), 3)])  # last row never tight
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    assert inc.m == 4


def test_weakly_redundant_row_dropped():
    # x + y <= 2 touches the square only in the corner (1,1): not a facet
    h = HRep.from_rows(2, [((1, 0), 1), ((0, 1), 1), ((-1, 0), 0), ((0, -1), 0),
                           ((1, 1), 2)])
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    assert inc.m == 4


def test_point_outside_rejected():
    h = unit_square()
    bad = VRep.build(2, [(0, 0), (2, 0)], [])
    with pytest.raises(InputError, match="outside"):
        compute_incidences(h, bad)


def test_far_face_segment():
    h = HRep.from_rows(1, [((-1,), 0)])
    clo = projective_closure(h)
    v = enumerate_vertices_bruteforce(clo.closure)
    far = far_face_vertices(clo, v)
    assert [v.vertices[i] for i in far] == [(1,)]


def test_far_face_triangle():
    clo = projective_closure(quadrant())
    v = enumerate_vertices_bruteforce(clo.closure)
    far = far_face_vertices(clo, v)
    assert {v.vertices[i] for i in far} == {(1, 0), (0, 1)}


def test_far_face_dwarfed_2_leaves_original_vertices():
    _, h, clo, vbar, inc = instance("dwarfed-cube", 2)
    near = [p for i, p in enumerate(vbar.vertices) if not inc.far_face >> i & 1]
    assert len(near) == 3
    pulled = sorted(clo.unmap_point(p) for p in near)
    assert pulled == list(enumerate_vertices_bruteforce(h).vertices)


def test_is_simple_examples():
    _, _, _, _, inc5 = instance("dwarfed-cube", 5)
    assert is_simple(inc5, 5)
    sq = unit_square()
    assert is_simple(compute_incidences(sq, enumerate_vertices_bruteforce(sq)), 2)
    # tropical permutohedra are not simple for t >= 3
    _, _, _, _, incp = instance("tropical-permutohedron", 3)
    near_inc, _ = restrict_to_near(incp)
    assert not is_simple(near_inc, 8)
    # tropical cyclic polyhedra are simple
    _, _, _, _, incc = instance("tropical-cyclic", 3, 3)
    near_cyc, _ = restrict_to_near(incc)
    assert is_simple(near_cyc, 5)


def test_vertex_edge_graph_square_cycle():
    g = vertex_edge_graph(square_incidence(), 2)
    assert g.edges == ((0, 1), (0, 3), (1, 2), (2, 3))


def test_vertex_edge_graph_cube():
    h = cube3()
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    g = vertex_edge_graph(inc, 3)
    assert g.n_nodes == 8 and len(g.edges) == 12
    degree = [0] * 8
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    assert degree == [3] * 8


def test_vertex_edge_graph_dwarfed_3_matches_lattice_edges():
    _, _, _, _, inc = instance("dwarfed-cube", 3)
    g = vertex_edge_graph(inc, 3)
    assert g.n_nodes == 10
    lattice = full_face_lattice(inc)
    lattice_edges = {nd.vertex_set for nd in lattice.nodes if nd.rank == 1}
    assert {mask_from_indices(e) for e in g.edges} == lattice_edges


def test_vertex_edge_graph_rejects_non_simple():
    h = square_pyramid()
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    with pytest.raises(InputError, match="not simple"):
        vertex_edge_graph(inc, 3)


def test_polytope_edges_general_criterion():
    # agrees with the simple-polytope criterion where both apply
    h = cube3()
    inc = compute_incidences(h, enumerate_vertices_bruteforce(h))
    assert tuple(polytope_edges(inc)) == vertex_edge_graph(inc, 3).edges
    # and still works on the non-simple pyramid: 8 edges
    hp = square_pyramid()
    incp = compute_incidences(hp, enumerate_vertices_bruteforce(hp))
    assert len(polytope_edges(incp)) == 8


def test_restrict_to_near_dwarfed_counts():
    for d in (2, 3, 4):
        _, _, _, _, inc = instance("dwarfed-cube", d)
        near_inc, near = restrict_to_near(inc)
        assert near_inc.n == d + 1
        assert near_inc.alpha == d * d + d  # beta
        assert near_inc.m == inc.m - 1  # the far facet row is gone
        assert len(near) == near_inc.n


def test_column_sums_at_least_d():
    for family, params, d in [("dwarfed-cube", (4,), 4), ("thrackle", (4,), 4),
                              ("tropical-cyclic", (3, 3), 5)]:
        _, _, _, _, inc = instance(family, *params)
        for v in range(inc.n):
            assert inc.column_mask(v).bit_count() >= d


def test_incidence_round_mask_helpers():
    assert indices_from_mask(mask_from_indices([5, 1, 3])) == (1, 3, 5)
