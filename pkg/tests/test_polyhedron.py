import random
from fractions import Fraction

import pytest

from conftest import cube3, instance, quadrant, random_pointed_hrep, square_pyramid, strip, unit_square
from polybound.errors import BudgetExceededError, InputError
from polybound.generators import dwarfed_cube
from polybound.linalg import ZERO
from polybound.polyhedron import (HRep, VRep, enumerate_vertices_bruteforce,
                                  enumerate_vertices_pivoting, normalize_ray,
                                  projective_closure, reverse_search_vertices,
                                  reverse_search_with_retries)

HALF = Fraction(1, 2)


def test_closure_of_ray_is_segment():
    h = HRep.from_rows(1, [((-1,), 0)])
    clo = projective_closure(h)
    v = enumerate_vertices_bruteforce(clo.closure)
    assert v.vertices == ((ZERO,), (Fraction(1),))
    assert clo.far_inequality == len(clo.closure.rows) - 1


def test_closure_of_quadrant_is_triangle():
    clo = projective_closure(quadrant())
    v = enumerate_vertices_bruteforce(clo.closure)
    assert set(v.vertices) == {(0, 0), (1, 0), (0, 1)}
    far = [p for p in v.vertices if sum(p) == 1]
    assert len(far) == 2


def test_closure_dwarfed_cube_5():
    _, _, clo, vbar, inc = instance("dwarfed-cube", 5)
    assert len(vbar.vertices) == 26
    assert inc.m == 11


def test_closure_points_stay_in_simplex():
    for h in (quadrant(), strip(), dwarfed_cube(3)[1]):
        clo = projective_closure(h)
        v = enumerate_vertices_bruteforce(clo.closure)
        for p in v.vertices:
            assert all(x >= 0 for x in p)
            assert sum(p) <= 1


def test_closure_vertex_bijection():
    for h in (quadrant(), strip(), dwarfed_cube(3)[1]):
        clo = projective_closure(h)
        vbar = enumerate_vertices_bruteforce(clo.closure)
        far = [p for p in vbar.vertices if sum(p) == 1]
        near = [p for p in vbar.vertices if sum(p) < 1]
        originals = enumerate_vertices_bruteforce(h)
        assert len(near) == len(originals.vertices)
        assert sorted(clo.unmap_point(p) for p in near) == list(originals.vertices)


def test_closure_error_empty():
    h = HRep.from_rows(1, [((1,), 0), ((-1,), -1)])
    with pytest.raises(InputError, match="empty polyhedron"):
        projective_closure(h)


def test_closure_error_not_pointed():
    h = HRep.from_rows(2, [((0, 1), 1)])  # half-plane contains a line
    with pytest.raises(InputError, match="not pointed"):
        projective_closure(h)


def test_bruteforce_square():
    v = enumerate_vertices_bruteforce(unit_square())
    assert len(v.vertices) == 4 and not v.rays


def test_bruteforce_quadrant():
    v = enumerate_vertices_bruteforce(quadrant())
    assert v.vertices == ((0, 0),)
    assert set(v.rays) == {(1, 0), (0, 1)}


def test_bruteforce_dwarfed_polytope_5():
    poly, _ = dwarfed_cube(5)
    assert len(enumerate_vertices_bruteforce(poly).vertices) == 26


def test_bruteforce_budget():
    poly, _ = dwarfed_cube(5)
    with pytest.raises(BudgetExceededError, match="too large"):
        enumerate_vertices_bruteforce(poly, budget=10)


def test_pivoting_agrees_with_bruteforce():
    cases = [unit_square(), quadrant(), strip(), cube3(), square_pyramid(),
             dwarfed_cube(2)[1], dwarfed_cube(3)[1], dwarfed_cube(4)[0]]
    rng = random.Random(0)
    cases += [random_pointed_hrep(rng, rng.randint(2, 3), rng.randint(1, 3))
              for _ in range(15)]
    for h in cases:
        brute = enumerate_vertices_bruteforce(h)
        pivot = enumerate_vertices_pivoting(h)
        assert pivot.vertices == brute.vertices
        assert pivot.rays == brute.rays


def test_reverse_search_square():
    v, g = reverse_search_vertices(unit_square(), [1, 2])
    assert len(v.vertices) == 4
    assert len(g.edges) == 4
    assert not g.unbounded_edges


def test_reverse_search_dwarfed_5():
    _, rev = dwarfed_cube(5)
    v, _ = reverse_search_with_retries(projective_closure(rev).closure)
    assert len(v.vertices) == 26


def test_reverse_search_quadrant_flags_unbounded():
    v, g = reverse_search_vertices(quadrant(), [-1, -2])
    assert v.vertices == ((0, 0),)
    assert set(v.rays) == {(1, 0), (0, 1)}
    assert len(g.unbounded_edges) == 2


def test_reverse_search_rejects_non_simple():
    with pytest.raises(InputError, match="not simple"):
        reverse_search_vertices(square_pyramid(), [1, 2, 4])


def test_reverse_search_rejects_non_generic():
    with pytest.raises(InputError, match="not generic"):
        reverse_search_vertices(unit_square(), [1, 0])


def test_reverse_search_rejects_unbounded_objective():
    with pytest.raises(InputError, match="unbounded"):
        reverse_search_vertices(quadrant(), [1, 2])


def test_normalize_ray():
    assert normalize_ray((0, 2, 4)) == (0, 1, 2)
    assert normalize_ray((-3, 6)) == (-1, 2)
    with pytest.raises(InputError):
        normalize_ray((0, 0))


def test_vrep_build_dedupes_rays_up_to_scaling():
    v = VRep.build(2, [], [(1, 2), (2, 4), (HALF, 1)])
    assert v.rays == ((1, 2),)
