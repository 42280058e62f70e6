import random
from fractions import Fraction

import pytest

from polycone import (
    Polyhedron,
    argmin_face,
    cone_member,
    contains_point,
    enumerate_vertices,
    errors,
    normal_cone,
    poly_contains,
    solve_glp,
    solve_lp,
    stability_cone,
)
from polycone.linalg import dot, vec_neg

from helpers import (
    QUADRANT,
    STRIP,
    TRIANGLE,
    Y1,
    random_cost,
    random_polyhedron,
)

F = Fraction


class TestSolveGLP:
    def test_triangle_corner(self):
        sol = solve_glp(TRIANGLE, (1, 1))
        assert sol.status == "Attained"
        assert [v.point for v in sol.optimal_vertices] == [(0, 0)]
        assert sol.value == 0
        assert sol.certificate[0].multipliers == (1, 1)

    def test_producer_maximization_as_min(self):
        sol = solve_glp(Y1, (-1, -4))
        assert sol.status == "Attained"
        assert sol.value == -2
        assert [v.point for v in sol.optimal_vertices] == [(-2, 1)]
        gens = normal_cone(Y1, (-2, 1)).generators
        lam = sol.certificate[0].multipliers
        recombined = tuple(
            sum(lam[i] * gens[i][j] for i in range(len(gens))) for j in range(2)
        )
        assert recombined == (1, 4)

    def test_quadrant_unbounded(self):
        sol = solve_glp(QUADRANT, (-1, 0))
        assert sol.status == "UnboundedBelow"
        assert sol.ray == (1, 0)

    def test_infeasible(self):
        P = Polyhedron.from_rows(2, [((1, 0), -1), ((-1, 0), 0)])
        assert solve_glp(P, (1, 1)).status == "Infeasible"

    def test_max_sense_sugar(self):
        as_max = solve_glp(Y1, (1, 4), "max")
        as_min = solve_glp(Y1, (-1, -4), "min")
        assert as_max.status == "Attained"
        assert as_max.value == 2 == -as_min.value
        assert as_max.optimal_vertices == as_min.optimal_vertices

    def test_zero_cost_attains_everywhere(self):
        sol = solve_glp(TRIANGLE, (0, 0))
        assert sol.status == "Attained" and sol.value == 0
        assert len(sol.optimal_vertices) == 3
        assert sol.argmin_face == TRIANGLE

    def test_ties_report_all_vertices(self):
        sol = solve_glp(TRIANGLE, (0, 1))
        assert [v.point for v in sol.optimal_vertices] == [(0, 0), (1, 0)]


class TestLinealityQuotient:
    def test_strip_objective_orthogonal_to_lineality(self):
        sol = solve_glp(STRIP, (0, 1))
        assert sol.status == "Attained" and sol.value == 0
        assert sol.lineality_basis == ((1, 0),)
        # the slice representative lies in the original polyhedron
        for v in sol.optimal_vertices:
            assert contains_point(STRIP, v.point)

    def test_strip_objective_with_lineality_component(self):
        sol = solve_glp(STRIP, (1, 0))
        assert sol.status == "UnboundedBelow"
        assert dot((1, 0), sol.ray) < 0

    def test_infeasible_with_lineality(self):
        P = Polyhedron.from_rows(2, [((0, 1), -1), ((0, -1), 0)])
        assert solve_glp(P, (0, 1)).status == "Infeasible"


class TestOracleAgreement:
    def test_statuses_and_values_match(self):
        rng = random.Random(41)
        status_map = {
            "Attained": "Optimal",
            "UnboundedBelow": "Unbounded",
            "Infeasible": "Infeasible",
        }
        for _ in range(150):
            P = random_polyhedron(rng)
            c = random_cost(rng, P.n)
            glp = solve_glp(P, c)
            lp = solve_lp(P, c)
            assert status_map[glp.status] == lp.status
            if glp.status == "Attained":
                assert glp.value == lp.value
                assert contains_point(glp.argmin_face, lp.point)

    def test_scaling_invariance(self):
        rng = random.Random(43)
        checked = 0
        while checked < 30:
            P = random_polyhedron(rng)
            c = random_cost(rng, P.n)
            t = F(rng.randint(1, 9), rng.randint(1, 4))
            a = solve_glp(P, c)
            b = solve_glp(P, tuple(t * x for x in c))
            assert a.status == b.status
            if a.status == "Attained":
                assert a.optimal_vertices == b.optimal_vertices
                assert a.argmin_face == b.argmin_face
                checked += 1
            else:
                checked += 1


class TestStabilityCone:
    def test_quadrant_origin(self):
        sc = stability_cone(QUADRANT, (0, 0))
        assert sc.generators == ((-1, 0), (0, -1))
        # any nonnegative price keeps the origin optimal for minimization
        for c in ((1, 0), (0, 1), (2, 3)):
            sol = solve_glp(QUADRANT, c)
            assert (0, 0) in [v.point for v in sol.optimal_vertices]

    def test_producer_origin_region(self):
        sc = stability_cone(Y1, (0, 0))
        assert sc.generators == ((F(1, 2), 1), (1, F(1, 2)))

    def test_producer_outer_vertex(self):
        sc = stability_cone(Y1, (-2, 1))
        assert sc.generators == ((0, 1), (F(1, 2), 1))

    def test_not_a_vertex(self):
        with pytest.raises(errors.NotAVertex):
            stability_cone(TRIANGLE, (F(1, 4), F(1, 4)))

    def test_contract_costs_inside_keep_vertex_optimal(self):
        rng = random.Random(47)
        for vertex in enumerate_vertices(Y1):
            gens = stability_cone(Y1, vertex).generators
            for _ in range(50):
                lam = [F(rng.randint(0, 6), rng.randint(1, 3)) for _ in gens]
                if all(v == 0 for v in lam):
                    continue
                price = tuple(
                    sum(lam[i] * gens[i][j] for i in range(len(gens))) for j in range(2)
                )
                sol = solve_glp(Y1, vec_neg(price))  # maximize the price
                assert sol.status == "Attained"
                assert vertex.point in [v.point for v in sol.optimal_vertices]

    def test_costs_outside_agree_with_oracle_status(self):
        rng = random.Random(53)
        vertex = enumerate_vertices(Y1)[0]
        gens = stability_cone(Y1, vertex).generators
        tried = 0
        while tried < 50:
            c = random_cost(rng, 2)
            if cone_member(gens, vec_neg(c)).member:
                continue
            sol = solve_glp(Y1, c)
            lp = solve_lp(Y1, c)
            assert (sol.status == "Attained") == (lp.status == "Optimal")
            if sol.status == "Attained":
                assert all(v.point != vertex.point or dot(c, v.point) == sol.value
                           for v in sol.optimal_vertices)
            tried += 1


class TestArgminFace:
    def test_edge(self):
        face = argmin_face(TRIANGLE, (0, 1))
        seg = Polyhedron.from_rows(
            2, [((0, -1), 0), ((0, 1), 0), ((-1, 0), 0), ((1, 0), 1)]
        )
        assert poly_contains(face, seg).holds and poly_contains(seg, face).holds

    def test_single_point(self):
        face = argmin_face(TRIANGLE, (1, 1))
        assert [v.point for v in enumerate_vertices(face)] == [(0, 0)]
        assert not contains_point(face, (F(1, 4), F(1, 4)))

    def test_ray(self):
        face = argmin_face(QUADRANT, (1, 0))
        ray = Polyhedron.from_rows(2, [((1, 0), 0), ((-1, 0), 0), ((0, -1), 0)])
        assert poly_contains(face, ray).holds and poly_contains(ray, face).holds

    def test_not_attained(self):
        with pytest.raises(errors.NotAttained):
            argmin_face(QUADRANT, (-1, 0))
