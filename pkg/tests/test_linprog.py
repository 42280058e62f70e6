import itertools
import random
from fractions import Fraction

import pytest

from polycone import (
    Polyhedron,
    cone_member,
    contains_point,
    errors,
    find_feasible_point,
    solve_lp,
)
from polycone.linalg import dot, rank

from helpers import (
    QUADRANT,
    TRIANGLE,
    rand_direction,
    random_cost,
    random_feasible_pointed,
    random_polyhedron,
)

F = Fraction


class TestSolveLP:
    def test_triangle_min(self):
        res = solve_lp(TRIANGLE, (1, 1))
        assert res.status == "Optimal" and res.point == (0, 0) and res.value == 0

    def test_quadrant_unbounded(self):
        res = solve_lp(QUADRANT, (-1, 0))
        assert res.status == "Unbounded"
        assert res.ray == (1, 0)

    def test_infeasible_farkas(self):
        P = Polyhedron.from_rows(1, [((1,), -1), ((-1,), 0)])
        res = solve_lp(P, (0,))
        assert res.status == "Infeasible"
        assert res.certificate == (1, 1)

    def test_max_sense(self):
        res = solve_lp(TRIANGLE, (1, 1), "max")
        assert res.status == "Optimal" and res.value == 1

    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionMismatch):
            solve_lp(TRIANGLE, (1, 1, 1))

    def test_farkas_certificate_on_random_infeasible(self):
        rng = random.Random(3)
        seen = 0
        while seen < 40:
            P = random_polyhedron(rng)
            res = solve_lp(P, random_cost(rng, P.n))
            if res.status != "Infeasible":
                continue
            mu = res.certificate
            assert all(v >= 0 for v in mu)
            combo = [
                sum(mu[i] * P.halfspaces[i].a[j] for i in range(P.m)) for j in range(P.n)
            ]
            assert all(v == 0 for v in combo)
            assert dot(mu, [hs.b for hs in P.halfspaces]) < 0
            seen += 1

    def test_weak_duality_on_samples(self):
        rng = random.Random(5)
        done = 0
        while done < 25:
            P = random_polyhedron(rng)
            c = random_cost(rng, P.n)
            res = solve_lp(P, c)
            if res.status != "Optimal":
                continue
            # every feasible sample scores at least the optimum (min sense)
            samples = 0
            while samples < 100:
                x = tuple(F(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(P.n))
                if contains_point(P, x):
                    assert dot(c, x) >= res.value
                    samples += 1
                else:
                    samples += 1  # rejection still consumes the budget
            done += 1

    def test_unbounded_ray_validity(self):
        rng = random.Random(9)
        seen = 0
        while seen < 40:
            P = random_polyhedron(rng)
            c = random_cost(rng, P.n)
            res = solve_lp(P, c)
            if res.status != "Unbounded":
                continue
            assert all(dot(hs.a, res.ray) <= 0 for hs in P.halfspaces)
            assert dot(c, res.ray) < 0
            assert contains_point(P, res.point)
            seen += 1

    def test_optimal_point_has_full_rank_active_set_when_pointed(self):
        rng = random.Random(17)
        for _ in range(40):
            P = random_feasible_pointed(rng)
            res = solve_lp(P, random_cost(rng, P.n))
            if res.status != "Optimal":
                continue
            act = [hs.a for hs in P.halfspaces if hs.slack(res.point) == 0]
            assert rank(act, P.n) == P.n

    def test_find_feasible_point(self):
        assert find_feasible_point(TRIANGLE) is not None
        empty = Polyhedron.from_rows(1, [((1,), -1), ((-1,), 0)])
        assert find_feasible_point(empty) is None


def _member_by_angles(gens, target):
    """LP-free 2-D membership: the cone of two (or fewer) generators is an
    angular sector; test by cross products."""
    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    if all(v == 0 for v in target):
        return True
    if not gens:
        return False
    for g in gens:
        if cross(g, target) == 0 and dot(g, target) > 0:
            return True
    for g1, g2 in itertools.combinations(gens, 2):
        s = cross(g1, g2)
        if s == 0:
            continue
        if s < 0:
            g1, g2 = g2, g1
        # inside the convex sector from g1 counterclockwise to g2
        if cross(g1, target) >= 0 and cross(target, g2) >= 0:
            return True
    return False


class TestConeMember:
    def test_first_quadrant(self):
        res = cone_member([(1, 0), (0, 1)], (1, 1))
        assert res.member and res.multipliers == (1, 1)

    def test_outside(self):
        assert not cone_member([(1, 0), (0, 1)], (-1, 0)).member

    def test_exact_two_by_two(self):
        res = cone_member([(0, 1), (1, 2)], (1, 4))
        assert res.member and res.multipliers == (2, 1)

    def test_trivial_cone(self):
        assert cone_member([], (0, 0)).member
        assert not cone_member([], (1, 0)).member

    def test_multipliers_recombine(self):
        rng = random.Random(23)
        for _ in range(200):
            n = rng.choice((2, 3))
            gens = [rand_direction(rng, n) for _ in range(rng.randint(1, 4))]
            target = rand_direction(rng, n)
            res = cone_member(gens, target)
            if res.member:
                recon = [
                    sum(res.multipliers[i] * gens[i][j] for i in range(len(gens)))
                    for j in range(n)
                ]
                assert tuple(recon) == target

    def test_against_planar_angle_oracle(self):
        rng = random.Random(29)
        for _ in range(300):
            gens = [rand_direction(rng, 2) for _ in range(rng.randint(1, 2))]
            target = rand_direction(rng, 2)
            assert cone_member(gens, target).member == _member_by_angles(gens, target)
