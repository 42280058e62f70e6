"""Exact H-polyhedra and their local cone/vertex geometry.

A polyhedron is a nonempty list of closed half-spaces ``<a, x> <= b`` over
exact rationals.  The whole space is deliberately not representable as a
Polyhedron (a Cone in H-form may be all of R^n, a Polyhedron may not).
Feasibility is *not* an invariant: empty polyhedra are legal values and are
flagged by the operations that require nonemptiness.

Every value is immutable and every operation is a pure function, so
concurrent use needs no coordination; outputs are deterministically sorted.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InfeasiblePoint
from .linalg import Vector, dot, solve_square
from .rationals import format_rational, format_vector, parse_rational, parse_vector

IndexSet = tuple[int, ...]


def _coerce_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def index_set(indices: Iterable[int]) -> IndexSet:
    """Sorted, duplicate-free constraint index tuple."""
    return tuple(sorted(set(indices)))


@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space ``<a, x> <= b`` in canonical L-infinity form.

    The normal is rescaled so its largest absolute coefficient is exactly 1;
    this keeps canonical forms rational (a Euclidean unit normal generally
    is not) while fixing a unique representative per half-space.
    """

    a: Vector
    b: Fraction

    def __init__(self, a: Iterable, b) -> None:
        avec = _coerce_vector(a)
        bval = Fraction(b)
        if not avec or all(x == 0 for x in avec):
            raise ValueError("half-space normal must be nonzero")
        scale = max(abs(x) for x in avec)
        if scale != 1:
            avec = tuple(x / scale for x in avec)
            bval = bval / scale
        object.__setattr__(self, "a", avec)
        object.__setattr__(self, "b", bval)

    @property
    def n(self) -> int:
        return len(self.a)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.a, x)

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return self.b - dot(self.a, x)

    def homogeneous(self) -> "HalfSpace":
        return HalfSpace(self.a, 0)

    def flipped(self) -> "HalfSpace":
        return HalfSpace(tuple(-x for x in self.a), -self.b)


@dataclass(frozen=True)
class Polyhedron:
    """H-polyhedron ``{x : A x <= b}`` over exact rationals."""

    n: int
    halfspaces: tuple[HalfSpace, ...]

    def __init__(self, n: int, halfspaces: Iterable[HalfSpace]) -> None:
        rows = tuple(halfspaces)
        if not rows:
            raise ValueError("a polyhedron needs at least one constraint (R^n is excluded)")
        for hs in rows:
            if hs.n != n:
                raise DimensionMismatch(f"constraint dimension {hs.n} != ambient {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "halfspaces", rows)

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[tuple[Iterable, object]]) -> "Polyhedron":
        return cls(n, [HalfSpace(a, b) for a, b in rows])

    @property
    def m(self) -> int:
        return len(self.halfspaces)

    def row_matrix(self) -> list[Vector]:
        return [hs.a for hs in self.halfspaces]

    def with_rows(self, extra: Iterable[HalfSpace]) -> "Polyhedron":
        return Polyhedron(self.n, self.halfspaces + tuple(extra))


@dataclass(frozen=True)
class Vertex:
    """Extremal point with its active set and an n-row nonsingular witness.

    ``defining`` is the lexicographically smallest index subset whose rows
    form a nonsingular square system solving to ``point``; ``active`` is the
    full active set (strictly larger exactly in the degenerate case).
    """

    point: Vector
    active: IndexSet
    defining: IndexSet


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone in exactly one of two representations.

    H-form rows are half-spaces through the origin; generator form is a
    finite set of rays.  Empty H-form means all of R^n, the empty generator
    list means the trivial cone {0}.
    """

    n: int
    hform: tuple[HalfSpace, ...] | None = None
    generators: tuple[Vector, ...] | None = None

    def __post_init__(self) -> None:
        if (self.hform is None) == (self.generators is None):
            raise ValueError("cone needs exactly one of hform / generators")
        if self.hform is not None:
            for hs in self.hform:
                if hs.n != self.n:
                    raise DimensionMismatch("cone row dimension mismatch")
                if hs.b != 0:
                    raise ValueError("cone half-spaces must pass through the origin")
        if self.generators is not None:
            scaled = set()
            for g in self.generators:
                if len(g) != self.n:
                    raise DimensionMismatch("cone generator dimension mismatch")
                if all(x == 0 for x in g):
                    raise ValueError("cone generators must be nonzero")
                ray = canonical_ray(g)
                if ray in scaled:
                    raise ValueError("cone generators duplicate after canonical scaling")
                scaled.add(ray)

    @property
    def is_trivial(self) -> bool:
        return self.generators is not None and not self.generators

    @property
    def is_everything(self) -> bool:
        return self.hform is not None and not self.hform


def canonical_ray(g: Sequence[Fraction]) -> Vector:
    """Scale a nonzero direction so max |coefficient| == 1."""
    scale = max(abs(Fraction(x)) for x in g)
    if scale == 0:
        raise ValueError("zero vector has no canonical ray")
    return tuple(Fraction(x) / scale for x in g)


# ---------------------------------------------------------------------------
# Point-local operations


def contains_point(P: Polyhedron, x: Sequence) -> bool:
    """Exact membership test ``A x <= b`` (boundary included)."""
    xv = _coerce_vector(x)
    if len(xv) != P.n:
        raise DimensionMismatch(f"point dimension {len(xv)} != ambient {P.n}")
    return all(hs.slack(xv) >= 0 for hs in P.halfspaces)


def active_set(P: Polyhedron, x: Sequence) -> IndexSet:
    """Indices of constraints tight at x; x must be feasible."""
    xv = _coerce_vector(x)
    if len(xv) != P.n:
        raise DimensionMismatch(f"point dimension {len(xv)} != ambient {P.n}")
    active = []
    for i, hs in enumerate(P.halfspaces):
        s = hs.slack(xv)
        if s < 0:
            raise InfeasiblePoint(f"constraint {i} violated by {s}")
        if s == 0:
            active.append(i)
    return tuple(active)


def tangent_cone(P: Polyhedron, x: Sequence) -> Cone:
    """Tangent cone at a feasible point: active rows made homogeneous.

    At interior points the active set is empty and the cone is all of R^n.
    """
    act = active_set(P, x)
    return Cone(P.n, hform=tuple(P.halfspaces[i].homogeneous() for i in act))


def normal_cone(P: Polyhedron, x: Sequence) -> Cone:
    """Normal cone at a feasible point: nonnegative span of active normals."""
    act = active_set(P, x)
    gens: list[Vector] = []
    for i in act:
        g = canonical_ray(P.halfspaces[i].a)
        if g not in gens:
            gens.append(g)
    return Cone(P.n, generators=tuple(gens))


# ---------------------------------------------------------------------------
# Vertex enumeration


def _integer_rows(P: Polyhedron) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row-wise: returns integer (A, b) describing P."""
    A: list[list[int]] = []
    b: list[int] = []
    for hs in P.halfspaces:
        scale = hs.b.denominator
        for x in hs.a:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        A.append([int(x * scale) for x in hs.a])
        b.append(int(hs.b * scale))
    return A, b


def _cramer(A: list[list[int]], b: list[int], combo: tuple[int, ...]):
    """Integer Cramer solve of the selected square subsystem.

    Returns (det, numerators) with the solution x_j = numerators[j]/det,
    det == 0 meaning singular; None for sizes without a closed form.
    """
    n = len(combo)
    if n == 1:
        (i,) = combo
        return A[i][0], [b[i]]
    if n == 2:
        i, j = combo
        a11, a12 = A[i]
        a21, a22 = A[j]
        det = a11 * a22 - a12 * a21
        if det == 0:
            return 0, []
        return det, [b[i] * a22 - a12 * b[j], a11 * b[j] - b[i] * a21]
    if n == 3:
        i, j, k = combo
        r1, r2, r3 = A[i], A[j], A[k]
        d1, d2, d3 = b[i], b[j], b[k]
        c1 = r2[1] * r3[2] - r2[2] * r3[1]
        c2 = r2[0] * r3[2] - r2[2] * r3[0]
        c3 = r2[0] * r3[1] - r2[1] * r3[0]
        det = r1[0] * c1 - r1[1] * c2 + r1[2] * c3
        if det == 0:
            return 0, []
        n1 = d1 * c1 - r1[1] * (d2 * r3[2] - r2[2] * d3) + r1[2] * (d2 * r3[1] - r2[1] * d3)
        n2 = r1[0] * (d2 * r3[2] - r2[2] * d3) - d1 * c2 + r1[2] * (r2[0] * d3 - d2 * r3[0])
        n3 = r1[0] * (r2[1] * d3 - d2 * r3[1]) - r1[1] * (r2[0] * d3 - d2 * r3[0]) + d1 * c3
        return det, [n1, n2, n3]
    return None


def enumerate_vertices(P: Polyhedron) -> list[Vertex]:
    """All extremal points, via the n x n nonsingular active subsystems.

    Brute force over the C(m, n) constraint subsets: exact solve, keep
    feasible solutions, deduplicate by point.  O(C(m,n) n^3) — fine at desk
    scale (m up to ~25), and the documented scalability boundary.
    Deterministic: output sorted by point, ``defining`` is the
    lexicographically smallest witnessing subset.  Denominators are cleared
    once so the subset loop runs in integer arithmetic.
    """
    n, m = P.n, P.m
    if m < n:
        return []
    A, b = _integer_rows(P)
    rows = P.row_matrix()
    rhs = [hs.b for hs in P.halfspaces]
    seen: dict[Vector, IndexSet] = {}
    for combo in itertools.combinations(range(m), n):
        solved = _cramer(A, b, combo)
        if solved is None:
            sol = solve_square([rows[i] for i in combo], [rhs[i] for i in combo])
            if sol is None or sol in seen or not contains_point(P, sol):
                continue
            seen[sol] = combo
            continue
        det, nums = solved
        if det == 0:
            continue
        if det < 0:
            det = -det
            nums = [-v for v in nums]
        feasible = True
        for i in range(m):
            Ai = A[i]
            if sum(Ai[j] * nums[j] for j in range(n)) > det * b[i]:
                feasible = False
                break
        if not feasible:
            continue
        point = tuple(Fraction(v, det) for v in nums)
        if point not in seen:
            seen[point] = combo
    out = []
    for point in sorted(seen):
        out.append(Vertex(point=point, active=active_set(P, point), defining=seen[point]))
    return out


# ---------------------------------------------------------------------------
# JSON codec (the one external wire format for polyhedra)


def polyhedron_to_dict(P: Polyhedron) -> dict:
    return {
        "n": P.n,
        "constraints": [
            {"a": format_vector(hs.a), "b": format_rational(hs.b)} for hs in P.halfspaces
        ],
    }


def polyhedron_from_dict(data: dict) -> Polyhedron:
    try:
        n = int(data["n"])
        rows = data["constraints"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed polyhedron JSON: {exc}") from exc
    halfspaces = []
    for row in rows:
        a = parse_vector(row["a"])
        b = parse_rational(row["b"])
        halfspaces.append(HalfSpace(a, b))
    return Polyhedron(n, halfspaces)
