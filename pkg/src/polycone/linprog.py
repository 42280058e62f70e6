"""Exact rational simplex: the independent optimization/feasibility oracle.

Inequality problems are solved through a standard-form tableau over
``z = (x+, x-, s)`` with Bland's rule everywhere — degeneracy is endemic in
the fixtures this package targets, so termination is bought with
determinism rather than speed.  No revised simplex, no LU updates; every
entry is a Fraction and every returned certificate is re-verified exactly
before it leaves this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .geometry import Polyhedron
from .linalg import Vector, dot, nullspace, vec_neg

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    """Outcome of one exact LP solve.

    status is "Optimal", "Unbounded" or "Infeasible".  ``point`` is an
    attaining feasible point when Optimal (purified so that, for pointed
    polyhedra, its active rows contain a nonsingular n-subsystem) and a
    feasible base point when Unbounded.  ``ray`` is a recession direction
    strictly improving the objective.  ``certificate`` holds Farkas
    multipliers y >= 0 with y.A = 0 and y.b < 0 when Infeasible.
    """

    status: str
    point: Vector | None = None
    value: Fraction | None = None
    ray: Vector | None = None
    certificate: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class ConeMembership:
    """Result of an exact conic-combination feasibility test."""

    member: bool
    multipliers: tuple[Fraction, ...] | None = None


# ---------------------------------------------------------------------------
# Tableau core: min c.z  s.t.  M z = d, z >= 0


def _pivot(tab, rhs, basis, cost, obj, li, ej):
    piv = tab[li][ej]
    if piv != 1:
        inv = _ONE / piv
        tab[li] = [v * inv for v in tab[li]]
        rhs[li] *= inv
    row = tab[li]
    t = rhs[li]
    for i in range(len(tab)):
        if i != li and tab[i][ej] != 0:
            f = tab[i][ej]
            tab[i] = [a - f * b for a, b in zip(tab[i], row)]
            rhs[i] -= f * t
    f = cost[ej]
    if f:
        cost[:] = [a - f * b for a, b in zip(cost, row)]
        obj += f * t
    basis[li] = ej
    return obj


def _bland(tab, rhs, basis, cost, obj, allowed):
    """Run Bland's rule to optimality or unboundedness."""
    while True:
        enter = -1
        for j in allowed:
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal", -1, obj
        leave = -1
        best = None
        for i in range(len(tab)):
            t = tab[i][enter]
            if t > 0:
                r = rhs[i] / t
                if best is None or r < best or (r == best and basis[i] < basis[leave]):
                    best = r
                    leave = i
        if leave < 0:
            return "unbounded", enter, obj
        obj = _pivot(tab, rhs, basis, cost, obj, leave, enter)


def _reduced_costs(tab, rhs, basis, full_cost):
    cost = list(full_cost)
    obj = _ZERO
    for i, bi in enumerate(basis):
        cb = full_cost[bi]
        if cb:
            obj += cb * rhs[i]
            row = tab[i]
            cost = [a - cb * b for a, b in zip(cost, row)]
    return cost, obj


def _standard_simplex(
    rows: list[list[Fraction]],
    rhs_in: list[Fraction],
    costs: list[Fraction],
    basis_hint: list[int] | None = None,
) -> dict:
    """Two-phase simplex on equality form; all inputs copied, all exact.

    ``basis_hint`` names, per row, a column that is a unit column (+1 in
    that row, 0 elsewhere); such columns serve as the initial basis for
    rows whose right-hand side is already nonnegative, so artificial
    variables (and phase 1 entirely, when no row needed negating) are
    reserved for the rows that actually require them.

    Returns a dict with keys: status ("optimal" | "unbounded" | "infeasible"),
    and per status: point/value, point/ray, or phase1_costs (reduced costs
    over the original columns, for Farkas extraction).
    """
    m = len(rows)
    p = len(rows[0]) if m else len(costs)
    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    negated: list[bool] = []
    for i in range(m):
        row = list(rows[i])
        d = rhs_in[i]
        if d < 0:
            row = [-v for v in row]
            d = -d
            negated.append(True)
        else:
            negated.append(False)
        tab.append(row)
        rhs.append(d)

    art_rows = [i for i in range(m) if negated[i] or basis_hint is None]
    art_col = {row_i: p + idx for idx, row_i in enumerate(art_rows)}
    n_art = len(art_rows)
    for i in range(m):
        tab[i].extend(_ONE if i == k else _ZERO for k in art_rows)
    basis = [art_col[i] if i in art_col else basis_hint[i] for i in range(m)]
    allowed = list(range(p))

    if n_art:
        # phase 1: drive the artificial variables to zero
        cost = [_ZERO] * (p + n_art)
        for j in range(p):
            cost[j] = -sum(tab[i][j] for i in art_rows)
        obj = sum((rhs[i] for i in art_rows), _ZERO)
        if obj > 0:
            status, _, obj = _bland(tab, rhs, basis, cost, obj, allowed)
            if status != "optimal":  # phase 1 is bounded below by zero
                raise AssertionError("phase-1 simplex reported unbounded")
            if obj > 0:
                return {"status": "infeasible", "phase1_costs": cost[:p]}
        # pivot leftover artificials out (degenerate) or drop dependent rows;
        # the cost row no longer matters, a zero row keeps _pivot happy
        cost = [_ZERO] * (p + n_art)
        obj = _ZERO
        for i in range(m - 1, -1, -1):
            if i < len(basis) and basis[i] >= p:
                ej = next((j for j in range(p) if tab[i][j] != 0), -1)
                if ej < 0:
                    del tab[i], rhs[i], basis[i]
                else:
                    obj = _pivot(tab, rhs, basis, cost, obj, i, ej)

    full_cost = list(costs) + [_ZERO] * (len(tab[0]) - p if tab else 0)
    cost, obj = _reduced_costs(tab, rhs, basis, full_cost)
    status, enter, obj = _bland(tab, rhs, basis, cost, obj, allowed)

    point = [_ZERO] * p
    for i, bi in enumerate(basis):
        if bi < p:
            point[bi] = rhs[i]
    if status == "unbounded":
        ray = [_ZERO] * p
        ray[enter] = _ONE
        for i, bi in enumerate(basis):
            if bi < p:
                ray[bi] = -tab[i][enter]
        return {"status": "unbounded", "point": point, "ray": ray}
    return {"status": "optimal", "point": point, "value": obj}


# ---------------------------------------------------------------------------
# Public oracle


def _purify(P: Polyhedron, x: Vector, c: Vector) -> Vector:
    """Slide an optimal point along active-set null directions to a face
    with a full-rank active system (a vertex when P is pointed).

    Any null direction of the active rows keeps the objective value (else x
    was not optimal), and each slide strictly grows the active-row rank, so
    this terminates within n steps.
    """
    while True:
        act_rows = [hs.a for hs in P.halfspaces if hs.slack(x) == 0]
        null = nullspace(act_rows, P.n)
        if not null:
            return x
        v = null[0]
        if dot(c, v) != 0:
            raise AssertionError("null direction changes an optimal objective")
        moved = False
        for w in (v, vec_neg(v)):
            t_best = None
            for hs in P.halfspaces:
                d = dot(hs.a, w)
                if d > 0:
                    t = hs.slack(x) / d
                    if t_best is None or t < t_best:
                        t_best = t
            if t_best is not None:
                x = tuple(xi + t_best * wi for xi, wi in zip(x, w))
                moved = True
                break
        if not moved:
            return x  # P contains the whole line x + R v


def solve_lp(P: Polyhedron, c: Sequence, sense: str = "min") -> LPResult:
    """Exact optimum of ``<c, x>`` over P with certificate.

    Attainment whenever the objective is bounded on nonempty P; Unbounded
    comes with an improving recession ray, Infeasible with an exact Farkas
    witness.  Deterministic (Bland's rule).
    """
    cv = tuple(Fraction(v) for v in c)
    if len(cv) != P.n:
        raise DimensionMismatch(f"cost dimension {len(cv)} != ambient {P.n}")
    if sense not in ("min", "max"):
        raise ValueError(f"unknown sense {sense!r}")
    cmin = cv if sense == "min" else vec_neg(cv)

    n, m = P.n, P.m
    rows = []
    for i, hs in enumerate(P.halfspaces):
        row = list(hs.a)
        row.extend(-v for v in hs.a)
        row.extend(_ONE if k == i else _ZERO for k in range(m))
        rows.append(row)
    rhs = [hs.b for hs in P.halfspaces]
    costs = list(cmin) + [-v for v in cmin] + [_ZERO] * m

    res = _standard_simplex(rows, rhs, costs, basis_hint=[2 * n + i for i in range(m)])

    if res["status"] == "infeasible":
        mu = tuple(res["phase1_costs"][2 * n + i] for i in range(m))
        if any(v < 0 for v in mu):
            raise AssertionError("negative Farkas multiplier")
        combo = [sum(mu[i] * P.halfspaces[i].a[j] for i in range(m)) for j in range(n)]
        if any(v != 0 for v in combo) or dot(mu, rhs) >= 0:
            raise AssertionError("Farkas certificate failed verification")
        return LPResult(status="Infeasible", certificate=mu)

    def to_x(z: Sequence[Fraction]) -> Vector:
        return tuple(z[j] - z[n + j] for j in range(n))

    if res["status"] == "unbounded":
        ray = to_x(res["ray"])
        point = to_x(res["point"])
        if any(dot(hs.a, ray) > 0 for hs in P.halfspaces) or dot(cmin, ray) >= 0:
            raise AssertionError("unbounded ray failed verification")
        return LPResult(status="Unbounded", point=point, ray=ray)

    x = _purify(P, to_x(res["point"]), cmin)
    return LPResult(status="Optimal", point=x, value=dot(cv, x))


def find_feasible_point(P: Polyhedron) -> Vector | None:
    """A feasible point of P (a vertex when P is pointed), or None."""
    res = solve_lp(P, (_ZERO,) * P.n, "min")
    return res.point if res.status == "Optimal" else None


def is_feasible(P: Polyhedron) -> bool:
    return find_feasible_point(P) is not None


def cone_member(generators: Sequence[Sequence], target: Sequence) -> ConeMembership:
    """Exact phase-I test of ``target in cone(generators)`` with multipliers.

    Multipliers, when returned, recombine to the target exactly.
    """
    tv = tuple(Fraction(v) for v in target)
    gens = [tuple(Fraction(v) for v in g) for g in generators]
    if not gens:
        return ConeMembership(member=all(v == 0 for v in tv), multipliers=())
    n = len(tv)
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch("generator dimension mismatch")
        if all(v == 0 for v in g):
            raise ValueError("cone generators must be nonzero")
    rows = [[g[i] for g in gens] for i in range(n)]
    res = _standard_simplex(rows, list(tv), [_ZERO] * len(gens))
    if res["status"] == "infeasible":
        return ConeMembership(member=False)
    lam = tuple(res["point"])
    recombined = [sum(lam[j] * gens[j][i] for j in range(len(gens))) for i in range(n)]
    if tuple(recombined) != tv:
        raise AssertionError("cone multipliers failed to recombine")
    return ConeMembership(member=True, multipliers=lam)
