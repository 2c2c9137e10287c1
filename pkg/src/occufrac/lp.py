"""Exact rational linear programming in equality standard form.

    maximize c . x   subject to   A x = b,  x >= 0

Two-phase simplex over Fractions with Bland's anti-cycling rule, so every
solve terminates and every reported optimum, basis and dual vector is
exact. Dense tableau; the programs solved here have at most a handful of
rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError

ZERO = Fraction(0)


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    rows: tuple
    rhs: tuple

    def __post_init__(self):
        ncols = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise StructureError("row count does not match rhs length")
        for r, row in enumerate(self.rows):
            if len(row) != ncols:
                raise StructureError(f"row {r} has {len(row)} entries, need {ncols}")

    @property
    def ncols(self) -> int:
        return len(self.objective)

    @property
    def nrows(self) -> int:
        return len(self.rows)


def make_lp(objective, rows, rhs) -> LinearProgram:
    return LinearProgram(
        tuple(Fraction(c) for c in objective),
        tuple(tuple(Fraction(a) for a in row) for row in rows),
        tuple(Fraction(b) for b in rhs),
    )


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    primal: tuple | None = None
    basis: tuple | None = None
    dual: tuple | None = None

    @property
    def support(self):
        return tuple(j for j, x in enumerate(self.primal) if x != 0)


@dataclass(frozen=True)
class DualSlackReport:
    """Per-column slacks (dual^T A - c)_j of a candidate dual vector."""

    slacks: tuple
    feasible: bool
    tight: tuple  # columns with slack exactly 0
    dual_objective: Fraction


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    inv = 1 / piv
    tableau[row] = [a * inv for a in tableau[row]]
    prow = tableau[row]
    for r in range(len(tableau)):
        if r == row:
            continue
        factor = tableau[r][col]
        if factor == 0:
            continue
        tableau[r] = [a - factor * p for a, p in zip(tableau[r], prow)]
    basis[row] = col


def _reduced_cost(tableau, basis, cost, col):
    rc = cost[col]
    for r, b in enumerate(basis):
        cb = cost[b]
        if cb != 0:
            rc -= cb * tableau[r][col]
    return rc


def _run_simplex(tableau, basis, cost, allowed_cols):
    """Maximize cost over the tableau with Bland's rule. Returns True when
    optimal, False when unbounded."""
    while True:
        entering = -1
        basic = set(basis)
        for j in allowed_cols:
            if j in basic:
                continue
            if _reduced_cost(tableau, basis, cost, j) > 0:
                entering = j
                break  # Bland: smallest improving index
        if entering == -1:
            return True
        leaving = -1
        best_ratio = None
        for r in range(len(tableau)):
            a = tableau[r][entering]
            if a <= 0:
                continue
            ratio = tableau[r][-1] / a
            if (
                best_ratio is None
                or ratio < best_ratio
                or (ratio == best_ratio and basis[r] < basis[leaving])
            ):
                best_ratio = ratio
                leaving = r
        if leaving == -1:
            return False
        _pivot(tableau, basis, leaving, entering)


def _solve_square(matrix, rhs):
    """Exact Gaussian elimination for a square nonsingular system."""
    n = len(rhs)
    aug = [list(matrix[r]) + [rhs[r]] for r in range(n)]
    for col in range(n):
        pivot_row = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * p for a, p in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(n)]


def solve(lp: LinearProgram) -> LPSolution:
    """Two-phase simplex. On "optimal" the result carries exact certificates:
    A x = b, x >= 0, value = c.x = dual.b, and every reduced cost <= 0."""
    m, n = lp.nrows, lp.ncols

    # phase 1: artificial identity basis, rhs made non-negative
    tableau = []
    for r in range(m):
        row = list(lp.rows[r]) + [ZERO] * m + [lp.rhs[r]]
        if lp.rhs[r] < 0:
            row = [-a for a in row]
        row[n + r] = Fraction(1)
        tableau.append(row)
    basis = [n + r for r in range(m)]
    phase1_cost = [ZERO] * n + [Fraction(-1)] * m
    all_cols = range(n + m)
    _run_simplex(tableau, basis, phase1_cost, all_cols)
    infeasibility = sum(
        (tableau[r][-1] for r in range(m) if basis[r] >= n), ZERO
    )
    if infeasibility != 0:
        return LPSolution(status="infeasible")

    # drive zero-level artificials out of the basis; rows with no original
    # pivot entry are redundant and get dropped (their dual price is 0)
    kept = list(range(m))
    for r in range(m - 1, -1, -1):
        if basis[r] < n:
            continue
        col = next((j for j in range(n) if tableau[r][j] != 0), None)
        if col is None:
            del tableau[r]
            del basis[r]
            del kept[r]
        else:
            _pivot(tableau, basis, r, col)

    # phase 2 over original columns only
    phase2_cost = list(lp.objective) + [ZERO] * m
    if not _run_simplex(tableau, basis, phase2_cost, range(n)):
        return LPSolution(status="unbounded")

    primal = [ZERO] * n
    for r, b in enumerate(basis):
        primal[b] = tableau[r][-1]
    value = sum((c * x for c, x in zip(lp.objective, primal)), ZERO)

    # dual prices from B^T y = c_B on the kept rows, 0 on dropped rows
    mm = len(basis)
    bt = [[lp.rows[kept[r]][basis[i]] for r in range(mm)] for i in range(mm)]
    cb = [lp.objective[b] for b in basis]
    y_kept = _solve_square(bt, cb)
    dual = [ZERO] * m
    for idx, r in enumerate(kept):
        dual[r] = y_kept[idx]

    solution = LPSolution(
        status="optimal",
        value=value,
        primal=tuple(primal),
        basis=tuple(basis),
        dual=tuple(dual),
    )
    _check_optimal(lp, solution)
    return solution


def _check_optimal(lp: LinearProgram, sol: LPSolution):
    # exactness self-checks; violations would mean a solver bug
    for r in range(lp.nrows):
        lhs = sum((a * x for a, x in zip(lp.rows[r], sol.primal)), ZERO)
        if lhs != lp.rhs[r]:
            raise AssertionError(f"primal infeasible in row {r}")
    if any(x < 0 for x in sol.primal):
        raise AssertionError("negative primal entry")
    report = dual_slacks(lp, sol.dual)
    if not report.feasible:
        raise AssertionError("dual infeasible at claimed optimum")
    if report.dual_objective != sol.value:
        raise AssertionError("strong duality violated")


def dual_slacks(lp: LinearProgram, dual) -> DualSlackReport:
    """Slack (dual^T A - c)_j per column; feasible iff all slacks >= 0."""
    if len(dual) != lp.nrows:
        raise StructureError(
            f"dual has {len(dual)} entries for {lp.nrows} rows"
        )
    slacks = []
    for j in range(lp.ncols):
        s = -lp.objective[j]
        for r in range(lp.nrows):
            if dual[r] != 0:
                s += dual[r] * lp.rows[r][j]
        slacks.append(s)
    dual_obj = sum((y * b for y, b in zip(dual, lp.rhs)), ZERO)
    return DualSlackReport(
        slacks=tuple(slacks),
        feasible=all(s >= 0 for s in slacks),
        tight=tuple(j for j, s in enumerate(slacks) if s == 0),
        dual_objective=dual_obj,
    )
