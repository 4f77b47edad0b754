"""Exact rational linear programming.

Programs are held in the standard primal form

    minimize c.x  subject to  A x = a,  x >= 0

and solved with a two-phase dense-tableau simplex method using Bland's rule,
over :class:`fractions.Fraction`.  Every outcome carries a certificate that can
be checked with plain rational arithmetic: a dual point for optimal programs, a
Farkas vector for infeasible ones and a ray for unbounded ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point data is not accepted by the exact solver")
    return Fraction(x)


@dataclass(frozen=True)
class RationalLP:
    """minimize ``c.x`` subject to ``A x = a``, ``x >= 0``."""

    A: tuple[tuple[Fraction, ...], ...]
    a: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    @classmethod
    def build(cls, A: Sequence[Sequence], a: Sequence, c: Sequence) -> "RationalLP":
        A2 = tuple(tuple(as_fraction(x) for x in row) for row in A)
        a2 = tuple(as_fraction(x) for x in a)
        c2 = tuple(as_fraction(x) for x in c)
        n = len(c2)
        if len(A2) != len(a2):
            raise DimensionMismatch(f"{len(A2)} constraint rows but {len(a2)} right-hand sides")
        for k, row in enumerate(A2):
            if len(row) != n:
                raise DimensionMismatch(f"row {k} has {len(row)} entries, expected {n}")
        return cls(A2, a2, c2)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.c)


@dataclass(frozen=True)
class DualLP:
    """maximize ``a.y`` subject to ``A^T y <= c`` with ``y`` free."""

    A: tuple[tuple[Fraction, ...], ...]
    a: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def objective(self, y: Sequence[Fraction]) -> Fraction:
        return sum((ai * yi for ai, yi in zip(self.a, y)), _ZERO)

    def is_feasible(self, y: Sequence[Fraction]) -> bool:
        m = len(self.A)
        for j, cj in enumerate(self.c):
            if sum((self.A[i][j] * y[i] for i in range(m)), _ZERO) > cj:
                return False
        return True

    def canonical(self) -> "GenericLP":
        """The same program written with explicit constraints, ready for
        :func:`to_standard_form`."""
        m = len(self.A)
        cons = []
        for j, cj in enumerate(self.c):
            cons.append(([self.A[i][j] for i in range(m)], "<=", cj))
        return GenericLP(list(self.a), "max", cons, free=set(range(m)))


@dataclass
class LPOutcome:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    dual: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def dualize(lp: RationalLP) -> DualLP:
    return DualLP(lp.A, lp.a, lp.c)


# -- certificate checks ---------------------------------------------------------


def _row_dot(row, x):
    return sum((r * v for r, v in zip(row, x) if r), _ZERO)


def is_primal_feasible(lp: RationalLP, x: Sequence[Fraction]) -> bool:
    if len(x) != len(lp.c) or any(v < 0 for v in x):
        return False
    return all(_row_dot(row, x) == ai for row, ai in zip(lp.A, lp.a))


def verify_farkas(lp: RationalLP, lam: Sequence[Fraction]) -> bool:
    """``lam^T A <= 0`` and ``lam^T a > 0`` prove ``A x = a, x >= 0`` empty."""
    m, n = lp.shape
    if len(lam) != m:
        return False
    for j in range(n):
        if sum((lp.A[i][j] * lam[i] for i in range(m)), _ZERO) > 0:
            return False
    return _row_dot(lp.a, lam) > 0


def verify_ray(lp: RationalLP, ray: Sequence[Fraction]) -> bool:
    if any(v < 0 for v in ray):
        return False
    if any(_row_dot(row, ray) != 0 for row in lp.A):
        return False
    return _row_dot(lp.c, ray) < 0


def verify_optimal(lp: RationalLP, outcome: LPOutcome) -> bool:
    """Primal feasibility, dual feasibility and equal objectives."""
    if outcome.x is None or outcome.dual is None:
        return False
    d = dualize(lp)
    return (
        is_primal_feasible(lp, outcome.x)
        and d.is_feasible(outcome.dual)
        and _row_dot(lp.c, outcome.x) == outcome.value == d.objective(outcome.dual)
    )


# -- simplex ----------------------------------------------------------------------


class _Tableau:
    def __init__(self, lp: RationalLP):
        m, n = lp.shape
        self.m, self.n = m, n
        self.sign = [1 if ai >= 0 else -1 for ai in lp.a]
        width = n + m
        rows = []
        for i in range(m):
            s = self.sign[i]
            row = [x if s > 0 else -x for x in lp.A[i]] + [_ZERO] * m
            row[n + i] = Fraction(1)
            rows.append(row)
        self.rows = rows
        self.rhs = [ai if ai >= 0 else -ai for ai in lp.a]
        self.basis = [n + i for i in range(m)]
        self.width = width
        self.obj: list[Fraction] = [_ZERO] * width
        self.value = _ZERO
        self.pivots = 0

    def set_costs(self, cost: Sequence[Fraction]) -> None:
        obj = list(cost)
        value = _ZERO
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.width):
                    if row[j]:
                        obj[j] -= cb * row[j]
                value += cb * self.rhs[i]
        self.obj = obj
        self.value = value

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        p = prow[col]
        if p != 1:
            inv = 1 / p
            for j in range(self.width):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.width) if prow[j]]
        pr = self.rhs[r]
        for i in range(self.m):
            if i == r:
                continue
            row = self.rows[i]
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                if pr:
                    self.rhs[i] -= f * pr
        f = self.obj[col]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
            self.value += f * pr
        self.basis[r] = col
        self.pivots += 1

    def run(self, allowed: int) -> int | None:
        """Bland's rule until optimal (None) or an unbounded column is found."""
        while True:
            col = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if col is None:
                return None
            best = None
            for i in range(self.m):
                t = self.rows[i][col]
                if t > 0:
                    ratio = self.rhs[i] / t
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return col
            self.pivot(best[1], col)


def solve(lp: RationalLP) -> LPOutcome:
    """Solve a standard-form program exactly."""
    m, n = lp.shape
    if len(lp.a) != m or any(len(r) != n for r in lp.A):
        raise DimensionMismatch("inconsistent program dimensions")
    tab = _Tableau(lp)
    phase1 = [_ZERO] * n + [Fraction(1)] * m
    tab.set_costs(phase1)
    tab.run(n + m)
    if tab.value > 0:
        y = [1 - tab.obj[n + i] for i in range(m)]
        lam = tuple(y[i] * tab.sign[i] for i in range(m))
        return LPOutcome(INFEASIBLE, farkas=lam, pivots=tab.pivots)

    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if tab.basis[r] >= n:
            row = tab.rows[r]
            col = next((j for j in range(n) if row[j] and j not in tab.basis), None)
            if col is not None:
                tab.pivot(r, col)

    cost = list(lp.c) + [_ZERO] * m
    tab.set_costs(cost)
    col = tab.run(n)
    if col is not None:
        ray = [_ZERO] * n
        ray[col] = Fraction(1)
        for i, b in enumerate(tab.basis):
            if b < n:
                ray[b] = -tab.rows[i][col]
        return LPOutcome(UNBOUNDED, ray=tuple(ray), pivots=tab.pivots)

    x = [_ZERO] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = tab.rhs[i]
    y = tuple(-tab.obj[n + i] * tab.sign[i] for i in range(m))
    return LPOutcome(OPTIMAL, x=tuple(x), value=tab.value, dual=y, pivots=tab.pivots)


# -- general programs -------------------------------------------------------------


@dataclass
class GenericLP:
    """An LP with ``<=``, ``>=`` and ``=`` rows, free variables and either sense.

    ``objective`` and each constraint row are dense coefficient lists over the
    ``len(objective)`` original variables.  Variables are non-negative unless
    listed in ``free``.
    """

    objective: list
    sense: str = "min"
    constraints: list = field(default_factory=list)
    free: set = field(default_factory=set)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs, op: str, rhs) -> None:
        if op not in ("<=", ">=", "="):
            raise ValueError(f"unknown constraint sense {op!r}")
        self.constraints.append((list(coeffs), op, rhs))


@dataclass(frozen=True)
class VariableMap:
    """Recovers original variables and objective from a standard-form solution."""

    columns: tuple[tuple[int, int | None], ...]
    objective_sign: int
    slack_columns: tuple[int | None, ...]

    def recover(self, x: Sequence[Fraction]) -> list[Fraction]:
        out = []
        for plus, minus in self.columns:
            v = x[plus]
            if minus is not None:
                v -= x[minus]
            out.append(v)
        return out

    def objective(self, value: Fraction) -> Fraction:
        return self.objective_sign * value


def to_standard_form(glp: GenericLP) -> tuple[RationalLP, VariableMap]:
    """Rewrite with split free variables, slack columns and a minimization."""
    n0 = glp.num_vars
    columns = []
    k = 0
    for j in range(n0):
        if j in glp.free:
            columns.append((k, k + 1))
            k += 2
        else:
            columns.append((k, None))
            k += 1
    slack_cols: list[int | None] = []
    for _, op, _ in glp.constraints:
        if op == "=":
            slack_cols.append(None)
        else:
            slack_cols.append(k)
            k += 1
    width = k
    sign = 1 if glp.sense == "min" else -1
    if glp.sense not in ("min", "max"):
        raise ValueError(f"unknown objective sense {glp.sense!r}")

    c = [_ZERO] * width
    for j, cj in enumerate(glp.objective):
        cj = as_fraction(cj) * sign
        plus, minus = columns[j]
        c[plus] = cj
        if minus is not None:
            c[minus] = -cj
    A = []
    a = []
    for r, (coeffs, op, rhs) in enumerate(glp.constraints):
        if len(coeffs) != n0:
            raise DimensionMismatch(f"constraint {r} has {len(coeffs)} coefficients, expected {n0}")
        row = [_ZERO] * width
        for j, v in enumerate(coeffs):
            v = as_fraction(v)
            if not v:
                continue
            plus, minus = columns[j]
            row[plus] = v
            if minus is not None:
                row[minus] = -v
        s = slack_cols[r]
        if s is not None:
            row[s] = Fraction(1) if op == "<=" else Fraction(-1)
        A.append(row)
        a.append(as_fraction(rhs))
    return RationalLP.build(A, a, c), VariableMap(tuple(columns), sign, tuple(slack_cols))


@dataclass
class GenericOutcome:
    status: str
    x: list[Fraction] | None
    value: Fraction | None
    standard: LPOutcome
    program: RationalLP
    varmap: VariableMap


def solve_generic(glp: GenericLP) -> GenericOutcome:
    lp, vm = to_standard_form(glp)
    out = solve(lp)
    if out.status == OPTIMAL:
        return GenericOutcome(OPTIMAL, vm.recover(out.x), vm.objective(out.value), out, lp, vm)
    return GenericOutcome(out.status, None, None, out, lp, vm)
