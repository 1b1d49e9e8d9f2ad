"""Exact rational linear programming: primal simplex, two-phase, Bland's
rule, with a dual certificate extracted from the final tableau.

Problems are minimize c·x subject to A x >= b, x >= 0, all data rational.
Pivoting uses gmpy2.mpq when available (same arithmetic, ~10x faster) and
falls back to fractions.Fraction; every public field is a Fraction either
way.  Numerator/denominator growth is unbounded by design; a bit-length
alarm warns past LP_BIT_ALARM bits rather than failing.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .config import LP_BIT_ALARM

try:
    from gmpy2 import mpq as _mpq

    _HAS_GMPY2 = True
except ImportError:  # pragma: no cover - exercised on gmpy2-free installs
    _mpq = Fraction
    _HAS_GMPY2 = False

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class BitGrowthWarning(UserWarning):
    """Tableau rationals exceeded the configured bit-length alarm."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x.numerator, x.denominator) if hasattr(x, "numerator") \
        else Fraction(x)


@dataclass(frozen=True)
class LPProblem:
    """minimize objective·x  s.t.  A x >= b,  x >= 0."""

    objective: tuple
    A: tuple
    b: tuple

    def __post_init__(self):
        obj = tuple(_frac(v) for v in self.objective)
        rows = tuple(tuple(_frac(v) for v in row) for row in self.A)
        rhs = tuple(_frac(v) for v in self.b)
        if len(rows) != len(rhs):
            raise ValueError("constraint/rhs count mismatch")
        for row in rows:
            if len(row) != len(obj):
                raise ValueError("constraint width does not match objective")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", rhs)

    @property
    def n_vars(self):
        return len(self.objective)

    @property
    def n_constraints(self):
        return len(self.A)


@dataclass(frozen=True)
class LPSolution:
    status: str
    optimum: Fraction | None = None
    witness: tuple | None = None
    dual: tuple | None = None
    iterations: int = 0


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    reason: str | None = None
    index: int | None = None

    def __bool__(self):
        return self.ok


def _bits(q):
    return int(q.numerator).bit_length() + int(q.denominator).bit_length()


class _Tableau:
    """Dense simplex tableau over exact rationals.

    Columns: n structural, then m surplus, then any artificials.  Rows with
    negative rhs are negated so every surplus that enters with +1 can start
    the basis; remaining rows get artificials.
    """

    def __init__(self, problem):
        R = _mpq
        self.R = R
        zero = R(0)
        self.zero = zero
        self.one = R(1)
        n, m = problem.n_vars, problem.n_constraints
        self.n, self.m = n, m
        self.c = [R(v.numerator, v.denominator) if _HAS_GMPY2 else v
                  for v in problem.objective]
        rows = []
        rhs = []
        self.sigma = []
        for i in range(m):
            r = [R(v.numerator, v.denominator) if _HAS_GMPY2 else v
                 for v in problem.A[i]]
            bv = problem.b[i]
            bv = R(bv.numerator, bv.denominator) if _HAS_GMPY2 else bv
            if bv < 0:
                r = [-v for v in r]
                bv = -bv
                self.sigma.append(-1)
            else:
                self.sigma.append(1)
            rows.append(r)
            rhs.append(bv)
        # surplus block: coefficient -sigma_i in row i at column n+i
        self.n_total = n + m
        self.art_cols = []
        basis = []
        for i in range(m):
            row = rows[i]
            row.extend(zero for _ in range(m))
            row[n + i] = -self.R(self.sigma[i])
            if self.sigma[i] == -1:
                basis.append(n + i)  # surplus enters with +1
            else:
                basis.append(-1)  # placeholder for artificial
        for i in range(m):
            if basis[i] == -1:
                col = self.n_total + len(self.art_cols)
                self.art_cols.append(col)
                for k in range(m):
                    rows[k].append(self.one if k == i else zero)
                basis[i] = col
        self.width = self.n_total + len(self.art_cols)
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.live_rows = list(range(m))  # original row index per tableau row
        self.iterations = 0
        self._warned = False

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, pr, pc):
        rows, rhs, obj = self.rows, self.rhs, self.obj
        piv = rows[pr][pc]
        inv = self.one / piv
        rows[pr] = [v * inv for v in rows[pr]]
        rhs[pr] = rhs[pr] * inv
        prow = rows[pr]
        prhs = rhs[pr]
        for i in range(len(rows)):
            if i == pr:
                continue
            f = rows[i][pc]
            if f != self.zero:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
                rhs[i] = rhs[i] - f * prhs
        f = obj[pc]
        if f != self.zero:
            self.obj = [a - f * b for a, b in zip(obj, prow)]
            self.obj_val = self.obj_val - f * prhs
        self.basis[pr] = pc
        self.iterations += 1
        if not self._warned and self.iterations % 8 == 0:
            worst = max(
                (_bits(v) for row in rows for v in row), default=0
            )
            if worst > LP_BIT_ALARM:
                warnings.warn(
                    f"tableau entries exceed {LP_BIT_ALARM} bits",
                    BitGrowthWarning,
                    stacklevel=4,
                )
                self._warned = True

    def _set_objective(self, costs, barred):
        """Load an objective and reduce it against the current basis."""
        obj = list(costs) + [self.zero] * (self.width - len(costs))
        self.obj = obj
        self.obj_val = self.zero
        for i, bcol in enumerate(self.basis):
            f = self.obj[bcol]
            if f != self.zero:
                row = self.rows[i]
                self.obj = [a - f * b for a, b in zip(self.obj, row)]
                self.obj_val = self.obj_val - f * self.rhs[i]
        self.barred = barred

    def _iterate(self):
        """Bland's rule to optimality; returns False on unboundedness."""
        while True:
            enter = -1
            for j in range(self.width):
                if j in self.barred:
                    continue
                if self.obj[j] < self.zero:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > self.zero:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return False
            self._pivot(leave, enter)


def solve(problem):
    """Two-phase exact simplex; never raises for infeasible/unbounded."""
    t = _Tableau(problem)
    zero, one = t.zero, t.one

    if t.art_cols:
        phase1 = [zero] * t.n_total + [one] * len(t.art_cols)
        t._set_objective(phase1, barred=frozenset())
        t._iterate()  # phase-1 objective is bounded below by 0
        if -t.obj_val > zero:  # obj_val tracks -(current objective)
            return LPSolution(INFEASIBLE, iterations=t.iterations)
        # drive artificials out of the basis / drop redundant rows
        art = set(t.art_cols)
        for i in list(range(len(t.rows)))[::-1]:
            if t.basis[i] in art:
                pc = next(
                    (j for j in range(t.n_total) if t.rows[i][j] != zero),
                    -1,
                )
                if pc >= 0:
                    t._pivot(i, pc)
                else:
                    del t.rows[i], t.rhs[i], t.basis[i], t.live_rows[i]

    t._set_objective(list(t.c), barred=frozenset(t.art_cols))
    bounded = t._iterate()
    if not bounded:
        return LPSolution(UNBOUNDED, iterations=t.iterations)

    x = [zero] * t.n
    for i, bcol in enumerate(t.basis):
        if bcol < t.n:
            x[bcol] = t.rhs[i]
    opt = sum((ci * xi for ci, xi in zip(t.c, x)), zero)
    # dual value for original row i = reduced cost of its surplus column
    y = [t.obj[t.n + i] for i in range(t.m)]
    return LPSolution(
        OPTIMAL,
        optimum=_frac(opt),
        witness=tuple(_frac(v) for v in x),
        dual=tuple(_frac(v) for v in y),
        iterations=t.iterations,
    )


def verify_certificate(problem, solution):
    """Re-derive optimality from the solution alone: primal feasibility,
    dual feasibility, exact objective equality, complementary slackness.
    Independent of the solver path."""
    if solution.status != OPTIMAL:
        return CertificateReport(False, "status not optimal")
    x = solution.witness
    y = solution.dual
    if x is None or len(x) != problem.n_vars:
        return CertificateReport(False, "witness missing or wrong length")
    if y is None or len(y) != problem.n_constraints:
        return CertificateReport(False, "dual missing or wrong length")
    for j, v in enumerate(x):
        if v < 0:
            return CertificateReport(False, "negative witness coordinate", j)
    slacks = []
    for i, row in enumerate(problem.A):
        lhs = sum((a * v for a, v in zip(row, x)), Fraction(0))
        if lhs < problem.b[i]:
            return CertificateReport(False, "primal constraint violated", i)
        slacks.append(lhs - problem.b[i])
    reduced = []
    for j in range(problem.n_vars):
        if y is not None:
            col = sum(
                (problem.A[i][j] * y[i] for i in range(problem.n_constraints)),
                Fraction(0),
            )
            r = problem.objective[j] - col
            if r < 0:
                return CertificateReport(False, "dual constraint violated", j)
            reduced.append(r)
    for i, v in enumerate(y):
        if v < 0:
            return CertificateReport(False, "negative dual coordinate", i)
    primal_obj = sum(
        (c * v for c, v in zip(problem.objective, x)), Fraction(0)
    )
    dual_obj = sum((problem.b[i] * y[i] for i in range(len(y))), Fraction(0))
    if primal_obj != solution.optimum:
        return CertificateReport(False, "objective mismatch with witness")
    if dual_obj != primal_obj:
        return CertificateReport(False, "duality gap nonzero")
    for i, s in enumerate(slacks):
        if y[i] * s != 0:
            return CertificateReport(False, "complementary slackness (row)", i)
    for j, r in enumerate(reduced):
        if r * x[j] != 0:
            return CertificateReport(False, "complementary slackness (col)", j)
    return CertificateReport(True)
