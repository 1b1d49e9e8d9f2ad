r"""Left-invariant measure machinery on finite fan loops, exact throughout.

The chain: covering numbers (f:φ) realized as rational LPs, the ratio
functional J_{φ,f₀}(f) = (f:φ)/(f₀:φ), its directed limit as supports of φ
shrink to {e} (on a discrete loop the tail is constant, so the limit is the
point-mass value), the induced invariant functional/measure, and the
uniqueness constant between two references.

Point-mass covering numbers have a closed form with a hand-checkable LP
certificate: the constraint at x is served only by the variable at b = e/x,
forcing c_{e/x} = f(x); the all-ones dual matches.  HaarFunctional uses
this certified path per evaluation and cross-checks it against the simplex
once at construction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

import numpy as np

from . import core, lp
from .config import DEFAULT_SEED
from .errors import (
    FanLoopCheckFailed,
    LoopMismatch,
    NotFanLoop,
    ReferenceNotInUpsilon,
    ZeroComparisonFunction,
    ZeroReference,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class LoopFunction:
    """A nonnegative rational-valued function on a finite loop."""

    loop: core.FiniteLoop = field(compare=False)
    values: tuple = ()

    def __post_init__(self):
        vals = tuple(_frac(v) for v in self.values)
        if len(vals) != self.loop.order:
            raise ValueError("value vector length != loop order")
        for i, v in enumerate(vals):
            if v < 0:
                raise ValueError(f"negative value at {self.loop.label(i)}")
        object.__setattr__(self, "values", vals)

    def __call__(self, x):
        return self.values[x]

    def __eq__(self, other):
        return (
            isinstance(other, LoopFunction)
            and (self.loop is other.loop or self.loop.equals(other.loop))
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def support(self):
        return frozenset(i for i, v in enumerate(self.values) if v != 0)

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def total(self):
        return sum(self.values, _F0)

    def sup_norm(self):
        return max(self.values, default=_F0)

    def scale(self, alpha):
        alpha = _frac(alpha)
        return LoopFunction(self.loop, tuple(alpha * v for v in self.values))

    def __add__(self, other):
        _same_loop(self, other)
        return LoopFunction(
            self.loop,
            tuple(a + b for a, b in zip(self.values, other.values)),
        )


def _same_loop(f, g):
    if f.loop is not g.loop and not f.loop.equals(g.loop):
        raise LoopMismatch("functions live on different loops")


def constant(G, value=1):
    return LoopFunction(G, (_frac(value),) * G.order)


def delta(G, x=0):
    """Point mass at element index (or label) x."""
    if isinstance(x, str):
        x = G.index(x)
    vals = [_F0] * G.order
    vals[x] = _F1
    return LoopFunction(G, vals)


def char(G, members):
    """Indicator function of a set of indices/labels."""
    vals = [_F0] * G.order
    for x in members:
        vals[G.index(x) if isinstance(x, str) else int(x)] = _F1
    return LoopFunction(G, vals)


def random_function(G, rng=None, zero_chance=0.25, max_num=6, max_den=8):
    """Seeded random LoopFunction with small nonnegative rationals
    (denominators ≤ 8), never identically zero."""
    rng = rng if rng is not None else Random(DEFAULT_SEED)
    while True:
        vals = []
        for _ in range(G.order):
            if rng.random() < zero_chance:
                vals.append(_F0)
            else:
                vals.append(
                    Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
                )
        f = LoopFunction(G, vals)
        if not f.is_zero():
            return f


# ---------------------------------------------------------------------------
# covering numbers
# ---------------------------------------------------------------------------

def covering_problem(f, phi):
    """The LP behind (f:φ): minimize Σ_b c_b s.t. Σ_b c_b·φ(bx) ≥ f(x),
    c ≥ 0, with all n translate variables."""
    _same_loop(f, phi)
    G = f.loop
    n = G.order
    tbl = G.table
    A = tuple(
        tuple(phi.values[int(tbl[b, x])] for b in range(n)) for x in range(n)
    )
    return lp.LPProblem((_F1,) * n, A, f.values)


def covering_number(f, phi):
    """(f:φ), exact, via the full LP over all n translates.

    Asserts the analog of the classical covering bound: with q a point of
    maximal φ and m = |S_f|, the optimum is at most 2m·‖f‖/φ(q).
    """
    _same_loop(f, phi)
    if phi.is_zero():
        raise ZeroComparisonFunction()
    problem = covering_problem(f, phi)
    sol = lp.solve(problem)
    if sol.status != lp.OPTIMAL:  # pragma: no cover - impossible on loops
        raise FanLoopCheckFailed("covering-lp-" + sol.status, (f.values,))
    cert = lp.verify_certificate(problem, sol)
    if not cert.ok:  # pragma: no cover - solver bug surface
        raise FanLoopCheckFailed("covering-lp-certificate", (cert.reason,))
    q = max(range(f.loop.order), key=lambda i: phi.values[i])
    m = len(f.support())
    bound = Fraction(2 * m) * f.sup_norm() / phi.values[q]
    if sol.optimum > bound:  # pragma: no cover - theorem-backed
        raise FanLoopCheckFailed("covering-bound", (sol.optimum, bound))
    return sol.optimum


def translate(f, b, mode="left"):
    r"""Translate a function: left _bf(x)=f(bx); right f_b(x)=f(xb);
    left-div f^b(x)=f(b\x)."""
    G = f.loop
    if isinstance(b, str):
        b = G.index(b)
    n = G.order
    if mode == "left":
        idx = G.table[b, :]
    elif mode == "right":
        idx = G.table[:, b]
    elif mode == "left-div":
        idx = G.ldiv[b, :]
    else:
        raise ValueError(f"unknown translate mode {mode!r}")
    return LoopFunction(G, tuple(f.values[int(idx[x])] for x in range(n)))


def fan_average(f, n0):
    """f^[λ](x) = (1/|N₀|)·Σ_{γ∈N₀} f(γx), λ the uniform weight on N₀."""
    G = f.loop
    core.require_subgroup(G, n0)
    gammas = sorted(n0.members)
    w = Fraction(1, len(gammas))
    tbl = G.table
    vals = [
        w * sum((f.values[int(tbl[g, x])] for g in gammas), _F0)
        for x in range(G.order)
    ]
    return LoopFunction(G, vals)


def upsilon_member(f, n0):
    r"""Is f in Υ(G,N₀): nonzero and constant on N₀-orbits?

    Both the left form f(γa) = f(a) and the right form f(aγ) = f(a) are
    evaluated; they must agree (they do whenever N₀ is normal, in
    particular for the fan), and a disagreement is surfaced as a check
    failure rather than silently picking a side.
    """
    G = f.loop
    core.require_subgroup(G, n0)
    if f.is_zero():
        return False
    tbl = G.table
    left = all(
        f.values[int(tbl[g, x])] == f.values[x]
        for g in n0.members
        for x in range(G.order)
    )
    right = all(
        f.values[int(tbl[x, g])] == f.values[x]
        for g in n0.members
        for x in range(G.order)
    )
    if left != right:
        raise FanLoopCheckFailed(
            "upsilon-left-right-mismatch", (sorted(n0.members),)
        )
    return left


def ratio_functional(f, f0, phi):
    """J_{φ,f₀}(f) = (f:φ)/(f₀:φ), exact."""
    if phi.is_zero():
        raise ZeroComparisonFunction()
    if f0.is_zero():
        raise ZeroReference()
    return covering_number(f, phi) / covering_number(f0, phi)


# ---------------------------------------------------------------------------
# the directed limit and the invariant functional
# ---------------------------------------------------------------------------

class HaarFunctional:
    """J_{f₀}: the value of the directed limit of J_{φ_W,f₀} as supp φ_W
    shrinks to {e}.  On a discrete loop the net's tail — every φ supported
    inside {e} — gives one constant value, which this object evaluates via
    the certified point-mass path."""

    def __init__(self, G, f0=None):
        ana = G.analysis
        if not ana.is_fan_loop:
            raise NotFanLoop(ana.fan_witness)
        self.loop = G
        self.fan = ana.fan
        self.reference = f0 if f0 is not None else constant(G, 1)
        _same_loop(self.reference, delta(G))
        if not upsilon_member(self.reference, self.fan):
            raise ReferenceNotInUpsilon(
                "f0 must be nonzero and constant on fan orbits"
            )
        # b -> b\e is a bijection in any loop; e/(b\e) = b gives its inverse
        self._inv_l = tuple(int(G.ldiv[b, 0]) for b in range(G.order))
        self._ref_total = self.reference.total()
        self._cross_check()

    # -- certified point-mass covering -----------------------------------

    def _covering_delta(self, f):
        """(f:δ_e) = Σf with a structural certificate: c_b = f(b\\e) is
        feasible and tight, the all-ones dual is feasible, objectives agree."""
        total = _F0
        seen = bytearray(self.loop.order)
        for b, x in enumerate(self._inv_l):
            v = f.values[x]
            if v < 0:  # pragma: no cover - LoopFunction forbids this
                raise FanLoopCheckFailed("negative covering weight", (b,))
            seen[x] = 1
            total += v
        if not all(seen):  # pragma: no cover - loop axioms forbid this
            raise FanLoopCheckFailed("inv_l not a bijection", ())
        return total

    def _cross_check(self):
        """Run the real simplex on (f₀:δ_e) and a probe, once, and compare
        with the closed form; also verify point-mass height invariance."""
        G = self.loop
        de = delta(G)
        for probe in (self.reference, de):
            direct = covering_number(probe, de)
            if direct != self._covering_delta(probe):
                raise FanLoopCheckFailed(
                    "point-mass covering mismatch", (probe.values,)
                )
        # stabilization: J_{φ,f0} identical for point masses of any height
        probes = (self.reference, de)
        base = [self(p) for p in probes]
        for height in (_F1, Fraction(1, 2), Fraction(3, 1)):
            phi = de.scale(height)
            got = [ratio_functional(p, self.reference, phi) for p in probes]
            if got != base:
                raise FanLoopCheckFailed(
                    "point-mass height variance", (height,)
                )

    # -- public surface ---------------------------------------------------

    def __call__(self, f):
        _same_loop(f, self.reference)
        return self._covering_delta(f) / self._ref_total

    def relative(self, g):
        """J_g with J_g(f) = J_{f₀}(f)/J_{f₀}(g) — independent of f₀."""
        jg = self(g)
        if jg == 0:
            raise ZeroReference()
        return lambda f: self(f) / jg

    def signed(self, values):
        """Finite signed split J(f⁺) − J(f⁻) for a possibly-negative
        rational value vector."""
        vals = [_frac(v) for v in values]
        plus = LoopFunction(self.loop, [max(v, _F0) for v in vals])
        minus = LoopFunction(self.loop, [max(-v, _F0) for v in vals])
        return self(plus) - self(minus)


def haar_limit(G, f0=None):
    """The invariant functional J_{f₀} (see HaarFunctional)."""
    return HaarFunctional(G, f0)


@dataclass(frozen=True)
class InvariantMeasure:
    loop: core.FiniteLoop = field(compare=False)
    weights: tuple = ()
    total: Fraction = _F0
    notes: tuple = ()

    def mass(self, members):
        out = _F0
        for x in members:
            out += self.weights[
                self.loop.index(x) if isinstance(x, str) else int(x)
            ]
        return out


def invariant_measure(G):
    """μ with μ({x}) = J(χ_x)/J(χ_e): on a finite fan loop every weight is
    1 and the total is the order.  Translation invariance on singletons is
    re-verified exhaustively before returning."""
    J = haar_limit(G)
    je = J(delta(G, 0))
    weights = tuple(J(delta(G, x)) / je for x in range(G.order))
    for w in weights:
        if w <= 0:
            raise FanLoopCheckFailed("measure-positivity", (w,))
    tbl = G.table
    for b in range(G.order):
        for x in range(G.order):
            if weights[int(tbl[b, x])] != weights[x]:
                raise FanLoopCheckFailed(
                    "measure-translation-invariance", (b, x)
                )
    total = sum(weights, _F0)
    notes = (
        "mu(G) is finite and G is compact (finite discrete): "
        "finiteness <-> compactness holds trivially",
    )
    return InvariantMeasure(G, weights, total, notes)


def verify_uniqueness(G, f0, g0, trials=20, rng=None):
    """Uniqueness constant: H = J_{g₀} satisfies H(f) = κ·J_{f₀}(f) with
    κ = (Σf₀)/(Σg₀).  Verified exactly on every singleton indicator and on
    seeded random functions before κ is returned."""
    J = haar_limit(G, f0)
    H = haar_limit(G, g0)
    kappa = f0.total() / g0.total()
    for x in range(G.order):
        d = delta(G, x)
        if H(d) != kappa * J(d):
            raise FanLoopCheckFailed("uniqueness-singleton", (G.label(x),))
    rng = rng if rng is not None else Random(DEFAULT_SEED)
    for _ in range(trials):
        f = random_function(G, rng)
        if H(f) != kappa * J(f):
            raise FanLoopCheckFailed("uniqueness-random", (f.values,))
    return kappa
