r"""Registry of fan-loop identities with exhaustive vectorized verification.

Every law is a pair of expression trees over the loop signature
(·, \, /, e, t, p, nucleus-inverse) plus a list of quantified variables,
each ranging over G, over N(G), or over Z(G).  Multi-part identities are
stored as clause lists under one stable id.  Products written without
brackets in a law text associate to the left; this is sound for every
registry entry because at most one factor lies outside the nucleus or any
consecutive outside pair is itself the intended unit, so nucleus factors
slide across the grouping.

check_law evaluates both sides on a full meshgrid of index arrays, so the
first counterexample in C order is the lexicographically smallest one.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotApplicable

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"


# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------

class Expr:
    __slots__ = ()

    def ev(self, G, env):
        raise NotImplementedError


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def ev(self, G, env):
        return env[self.name]

    def __repr__(self):
        return self.name


class E(Expr):
    __slots__ = ()

    def ev(self, G, env):
        return np.intp(0)

    def __repr__(self):
        return "e"


class Mul(Expr):
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = x, y

    def ev(self, G, env):
        return G.table[self.x.ev(G, env), self.y.ev(G, env)]

    def __repr__(self):
        return f"({self.x!r}·{self.y!r})"


class LDiv(Expr):
    r"""x \ y."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = x, y

    def ev(self, G, env):
        return G.ldiv[self.x.ev(G, env), self.y.ev(G, env)]

    def __repr__(self):
        return f"({self.x!r}\\{self.y!r})"


class RDiv(Expr):
    """x / y."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = x, y

    def ev(self, G, env):
        return G.rdiv[self.x.ev(G, env), self.y.ev(G, env)]

    def __repr__(self):
        return f"({self.x!r}/{self.y!r})"


class TAssoc(Expr):
    """t(x,y,z) = ((xy)z)/(x(yz))."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z

    def ev(self, G, env):
        a = self.x.ev(G, env)
        b = self.y.ev(G, env)
        c = self.z.ev(G, env)
        return G.rdiv[G.table[G.table[a, b], c], G.table[a, G.table[b, c]]]

    def __repr__(self):
        return f"t({self.x!r},{self.y!r},{self.z!r})"


class PAssoc(Expr):
    r"""p(x,y,z) = (x(yz)) \ ((xy)z)."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z

    def ev(self, G, env):
        a = self.x.ev(G, env)
        b = self.y.ev(G, env)
        c = self.z.ev(G, env)
        return G.ldiv[G.table[a, G.table[b, c]], G.table[G.table[a, b], c]]

    def __repr__(self):
        return f"p({self.x!r},{self.y!r},{self.z!r})"


class NInv(Expr):
    r"""x^-1 = x\e, used only where x is guaranteed to lie in the nucleus."""

    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def ev(self, G, env):
        return G.ldiv[self.x.ev(G, env), np.intp(0)]

    def __repr__(self):
        return f"{self.x!r}^-1"


def mul(*factors):
    """Left-associated product of two or more expressions."""
    out = factors[0]
    for f in factors[1:]:
        out = Mul(out, f)
    return out


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Law:
    """One registry identity.

    vars: tuple of (name, domain) with domain in {"G", "N", "Z"}.
    clauses: tuple of (lhs, rhs) pairs; rhs None means a membership clause
    (the value must land in N(G)).
    scope: "fan" = fan loops only, "all" = every loop.
    """

    id: str
    text: str
    vars: tuple
    clauses: tuple
    scope: str = "fan"

    @property
    def arity(self):
        return len(self.vars)


@dataclass(frozen=True)
class LawReport:
    law_id: str
    status: str
    witness: dict | None = None
    tuples_checked: int = 0
    clause: int | None = None

    def __bool__(self):
        return self.status == HOLDS


def _v(*names):
    return tuple(Var(n) for n in names)


def _build_registry():
    a, b, c, x, q = _v("a", "b", "c", "x", "q")
    a1, a2, a3 = _v("a1", "a2", "a3")
    z1, z2, z3 = _v("z1", "z2", "z3")
    e = E()
    ile = lambda w: LDiv(w, e)   # w \ e
    ire = lambda w: RDiv(e, w)   # e / w

    laws = []

    def law(id_, text, vars_, clauses, scope="fan"):
        laws.append(Law(id_, text, tuple(vars_), tuple(clauses), scope))

    # ---- 2.2 family (fan loops) ----
    law("2.2.1", r"b\e = t(e/b,b,b\e)(e/b)", [("b", "G")],
        [(ile(b), Mul(TAssoc(ire(b), b, ile(b)), ire(b)))])
    law("2.2.1'", r"b\e = (e/b)p(e/b,b,b\e)", [("b", "G")],
        [(ile(b), Mul(ire(b), PAssoc(ire(b), b, ile(b))))])
    law("2.2.2", r"(a\e)b = t(e/a,a,a\e)[t(e/a,a,a\b)]^-1(a\b)",
        [("a", "G"), ("b", "G")],
        [(Mul(ile(a), b),
          mul(TAssoc(ire(a), a, ile(a)),
              NInv(TAssoc(ire(a), a, LDiv(a, b))),
              LDiv(a, b)))])
    law("2.2.2b", r"a\b = (a\e)b·p(a,a\e,b)", [("a", "G"), ("b", "G")],
        [(LDiv(a, b), mul(ile(a), b, PAssoc(a, ile(a), b)))])
    law("2.2.2'", r"(bc)\a = (c\(b\a))[p(b,c,(bc)\a)]^-1",
        [("a", "G"), ("b", "G"), ("c", "G")],
        [(LDiv(Mul(b, c), a),
          Mul(LDiv(c, LDiv(b, a)), NInv(PAssoc(b, c, LDiv(Mul(b, c), a)))))])
    law("2.2.2''", r"(a\b)c = (a\(bc))[p(a,a\b,c)]^-1",
        [("a", "G"), ("b", "G"), ("c", "G")],
        [(Mul(LDiv(a, b), c),
          Mul(LDiv(a, Mul(b, c)), NInv(PAssoc(a, LDiv(a, b), c))))])
    law("2.2.2'''",
        r"(ab)\e = (b\e)(a\e)[t(a,b,b\e)]^-1·t(ab,b\e,a\e)",
        [("a", "G"), ("b", "G")],
        [(ile(Mul(a, b)),
          mul(ile(b), ile(a), NInv(TAssoc(a, b, ile(b))),
              TAssoc(Mul(a, b), ile(b), ile(a))))])
    law("2.2.3", r"b(e/a) = (b/a)p(b/a,a,a\e)[p(e/a,a,a\e)]^-1",
        [("a", "G"), ("b", "G")],
        [(Mul(b, ire(a)),
          mul(RDiv(b, a), PAssoc(RDiv(b, a), a, ile(a)),
              NInv(PAssoc(ire(a), a, ile(a)))))])
    law("2.2.3b", r"b/a = [t(b,e/a,a)]^-1·b(e/a)", [("a", "G"), ("b", "G")],
        [(RDiv(b, a), mul(NInv(TAssoc(b, ire(a), a)), b, ire(a)))])
    law("2.2.3'", r"a/(bc) = t(a/(bc),b,c)((a/c)/b)",
        [("a", "G"), ("b", "G"), ("c", "G")],
        [(RDiv(a, Mul(b, c)),
          Mul(TAssoc(RDiv(a, Mul(b, c)), b, c), RDiv(RDiv(a, c), b)))])
    law("2.2.3''", r"c(b/a) = t(c,b/a,a)·(cb)/a",
        [("a", "G"), ("b", "G"), ("c", "G")],
        [(Mul(c, RDiv(b, a)),
          Mul(TAssoc(c, RDiv(b, a), a), RDiv(Mul(c, b), a)))])
    law("2.2.3'''",
        r"e/(ab) = [p(e/b,e/a,ab)]^-1·p(e/a,a,b)(e/b)(e/a)",
        [("a", "G"), ("b", "G")],
        [(ire(Mul(a, b)),
          mul(NInv(PAssoc(ire(b), ire(a), Mul(a, b))),
              PAssoc(ire(a), a, b), ire(b), ire(a)))])

    # ---- 2.3 family (fan loops) ----
    zsub = [("z1", "Z"), ("z2", "Z"), ("z3", "Z"),
            ("a1", "G"), ("a2", "G"), ("a3", "G")]
    law("2.3.1", "t(z1·a1,z2·a2,z3·a3) = t(a1,a2,a3)", zsub,
        [(TAssoc(Mul(z1, a1), Mul(z2, a2), Mul(z3, a3)),
          TAssoc(a1, a2, a3))])
    law("2.3.1'", "p(z1·a1,z2·a2,z3·a3) = p(a1,a2,a3)", zsub,
        [(PAssoc(Mul(z1, a1), Mul(z2, a2), Mul(z3, a3)),
          PAssoc(a1, a2, a3))])
    law("2.3.2", r"t(a,a\e,a)a = ap(a,a\e,a)", [("a", "G")],
        [(Mul(TAssoc(a, ile(a), a), a), Mul(a, PAssoc(a, ile(a), a)))])
    law("2.3.2'", r"t(a,e/a,a)a = ap(a,e/a,a)", [("a", "G")],
        [(Mul(TAssoc(a, ire(a), a), a), Mul(a, PAssoc(a, ire(a), a)))])
    law("2.3.2''", r"p(a,a\e,a)t(e/a,a,a\e) = e", [("a", "G")],
        [(Mul(PAssoc(a, ile(a), a), TAssoc(ire(a), a, ile(a))), e)])
    law("2.3.3", "t(a1,a2,a3·b) = t(a1,a2,a3)",
        [("a1", "G"), ("a2", "G"), ("a3", "G"), ("b", "N")],
        [(TAssoc(a1, a2, Mul(a3, b)), TAssoc(a1, a2, a3))])
    law("2.3.3'", "p(b·a1,a2,a3) = p(a1,a2,a3)",
        [("a1", "G"), ("a2", "G"), ("a3", "G"), ("b", "N")],
        [(PAssoc(Mul(b, a1), a2, a3), PAssoc(a1, a2, a3))])
    law("2.3.4", "t(b·a1,a2,a3) = b·t(a1,a2,a3)·b^-1",
        [("a1", "G"), ("a2", "G"), ("a3", "G"), ("b", "N")],
        [(TAssoc(Mul(b, a1), a2, a3), mul(b, TAssoc(a1, a2, a3), NInv(b)))])
    law("2.3.4'", "p(a1,a2,a3·b) = b^-1·p(a1,a2,a3)·b",
        [("a1", "G"), ("a2", "G"), ("a3", "G"), ("b", "N")],
        [(PAssoc(a1, a2, Mul(a3, b)), mul(NInv(b), PAssoc(a1, a2, a3), b))])
    law("2.3.8", r"t(a,a\e,a)·a·t(e/a,a,a\e) = a", [("a", "G")],
        [(mul(TAssoc(a, ile(a), a), a, TAssoc(ire(a), a, ile(a))), a)])

    # ---- unconditional laws (any loop) ----
    law("2.2.4", r"b(b\a) = a and b\(ba) = a", [("a", "G"), ("b", "G")],
        [(Mul(b, LDiv(b, a)), a), (LDiv(b, Mul(b, a)), a)], scope="all")
    law("2.2.5", "(a/b)b = a and (ab)/b = a", [("a", "G"), ("b", "G")],
        [(Mul(RDiv(a, b), b), a), (RDiv(Mul(a, b), b), a)], scope="all")
    law("2.3.6", r"b/(qa) = q^-1(b/a); b/q = q\b = bq^-1 for q in Z",
        [("q", "Z"), ("a", "G"), ("b", "G")],
        [(RDiv(b, Mul(q, a)), Mul(NInv(q), RDiv(b, a))),
         (RDiv(b, q), LDiv(q, b)),
         (LDiv(q, b), Mul(b, NInv(q))),
         (RDiv(b, q), Mul(b, NInv(q)))], scope="all")
    law("2.6.6", "Inv_l(Inv_r(b)) = b and Inv_r(Inv_l(b)) = b", [("b", "G")],
        [(ile(ire(b)), b), (ire(ile(b)), b)], scope="all")
    law("2.8.1", r"x\(ab) = (x\a)b for a,b in N",
        [("x", "G"), ("a", "N"), ("b", "N")],
        [(LDiv(x, Mul(a, b)), Mul(LDiv(x, a), b))], scope="all")
    law("2.8.2", "(ab)/x = a(b/x) for a,b in N",
        [("x", "G"), ("a", "N"), ("b", "N")],
        [(RDiv(Mul(a, b), x), Mul(a, RDiv(b, x)))], scope="all")
    law("2.1.9-t", "t(a,b,c) in N(G)", [("a", "G"), ("b", "G"), ("c", "G")],
        [(TAssoc(a, b, c), None)], scope="all")
    law("2.1.9-p", "p(a,b,c) in N(G)", [("a", "G"), ("b", "G"), ("c", "G")],
        [(PAssoc(a, b, c), None)], scope="all")

    return tuple(laws)


REGISTRY = _build_registry()
_BY_ID = {law.id: law for law in REGISTRY}


def law_ids():
    return tuple(law.id for law in REGISTRY)


def get_law(law_id):
    try:
        return _BY_ID[law_id]
    except KeyError:
        raise KeyError(f"unknown law id {law_id!r}") from None


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------

def _domains(G, law):
    ana = G.analysis
    pools = {
        "G": np.arange(G.order, dtype=np.intp),
        "N": np.array(sorted(ana.nucleus.members), dtype=np.intp),
        "Z": np.array(sorted(ana.center.members), dtype=np.intp),
    }
    axes = []
    m = len(law.vars)
    for k, (_, dom) in enumerate(law.vars):
        vals = pools[dom]
        shape = [1] * m
        shape[k] = len(vals)
        axes.append(vals.reshape(shape))
    full_shape = tuple(int(ax.shape[k]) for k, ax in enumerate(axes))
    return axes, full_shape


def check_law(G, law):
    """Exhaustively verify one registry law on G.

    Raises NotApplicable when a fan-only law is asked of a non-fan loop;
    otherwise returns a LawReport with the lexicographically first witness
    on failure.
    """
    if isinstance(law, str):
        law = get_law(law)
    if law.scope == "fan" and not G.analysis.is_fan_loop:
        raise NotApplicable(law.id)

    axes, shape = _domains(G, law)
    env = {name: ax for (name, _), ax in zip(law.vars, axes)}
    per_clause = int(np.prod(shape)) if shape else 1
    nuc_mask = None
    checked = 0
    for ci, (lhs, rhs) in enumerate(law.clauses):
        lv = lhs.ev(G, env)
        if rhs is None:
            if nuc_mask is None:
                nuc_mask = G.analysis.nucleus.mask()
            bad = ~nuc_mask[lv]
        else:
            rv = rhs.ev(G, env)
            bad = np.broadcast_to(lv, shape) != np.broadcast_to(rv, shape)
        checked += per_clause
        if bad.ndim < len(shape) or bad.shape != shape:
            bad = np.broadcast_to(bad, shape)
        if bad.any():
            flat = int(np.argmax(bad))
            coords = np.unravel_index(flat, shape)
            witness = {
                name: G.label(int(axes[k].ravel()[coords[k]]))
                for k, (name, _) in enumerate(law.vars)
            }
            return LawReport(law.id, FAILS, witness, checked, ci)
    return LawReport(law.id, HOLDS, None, checked, None)


def check_all(G):
    """One report per registry law; fan-only laws on non-fan loops come back
    with status not-applicable rather than raising."""
    out = []
    for law in REGISTRY:
        try:
            out.append(check_law(G, law))
        except NotApplicable:
            out.append(LawReport(law.id, NOT_APPLICABLE, None, 0, None))
    return out
