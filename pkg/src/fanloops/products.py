"""Constructors for new fan loops: direct products, smashed products, and
the Cayley-Dickson basis-loop generator.

The smashed product multiplies pairs over a shared central-ish group N:

    (a1,b1)·(a2,b2) = (a1·a2, (b1·b2^a1)·xi((a1,b1),(a2,b2)))

where b^a is an action of A on B fixing the embedded N pointwise, and eta,
kappa, xi are N-valued correction factors subject to the compatibility
conditions checked by validate_smashing (ids 4.3.4 .. 4.3.8 in the law/check
naming scheme used across this package).  After construction the product is
cross-checked against closed forms for its associators, inverses and
divisions (ids 4.4.1 .. 4.4.10); a mismatch is an implementation bug and is
raised, never swallowed.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import core, quotient
from .config import CAYLEY_DICKSON_CAP, order_cap
from .errors import FanLoopCheckFailed, SizeCapExceeded, ValidationFailed

_DT = np.int16


# ---------------------------------------------------------------------------
# direct products
# ---------------------------------------------------------------------------

def _direct_product_pair(A, B, cap):
    nA, nB = A.order, B.order
    if nA * nB > cap:
        raise SizeCapExceeded(nA * nB, cap)
    table = (
        A.table[:, None, :, None].astype(np.int32) * nB
        + B.table[None, :, None, :]
    ).reshape(nA * nB, nA * nB)
    labels = [
        f"({la},{lb})" for la in A.labels for lb in B.labels
    ]
    return core.verify_loop(table, identity=0, labels=labels, cap=cap)


def _check_componentwise_sets(P, A, B):
    """N, Z and fan of A×B must be the componentwise products."""
    nB = B.order
    aA, aB, aP = A.analysis, B.analysis, P.analysis
    for name, SA, SB, SP in (
        ("nucleus", aA.nucleus, aB.nucleus, aP.nucleus),
        ("center", aA.center, aB.center, aP.center),
        ("fan", aA.fan, aB.fan, aP.fan),
    ):
        expect = {a * nB + b for a in SA.members for b in SB.members}
        if expect != SP.members:
            raise FanLoopCheckFailed(
                f"direct-product {name} not componentwise",
                (sorted(expect), sorted(SP.members)),
            )


def _check_componentwise_assoc(P, A, B):
    tP, pP = core._kernels.assoc_tensors(P.table, P.ldiv, P.rdiv)
    tA, pA = A.assoc_tensors()
    tB, pB = B.assoc_tensors()
    nA, nB = A.order, B.order
    shape = (nA, nB, nA, nB, nA, nB)
    tP6 = tP.reshape(shape)
    pP6 = pP.reshape(shape)
    expect_t = (
        tA[:, None, :, None, :, None].astype(np.int32) * nB
        + tB[None, :, None, :, None, :]
    )
    expect_p = (
        pA[:, None, :, None, :, None].astype(np.int32) * nB
        + pB[None, :, None, :, None, :]
    )
    if not np.array_equal(tP6, expect_t) or not np.array_equal(pP6, expect_p):
        bad = np.nonzero(tP6 != expect_t)
        witness = tuple(int(x[0]) for x in bad) if bad[0].size else None
        raise FanLoopCheckFailed("direct-product associators not componentwise",
                                 witness)


def direct_product(loops, cap=None, verify=True):
    """Componentwise product of a nonempty list of loops.

    With verify=True (default) the componentwise structure theorems are
    checked post-construction: N, Z, fan and both associator maps factor
    through the components.
    """
    loops = list(loops)
    if not loops:
        raise ValueError("direct_product needs at least one loop")
    cap = order_cap(cap)

    def pair(A, B):
        P = _direct_product_pair(A, B, cap)
        if verify:
            _check_componentwise_sets(P, A, B)
            _check_componentwise_assoc(P, A, B)
        return P

    return reduce(pair, loops)


# ---------------------------------------------------------------------------
# Cayley-Dickson basis loops
# ---------------------------------------------------------------------------

def _cd_mul(dim, i, j):
    """Signed product of basis elements i, j of the dimension-`dim` doubling
    algebra: returns (sign, index) with the rule
        (a,b)(c,d) = (ac - d*b, da + bc*)
    and conjugation negating every non-real basis element."""
    if dim == 1:
        return 1, 0
    h = dim // 2
    if i < h:
        if j < h:
            return _cd_mul(h, i, j)  # (ac, 0)
        s, m = _cd_mul(h, j - h, i)  # (0, da)
        return s, m + h
    if j < h:
        s, m = _cd_mul(h, i - h, j)  # (0, b c*)
        return (s if j == 0 else -s), m + h
    s, m = _cd_mul(h, j - h, i - h)  # (-d* b, 0)
    return (-s if j - h == 0 else s), m


def cayley_dickson_basis_loop(k, cap=None):
    """Basis loop {±e0, .., ±e_(2^k-1)} of the k-fold doubling algebra.

    k=1 gives the complex units (C4), k=2 the quaternion units (Q8), k=3 the
    octonion basis loop: order 16, nonassociative, central fan loop with
    fan {1,-1}.
    """
    if not 1 <= k <= CAYLEY_DICKSON_CAP:
        raise SizeCapExceeded(2 ** (k + 1), 2 ** (CAYLEY_DICKSON_CAP + 1))
    dim = 2 ** k
    n = 2 * dim
    if n > order_cap(cap):
        raise SizeCapExceeded(n, order_cap(cap))
    # element (sign s, basis i) packed as 2*i + (0 if s>0 else 1)
    table = np.empty((n, n), dtype=_DT)
    for i in range(dim):
        for j in range(dim):
            s, m = _cd_mul(dim, i, j)
            for si in (0, 1):
                for sj in (0, 1):
                    sign = s * (-1 if si else 1) * (-1 if sj else 1)
                    table[2 * i + si, 2 * j + sj] = 2 * m + (0 if sign > 0 else 1)
    labels = []
    for i in range(dim):
        base = "1" if i == 0 else f"e{i}"
        labels.append(base)
        labels.append(f"-{base}" if i else "-1")
    return core.verify_loop(table, identity=0, labels=labels, cap=cap)


# ---------------------------------------------------------------------------
# smashed products
# ---------------------------------------------------------------------------

@dataclass
class SmashingData:
    """A smashing system (A, B, N, phi, eta, kappa, xi), tables by index.

    n_labels: abstract labels for the group N.
    into_a / into_b: embeddings of N into A / B (index arrays).
    phi[u, b] = b^u (action of A on B).
    eta[v, u, b], kappa[u, c, b] and xi[u, c, v, b] take values in N
    (abstract N indices); xi[u, c, v, b] encodes xi((u,c),(v,b)).
    """

    A: core.FiniteLoop
    B: core.FiniteLoop
    n_labels: tuple
    into_a: np.ndarray
    into_b: np.ndarray
    phi: np.ndarray
    eta: np.ndarray
    kappa: np.ndarray
    xi: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.n_labels = tuple(self.n_labels)
        self.into_a = np.asarray(self.into_a, dtype=np.intp)
        self.into_b = np.asarray(self.into_b, dtype=np.intp)
        self.phi = np.asarray(self.phi, dtype=_DT)
        self.eta = np.asarray(self.eta, dtype=_DT)
        self.kappa = np.asarray(self.kappa, dtype=_DT)
        self.xi = np.asarray(self.xi, dtype=_DT)

    @property
    def n_size(self):
        return len(self.n_labels)

    def n_table(self):
        """Group table of N induced through the A-embedding."""
        ia = self.into_a
        back = {int(a): g for g, a in enumerate(ia)}
        tbl = np.empty((self.n_size, self.n_size), dtype=_DT)
        for g1 in range(self.n_size):
            for g2 in range(self.n_size):
                tbl[g1, g2] = back[int(self.A.table[ia[g1], ia[g2]])]
        return tbl


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    condition: str | None = None
    witness: tuple | None = None
    checked: tuple = ()

    def __bool__(self):
        return self.ok


def _fail(condition, witness, checked):
    return ValidationReport(False, condition, tuple(witness), tuple(checked))


def validate_smashing(data):
    """Exhaustively verify every defining condition of a smashing system.

    Returns a ValidationReport naming the first violated condition and a
    witness tuple; never raises for data failures.
    """
    A, B = data.A, data.B
    TA, TB = A.table, B.table
    nA, nB, nN = A.order, B.order, data.n_size
    checked = []

    def run(cond, fn):
        checked.append(cond)
        return fn()

    # --- structure: embeddings are injective homomorphisms onto subgroups
    if (
        len(data.into_a) != nN
        or len(data.into_b) != nN
        or len(set(int(x) for x in data.into_a)) != nN
        or len(set(int(x) for x in data.into_b)) != nN
    ):
        return _fail("structure", ("embedding not injective",), checked)
    if int(data.into_a[0]) != 0 or int(data.into_b[0]) != 0:
        return _fail("structure", ("N identity must embed to e",), checked)
    img_a = A.subset(int(x) for x in data.into_a)
    img_b = B.subset(int(x) for x in data.into_b)
    checked.append("structure")
    if not img_a.is_subloop() or not img_b.is_subloop():
        return _fail("structure", ("embedded image not closed",), checked)
    # the two embeddings must induce the same group structure on N
    back_a = {int(a): g for g, a in enumerate(data.into_a)}
    for g1 in range(nN):
        for g2 in range(nN):
            prod_in_a = back_a[int(TA[data.into_a[g1], data.into_a[g2]])]
            if int(TB[data.into_b[g1], data.into_b[g2]]) != int(
                data.into_b[prod_in_a]
            ):
                return _fail("structure", ("embeddings not isomorphic", g1, g2),
                             checked)

    if data.phi.shape != (nA, nB):
        return _fail("structure", ("phi shape", data.phi.shape), checked)
    if data.eta.shape != (nA, nA, nB):
        return _fail("structure", ("eta shape", data.eta.shape), checked)
    if data.kappa.shape != (nA, nB, nB):
        return _fail("structure", ("kappa shape", data.kappa.shape), checked)
    if data.xi.shape != (nA, nB, nA, nB):
        return _fail("structure", ("xi shape", data.xi.shape), checked)
    for name, arr in (("eta", data.eta), ("kappa", data.kappa), ("xi", data.xi)):
        if arr.size and (arr.min() < 0 or arr.max() >= nN):
            return _fail("structure", (f"{name} value outside N",), checked)
    # phi rows are permutations of B
    checked.append("phi-bijective")
    for u in range(nA):
        if len(set(int(x) for x in data.phi[u])) != nB:
            return _fail("phi-bijective", (u,), checked)

    # --- 4.3.1 containment chain: fan(A) ⊆ iota_A(N) ⊆ N(A), same for B
    checked.append("4.3.1")
    for (loop, img, side) in ((A, img_a, "A"), (B, img_b, "B")):
        an = loop.analysis
        if not an.fan.members <= img.members:
            bad = sorted(an.fan.members - img.members)[0]
            return _fail("4.3.1", (side, "fan not inside N image", bad), checked)
        if not img.members <= an.nucleus.members:
            bad = sorted(img.members - an.nucleus.members)[0]
            return _fail("4.3.1", (side, "N image not inside nucleus", bad),
                         checked)
    for (loop, img, side) in ((A, img_a, "A"), (B, img_b, "B")):
        cond = f"4.3.1-normal-{side}"
        checked.append(cond)
        rep = quotient.is_normal_subloop(loop, img)
        if not rep.ok:
            return _fail(cond, (rep.condition,) + tuple(rep.witness or ()),
                         checked)

    phi = data.phi
    ib = data.into_b
    ia = data.into_a
    n_tbl = data.n_table()
    emb_b = ib[data.eta], ib[data.kappa], ib[data.xi]  # eta/kappa/xi as B elems
    eta_b, kappa_b, xi_b = emb_b
    in_img_a = np.zeros(nA, dtype=bool)
    in_img_a[data.into_a] = True
    in_img_b = np.zeros(nB, dtype=bool)
    in_img_b[data.into_b] = True

    # --- 4.3.4: (b^u)^v = b^(vu)·eta(v,u,b); gamma^u = gamma; b^gamma = b
    checked.append("4.3.4")
    u_ix = np.arange(nA)[None, :, None]
    v_ix = np.arange(nA)[:, None, None]
    b_ix = np.arange(nB)[None, None, :]
    lhs = phi[v_ix, phi[u_ix, b_ix]]
    rhs = TB[phi[TA[v_ix, u_ix], b_ix], eta_b]
    if not np.array_equal(lhs, rhs):
        w = np.nonzero(lhs != rhs)
        return _fail("4.3.4", (int(w[0][0]), int(w[1][0]), int(w[2][0])), checked)
    checked.append("4.3.4-gamma-fixed")
    if not np.array_equal(
        phi[:, data.into_b], np.broadcast_to(data.into_b, (nA, nN))
    ):
        w = np.nonzero(phi[:, data.into_b] != data.into_b[None, :])
        return _fail("4.3.4-gamma-fixed", (int(w[0][0]), int(w[1][0])), checked)
    checked.append("4.3.4-action-trivial")
    if not np.array_equal(
        phi[data.into_a, :], np.broadcast_to(np.arange(nB), (nN, nB))
    ):
        w = np.nonzero(phi[data.into_a, :] != np.arange(nB)[None, :])
        return _fail("4.3.4-action-trivial", (int(w[0][0]), int(w[1][0])),
                     checked)

    # --- 4.3.5: eta invariant under N-shifts of b; e when any argument in N
    checked.append("4.3.5")
    for g in range(nN):
        gb = int(ib[g])
        if not np.array_equal(data.eta[:, :, TB[gb, :]], data.eta) or \
           not np.array_equal(data.eta[:, :, TB[:, gb]], data.eta):
            return _fail("4.3.5", ("shift", g), checked)
    checked.append("4.3.5-degenerate")
    if (data.eta[data.into_a, :, :] != 0).any() or \
       (data.eta[:, data.into_a, :] != 0).any() or \
       (data.eta[:, :, data.into_b] != 0).any():
        return _fail("4.3.5-degenerate", ("eta nonzero on N argument",), checked)

    # --- 4.3.6: (cb)^u = (c^u·b^u)·kappa(u,c,b)
    checked.append("4.3.6")
    u_ix = np.arange(nA)[:, None, None]
    c_ix = np.arange(nB)[None, :, None]
    b_ix = np.arange(nB)[None, None, :]
    lhs = phi[u_ix, TB[c_ix, b_ix]]
    rhs = TB[TB[phi[u_ix, c_ix], phi[u_ix, b_ix]], kappa_b]
    if not np.array_equal(lhs, rhs):
        w = np.nonzero(lhs != rhs)
        return _fail("4.3.6", (int(w[0][0]), int(w[1][0]), int(w[2][0])), checked)

    # --- 4.3.7: kappa shift invariance and degeneracy
    checked.append("4.3.7")
    for g in range(nN):
        gb = int(ib[g])
        ok = (
            np.array_equal(data.kappa[:, TB[gb, :], :], data.kappa)
            and np.array_equal(data.kappa[:, TB[:, gb], :], data.kappa)
            and np.array_equal(data.kappa[:, :, TB[gb, :]], data.kappa)
            and np.array_equal(data.kappa[:, :, TB[:, gb]], data.kappa)
        )
        if not ok:
            return _fail("4.3.7", ("shift", g), checked)
    checked.append("4.3.7-degenerate")
    if (data.kappa[data.into_a, :, :] != 0).any() or \
       (data.kappa[:, data.into_b, :] != 0).any() or \
       (data.kappa[:, :, data.into_b] != 0).any():
        return _fail("4.3.7-degenerate", ("kappa nonzero on N argument",),
                     checked)

    # --- 4.3.8: xi shift invariance in all eight argument positions,
    #            and xi((e,e),·) = xi(·,(e,e)) = e
    checked.append("4.3.8")
    for g in range(nN):
        ga, gb = int(ia[g]), int(ib[g])
        shifted = (
            data.xi[TA[ga, :], :, :, :], data.xi[TA[:, ga], :, :, :],
            data.xi[:, TB[gb, :], :, :], data.xi[:, TB[:, gb], :, :],
            data.xi[:, :, TA[ga, :], :], data.xi[:, :, TA[:, ga], :],
            data.xi[:, :, :, TB[gb, :]], data.xi[:, :, :, TB[:, gb]],
        )
        for pos, arr in enumerate(shifted):
            if not np.array_equal(arr, data.xi):
                return _fail("4.3.8", ("shift", g, "position", pos), checked)
    checked.append("4.3.8-identity")
    if (data.xi[0, 0, :, :] != 0).any():
        w = np.nonzero(data.xi[0, 0])
        return _fail("4.3.8-identity", ("left", int(w[0][0]), int(w[1][0])),
                     checked)
    if (data.xi[:, :, 0, 0] != 0).any():
        w = np.nonzero(data.xi[:, :, 0, 0])
        return _fail("4.3.8-identity", ("right", int(w[0][0]), int(w[1][0])),
                     checked)

    return ValidationReport(True, None, None, tuple(checked))


def smashed_product(data, cap=None, verify=True):
    """Build the loop on A×B with the twisted multiplication above.

    Raises ValidationFailed when the smashing conditions fail, and
    FanLoopCheckFailed when a theorem-backed cross-check breaks (the latter
    signals a bug, not bad input).
    """
    report = validate_smashing(data)
    if not report.ok:
        raise ValidationFailed(report.condition, report.witness)
    A, B = data.A, data.B
    nA, nB = A.order, B.order
    n = nA * nB
    cap_v = order_cap(cap)
    if n > cap_v:
        raise SizeCapExceeded(n, cap_v)
    TA, TB = A.table, B.table
    ib = data.into_b

    a1 = np.arange(nA)[:, None, None, None]
    b1 = np.arange(nB)[None, :, None, None]
    a2 = np.arange(nA)[None, None, :, None]
    b2 = np.arange(nB)[None, None, None, :]
    second = TB[TB[b1, data.phi[a1, b2]], ib[data.xi[a1, b1, a2, b2]]]
    first = TA[a1, a2]
    table = (first.astype(np.int32) * nB + second).reshape(n, n)
    labels = [f"({la},{lb})" for la in A.labels for lb in B.labels]
    P = core.verify_loop(table, identity=0, labels=labels, cap=cap)
    if verify:
        errs = verify_smashed_product(data, P)
        if errs:
            raise FanLoopCheckFailed(*errs[0])
    return P


def _r_map(B, w, nu):
    """r_(B,w)(nu) = (w·nu)/w, elementwise on index arrays."""
    return B.rdiv[B.table[w, nu], w]


def _r_check(B, w, nu):
    """ř_(B,w)(nu) = w\\(nu·w), elementwise on index arrays."""
    return B.ldiv[w, B.table[nu, w]]


def verify_smashed_product(data, P):
    """Cross-check a built product against the closed forms.

    Returns a list of (check-id, witness) pairs, empty when everything
    matches.  Checks: the fan-loop predicate, the associator closed forms
    (4.4.1/4.4.2), inverses (4.4.4/4.4.5 and 4.4.7/4.4.8), the derived
    divisions (4.4.9/4.4.10), the fan containment bound, and degeneracy to
    the direct product for trivial factors.
    """
    A, B = data.A, data.B
    nA, nB = A.order, B.order
    n = nA * nB
    TA, TB = A.table, B.table
    ia, ib = data.into_a, data.into_b
    phi = data.phi
    inv_b = B.ldiv[:, 0]  # x -> x\e  (two-sided inverse inside the nucleus)
    errs = []

    ana = P.analysis
    if not ana.is_fan_loop:
        errs.append(("fan-loop", ana.fan_witness))
        return errs  # everything below presumes a fan loop

    tP, pP = core._kernels.assoc_tensors(P.table, P.ldiv, P.rdiv)
    tA3, pA3 = A.assoc_tensors()

    # --- 4.4.1 / 4.4.2: associator closed forms, slab-wise over x1
    x23 = np.arange(n * n)
    a2 = (x23 // n) // nB
    b2 = (x23 // n) % nB
    a3 = (x23 % n) // nB
    b3 = (x23 % n) % nB
    for x1 in range(n):
        a1, b1 = x1 // nB, x1 % nB
        a12 = TA[a1, a2]
        b2a1 = phi[a1, b2]
        b3a12 = phi[a12, b3]
        b3a2 = phi[a2, b3]
        b = TB[b1, TB[b2a1, b3a12]]
        pa = pA3[a1, a2, a3]
        ta = tA3[a1, a2, a3]
        xi1 = ib[data.xi[a1, b1, a2, b2]]
        xi3 = ib[data.xi[a12, TB[b1, b2a1], a3, b3]]
        # p_B(b1, b2^a1, b3^(a1a2)) straight from the tables
        lhs = TB[TB[b1, b2a1], b3a12]
        rhs = TB[b1, TB[b2a1, b3a12]]
        p_B = B.ldiv[rhs, lhs]
        alpha = TB[TB[p_B, _r_check(B, b3a12, xi1)], xi3]
        beta = TB[
            TB[TB[ib[data.eta[a1, a2, b3]], ib[data.kappa[a1, b2, b3a2]]],
               ib[data.xi[a2, b2, a3, b3]]],
            ib[data.xi[a1, b1, TA[a2, a3], TB[b2, b3a2]]],
        ]
        exp_p = pa.astype(np.int32) * nB + TB[inv_b[beta], alpha]
        exp_t = ta.astype(np.int32) * nB + _r_map(B, b, TB[alpha, inv_b[beta]])
        got_t = tP[x1].ravel()
        got_p = pP[x1].ravel()
        if not np.array_equal(got_p, exp_p):
            w = int(np.argmax(got_p != exp_p))
            errs.append(("4.4.2", (x1, int(x23[w] // n), int(x23[w] % n))))
            break
        if not np.array_equal(got_t, exp_t):
            w = int(np.argmax(got_t != exp_t))
            errs.append(("4.4.1", (x1, int(x23[w] // n), int(x23[w] % n))))
            break

    # --- inverses
    x = np.arange(n)
    a = x // nB
    b = x % nB
    era = A.rdiv[0, a]  # e/a
    # left inverse (4.4.4/4.4.5): (e/a, xi^-1 · (e / b^(e/a)))
    b_ea = phi[era, b]
    c_slot = B.rdiv[0, b_ea]
    xiv = ib[data.xi[era, c_slot, a, b]]
    left_expected = era.astype(np.int32) * nB + TB[inv_b[xiv], c_slot]
    left_table = P.rdiv[0, x]
    if not np.array_equal(left_table, left_expected):
        w = int(np.argmax(left_table != left_expected))
        errs.append(("4.4.4/4.4.5", (int(w),)))
    # right inverse (4.4.7/4.4.8)
    ale = A.ldiv[a, 0]  # a\e
    bea = phi[era, B.ldiv[b, 0]]  # (b\e)^(e/a)
    xiv2 = ib[data.xi[a, b, ale, bea]]
    eta_v = ib[data.eta[era, a, bea]]
    b2v = TB[phi[era, B.ldiv[b, inv_b[xiv2]]], inv_b[eta_v]]
    right_expected = ale.astype(np.int32) * nB + b2v
    right_table = P.ldiv[x, 0]
    if not np.array_equal(right_table, right_expected):
        w = int(np.argmax(right_table != right_expected))
        errs.append(("4.4.7/4.4.8", (int(w),)))

    # --- divisions via the generic fan-loop reconstructions
    # (4.4.9)  x\\y = ((x\\e)·y)·p(x, x\\e, y)
    X = np.arange(n)[:, None]
    Y = np.arange(n)[None, :]
    xinv = P.ldiv[:, 0]
    recon_l = P.table[P.table[xinv[X], Y], pP[X, xinv[X], Y]]
    if not np.array_equal(recon_l, P.ldiv):
        w = np.nonzero(recon_l != P.ldiv)
        errs.append(("4.4.9", (int(w[0][0]), int(w[1][0]))))
    # (4.4.10) y/x = [t(y, e/x, x)]^-1 ·(y·(e/x)) -- nucleus inverse via \e
    xinv_r = P.rdiv[0, :]
    tv = tP[Y, xinv_r[X], X]
    tv_inv = P.ldiv[tv, 0]
    recon_r = P.table[tv_inv, P.table[Y, xinv_r[X]]]
    # recon_r[x, y] should equal y/x = P.rdiv[y, x]
    if not np.array_equal(recon_r, P.rdiv[Y, X]):
        w = np.nonzero(recon_r != P.rdiv[Y, X])
        errs.append(("4.4.10", (int(w[0][0]), int(w[1][0]))))

    # --- Cor 4.7-style containment: fan(P) inside the subgroup generated by
    #     the two embedded copies of N
    gens = {int(g) * nB + 0 for g in ia} | {0 * nB + int(g) for g in ib}
    hull = core.subgroup_closure(P, gens)
    if not ana.fan.members <= hull.members:
        bad = sorted(ana.fan.members - hull.members)[0]
        errs.append(("fan-containment", (bad,)))

    # --- degeneracy: trivial factors collapse to the direct product
    trivial = (
        np.array_equal(phi, np.broadcast_to(np.arange(nB), (nA, nB)))
        and not data.eta.any() and not data.kappa.any() and not data.xi.any()
    )
    if trivial:
        D = direct_product([A, B], verify=False)
        if not np.array_equal(D.table, P.table):
            w = np.nonzero(D.table != P.table)
            errs.append(("degeneracy", (int(w[0][0]), int(w[1][0]))))

    return errs
