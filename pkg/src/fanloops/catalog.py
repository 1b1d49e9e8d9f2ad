"""Small stock loops: cyclic/dihedral/Klein groups, the full list of groups
of order <= 8, and accessors for the bundled corpus files.

All constructors return verified FiniteLoop instances with human-readable
labels; groups are the degenerate (associative) end of the fan-loop world
and serve as building blocks and negative controls throughout the tests.
"""

from importlib import resources

import numpy as np

from . import core


def cyclic(n, generator_label="g"):
    """C_n with elements e, g, g2, ..."""
    if n < 1:
        raise ValueError("order must be positive")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = ["e"] + [generator_label if i == 1 else f"{generator_label}{i}"
                      for i in range(1, n)]
    return core.verify_loop(table, identity=0, labels=labels)


def dihedral(n):
    """D_n of order 2n (n >= 1): (i,f)(j,g) = (i + (-1)^f j mod n, f xor g).

    Element (i, f) sits at index i + n*f; labels e, r, r2, ..., s, rs, r2s, ...
    """
    if n < 1:
        raise ValueError("order must be positive")
    table = np.empty((2 * n, 2 * n), dtype=np.int16)
    for i in range(n):
        for f in range(2):
            for j in range(n):
                for g in range(2):
                    k = (i + (j if f == 0 else -j)) % n
                    table[i + n * f, j + n * g] = k + n * (f ^ g)
    rot = ["e"] + ["r" if i == 1 else f"r{i}" for i in range(1, n)]
    ref = ["s"] + ["rs" if i == 1 else f"r{i}s" for i in range(1, n)]
    return core.verify_loop(table, identity=0, labels=rot + ref)


def klein4():
    """C2 x C2 with labels e, a, b, ab."""
    table = np.array([[0, 1, 2, 3],
                      [1, 0, 3, 2],
                      [2, 3, 0, 1],
                      [3, 2, 1, 0]], dtype=np.int16)
    return core.verify_loop(table, identity=0, labels=["e", "a", "b", "ab"])


def quaternion8():
    """Q8 as the k=2 Cayley-Dickson basis loop (1, -1, i, -i, j, -j, k, -k)."""
    from .products import cayley_dickson_basis_loop

    return cayley_dickson_basis_loop(2)


def octonion16():
    """The octonion basis loop (k=3): the flagship order-16 fan loop."""
    from .products import cayley_dickson_basis_loop

    return cayley_dickson_basis_loop(3)


def symmetric3():
    """S3 realized as D3."""
    return dihedral(3)


def groups_up_to_8():
    """All groups of order <= 8 up to isomorphism, as (name, loop) pairs."""
    from .products import direct_product

    out = [
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("K4", klein4()),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric3()),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", direct_product([cyclic(4), cyclic(2)], verify=False)),
        ("C2^3", direct_product([cyclic(2), cyclic(2), cyclic(2)],
                                verify=False)),
        ("D4", dihedral(4)),
        ("Q8", quaternion8()),
    ]
    return out


def smash_instances():
    """Named SmashingData instances covering every smashing factor.

    s1: all factors trivial (degenerates to the direct product C2 x C4).
    s2: C2 (x) C4 with N = C2 embedded as {e,g2}, phi trivial, xi the
        pairing nontrivial exactly on (non-N x non-N) class pairs.
    s3: C2 (x) C4 with N = {e} and phi(a) = inversion -> D4.
    s4: C2 (x) Q8 with N = {1,-1} and a xi breaking associativity:
        an order-16 fan loop that is not a group.
    s5: C4 (x) Q8 where phi(g) swaps j and k -- not an automorphism of Q8,
        so kappa is forced nontrivial; eta = xi = e.  Order 32.
    s6: C4 (x) C8 where phi(g) squares to translation-by-h4 on half the
        N-classes, so eta is nontrivial; kappa and xi nontrivial too.
        Order 32.
    """
    import numpy as np

    from .products import SmashingData

    out = []

    def zeros(*shape):
        return np.zeros(shape, dtype=np.int16)

    def phi_id(nA, nB):
        return np.broadcast_to(np.arange(nB, dtype=np.int16),
                               (nA, nB)).copy()

    # --- s1: trivial
    A, B = cyclic(2, "a"), cyclic(4, "g")
    out.append(SmashingData(A, B, ("e",), [0], [0], phi_id(2, 4),
                            zeros(2, 2, 4), zeros(2, 4, 4),
                            zeros(2, 4, 2, 4), name="s1-trivial-c2-c4"))

    # --- s2: xi on class pairs, N = C2 in both factors
    A, B = cyclic(2, "a"), cyclic(4, "g")
    xi = zeros(2, 4, 2, 4)
    for c in range(4):
        for b in range(4):
            if c % 2 == 1 and b % 2 == 1:  # both outside {e, g2}
                xi[:, c, :, b] = 1
    out.append(SmashingData(A, B, ("e", "z"), [0, 1], [0, 2], phi_id(2, 4),
                            zeros(2, 2, 4), zeros(2, 4, 4), xi,
                            name="s2-xi-c2-c4"))

    # --- s3: phi = inversion, N trivial -> dihedral group D4
    A, B = cyclic(2, "a"), cyclic(4, "g")
    phi = phi_id(2, 4)
    phi[1] = [0, 3, 2, 1]  # b -> b^-1
    out.append(SmashingData(A, B, ("e",), [0], [0], phi,
                            zeros(2, 2, 4), zeros(2, 4, 4),
                            zeros(2, 4, 2, 4), name="s3-phi-d4"))

    # --- s4: xi = indicator(class(c)=i-bar and class(b)=i-bar) on C2 (x) Q8
    A, B = cyclic(2, "a"), quaternion8()
    xi = zeros(2, 8, 2, 8)
    for c in range(8):
        for b in range(8):
            if c // 2 == 1 and b // 2 == 1:
                xi[:, c, :, b] = 1
    out.append(SmashingData(A, B, ("e", "z"), [0, 1], [0, 1], phi_id(2, 8),
                            zeros(2, 2, 8), zeros(2, 8, 8), xi,
                            name="s4-xi-c2-q8"))

    # --- s5: phi(g) = phi(g3) = swap j/k (sign-preserving); kappa compensates
    A, B = cyclic(4, "g"), quaternion8()
    sigma = np.array([0, 1, 2, 3, 6, 7, 4, 5], dtype=np.int16)
    phi = phi_id(4, 8)
    phi[1] = sigma
    phi[3] = sigma
    kappa = zeros(4, 8, 8)
    for u in (1, 3):
        for c in range(8):
            for b in range(8):
                ci, bi = c // 2, b // 2
                if ci != 0 and bi != 0 and ci != bi:
                    kappa[u, c, b] = 1
    out.append(SmashingData(A, B, ("e", "z"), [0, 2], [0, 1], phi,
                            zeros(4, 4, 8), kappa, zeros(4, 8, 4, 8),
                            name="s5-kappa-c4-q8"))

    # --- s6: phi(g) = sigma with sigma^2 = shift-by-h4 on odd classes
    A, B = cyclic(4, "g"), cyclic(8, "h")
    sigma = np.array([0, 3, 6, 5, 4, 7, 2, 1], dtype=np.int16)
    phi = phi_id(4, 8)
    phi[1] = sigma
    phi[3] = sigma
    eta = zeros(4, 4, 8)
    for v in (1, 3):
        for u in (1, 3):
            for b in range(8):
                if b % 2 == 1:
                    eta[v, u, b] = 1
    kappa = zeros(4, 8, 8)
    for u in (1, 3):
        for c in range(8):
            for b in range(8):
                ci, bi = c % 4, b % 4
                if ci != 0 and bi != 0 and ci != bi:
                    kappa[u, c, b] = 1
    xi = zeros(4, 8, 4, 8)
    for c in range(8):
        for b in range(8):
            if c % 4 == 3 and b % 4 == 1:
                xi[:, c, :, b] = 1
    out.append(SmashingData(A, B, ("e", "z"), [0, 2], [0, 4], phi,
                            eta, kappa, xi, name="s6-eta-c4-c8"))

    return out


def corpus_path(name):
    """Filesystem path of a bundled corpus file (e.g. 'oct16.loop')."""
    return resources.files("fanloops") / "corpus" / name


def corpus_loop(name):
    """Load a bundled .loop file by name."""
    from . import cli

    return cli.parse_loop_file(str(corpus_path(name)))
