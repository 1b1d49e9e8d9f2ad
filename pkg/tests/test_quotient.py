"""Normality, coset decomposition, quotient construction.

Frozen facts derived by exhaustive checks in this file's oracles:
quotient(O16, {1,-1}) is an elementary abelian group of order 8 (every
nonidentity coset squares to the identity).
"""

import numpy as np
import pytest

from fanloops import catalog, core, products, quotient
from fanloops.errors import NotASubloop, NotNormal


def _subgroup(G, members):
    return core.ElementSet(G, frozenset(members))


def test_center_of_q8_is_normal(q8):
    rep = quotient.is_normal_subloop(q8, q8.analysis.center)
    assert rep.ok and rep.condition is None


def test_non_normal_subgroup_detected():
    G = catalog.symmetric3()
    # <s> = {e, s}: index-3 subgroup of S3, famously not normal
    s = G.index("s")
    H = _subgroup(G, {0, s})
    rep = quotient.is_normal_subloop(G, H)
    assert not rep.ok
    assert rep.condition is not None
    assert rep.witness is not None


def test_not_a_subloop_rejected(q8):
    with pytest.raises(NotASubloop) as exc:
        quotient.is_normal_subloop(q8, _subgroup(q8, {0, q8.index("e1")}))
    assert "escapes" in exc.value.reason


def test_fan_normal_in_every_corpus_fan_loop(groups8, smash_products, oct16):
    loops = [G for _, G in groups8] + [oct16]
    loops += [P for _, P in smash_products]
    loops.append(products.cayley_dickson_basis_loop(4))
    for G in loops:
        rep = quotient.is_normal_subloop(G, G.analysis.fan)
        assert rep.ok, (G.order, rep.condition, rep.witness)


def test_coset_decomposition_partitions(oct16):
    dec = quotient.coset_decomposition(oct16, oct16.analysis.fan)
    assert dec.count == 8
    seen = set()
    for block in dec.blocks:
        assert len(block) == 2
        seen |= set(block)
    assert seen == set(range(16))
    # representative map sends each element to its block index
    for i, block in enumerate(dec.blocks):
        for x in block:
            assert dec.representative_of[x] == i
    # identity's coset comes first and representatives are block minima
    assert 0 in dec.blocks[0]
    assert dec.representatives()[0] == 0


def test_octonion_quotient_is_elementary_abelian(oct16):
    Q = quotient.quotient(oct16, oct16.analysis.fan)
    assert Q.order == 8
    a = Q.analysis
    assert a.is_group and a.is_commutative
    for x in range(1, 8):
        assert int(Q.table[x, x]) == 0  # every nonidentity element order 2
        il, ir = int(core.inv_l(Q, x)), int(core.inv_r(Q, x))
        assert il == ir == x


def test_sedenion_quotient_group():
    S = products.cayley_dickson_basis_loop(4)
    Q = quotient.quotient(S, S.analysis.fan)
    assert Q.order == 16
    a = Q.analysis
    assert a.is_group and a.is_commutative
    for x in range(1, 16):
        assert int(Q.table[x, x]) == 0


def test_quotient_by_trivial_subgroup_is_isomorphic(q8):
    Q = quotient.quotient(q8, _subgroup(q8, {0}))
    assert Q.order == 8
    assert np.array_equal(Q.table, q8.table)


def test_quotient_by_whole_group_is_trivial(q8):
    Q = quotient.quotient(q8, _subgroup(q8, range(8)))
    assert Q.order == 1


def test_quotient_q8_by_center_is_klein(q8):
    Q = quotient.quotient(q8, q8.analysis.center)
    assert Q.order == 4
    a = Q.analysis
    assert a.is_group and a.is_commutative
    for x in range(1, 4):
        assert int(Q.table[x, x]) == 0  # K4, not C4


def test_quotient_labels_use_representatives(oct16):
    Q = quotient.quotient(oct16, oct16.analysis.fan)
    assert Q.label(0).startswith("[") and Q.label(0).endswith("]")


def test_smash_product_fan_quotients(smash_products):
    for data, P in smash_products:
        fan = P.analysis.fan
        Q = quotient.quotient(P, fan)
        assert Q.order * len(fan) == P.order
        qa = Q.analysis
        # quotient by the fan always kills every associator
        assert qa.is_group, data.name


def test_non_normal_raises_from_decomposition():
    G = catalog.symmetric3()
    H = _subgroup(G, {0, G.index("s")})
    with pytest.raises(NotNormal):
        quotient.quotient(G, H)
