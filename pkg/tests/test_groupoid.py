import random

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from padic_lab.core import NormValue
from padic_lab.corpus import groupoid_corpus
from padic_lab.exceptions import InvalidGroupoid
from padic_lab.groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    action_groupoid,
    cap_bits,
    class_sums,
    cyclic_group,
    disjoint_union,
    group_algebra,
    group_groupoid,
    groupoid_checks,
    ideal_generated,
    is_simple_fp,
    left_translation,
    p_simplicity,
    pair_groupoid,
    quaternion_group,
    right_translation,
    simple_by_structure,
    steinberg_fp,
    symmetric_group,
    trivial_group,
)
from padic_lab.linalg import op_norm
from padic_lab.standard import full_matrix_algebra
from padic_lab.star import algebra_direct_sum, mod_p, validate_algebra

GROUPS = [trivial_group(), cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3), quaternion_group()]


def test_group_algebra_examples():
    A, lam = group_algebra(trivial_group(), 5, 4)
    assert A.d == 1 and list(A.mult.ravel()) == [1]
    A, lam = group_algebra(cyclic_group(2), 5, 4)
    g = 1 - cyclic_group(2).identity
    assert lam.images[g].tolist() == [[0, 1], [1, 0]]
    S3 = symmetric_group(3)
    A, lam = group_algebra(S3, 5, 4)
    assert validate_algebra(A).valid and lam.is_isometric()
    rng = random.Random(0)
    for _ in range(30):
        f = [rng.randrange(5**4) * 5 ** rng.randrange(3) for _ in range(6)]
        assert op_norm(lam(f)) == A.norm(f)
    assert all(lam.check().checks.values())


def test_translations_commute():
    for G in GROUPS:
        for g in range(G.order):
            for h in range(G.order):
                L, R = left_translation(G, g), right_translation(G, h)
                assert np.array_equal(L.dot(R), R.dot(L))


def _sympy_classes(G: FiniteGroup):
    # left-regular permutations: any group table works
    perms = [Permutation([int(v) for v in G.table[g]]) for g in range(G.order)]
    return sorted(len(c) for c in PermutationGroup(perms).conjugacy_classes())


def test_class_sums():
    for n in range(1, 7):
        assert [int(v.sum()) for v in class_sums(cyclic_group(n))] == [1] * n
    S3 = symmetric_group(3)
    assert [int(v.sum()) for v in class_sums(S3)] == [1, 3, 2]
    assert sorted(int(v.sum()) for v in class_sums(S3)) == _sympy_classes(S3)
    Q8 = quaternion_group()
    assert len(class_sums(Q8)) == 5
    assert sorted(len(c) for c in Q8.conjugacy_classes()) == _sympy_classes(Q8)


def test_groupoid_checks_examples():
    c = groupoid_checks(pair_groupoid(3))
    assert c.effective and c.minimal
    c = groupoid_checks(group_groupoid(cyclic_group(2)))
    assert not c.effective and c.minimal and c.isotropy_witness is not None
    c = groupoid_checks(disjoint_union(pair_groupoid(2), pair_groupoid(2)))
    assert c.effective and not c.minimal and len(c.orbits) == 2


def test_invalid_groupoids():
    with pytest.raises(InvalidGroupoid):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(InvalidGroupoid):
        action_groupoid(cyclic_group(3), [[0, 1], [1, 0], [0, 1]])
    G = pair_groupoid(2)
    bad = G.compose.copy()
    bad[0, 0] = 1
    with pytest.raises(InvalidGroupoid):
        FiniteGroupoid(G.objects, G.src, G.tgt, bad, G.inv)


def test_groupoid_json_roundtrip():
    G = action_groupoid(cyclic_group(2), [[0, 1, 2], [2, 1, 0]])
    H = FiniteGroupoid.from_json(G.to_json())
    assert np.array_equal(G.compose, H.compose) and G.inv == H.inv


def test_steinberg_examples():
    for n in (1, 2, 3):
        S = steinberg_fp(pair_groupoid(n), 3)
        M = full_matrix_algebra(n, 3, 1)
        assert np.array_equal(S.mult % 3, M.mult % 3)
    S = steinberg_fp(group_groupoid(cyclic_group(2)), 2)
    ref = mod_p(group_algebra(cyclic_group(2), 2, 1)[0])
    assert np.array_equal(S.mult % 2, ref.mult % 2)
    a, b = pair_groupoid(2), group_groupoid(cyclic_group(3))
    S = steinberg_fp(disjoint_union(a, b), 5)
    ref = algebra_direct_sum(steinberg_fp(a, 5), steinberg_fp(b, 5))
    assert np.array_equal(S.mult, ref.mult)


def test_is_simple_examples():
    v = is_simple_fp(mod_p(full_matrix_algebra(2, 2, 1)))
    assert v.simple and v.tier == "exhaustive"
    A = mod_p(group_algebra(cyclic_group(3), 3, 1)[0])
    v = is_simple_fp(A)
    assert not v.simple and v.ideal_dim < 3
    # the witness really generates a proper ideal, e.g. the augmentation ideal
    assert len(ideal_generated(A, v.witness)) == v.ideal_dim
    aug = [1, 3 - 1, 0]
    assert len(ideal_generated(A, aug)) == 2
    A = mod_p(group_algebra(cyclic_group(2), 5, 1)[0])
    assert not is_simple_fp(A).simple
    half = pow(2, -1, 5)
    assert len(ideal_generated(A, [half, half])) == 1


def test_randomized_tier_agrees():
    for G in groupoid_corpus()[:12]:
        for p in (2, 3):
            A = steinberg_fp(G, p)
            v = is_simple_fp(A, cap=0, seed=1)
            assert v.tier == "randomized"
            assert v.simple == simple_by_structure(A) == is_simple_fp(A).simple


def test_cap_env(monkeypatch):
    monkeypatch.setenv("PADIC_LAB_CAP", "3")
    assert cap_bits() == 3
    v = is_simple_fp(mod_p(full_matrix_algebra(2, 2, 1)))
    assert v.tier == "randomized" and v.simple


@pytest.mark.parametrize("p", [2, 3, 5])
def test_p_simplicity_corpus(p):
    corpus = groupoid_corpus()
    assert len(corpus) >= 20
    for G in corpus:
        res = p_simplicity(G, p)
        assert res.agree
        assert res.simple.simple == simple_by_structure(steinberg_fp(G, p))


def test_p_simplicity_examples():
    res = p_simplicity(pair_groupoid(4), 3)
    assert res.simple.simple and res.checks.effective and res.checks.minimal
    res = p_simplicity(group_groupoid(cyclic_group(3)), 3)
    assert not res.simple.simple and not res.checks.effective
    res = p_simplicity(disjoint_union(pair_groupoid(2), pair_groupoid(1)), 5)
    assert not res.simple.simple and not res.checks.minimal
    assert res.to_json()["agree"]


def test_norm_value_sanity():
    # permutation matrices never shrink a unit vector
    lam = group_algebra(quaternion_group(), 3, 4)[1]
    assert all(op_norm(M) == NormValue(0) for M in lam.images)
