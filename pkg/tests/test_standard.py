import itertools
import random

import numpy as np
import pytest

from padic_lab.core import NormValue, inv_mod
from padic_lab.corpus import antisymmetric_4x4, random_gram, scalars_algebra
from padic_lab.exceptions import IndexOutOfRange, ProfileMismatch, SquareInput, UnsupportedPrime
from padic_lab.groupoid import cyclic_group, group_algebra
from padic_lab.hilbert import QuasiHilbert, adjoint
from padic_lab.linalg import PadicMatrix, min_valuation, op_norm
from padic_lab.standard import (
    column_rep,
    full_matrix_algebra,
    quad_ext_embed,
    represent_star_algebra,
    standardize,
    tate_truncation_demo,
    twisted_involution_formula,
    twisted_m2,
    twisted_m2_embed,
    twisted_m2n_embed,
)
from padic_lab.star import random_element, tensor

P, N = 5, 6
Q = P**N


def test_quad_ext_embed():
    hom = quad_ext_embed(5, N, 2)
    root = hom([0, 1]).reshape(2, 2)
    assert np.array_equal(root, np.array([[1, 1], [1, Q - 1]], dtype=object))
    assert np.array_equal(root.dot(root) % Q, 2 * np.eye(2, dtype=object))
    assert np.array_equal(root, root.T)
    assert np.array_equal(hom([1, 0]).reshape(2, 2), np.eye(2, dtype=object))
    assert op_norm(PadicMatrix(5, N, root)) == NormValue(0)
    assert all(hom.check().checks.values())
    with pytest.raises(SquareInput):
        quad_ext_embed(5, N, 4)
    with pytest.raises(UnsupportedPrime):
        quad_ext_embed(2, N, 3)


def test_twisted_m2_involution():
    u = 2
    A = twisted_m2(P, N, u)
    # E12* = u E21 under the default Gram diag(1, u^-1), matching the explicit entrywise formula
    assert list(A.star(A.basis(1))) == [0, 0, u, 0]
    H = QuasiHilbert.from_diagonal([1, inv_mod(u, P, N)], P, N)
    E12 = PadicMatrix.elementary(2, 0, 1, P, N)
    assert adjoint(H, E12).a.reshape(-1).tolist() == list(A.star(A.basis(1)))
    assert list(A.star(A.unit)) == list(A.unit)
    rng = random.Random(0)
    for _ in range(100):
        x = random_element(A, rng)
        sx = A.star(x)
        assert np.array_equal(sx.reshape(2, 2), twisted_involution_formula(x, u, P, N))
        assert min_valuation(sx, P, N) == min_valuation(x, P, N)
    assert twisted_m2(P, N, u, w=u).star(A.basis(1))[2] == inv_mod(u, P, N)


def test_twisted_m2_embed():
    hom = twisted_m2_embed(P, N, 2)
    rep = hom.check()
    assert rep.valid and rep.checks["isometric"]
    # target index (a*2 + b)*2 + part
    assert list(hom([1, 0, 0, 0])) == [1, 0, 0, 0, 0, 0, 0, 0]
    img = hom([0, 1, 0, 0])
    assert list(np.flatnonzero(img)) == [3] and img[3] % P
    # involution: image of E12* equals the transpose image in M_2(Z_p[sqrt u])
    T = hom.target
    assert np.array_equal(hom(hom.source.star(hom.source.basis(1))), T.star(img))


def test_tensor():
    M2 = full_matrix_algebra(2, P, N)
    T = tensor(M2, scalars_algebra(P, N))
    assert np.array_equal(T.mult, M2.mult) and T.invol == M2.invol
    M3 = full_matrix_algebra(3, P, N)
    M6 = full_matrix_algebra(6, P, N)
    T = tensor(M2, M3)
    perm = []
    for a, b, c, e in itertools.product(range(2), range(2), range(3), range(3)):
        perm.append((a * 3 + c) * 6 + (b * 3 + e))
    assert np.array_equal(T.mult, M6.mult[np.ix_(perm, perm, perm)])
    assert np.array_equal(T.invol.a, M6.invol.a[np.ix_(perm, perm)])


def test_twisted_m2n_embed():
    u = 2
    hom = twisted_m2n_embed(QuasiHilbert.from_diagonal([1, u], P, N), u)
    rep = hom.check()
    assert rep.valid and hom.bijective
    assert list(hom(hom.source.unit)) == list(hom.target.unit)
    # n=1: E12 -> e12 (x) 1
    assert list(np.flatnonzero(hom([0, 1, 0, 0]))) == [1]
    H2 = QuasiHilbert.from_diagonal([1, 1, u, u], P, N)
    hom2 = twisted_m2n_embed(H2, u)
    assert hom2.check().valid and hom2.bijective
    with pytest.raises(ProfileMismatch):
        twisted_m2n_embed(QuasiHilbert.identity(2, P, N))


def test_column_rep_examples():
    u = 2
    cr = column_rep(QuasiHilbert.from_diagonal([1], P, N), 1, u=u)
    assert cr.space.rank == 2 and cr.diagonal == [1, u] and cr.labels == ["e1", "sqrt(u)e1"]
    # direct evaluation of tau_1 on (e1, sqrt(u) e1): <e1,e1>=1, <sqrt u e1, sqrt u e1>=u
    assert cr.space.gram == PadicMatrix.diag([1, u], P, N)
    cr = column_rep(QuasiHilbert.from_diagonal([u], P, N), 1, u=u)
    # ones first: tau_1(e1* e1) = 1, then sqrt(1/u) e1 with value u^-1 (class of u)
    assert cr.labels == ["e1", "sqrt(1/u)e1"]
    assert cr.diagonal == [1, inv_mod(u, P, N)] and cr.twist == inv_mod(u, P, N)
    H = QuasiHilbert.from_diagonal([1, u], P, N)
    for r in (1, 2):
        cr = column_rep(H, r, u=u)
        D = cr.basis.T @ cr.space.gram @ cr.basis
        assert D == PadicMatrix.diag(cr.diagonal, P, N)
        rc = cr.rep.check()
        assert rc.checks["multiplicative"] and rc.checks["involutive"]
    with pytest.raises(IndexOutOfRange):
        column_rep(H, 3, u=u)


def test_standardize_examples():
    emb = standardize(QuasiHilbert.identity(1, P, N))
    assert emb.ambient_size == 4 and emb.certified
    emb = standardize(QuasiHilbert.from_diagonal([1, 2], P, N))
    assert emb.ambient_size == 16 and emb.certified
    assert emb.to_json(include_images=False)["checks"]["mult"] == "pass"
    A = emb.source
    rng = random.Random(1)
    for _ in range(20):
        x = random_element(A, rng)
        assert emb.dense(A.star(x)) == emb.dense(x).T
    with pytest.raises(UnsupportedPrime):
        standardize(QuasiHilbert.identity(1, 2, N))


def test_standardize_random():
    rng = random.Random(2)
    for t in range(8):
        p = (3, 5, 7)[t % 3]
        H = random_gram(rng.randint(1, 3), p, 8, rng)
        emb = standardize(H, probes=30, seed=t)
        assert emb.certified and emb.ambient_size == 4 * H.rank**2


def test_represent_star_algebra():
    for A in (scalars_algebra(P, N), antisymmetric_4x4(5, N), group_algebra(cyclic_group(3), 5, N)[0]):
        emb = represent_star_algebra(A, probes=30)
        assert emb.certified, emb.checks
        for i in range(A.d):
            assert emb._valuation(emb.image(i)) == min_valuation(A.basis(i), A.prime, A.precision)


def test_tate_demo():
    d0 = tate_truncation_demo(0, 5, 8)
    assert d0.algebra.d == 1 and d0.rep.images[0] == PadicMatrix.identity(1, 5, 8)
    d1 = tate_truncation_demo(1, 5, 8)
    X = d1.algebra.basis(2)
    assert op_norm(d1.rep(X)) == NormValue(0)
    for n in range(4):
        demo = tate_truncation_demo(n, 5, 8)
        assert demo.norms_preserved and demo.adjoint_ok and demo.direct_sum_isometric

