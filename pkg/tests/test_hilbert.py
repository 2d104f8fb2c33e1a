import random

import numpy as np
import pytest

from padic_lab.core import NormValue, inv_mod, nonresidue_int
from padic_lab.corpus import random_gram
from padic_lab.exceptions import MismatchError, UnsupportedPrime
from padic_lab.hilbert import (
    QuasiHilbert,
    adjoint,
    bounded_algebra,
    direct_sum,
    normalize_square_classes,
    orthogonal_basis,
    pairing,
    validate,
)
from padic_lab.linalg import PadicMatrix, op_norm, vector_norm
from padic_lab.star import validate_algebra

P, N = 5, 4


def test_validate_examples():
    assert validate(QuasiHilbert.identity(3, P, N)).valid
    rep = validate(QuasiHilbert.from_diagonal([1, P], P, N))
    assert not rep.valid and rep.witnesses["unimodular"]["xi"] == [0, 1]
    assert validate(QuasiHilbert(PadicMatrix(P, N, [[0, 1], [1, 0]]))).valid
    bad = validate(QuasiHilbert(PadicMatrix(P, N, [[1, 2], [0, 1]])))
    assert bad.checks["symmetric"] is False


def test_validate_witness_shrinks():
    # the witness xi is a unit vector with ||G xi|| < ||xi||
    H = QuasiHilbert(PadicMatrix(P, N, [[1, 1], [1, 1]]))
    xi = validate(H).witnesses["unimodular"]["xi"]
    assert vector_norm(xi, P, N) == NormValue(0)
    Gxi = H.gram.a.dot(np.array(xi, dtype=object)) % P**N
    assert vector_norm(Gxi, P, N) < NormValue(0)


def test_pairing_examples():
    H = QuasiHilbert.identity(2, P, N)
    assert pairing(H, [1, 0], [0, 1]) == 0
    u = nonresidue_int(P)
    H = QuasiHilbert.from_diagonal([1, u], P, N)
    assert pairing(H, [0, 1], [0, 1]) == u
    rng = random.Random(0)
    G = random_gram(3, P, N, rng)
    for _ in range(20):
        x = [rng.randrange(P**N) for _ in range(3)]
        y = [rng.randrange(P**N) for _ in range(3)]
        assert pairing(G, x, y) == pairing(G, y, x)
    with pytest.raises(MismatchError):
        pairing(G, [1, 0], [1, 0, 0])


def test_adjoint_examples():
    T = PadicMatrix(P, N, [[1, 2], [3, 4]])
    assert adjoint(QuasiHilbert.identity(2, P, N), T) == T.T
    u = 2
    H = QuasiHilbert.from_diagonal([1, u], P, N)
    E12 = PadicMatrix.elementary(2, 0, 1, P, N)
    A = adjoint(H, E12)
    # direct evaluation: <e_i, E12 e_j> = <A e_i, e_j> on all basis pairs
    for i in range(2):
        for j in range(2):
            ei, ej = np.eye(2, dtype=int)[i], np.eye(2, dtype=int)[j]
            lhs = pairing(H, ei, E12.a.dot(ej))
            rhs = pairing(H, A.a.dot(ei), ej)
            assert lhs == rhs
    assert A == PadicMatrix.elementary(2, 1, 0, P, N) * inv_mod(u, P, N)
    assert int(A.a[1, 0]) == 313


def test_adjoint_identity_and_involutive():
    rng = random.Random(1)
    for _ in range(20):
        p = rng.choice([3, 5, 7])
        H = random_gram(3, p, 8, rng)
        T = PadicMatrix(p, 8, [[rng.randrange(p**8) for _ in range(3)] for _ in range(3)])
        Ts = adjoint(H, T)
        assert adjoint(H, Ts) == T
        for _ in range(5):
            x = [rng.randrange(p**8) for _ in range(3)]
            y = [rng.randrange(p**8) for _ in range(3)]
            assert pairing(H, x, T.a.dot(np.array(y, dtype=object))) == pairing(H, Ts.a.dot(np.array(x, dtype=object)), y)


def test_orthogonal_basis_examples():
    ob = orthogonal_basis(QuasiHilbert.identity(3, P, N))
    assert ob.U == PadicMatrix.identity(3, P, N) and ob.diagonal == [1, 1, 1]
    G = PadicMatrix(P, N, [[0, 1], [1, 0]])
    ob = orthogonal_basis(QuasiHilbert(G))
    assert [a % P for a in ob.diagonal] == [2, 2]
    assert ob.U.T @ G @ ob.U == ob.D
    with pytest.raises(UnsupportedPrime):
        orthogonal_basis(QuasiHilbert.identity(2, 2, N))


def test_normalize_examples():
    nb = normalize_square_classes(QuasiHilbert.from_diagonal([4, 2], P, N))
    assert nb.m == 1 and nb.diagonal == [1, 2] and nb.u == 2
    assert normalize_square_classes(QuasiHilbert.identity(3, P, N)).m == 3
    nb = normalize_square_classes(QuasiHilbert.from_diagonal([2, 2], P, N))
    assert nb.m == 0 and nb.diagonal == [2, 2]


def test_normalize_stable_order():
    # classes (non-square, square, non-square, square) -> ones keep order 1, 3
    H = QuasiHilbert.from_diagonal([2, 4, 3, 9], P, N)
    nb = normalize_square_classes(H)
    assert nb.m == 2
    cols = [int(np.flatnonzero(nb.U.a[:, k])[0]) for k in range(4)]
    assert cols == [1, 3, 0, 2]


def test_orthogonalization_roundtrip():
    rng = random.Random(2)
    for t in range(60):
        p = (3, 5, 7)[t % 3]
        H = random_gram(rng.randint(1, 5), p, 16, rng)
        ob = orthogonal_basis(H)
        assert ob.gram() == H.gram
        nb = normalize_square_classes(H)
        assert set(nb.diagonal) <= {1, nonresidue_int(p)}
        assert nb.U.T @ H.gram @ nb.U == nb.D


def test_direct_sum():
    I5 = direct_sum(QuasiHilbert.identity(2, P, N), QuasiHilbert.identity(3, P, N))
    assert I5.gram == PadicMatrix.identity(5, P, N)
    H = direct_sum(QuasiHilbert.from_diagonal([1], P, N), QuasiHilbert.from_diagonal([2], P, N))
    assert H.gram == PadicMatrix.diag([1, 2], P, N)
    assert validate(H).valid
    with pytest.raises(MismatchError):
        direct_sum(QuasiHilbert.identity(1, 5, 4), QuasiHilbert.identity(1, 7, 4))


def test_bounded_algebra():
    B = bounded_algebra(QuasiHilbert.identity(2, P, N))
    assert validate_algebra(B).valid
    # transpose: E12* = E21
    assert list(B.invol.a[:, 1]) == [0, 0, 1, 0]
    u = 2
    a = [1, u]
    B = bounded_algebra(QuasiHilbert.from_diagonal(a, P, N))
    assert validate_algebra(B).valid
    # entrywise formula (b_ij)* = b_ji a_j a_i^-1 on every matrix unit
    for i in range(2):
        for j in range(2):
            star = B.invol.a[:, i * 2 + j].reshape(2, 2)
            want = np.zeros((2, 2), dtype=object)
            want[j, i] = a[i] * inv_mod(a[j], P, N) % P**N
            assert np.array_equal(star % P**N, want)


def test_bounded_algebra_isometric_involution():
    rng = random.Random(3)
    H = random_gram(3, 7, 6, rng)
    B = bounded_algebra(H)
    for _ in range(30):
        x = [rng.randrange(7**6) * 7 ** rng.randrange(3) for _ in range(9)]
        X = PadicMatrix(7, 6, np.array(x, dtype=object).reshape(3, 3))
        Xs = PadicMatrix(7, 6, B.star(x).reshape(3, 3))
        assert op_norm(Xs) == op_norm(X)


def test_cauchy_schwarz_and_duality():
    rng = random.Random(4)
    for t in range(40):
        p = (3, 5, 7)[t % 3]
        H = random_gram(rng.randint(1, 4), p, 8, rng)
        n = H.rank
        for _ in range(25):
            x = [rng.randrange(p**8) * p ** rng.randrange(3) for _ in range(n)]
            y = [rng.randrange(p**8) * p ** rng.randrange(3) for _ in range(n)]
            xy = NormValue(_v(pairing(H, x, y).residue, p))
            assert xy <= vector_norm(x, p, 8) * vector_norm(y, p, 8)
            # duality: the max over basis eta of |<eta, x>| is ||x||
            best = max(NormValue(_v(pairing(H, e, x).residue, p)) for e in np.eye(n, dtype=int))
            assert best == vector_norm(x, p, 8)


def _v(r, p):
    if r == 0:
        return None
    k = 0
    while r % p == 0:
        r //= p
        k += 1
    return k


def test_json_roundtrip():
    H = QuasiHilbert.from_diagonal([1, 2], P, N)
    obj = H.to_json()
    assert obj["gram"] == [["1", "0"], ["0", "2"]]
    assert QuasiHilbert.from_json(obj).gram == H.gram
