import itertools
import random
import warnings

import numpy as np
import pytest

from padic_lab.core import NormValue
from padic_lab.exceptions import (
    MismatchError,
    NotInvertible,
    PrecisionWarning,
    UnsupportedPrime,
)
from padic_lab.linalg import (
    PadicMatrix,
    Span,
    congruence_diagonalize,
    det,
    det_is_unit,
    echelonize,
    fp_nullspace,
    fp_rank,
    inverse,
    kernel,
    kernel_saturated,
    mat_arith,
    mat_mul,
    op_norm,
    smith,
    solve,
)


def M(rows, p=5, N=4):
    return PadicMatrix(p, N, rows)


def rand_matrix(rng, r, c, p, N):
    q = p**N
    return PadicMatrix(p, N, [[rng.randrange(q) for _ in range(c)] for _ in range(r)])


def test_mat_arith_examples():
    A = M([[1, 2], [3, 4]])
    assert mat_arith(PadicMatrix.identity(2, 5, 4), A) == A
    E12, E21 = PadicMatrix.elementary(2, 0, 1, 5, 4), PadicMatrix.elementary(2, 1, 0, 5, 4)
    assert E12 @ E21 == PadicMatrix.elementary(2, 0, 0, 5, 4)
    assert mat_arith(mat_arith(A, op="transpose"), op="transpose") == A
    assert mat_arith(A, 3, op="scalar_mul") == M([[3, 6], [9, 12]])
    with pytest.raises(MismatchError):
        A @ M([[1, 2, 3]])


def test_mat_mul_matches_object_product():
    rng = random.Random(0)
    for p, N in [(5, 16), (7, 16), (2, 40)]:
        q = p**N
        a = np.array([[rng.randrange(q) for _ in range(7)] for _ in range(5)], dtype=object)
        b = np.array([[rng.randrange(q) for _ in range(4)] for _ in range(7)], dtype=object)
        assert np.array_equal(mat_mul(a, b, q), a.dot(b) % q)
    # small moduli take the int64 path
    a = np.array([[3, 4], [1, 2]], dtype=object)
    assert np.array_equal(mat_mul(a, a, 25), a.dot(a) % 25)


def test_op_norm_examples():
    p = 5
    assert op_norm(M([[p, 1], [0, p * p]])) == NormValue(0)
    assert op_norm(PadicMatrix.identity(3, 5, 4) * 5) == NormValue(1)
    assert op_norm(M([[625, 0]])).below_precision


def test_op_norm_submultiplicative():
    rng = random.Random(1)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        A = rand_matrix(rng, 3, 3, p, 6) * p ** rng.randrange(3)
        B = rand_matrix(rng, 3, 3, p, 6) * p ** rng.randrange(3)
        assert op_norm(A @ B) <= op_norm(A) * op_norm(B)


def test_echelonize_examples():
    e = echelonize(PadicMatrix.identity(3, 5, 3))
    assert [k for _, _, k in e.pivots] == [0, 0, 0]
    e = echelonize(M([[5, 1], [1, 5]], 5, 3))
    assert [k for _, _, k in e.pivots] == [0, 0]
    assert echelonize(PadicMatrix.zeros(2, 3, 5, 3)).pivots == []


def test_echelon_transform_and_order():
    rng = random.Random(2)
    for _ in range(30):
        A = rand_matrix(rng, 4, 3, 3, 5) @ PadicMatrix.diag([1, 3, 9], 3, 5)
        e = echelonize(A)
        assert e.transform @ A == e.form
        ks = [k for _, _, k in e.pivots]
        assert ks == sorted(ks)
        assert det_is_unit(e.transform)[1]


def test_smith_divisors():
    rng = random.Random(3)
    for _ in range(30):
        A = rand_matrix(rng, 3, 4, 5, 4)
        S = smith(A)
        D = S.P @ A @ S.Q
        for i in range(3):
            for j in range(4):
                k = S.divisors[i] if i < len(S.divisors) else None
                want = 0 if i != j or k is None else 5**k
                assert D.a[i, j] % 5**4 == want % 5**4 or (i == j and k is not None and D.a[i, j] % 5**k == 0)


def test_kernel_examples():
    assert kernel_saturated(PadicMatrix.identity(3, 5, 2)) == []
    gens = kernel_saturated(M([[1, 1]], 5, 2))
    assert len(gens) == 1 and list(gens[0]) == [1, 24]
    with pytest.warns(PrecisionWarning):
        gens = kernel_saturated(M([[25]], 5, 3))
    assert [list(g) for g in gens] == [[5]]


def brute_kernel(A: PadicMatrix):
    q = A.modulus
    sols = set()
    for v in itertools.product(range(q), repeat=A.cols):
        if all(sum(int(A.a[i, j]) * v[j] for j in range(A.cols)) % q == 0 for i in range(A.rows)):
            sols.add(v)
    return sols


def generated(gens, n, q):
    """All Z/q-combinations of the generators (small cases only)."""
    out = {tuple([0] * n)}
    for g in gens:
        out = {tuple((x[i] + c * int(g[i])) % q for i in range(n)) for x in out for c in range(q)}
    return out


@pytest.mark.parametrize("p,N", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_kernel_complete_against_enumeration(p, N):
    rng = random.Random(p * 10 + N)
    q = p**N
    for _ in range(12):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        A = rand_matrix(rng, r, c, p, N)
        if rng.random() < 0.5:
            A = A * p
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PrecisionWarning)
            gens = kernel_saturated(A)
        for g in gens:
            assert (A @ PadicMatrix(p, N, np.array(g).reshape(-1, 1))).is_zero()
        assert generated(gens, c, q) == brute_kernel(A)


def test_kernel_saturated_generators_have_unit():
    rng = random.Random(4)
    for _ in range(20):
        A = rand_matrix(rng, 2, 4, 5, 6)
        K = kernel(A)
        for v in K.basis:
            first_unit = next(int(x) for x in v if int(x) % 5)
            assert first_unit == 1


def test_det_examples():
    assert det_is_unit(PadicMatrix.identity(3, 5, 4)) == (1, True)
    assert det_is_unit(PadicMatrix.diag([1, 2], 5, 4)) == (2, True)
    assert det_is_unit(PadicMatrix.diag([1, 5], 5, 4)) == (5, False)
    A = M([[2, 3, 1], [4, 1, 0], [7, 7, 7]], 7, 3)
    assert det(A) == int(round(np.linalg.det(np.array(A.tolist(), dtype=float)))) % 343


def test_inverse_and_solve():
    rng = random.Random(5)
    for _ in range(20):
        A = rand_matrix(rng, 4, 4, 3, 8)
        if not det_is_unit(A)[1]:
            with pytest.raises(NotInvertible):
                inverse(A)
            continue
        assert A @ inverse(A) == PadicMatrix.identity(4, 3, 8)
        b = [rng.randrange(3**8) for _ in range(4)]
        x = solve(A, b)
        assert [int(v) for v in mat_mul(A.a, x.reshape(-1, 1), 3**8).ravel()] == b
    assert solve(M([[5, 0]], 5, 3), [1]) is None


def test_span_operations():
    p, N = 5, 4
    a = Span([[1, 2, 0], [0, 1, 1]], 3, p, N)
    b = Span([[1, 3, 1], [0, 1, 1]], 3, p, N)
    assert a == b
    assert a.saturated and a.rank == 2
    c = Span([[1, 0, 0]], 3, p, N)
    assert c <= Span([[1, 0, 0], [0, 1, 0]], 3, p, N)
    assert not Span([[0, 0, 1]], 3, p, N) <= a or a.contains([0, 0, 1])
    inter = a.intersect(Span([[1, 0, 0], [0, 0, 1]], 3, p, N))
    assert inter.rank == 1 and a.contains(inter.basis[0])
    t = Span([[5, 0]], 2, p, N)
    assert not t.saturated and t.divisors == [1]


def test_congruence_diagonalize_examples():
    U, D = congruence_diagonalize(PadicMatrix.diag([3, 7], 5, 4))
    assert U == PadicMatrix.identity(2, 5, 4) and D == PadicMatrix.diag([3, 7], 5, 4)
    G = M([[0, 1], [1, 0]], 5, 4)
    U, D = congruence_diagonalize(G)
    assert U.T @ G @ U == D
    assert [int(D.a[i, i]) % 5 for i in range(2)] == [2, 2]
    with pytest.raises(UnsupportedPrime):
        congruence_diagonalize(M([[0, 1], [1, 0]], 2, 4))


def test_congruence_diagonalize_random():
    from padic_lab.corpus import random_gram

    rng = random.Random(6)
    for t in range(200):
        p = (3, 5, 7)[t % 3]
        H = random_gram(rng.randint(1, 6), p, 16, rng)
        U, D = congruence_diagonalize(H.gram)
        assert U.T @ H.gram @ U == D
        assert det_is_unit(U)[1]
        n = D.rows
        assert all(D.a[i, j] == 0 for i in range(n) for j in range(n) if i != j)
        assert all(D.a[i, i] % p for i in range(n))


def test_fp_helpers():
    A = np.array([[1, 2, 3], [2, 4, 6]])
    assert fp_rank(A, 7) == 1
    ns = fp_nullspace(A, 7)
    assert len(ns) == 2 and not np.any(A @ ns.T % 7)


def test_json_roundtrip():
    A = M([[1, 2], [3, 624]], 5, 4)
    obj = A.to_json()
    assert obj["entries"][1][1] == "624" and obj["rows"] == 2
    assert PadicMatrix.from_json(obj) == A


def test_span_basis_is_canonical():
    rng = random.Random(7)
    for _ in range(30):
        p, N = rng.choice([(2, 6), (3, 5), (5, 4)]), None
        p, N = p
        gens = [[rng.randrange(p**N) for _ in range(5)] for _ in range(3)]
        S = Span(gens, 5, p, N)
        if not S.saturated:
            continue
        mix = rand_matrix(rng, 3, 3, p, N)
        while not det_is_unit(mix)[1]:
            mix = rand_matrix(rng, 3, 3, p, N)
        other = mat_mul(mix.a, np.array(gens, dtype=object), p**N)
        T = Span(list(other), 5, p, N)
        assert np.array_equal(S.basis, T.basis)
