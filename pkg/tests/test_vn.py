import itertools
import random

import numpy as np
import pytest
import sympy

from padic_lab.exceptions import MismatchError
from padic_lab.groupoid import (
    cyclic_group,
    dihedral_group,
    left_translation,
    quaternion_group,
    right_translation,
    symmetric_group,
    trivial_group,
)
from padic_lab.vn import (
    MatrixSubalgebra,
    bicommutant_check,
    center,
    class_sum_span,
    commutant,
    compacts,
    full_matrices,
    group_subalgebra,
    intersection,
    is_factor,
    scalars,
)

P, N = 3, 6
GROUPS = {
    "trivial": trivial_group(),
    "C2": cyclic_group(2),
    "C3": cyclic_group(3),
    "C4": cyclic_group(4),
    "S3": symmetric_group(3),
    "Q8": quaternion_group(),
}


def brute_commutant_dim(mats):
    """Dimension over Q of {X : X M = M X for all M}, by a direct sympy solve."""
    n = len(mats[0])
    xs = sympy.symbols(f"x0:{n * n}")
    X = sympy.Matrix(n, n, xs)
    eqs = []
    for M in mats:
        M = sympy.Matrix(M.tolist())
        eqs.extend(list(X * M - M * X))
    A, _ = sympy.linear_eq_to_matrix(eqs, xs)
    return len(A.nullspace())


def test_commutant_examples():
    assert commutant(scalars(3, P, N)).rank == 9
    for n in range(2, 9):
        C = commutant(compacts(n, P, N))
        assert C.rank == 1 and C.contains(np.eye(n, dtype=object))


def test_s3_commutant_against_sympy():
    S3 = GROUPS["S3"]
    S = group_subalgebra(S3, P, N)
    C = commutant(S)
    mats = [left_translation(S3, g) for g in range(6)]
    assert C.rank == 6 == brute_commutant_dim(mats)
    # and it is spanned by the right translations
    R = MatrixSubalgebra.from_generators([right_translation(S3, g) for g in range(6)], P, N, closure=False)
    assert C.same_span(R)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("name", list(GROUPS))
def test_group_algebras_are_vn(name, p):
    G = GROUPS[name]
    S = group_subalgebra(G, p, 4)
    chk = bicommutant_check(S)
    assert chk.is_vn
    Z = center(S)
    assert Z.span == class_sum_span(G, p, 4)
    assert Z.rank == len(G.conjugacy_classes())
    assert is_factor(S) == (G.order == 1)


def test_bicommutant_examples():
    assert bicommutant_check(full_matrices(3, P, N)).is_vn
    # at finite n the matrix units span M_n, so the bicommutant is the full algebra
    chk = bicommutant_check(compacts(3, P, N))
    assert chk.bicommutant.rank == 9 and chk.bicommutant.same_span(full_matrices(3, P, N))
    chk = bicommutant_check(scalars(3, P, N))
    assert chk.is_vn and chk.commutant.rank == 9


def test_center_examples():
    assert is_factor(full_matrices(3, P, N))
    assert center(group_subalgebra(GROUPS["S3"], P, N)).rank == 3
    S = group_subalgebra(GROUPS["C4"], P, N)
    assert center(S).rank == 4 and not is_factor(S)


def test_commutant_antitone_and_triple():
    # nested spans generated by random subsets of group elements
    rng = random.Random(0)
    for G in (GROUPS["S3"], GROUPS["Q8"], dihedral_group(4)):
        L = [left_translation(G, g) for g in range(G.order)]
        for _ in range(4):
            big = rng.sample(range(G.order), rng.randint(1, 3))
            small = big[: rng.randint(1, len(big))]
            T = MatrixSubalgebra.from_generators([L[g] for g in big], P, N, unital=True)
            S = MatrixSubalgebra.from_generators([L[g] for g in small], P, N, unital=True)
            assert S <= T
            Tc, Sc = commutant(T), commutant(S)
            assert Tc <= Sc
            assert commutant(commutant(Sc)).same_span(Sc)


def test_triple_commutant_groups():
    for G in GROUPS.values():
        S = group_subalgebra(G, P, 4)
        C = commutant(S)
        assert commutant(commutant(C)).same_span(C)


def test_intersection_of_vn_is_vn():
    corpus = [group_subalgebra(G, P, 4) for G in (cyclic_group(6), dihedral_group(3))]
    Sd = corpus[1]
    corpus.append(commutant(corpus[0]))
    corpus.append(commutant(Sd))
    for A, B in itertools.combinations(corpus, 2):
        I = intersection(A, B)
        assert bicommutant_check(I).is_vn
    with pytest.raises(MismatchError):
        intersection(scalars(2, P, N), scalars(3, P, N))


def test_closure_and_star():
    S = group_subalgebra(GROUPS["Q8"], P, N)
    assert S.is_closed() and S.is_star_closed()
    C = commutant(S)
    assert C.is_closed() and C.is_star_closed()
    obj = C.to_json()
    assert obj["rank"] == 8 and obj["saturated"]
