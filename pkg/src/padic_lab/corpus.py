"""Named examples and seeded random generators used by tests, demos and the CLI."""

from __future__ import annotations

import random

import numpy as np

from .core import inv_mod, nonresidue_int, sqrt_mod
from .exceptions import NotUnimodular, PadicError
from .groupoid import (
    FiniteGroup,
    action_groupoid,
    cyclic_group,
    disjoint_union,
    group_groupoid,
    pair_groupoid,
    symmetric_group,
)
from .hilbert import QuasiHilbert, validate
from .linalg import PadicMatrix
from .star import (
    QuasiState,
    StarAlgebra,
    algebra_direct_sum,
    change_basis,
    coordinate_quasi_states,
    gns,
    tensor,
    unitize,
    validate_algebra,
    validate_quasi_state,
)
from .standard import full_matrix_algebra, quad_ext, twisted_m2
from .groupoid import group_algebra


# ---------------------------------------------------------------------------
# the two small examples of ultra-antisymmetric elements


def nilpotent_2x2(p: int, N: int = 16) -> StarAlgebra:
    """span{1, a} in M_2 with a = E_12 and the trivial involution."""
    mult = np.zeros((2, 2, 2), dtype=object)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    return StarAlgebra(p, N, mult, np.eye(2, dtype=np.int64).astype(object), [1, 0],
                       labels=["1", "a"], name="nilpotent 2x2")


def antisymmetric_4x4_matrix(p: int, N: int = 16) -> PadicMatrix:
    q = p**N
    i = sqrt_mod(-1 % q, p, N)
    a = [[0, -1, 0, -i], [1, 0, -i, 0], [0, i, 0, -1], [i, 0, 1, 0]]
    return PadicMatrix(p, N, [[v % q for v in row] for row in a])


def antisymmetric_4x4(p: int, N: int = 16) -> StarAlgebra:
    """span{1, a} in M_4 with transpose; needs p = 1 mod 4."""
    a = antisymmetric_4x4_matrix(p, N)
    A = StarAlgebra.from_matrices([PadicMatrix.identity(4, p, N), a], labels=["1", "a"],
                                  name="antisymmetric 4x4")
    return A


def zero_mult(d: int, p: int, N: int = 16) -> StarAlgebra:
    mult = np.zeros((d, d, d), dtype=object)
    return StarAlgebra(p, N, mult, np.eye(d, dtype=np.int64).astype(object), None,
                       name=f"zero product rank {d}")


def diagonal_pair(p: int, N: int = 16, swap: bool = False) -> StarAlgebra:
    """Z_p x Z_p with the identity or the swap involution."""
    mult = np.zeros((2, 2, 2), dtype=object)
    mult[0, 0, 0] = mult[1, 1, 1] = 1
    invol = [[0, 1], [1, 0]] if swap else [[1, 0], [0, 1]]
    return StarAlgebra(p, N, mult, invol, [1, 1], name="Z_p x Z_p" + (" swap" if swap else ""))


def dual_numbers(p: int, N: int = 16, sign: int = 1) -> StarAlgebra:
    """Z_p[e]/(e^2) with e* = sign e."""
    A = nilpotent_2x2(p, N)
    A.invol = PadicMatrix(p, N, [[1, 0], [0, sign % p**N]])
    A.name = "dual numbers"
    return A


def scalars_algebra(p: int, N: int = 16) -> StarAlgebra:
    return StarAlgebra(p, N, [[[1]]], [[1]], [1], labels=["1"], name="Z_p")


# ---------------------------------------------------------------------------
# random data


def random_unimodular(n: int, p: int, N: int, rng: random.Random) -> PadicMatrix:
    q = p**N
    while True:
        M = PadicMatrix(p, N, [[rng.randrange(q) for _ in range(n)] for _ in range(n)])
        from .linalg import det

        if det(M) % p:
            return M


def random_gram(n: int, p: int, N: int, rng: random.Random) -> QuasiHilbert:
    """A random symmetric unimodular Gram matrix."""
    q = p**N
    while True:
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = rng.randrange(q)
                # bias towards small valuations off the diagonal, so the
                # non-diagonal pivoting branch gets exercised too
                if i != j and rng.random() < 0.3:
                    v = v * p % q
                a[i][j] = a[j][i] = v
        H = QuasiHilbert(PadicMatrix(p, N, a))
        if validate(H).valid:
            return H


def base_algebras(p: int, N: int = 16) -> list[StarAlgebra]:
    """Small valid unital *-algebras (rank at most 4)."""
    out = [
        scalars_algebra(p, N),
        diagonal_pair(p, N),
        diagonal_pair(p, N, swap=True),
        nilpotent_2x2(p, N),
        dual_numbers(p, N, sign=-1),
        group_algebra(cyclic_group(2), p, N)[0],
        group_algebra(cyclic_group(3), p, N)[0],
        full_matrix_algebra(2, p, N),
        unitize(zero_mult(2, p, N)),
    ]
    if p != 2:
        out += [quad_ext(p, N), twisted_m2(p, N)]
    if p % 4 == 1:
        out.append(antisymmetric_4x4(p, N))
    return out


def random_star_algebra(p: int, N: int, rng: random.Random, max_d: int = 4) -> StarAlgebra:
    """A base algebra, sometimes a direct sum of two, in a random unimodular basis."""
    bases = [A for A in base_algebras(p, N) if A.d <= max_d]
    A = rng.choice(bases)
    if rng.random() < 0.3:
        small = [B for B in bases if B.d + A.d <= max_d]
        if small:
            A = algebra_direct_sum(A, rng.choice(small))
    S = random_unimodular(A.d, p, N, rng)
    B = change_basis(A, S)
    B.name = f"{A.name or 'algebra'} (basis change)"
    return B


def random_quasi_state(A: StarAlgebra, rng: random.Random) -> QuasiState | None:
    """psi + psi o invol for a random psi; None when that has norm below 1."""
    q = A.modulus
    psi = np.array([rng.randrange(q) for _ in range(A.d)], dtype=object)
    coords = (psi + A.invol.a.T.dot(psi)) % q
    phi = QuasiState(coords, label="random")
    return phi if validate_quasi_state(A, phi).valid else None


def gns_instances(count: int = 50, primes=(3, 5, 7), N: int = 16, seed: int = 0):
    """(A, phi) pairs whose form is unimodular, plus the number of skipped draws.

    Draws with non-unit elementary divisors are skipped: the quotient norm is
    then not the coordinate norm, which is outside the finite-rank construction.
    """
    rng = random.Random(seed)
    out, skipped = [], 0
    while len(out) < count:
        p = primes[len(out) % len(primes)]
        A = random_star_algebra(p, N, rng)
        if rng.random() < 0.5:
            states = coordinate_quasi_states(A)
            phi = rng.choice(states) if states else None
        else:
            phi = random_quasi_state(A, rng)
        if phi is None:
            skipped += 1
            continue
        try:
            gns(A, phi)
        except NotUnimodular:
            skipped += 1
            continue
        except PadicError:
            skipped += 1
            continue
        out.append((A, phi))
    return out, skipped


def random_representable(count: int = 20, primes=(3, 5), N: int = 16, seed: int = 0) -> list[StarAlgebra]:
    """Algebras for the representation pipeline; the first is the 4x4 example."""
    rng = random.Random(seed)
    out = [antisymmetric_4x4(5, N)]
    while len(out) < count:
        p = primes[len(out) % len(primes)]
        out.append(random_star_algebra(p, N, rng, max_d=3))
    return out


# ---------------------------------------------------------------------------
# groupoids


def _cyclic_action(k: int, points: int) -> list[list[int]]:
    """C_k acting on ``points`` points: the generator rotates the first k."""
    rows = []
    for g in range(k):
        rows.append([(x + g) % k if x < k else x for x in range(points)])
    return rows


def _flip_action(points: int) -> list[list[int]]:
    """C_2 acting by reversing 0..points-1."""
    return [list(range(points)), [points - 1 - x for x in range(points)]]


def groupoid_corpus() -> list:
    out = [pair_groupoid(n) for n in range(1, 6)]
    out += [group_groupoid(cyclic_group(k)) for k in range(2, 7)]
    out.append(group_groupoid(symmetric_group(3)))
    out += [
        disjoint_union(pair_groupoid(2), pair_groupoid(2)),
        disjoint_union(pair_groupoid(1), pair_groupoid(3)),
        disjoint_union(pair_groupoid(2), group_groupoid(cyclic_group(2))),
        disjoint_union(pair_groupoid(1), pair_groupoid(1), pair_groupoid(1)),
    ]
    C2, C3 = cyclic_group(2), cyclic_group(3)
    out += [
        action_groupoid(C2, _cyclic_action(2, 2), name="C2 on 2 points"),
        action_groupoid(C2, _flip_action(3), name="C2 flip on 3 points"),
        action_groupoid(C2, _cyclic_action(2, 4), name="C2 on 4 points, 2 fixed"),
        action_groupoid(C2, [[0, 1, 2, 3], [1, 0, 3, 2]], name="C2 free on 4 points"),
        action_groupoid(C3, _cyclic_action(3, 3), name="C3 on 3 points"),
        action_groupoid(C3, _cyclic_action(3, 4), name="C3 on 4 points, 1 fixed"),
        action_groupoid(C3, [[0], [0], [0]], name="C3 on 1 point"),
    ]
    return out


__all__ = [
    "nilpotent_2x2",
    "antisymmetric_4x4",
    "antisymmetric_4x4_matrix",
    "zero_mult",
    "diagonal_pair",
    "dual_numbers",
    "scalars_algebra",
    "random_unimodular",
    "random_gram",
    "base_algebras",
    "random_star_algebra",
    "random_quasi_state",
    "gns_instances",
    "random_representable",
    "groupoid_corpus",
    "FiniteGroup",
    "inv_mod",
    "nonresidue_int",
    "tensor",
    "validate_algebra",
]
