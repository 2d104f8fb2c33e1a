"""Commutants, bicommutants and centers of matrix subalgebras of M_n(Z_p).

Matrices are vectorized row-major, so ``vec(X M) = (I kron M^T) vec(X)`` and
``vec(M X) = (M kron I) vec(X)``.  The commutant is cut out one generator at a
time: the current solution space is a free module with basis B, and each new
generator only needs the kernel of ``c -> [sum c_i B_i, M]``, which is far
smaller than the full n^2 x n^2 Sylvester system.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import MismatchError, PrecisionExhausted, PrecisionWarning
from .linalg import PadicMatrix, Span, _eye, kernel, mat_mul


def _as_array(M, q: int) -> np.ndarray:
    if isinstance(M, PadicMatrix):
        return M.a
    return np.array([[int(v) % q for v in row] for row in M], dtype=object)


@dataclass
class MatrixSubalgebra:
    """The Z/p^N-span ``basis`` inside M_n, together with its generators.

    ``flags`` records anything that only holds modulo p^N (non-saturated
    kernels met along the way).
    """

    n: int
    prime: int
    precision: int
    generators: list[np.ndarray]
    span: Span
    flags: list[str] = field(default_factory=list)

    @classmethod
    def from_generators(cls, gens, p: int, N: int, closure: bool = True, unital: bool = False):
        q = p**N
        mats = [_as_array(g, q) for g in gens]
        if not mats:
            raise MismatchError("need at least one generator")
        n = mats[0].shape[0]
        if any(m.shape != (n, n) for m in mats):
            raise MismatchError("generators must be square and of one size")
        if unital:
            mats = [_eye(n)] + mats
        span = Span([m.reshape(-1) for m in mats], n * n, p, N)
        S = cls(n, p, N, mats, span)
        if closure:
            S._close()
        return S

    @property
    def rank(self) -> int:
        return self.span.rank

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def basis_matrices(self) -> list[np.ndarray]:
        return [v.reshape(self.n, self.n) for v in self.span.basis]

    def _close(self):
        # words in the generators: repeatedly right-multiply the basis by generators
        q, n2 = self.modulus, self.n * self.n
        while self.span.rank < n2:
            prods = [mat_mul(B, g, q).reshape(-1) for B in self.basis_matrices() for g in self.generators]
            grown = Span(list(self.span.basis) + prods, n2, self.prime, self.precision)
            if grown.rank == self.span.rank and grown <= self.span:
                break
            self.span = grown

    def contains(self, M) -> bool:
        return self.span.contains(_as_array(M, self.modulus).reshape(-1))

    def __le__(self, other: MatrixSubalgebra) -> bool:
        return self.span <= other.span

    def same_span(self, other: MatrixSubalgebra) -> bool:
        return self.span == other.span

    def is_closed(self) -> bool:
        q = self.modulus
        Bs = self.basis_matrices()
        return all(self.contains(mat_mul(a, b, q)) for a in Bs for b in Bs)

    def is_star_closed(self) -> bool:
        """Closed under transpose, the adjoint for the identity Gram."""
        return all(self.contains(B.T) for B in self.basis_matrices())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.prime,
            "N": self.precision,
            "rank": self.rank,
            "saturated": self.span.saturated,
            "basis": [[str(int(v)) for v in row] for row in self.span.basis],
            "flags": list(self.flags),
        }

    def __repr__(self):
        return f"MatrixSubalgebra(n={self.n}, rank={self.rank}, p={self.prime}, N={self.precision})"


def _commutator_columns(basis: np.ndarray, M: np.ndarray, n: int, q: int) -> np.ndarray:
    """Column i is vec(B_i M - M B_i) for the rows B_i of ``basis``."""
    k = basis.shape[0]
    X = basis.reshape(k, n, n)
    cols = np.empty((n * n, k), dtype=object)
    for i in range(k):
        cols[:, i] = ((mat_mul(X[i], M, q) - mat_mul(M, X[i], q)) % q).reshape(-1)
    return cols


def commutant(S: MatrixSubalgebra, strict: bool = True) -> MatrixSubalgebra:
    p, N, n, q = S.prime, S.precision, S.n, S.modulus
    basis = _eye(n * n)
    flags = []
    # the basis of S generates the same commutant as any generating set; use
    # the smaller of the two lists
    gens = S.generators if len(S.generators) <= S.rank else S.basis_matrices()
    for gi, M in enumerate(gens):
        if len(basis) == 0:
            break
        C = _commutator_columns(basis, M, n, q)
        if not np.any(C):
            continue
        K = kernel(PadicMatrix(p, N, C, reduced=True))
        if K.torsion:
            msg = f"commutant with generator {gi} has {len(K.torsion)} truncation-only solution(s)"
            if strict:
                raise PrecisionExhausted(msg)
            warnings.warn(msg, PrecisionWarning, stacklevel=2)
            flags.append(msg)
        coeffs = K.basis + (K.torsion if not strict else [])
        if not coeffs:
            basis = np.zeros((0, n * n), dtype=object)
            break
        basis = mat_mul(np.array(coeffs, dtype=object), basis, q)
    span = Span(list(basis), n * n, p, N)
    if not span.saturated and strict:
        raise PrecisionExhausted("commutant is not a direct summand mod p^N")
    mats = [v.reshape(n, n) for v in span.basis]
    return MatrixSubalgebra(n, p, N, mats, span, flags)


@dataclass
class BicommutantCheck:
    is_vn: bool
    bicommutant: MatrixSubalgebra
    commutant: MatrixSubalgebra

    def to_json(self) -> dict:
        return {
            "is_vn": self.is_vn,
            "commutant_rank": self.commutant.rank,
            "bicommutant": self.bicommutant.to_json(),
        }


def bicommutant_check(S: MatrixSubalgebra, strict: bool = True) -> BicommutantCheck:
    C = commutant(S, strict)
    CC = commutant(C, strict)
    return BicommutantCheck(CC.same_span(S), CC, C)


def center(S: MatrixSubalgebra, strict: bool = True) -> MatrixSubalgebra:
    """Z(S) = S intersected with S'."""
    C = commutant(S, strict)
    Z = S.span.intersect(C.span)
    n = S.n
    return MatrixSubalgebra(n, S.prime, S.precision, [v.reshape(n, n) for v in Z.basis], Z,
                            list(C.flags))


def is_factor(S: MatrixSubalgebra, strict: bool = True) -> bool:
    return center(S, strict).rank == 1


def intersection(S: MatrixSubalgebra, T: MatrixSubalgebra) -> MatrixSubalgebra:
    if (S.n, S.prime, S.precision) != (T.n, T.prime, T.precision):
        raise MismatchError("subalgebras of different matrix rings")
    Z = S.span.intersect(T.span)
    return MatrixSubalgebra(S.n, S.prime, S.precision, [v.reshape(S.n, S.n) for v in Z.basis], Z)


def scalars(n: int, p: int, N: int) -> MatrixSubalgebra:
    return MatrixSubalgebra.from_generators([_eye(n)], p, N, closure=False)


def full_matrices(n: int, p: int, N: int) -> MatrixSubalgebra:
    return compacts(n, p, N)


def compacts(n: int, p: int, N: int) -> MatrixSubalgebra:
    """Span of the matrix units E_xy (no unit adjoined)."""
    gens = []
    for x in range(n):
        for y in range(n):
            E = np.zeros((n, n), dtype=object)
            E[x, y] = 1
            gens.append(E)
    return MatrixSubalgebra.from_generators(gens, p, N, closure=False)


def group_subalgebra(G, p: int, N: int) -> MatrixSubalgebra:
    """lambda(Z_p[G]) inside M_|G|."""
    from .groupoid import left_translation

    gens = [left_translation(G, g) for g in range(G.order)]
    return MatrixSubalgebra.from_generators(gens, p, N, closure=False)


def class_sum_span(G, p: int, N: int) -> Span:
    """Span of lambda(chi_C) over the conjugacy classes C."""
    from .groupoid import class_sums, left_translation

    q = p**N
    n = G.order
    L = [left_translation(G, g) for g in range(n)]
    vecs = []
    for chi in class_sums(G):
        M = np.zeros((n, n), dtype=object)
        for g in range(n):
            if chi[g]:
                M = M + L[g]
        vecs.append((M % q).reshape(-1))
    return Span(vecs, n * n, p, N)
