"""Finite-rank quasi-Hilbert spaces.

At finite rank a quasi-Hilbert space over Z_p is a symmetric Gram matrix G
with unit determinant: the duality condition ``sup |<eta, xi>| = ||xi||``
says exactly that ``xi -> G xi`` preserves the sup norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PadicInt, inv_mod, is_square_mod, nonresidue_int, sqrt_mod
from .exceptions import (
    MismatchError,
    NotSymmetric,
    NotUnimodular,
    UnsupportedPrime,
)
from .linalg import (
    PadicMatrix,
    congruence_diagonalize,
    det,
    fp_nullspace,
    inverse,
    mat_mul,
)


@dataclass
class Report:
    """Pass/fail per named check, with witnesses for the failures."""

    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    def fail(self, name: str, witness=None):
        self.checks[name] = False
        if witness is not None:
            self.witnesses[name] = witness

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "checks": {k: ("pass" if v else "fail") for k, v in self.checks.items()},
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
        }

    def __bool__(self):
        return self.valid


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


class QuasiHilbert:
    """``(Z_p^n, <x, y> = x^T G y)`` with G symmetric and unimodular.

    Construction only checks shapes; call :func:`validate` for the axioms.
    Operations that need them call :meth:`require_valid`.
    """

    def __init__(self, gram):
        if not isinstance(gram, PadicMatrix):
            raise TypeError("gram must be a PadicMatrix")
        if not gram.is_square():
            raise MismatchError("Gram matrix must be square")
        self.gram = gram

    @classmethod
    def from_diagonal(cls, values, p: int, N: int) -> QuasiHilbert:
        return cls(PadicMatrix.diag(values, p, N))

    @classmethod
    def identity(cls, n: int, p: int, N: int) -> QuasiHilbert:
        return cls(PadicMatrix.identity(n, p, N))

    @property
    def prime(self) -> int:
        return self.gram.prime

    @property
    def precision(self) -> int:
        return self.gram.precision

    @property
    def rank(self) -> int:
        return self.gram.rows

    def require_valid(self) -> None:
        if not self.gram.is_symmetric():
            raise NotSymmetric("Gram matrix is not symmetric")
        if det(self.gram) % self.prime == 0:
            raise NotUnimodular("Gram matrix has non-unit determinant")

    def gram_inverse(self) -> PadicMatrix:
        return inverse(self.gram)

    def to_json(self) -> dict:
        return {
            "p": self.prime,
            "N": self.precision,
            "gram": [[str(v) for v in row] for row in self.gram.tolist()],
        }

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None, N: int | None = None) -> QuasiHilbert:
        p = int(obj.get("p", p))
        N = int(obj.get("N", N))
        return cls(PadicMatrix(p, N, [[int(v) for v in row] for row in obj["gram"]]))

    def __repr__(self):
        return f"QuasiHilbert(p={self.prime}, N={self.precision}, gram={self.gram.tolist()})"


def validate(H: QuasiHilbert) -> Report:
    rep = Report()
    G = H.gram
    rep.checks["symmetric"] = True
    if not G.is_symmetric():
        bad = np.argwhere(G.a != G.a.T)[0]
        rep.fail("symmetric", {"i": int(bad[0]), "j": int(bad[1])})
    d = det(G)
    rep.checks["unimodular"] = True
    if d % H.prime == 0:
        # a unit vector xi with G xi = 0 mod p has ||G xi|| < 1 = ||xi||
        ker = fp_nullspace(G.a % H.prime, H.prime)
        rep.fail("unimodular", {"det": d, "xi": [int(v) for v in ker[0]]})
    return rep


def pairing(H: QuasiHilbert, xi, eta) -> PadicInt:
    xi = np.asarray(xi, dtype=object).reshape(-1)
    eta = np.asarray(eta, dtype=object).reshape(-1)
    if xi.size != H.rank or eta.size != H.rank:
        raise MismatchError(f"vectors must have length {H.rank}")
    q = H.gram.modulus
    Ge = mat_mul(H.gram.a, (eta % q).reshape(-1, 1), q).ravel()
    return PadicInt(H.prime, H.precision, int(np.dot(xi % q, Ge)))


def adjoint(H: QuasiHilbert, T: PadicMatrix, Ginv: PadicMatrix | None = None) -> PadicMatrix:
    """``T* = G^-1 T^T G``, the unique operator with <xi, T eta> = <T* xi, eta>."""
    if T.shape != H.gram.shape:
        raise MismatchError(f"operator shape {T.shape} vs rank {H.rank}")
    if Ginv is None:
        Ginv = inverse(H.gram)
    return Ginv @ T.T @ H.gram


@dataclass
class OrthoBasis:
    """Columns of ``U`` are an orthogonal basis: ``U^T G U = diag(diagonal)``.

    After square-class normalization the diagonal is ``m`` ones followed by
    copies of the non-residue ``u``; ``m`` is None before normalization.
    """

    U: PadicMatrix
    diagonal: list[int]
    m: int | None = None
    u: int | None = None

    @property
    def D(self) -> PadicMatrix:
        return PadicMatrix.diag(self.diagonal, self.U.prime, self.U.precision)

    def gram(self) -> PadicMatrix:
        """Rebuild the original Gram matrix, ``U^-T D U^-1``."""
        Ui = inverse(self.U)
        return Ui.T @ self.D @ Ui

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(),
            "diagonal": [str(v) for v in self.diagonal],
            "m": self.m,
            "u": self.u,
        }


def orthogonal_basis(H: QuasiHilbert) -> OrthoBasis:
    if H.prime == 2:
        raise UnsupportedPrime("orthogonal bases are only constructed for odd p")
    U, D = congruence_diagonalize(H.gram)
    return OrthoBasis(U, [int(D.a[i, i]) for i in range(H.rank)])


def normalize_square_classes(H: QuasiHilbert, u: int | None = None) -> OrthoBasis:
    """Rescale an orthogonal basis so every diagonal entry is 1 or ``u``.

    Within each class the original order is kept, ones first.
    """
    p, N = H.prime, H.precision
    if p == 2:
        raise UnsupportedPrime("square classes are only handled for odd p")
    if u is None:
        u = nonresidue_int(p)
    ob = orthogonal_basis(H)
    q = p**N
    cols, diag, ones, twists = ob.U.a.copy(), [], [], []
    for i, a in enumerate(ob.diagonal):
        if is_square_mod(a, p, N):
            s = sqrt_mod(a, p, N)
            target, bucket = 1, ones
        else:
            s = sqrt_mod(a * inv_mod(u, p, N), p, N)
            target, bucket = u % q, twists
        cols[:, i] = cols[:, i] * inv_mod(s, p, N) % q
        bucket.append(i)
        diag.append(target)
    order = ones + twists
    U = PadicMatrix(p, N, cols[:, order], reduced=True)
    return OrthoBasis(U, [diag[i] for i in order], m=len(ones), u=u % q)


def direct_sum(*spaces: QuasiHilbert) -> QuasiHilbert:
    if not spaces:
        raise ValueError("need at least one summand")
    for H in spaces[1:]:
        if (H.prime, H.precision) != (spaces[0].prime, spaces[0].precision):
            raise MismatchError("summands over different rings")
    return QuasiHilbert(PadicMatrix.block_diag([H.gram for H in spaces]))


def bounded_algebra(H: QuasiHilbert):
    """B(H) = M_n(Z_p) on the matrix units E_ij, with involution G^-1 X^T G."""
    from .star import StarAlgebra

    H.require_valid()
    n, p, N = H.rank, H.prime, H.precision
    q = p**N
    d = n * n
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[i * n + j, j * n + l, i * n + l] = 1
    Gi = inverse(H.gram).a
    G = H.gram.a
    invol = np.zeros((d, d), dtype=object)
    # (E_ij)* = G^-1 E_ji G has (a, b) entry Gi[a, j] * G[i, b]
    for i in range(n):
        for j in range(n):
            invol[:, i * n + j] = (np.outer(Gi[:, j], G[i, :]) % q).reshape(-1)
    unit = np.zeros(d, dtype=object)
    for i in range(n):
        unit[i * n + i] = 1
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return StarAlgebra(p, N, mult.astype(object), PadicMatrix(p, N, invol), unit, labels=labels)
