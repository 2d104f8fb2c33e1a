"""Finite-rank Banach *-algebras over Z_p given by structure constants.

Every algebra carries the coordinate sup norm, which at finite rank is the
p-adic norm of a free Z_p-module.  Suprema over unit balls are evaluated by
reducing mod p: the inequalities that matter (a norm equal to 1, or strictly
below 1) only depend on residues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .core import NormValue
from .exceptions import (
    DegeneratePrecision,
    InvalidAlgebra,
    InvalidQuasiState,
    MismatchError,
    NotUnimodular,
)
from .hilbert import QuasiHilbert, Report, adjoint, direct_sum
from .linalg import (
    PadicMatrix,
    det,
    fp_nullspace,
    fp_rank,
    inverse,
    kernel,
    mat_mul,
    min_valuation,
    smith,
    solve,
)


class StarAlgebra:
    """Free Z/p^N-module with basis e_0..e_{d-1} and

    * ``mult[i, j, k]``: coefficient of e_k in e_i e_j,
    * ``invol``: column j holds the coordinates of e_j*,
    * ``unit``: coordinates of 1, or None.
    """

    def __init__(self, prime, precision, mult, invol, unit=None, labels=None, name=None):
        self.prime = prime
        self.precision = precision
        q = prime**precision
        mult = np.array(mult, dtype=object)
        if mult.ndim != 3 or len(set(mult.shape)) != 1:
            raise InvalidAlgebra(f"structure tensor must be d x d x d, got {mult.shape}")
        self.mult = mult % q
        if not isinstance(invol, PadicMatrix):
            invol = PadicMatrix(prime, precision, invol)
        if invol.shape != (self.d, self.d):
            raise InvalidAlgebra("involution matrix has the wrong shape")
        self.invol = invol
        self.unit = None if unit is None else np.array([int(v) % q for v in unit], dtype=object)
        self.labels = labels or [f"e{i}" for i in range(self.d)]
        self.name = name

    @property
    def d(self) -> int:
        return self.mult.shape[0]

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def basis(self, i: int) -> np.ndarray:
        v = np.zeros(self.d, dtype=object)
        v[i] = 1
        return v

    def vec(self, x) -> np.ndarray:
        return np.array([int(v) % self.modulus for v in x], dtype=object)

    def mul(self, x, y) -> np.ndarray:
        d = self.d
        xy = np.outer(self.vec(x), self.vec(y)).reshape(1, d * d)
        return mat_mul(xy, self.mult.reshape(d * d, d), self.modulus).ravel()

    def star(self, x) -> np.ndarray:
        return mat_mul(self.invol.a, self.vec(x).reshape(-1, 1), self.modulus).ravel()

    def norm(self, x) -> NormValue:
        return NormValue(min_valuation(self.vec(x), self.prime, self.precision))

    def left_matrix(self, x) -> PadicMatrix:
        """Matrix of y -> x y."""
        d = self.d
        L = mat_mul(self.vec(x).reshape(1, d), self.mult.reshape(d, d * d), self.modulus)
        return PadicMatrix(self.prime, self.precision, L.reshape(d, d).T.copy(), reduced=True)

    def right_matrix(self, y) -> PadicMatrix:
        """Matrix of x -> x y."""
        d = self.d
        m = self.mult.transpose(1, 0, 2).reshape(d, d * d)
        R = mat_mul(self.vec(y).reshape(1, d), m, self.modulus)
        return PadicMatrix(self.prime, self.precision, R.reshape(d, d).T.copy(), reduced=True)

    def is_unital(self) -> bool:
        return self.unit is not None

    def with_unit(self, unit) -> StarAlgebra:
        return StarAlgebra(self.prime, self.precision, self.mult, self.invol, unit, self.labels, self.name)

    def triple_mod_p(self) -> np.ndarray:
        """``T[x, i, y, m]``: coordinate m of e_x e_i e_y, reduced mod p (int64)."""
        d, p = self.d, self.prime
        m = (self.mult % p).astype(np.int64)
        P = m.reshape(d * d, d) @ m.reshape(d, d * d) % p
        return P.reshape(d, d, d, d)

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "p": self.prime,
            "N": self.precision,
            "d": self.d,
            "mult": [[[str(v) for v in row] for row in block] for block in self.mult.tolist()],
            "invol": [[str(v) for v in row] for row in self.invol.tolist()],
        }
        if self.unit is not None:
            out["unit"] = [str(v) for v in self.unit]
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None, N: int | None = None) -> StarAlgebra:
        p = int(obj.get("p", p))
        N = int(obj.get("N", N))
        mult = [[[int(v) for v in row] for row in block] for block in obj["mult"]]
        invol = [[int(v) for v in row] for row in obj["invol"]]
        unit = [int(v) for v in obj["unit"]] if obj.get("unit") is not None else None
        A = cls(p, N, mult, invol, unit, obj.get("labels"))
        if "d" in obj and A.d != int(obj["d"]):
            raise InvalidAlgebra("declared d does not match the structure tensor")
        return A

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<StarAlgebra{tag} d={self.d} p={self.prime} N={self.precision}>"

    # constructors ----------------------------------------------------------
    @classmethod
    def from_matrices(cls, basis_mats, gram=None, labels=None, name=None) -> StarAlgebra:
        """The span of some matrices, closed under products and the adjoint.

        The involution is transpose, or the adjoint for ``gram`` if given.
        Raises InvalidAlgebra when the span is not closed.
        """
        mats = list(basis_mats)
        p, N = mats[0].prime, mats[0].precision
        q = p**N
        n = mats[0].rows
        d = len(mats)
        B = PadicMatrix(p, N, np.array([M.a.reshape(-1) for M in mats], dtype=object).T.copy())
        if gram is None:
            G = Gi = None
        else:
            G, Gi = gram, inverse(gram)

        def coords(M):
            x = solve(B, M.a.reshape(-1))
            if x is None:
                raise InvalidAlgebra("span is not closed")
            return x

        mult = np.zeros((d, d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                mult[i, j] = coords(mats[i] @ mats[j])
        invol = np.zeros((d, d), dtype=object)
        for j in range(d):
            Xs = mats[j].T if G is None else Gi @ mats[j].T @ G
            invol[:, j] = coords(Xs)
        unit = solve(B, PadicMatrix.identity(n, p, N).a.reshape(-1))
        A = cls(p, N, mult, invol, unit, labels, name)
        A.matrices = mats
        return A


# ---------------------------------------------------------------------------
# validation


def find_unit(A: StarAlgebra) -> np.ndarray | None:
    """Coordinates of a two-sided unit, if the algebra has one."""
    d = A.d
    # e is a unit iff sum_i e_i mult[i, j, k] = delta_jk = sum_i e_i mult[j, i, k]
    left = A.mult.transpose(1, 2, 0).reshape(d * d, d)
    right = A.mult.transpose(0, 2, 1).reshape(d * d, d)
    M = PadicMatrix(A.prime, A.precision, np.concatenate([left, right]), reduced=True)
    target = np.concatenate([np.eye(d, dtype=np.int64).reshape(-1)] * 2).astype(object)
    return solve(M, target)


def validate_algebra(A: StarAlgebra) -> Report:
    rep = Report()
    d, q, p = A.d, A.modulus, A.prime
    m = A.mult
    # associativity: (e_i e_j) e_l == e_i (e_j e_l)
    left = mat_mul(m.reshape(d * d, d), m.reshape(d, d * d), q).reshape(d, d, d, d)
    right = mat_mul(m.reshape(d * d, d), m.transpose(1, 0, 2).reshape(d, d * d), q)
    right = right.reshape(d, d, d, d).transpose(2, 0, 1, 3)
    bad = np.argwhere(np.any(left != right, axis=3))
    rep.checks["associative"] = True
    if len(bad):
        rep.fail("associative", {"triple": [int(t) for t in bad[0]]})
    J = A.invol
    rep.checks["involution_square"] = True
    J2 = J @ J
    if J2 != PadicMatrix.identity(d, p, A.precision):
        col = int(np.argwhere(J2.a != np.eye(d, dtype=np.int64))[0][1])
        rep.fail("involution_square", {"basis": col})
    # anti-homomorphism: (e_i e_j)* == e_j* e_i*
    lhs = mat_mul(m.reshape(d * d, d), J.a.T, q).reshape(d, d, d)
    Jm = np.einsum("aj,bi,abk->ijk", J.a, J.a, m) % q
    bad = np.argwhere(np.any(lhs != Jm, axis=2))
    rep.checks["anti_homomorphism"] = True
    if len(bad):
        rep.fail("anti_homomorphism", {"pair": [int(t) for t in bad[0]]})
    rep.checks["isometric_involution"] = det(J) % p != 0
    if not rep.checks["isometric_involution"]:
        rep.witnesses["isometric_involution"] = {"det": det(J)}
    if A.unit is not None:
        L, R = A.left_matrix(A.unit), A.right_matrix(A.unit)
        ok = L == PadicMatrix.identity(d, p, A.precision) and R == L
        rep.checks["unit"] = ok
    return rep


# ---------------------------------------------------------------------------
# constructions


def unitize(A: StarAlgebra) -> StarAlgebra:
    """``Z_p 1 (+) A`` with the unit as basis vector 0; unital inputs pass through."""
    if A.unit is not None:
        return A
    e = find_unit(A)
    if e is not None:
        return A.with_unit(e)
    d = A.d
    D = d + 1
    mult = np.zeros((D, D, D), dtype=object)
    mult[1:, 1:, 1:] = A.mult
    for i in range(D):
        mult[0, i, i] = 1
        mult[i, 0, i] = 1
    invol = np.zeros((D, D), dtype=object)
    invol[0, 0] = 1
    invol[1:, 1:] = A.invol.a
    unit = np.zeros(D, dtype=object)
    unit[0] = 1
    B = StarAlgebra(A.prime, A.precision, mult, invol, unit, ["1"] + list(A.labels))
    B.name = f"{A.name}+" if A.name else None
    return B


def unitize_inclusion(A: StarAlgebra, Aplus: StarAlgebra) -> np.ndarray:
    """d_plus x d coordinate matrix of A -> A+."""
    if Aplus.d == A.d:
        return np.eye(A.d, dtype=np.int64).astype(object)
    inc = np.zeros((A.d + 1, A.d), dtype=object)
    for i in range(A.d):
        inc[i + 1, i] = 1
    return inc


def matrix_algebra(A: StarAlgebra, k: int) -> StarAlgebra:
    """M_k(A) on the basis E_ab (x) e_i, index ``(a*k + b)*d + i``."""
    if A.unit is None:
        raise InvalidAlgebra("matrix_algebra needs a unital algebra")
    d = A.d
    D = k * k * d
    mult = np.zeros((D, D, D), dtype=object)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                I = (a * k + b) * d
                J = (b * k + c) * d
                K = (a * k + c) * d
                mult[I : I + d, J : J + d, K : K + d] = A.mult
    invol = np.zeros((D, D), dtype=object)
    for a in range(k):
        for b in range(k):
            src = (a * k + b) * d
            dst = (b * k + a) * d
            invol[dst : dst + d, src : src + d] = A.invol.a
    unit = np.zeros(D, dtype=object)
    for a in range(k):
        unit[(a * k + a) * d : (a * k + a) * d + d] = A.unit
    labels = [f"E{a + 1}{b + 1}.{l}" for a in range(k) for b in range(k) for l in A.labels]
    return StarAlgebra(A.prime, A.precision, mult, invol, unit, labels)


def corner_inclusion(A: StarAlgebra, k: int = 2) -> np.ndarray:
    """a -> E_11 (x) a as a (k*k*d) x d coordinate matrix."""
    inc = np.zeros((k * k * A.d, A.d), dtype=object)
    for i in range(A.d):
        inc[i, i] = 1
    return inc


def tensor(A: StarAlgebra, B: StarAlgebra) -> StarAlgebra:
    """A (x) B on the basis e_i (x) f_j, index ``i*dB + j``."""
    if (A.prime, A.precision) != (B.prime, B.precision):
        raise MismatchError("tensor factors over different rings")
    dA, dB = A.d, B.d
    mult = np.einsum("ijk,abc->iajbkc", A.mult, B.mult).reshape(dA * dB, dA * dB, dA * dB)
    invol = np.kron(A.invol.a, B.invol.a)
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = np.kron(A.unit, B.unit)
    labels = [f"{a}*{b}" for a in A.labels for b in B.labels]
    return StarAlgebra(A.prime, A.precision, mult, invol, unit, labels)


def algebra_direct_sum(*algs: StarAlgebra) -> StarAlgebra:
    p, N = algs[0].prime, algs[0].precision
    D = sum(A.d for A in algs)
    mult = np.zeros((D, D, D), dtype=object)
    invol = np.zeros((D, D), dtype=object)
    unit = np.zeros(D, dtype=object)
    has_unit = all(A.unit is not None for A in algs)
    o = 0
    for A in algs:
        if (A.prime, A.precision) != (p, N):
            raise MismatchError("summands over different rings")
        s = slice(o, o + A.d)
        mult[s, s, s] = A.mult
        invol[s, s] = A.invol.a
        if has_unit:
            unit[s] = A.unit
        o += A.d
    labels = [f"{k}.{l}" for k, A in enumerate(algs) for l in A.labels]
    return StarAlgebra(p, N, mult, invol, unit if has_unit else None, labels)


def change_basis(A: StarAlgebra, S: PadicMatrix) -> StarAlgebra:
    """Same algebra in the basis f_j = sum_i S[i, j] e_i (S invertible)."""
    p, N, q, d = A.prime, A.precision, A.modulus, A.d
    Si = inverse(S).a
    Sa = S.a
    # f_a f_b = sum S[i,a] S[j,b] mult[i,j,k] e_k, then convert back with S^-1
    t = np.einsum("ia,jb,ijk->abk", Sa, Sa, A.mult) % q
    mult = mat_mul(t.reshape(d * d, d), Si.T.copy(), q).reshape(d, d, d)
    invol = mat_mul(mat_mul(Si, A.invol.a, q), Sa, q)
    unit = None if A.unit is None else mat_mul(Si, A.unit.reshape(-1, 1), q).ravel()
    return StarAlgebra(p, N, mult, invol, unit, None, A.name)


def mod_p(A: StarAlgebra) -> StarAlgebra:
    """A/pA as an algebra over F_p (precision 1)."""
    p = A.prime
    return StarAlgebra(
        p, 1, A.mult % p, PadicMatrix(p, 1, A.invol.a % p, reduced=True),
        None if A.unit is None else A.unit % p, A.labels, A.name,
    )


# ---------------------------------------------------------------------------
# ultra-antisymmetry


def _ultra_condition(A: StarAlgebra) -> np.ndarray:
    """Rows (b, c, m), columns i: coordinate m of e_b* e_i e_c + e_c* e_i* e_b mod p."""
    d, p = A.d, A.prime
    T = A.triple_mod_p()
    J = (A.invol.a % p).astype(np.int64)
    t1 = np.einsum("xb,xicm->bcmi", J, T, optimize=True) % p
    # e_c* e_i* e_b = sum_x sum_z J[x,c] J[z,i] e_x e_z e_b
    t2 = np.einsum("zi,xzbm->xbmi", J, T, optimize=True) % p
    t2 = np.einsum("xc,xbmi->bcmi", J, t2, optimize=True) % p
    return ((t1 + t2) % p).reshape(d * d * d, d)


def ultra_antisymmetric_space(A: StarAlgebra) -> np.ndarray:
    """F_p-basis (rows) of the residues a with b*ac + c*a*b = 0 mod p for all b, c.

    A norm-one element is ultra-antisymmetric exactly when its residue is a
    nonzero vector of this space.
    """
    return fp_nullspace(_ultra_condition(A), A.prime)


def is_ultra_antisymmetric(A: StarAlgebra, a) -> bool:
    a = A.vec(a)
    v = min_valuation(a, A.prime, A.precision)
    if v is None:
        return False
    abar = (a // A.prime**v) % A.prime
    C = _ultra_condition(A)
    return not np.any(C.dot(abar.astype(np.int64)) % A.prime)


# ---------------------------------------------------------------------------
# quasi-states


@dataclass
class QuasiState:
    coords: np.ndarray
    label: str = ""

    def __call__(self, x) -> int:
        return int(np.dot(self.coords, np.asarray(x, dtype=object)))

    def to_json(self):
        return {"coords": [str(v) for v in self.coords], "label": self.label}


def validate_quasi_state(A: StarAlgebra, phi) -> Report:
    coords = phi.coords if isinstance(phi, QuasiState) else A.vec(phi)
    rep = Report()
    # phi(e_j*) = sum_x invol[x, j] phi_x must equal phi_j
    sym = mat_mul(A.invol.a.T.copy(), coords.reshape(-1, 1), A.modulus).ravel()
    bad = np.flatnonzero(sym != coords)
    rep.checks["symmetric"] = not len(bad)
    if len(bad):
        j = int(bad[0])
        rep.witnesses["symmetric"] = {"basis": j, "phi(e*)": int(sym[j]), "phi(e)": int(coords[j])}
    v = min_valuation(coords, A.prime, A.precision)
    rep.checks["norm_one"] = v == 0
    if v != 0:
        rep.witnesses["norm_one"] = {"norm": str(NormValue(v))}
    return rep


def coordinate_quasi_states(A: StarAlgebra, with_notices: bool = False):
    """phi_k(f) = f_k + (f*)_k, keeping the ones of norm one."""
    d, q = A.d, A.modulus
    rows = (np.eye(d, dtype=np.int64).astype(object) + A.invol.a) % q
    states, notices = [], []
    for k in range(d):
        phi = QuasiState(rows[k].copy(), label=f"phi_{k}")
        rep = validate_quasi_state(A, phi)
        if rep.valid:
            states.append(phi)
        else:
            notices.append(f"phi_{k} dropped: {sorted(n for n, ok in rep.checks.items() if not ok)}")
    return (states, notices) if with_notices else states


def form_matrix(A: StarAlgebra, phi: QuasiState) -> PadicMatrix:
    """Phi[i, j] = phi(e_i* e_j)."""
    d, q = A.d, A.modulus
    F = mat_mul(A.mult.reshape(d * d, d), phi.coords.reshape(-1, 1), q).reshape(d, d)
    return PadicMatrix(A.prime, A.precision, mat_mul(A.invol.a.T.copy(), F, q), reduced=True)


# ---------------------------------------------------------------------------
# representations


@dataclass
class Representation:
    """A linear map from ``source`` into B(target), stored on the basis."""

    source: StarAlgebra
    target: QuasiHilbert
    images: list[PadicMatrix]
    cyclic_vector: np.ndarray | None = None
    info: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.target.rank

    def _stack(self) -> np.ndarray:
        r = self.dim
        return np.array([M.a.reshape(-1) for M in self.images], dtype=object).reshape(len(self.images), r * r)

    def __call__(self, x) -> PadicMatrix:
        A = self.source
        r = self.dim
        out = mat_mul(A.vec(x).reshape(1, -1), self._stack(), A.modulus).reshape(r, r)
        return PadicMatrix(A.prime, A.precision, out, reduced=True)

    def check(self, probes: int = 0, seed: int = 0) -> Report:
        """Multiplicativity and involution on basis pairs, contractivity, isometry."""
        A, H = self.source, self.target
        rep = Report()
        d = A.d
        pairs_ok = True
        for i in range(d):
            for j in range(d):
                if self.images[i] @ self.images[j] != self(A.mult[i, j]):
                    rep.fail("multiplicative", {"pair": [i, j]})
                    pairs_ok = False
                    break
            if not pairs_ok:
                break
        rep.checks.setdefault("multiplicative", True)
        Gi = inverse(H.gram)
        rep.checks["involutive"] = True
        for j in range(d):
            if adjoint(H, self.images[j], Gi) != self(A.invol.a[:, j]):
                rep.fail("involutive", {"basis": j})
                break
        rep.checks["contractive"] = all(min_valuation(M.a, A.prime, A.precision) != -1 for M in self.images)
        rep.checks["isometric"] = self.is_isometric(probes, seed)
        return rep

    def is_isometric(self, probes: int = 0, seed: int = 0) -> bool:
        """Exact test: the map is isometric iff it is injective mod p.

        A norm p^-v element is p^v times a norm-one element, so its image has
        norm p^-v exactly when the norm-one residue is not killed.
        """
        A = self.source
        if fp_rank(self._stack() % A.prime, A.prime) != A.d:
            return False
        rng = random.Random(seed)
        for _ in range(probes):
            x = random_element(A, rng)
            if min_valuation(self(x).a, A.prime, A.precision) != min_valuation(x, A.prime, A.precision):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "images": [[[str(v) for v in row] for row in M.tolist()] for M in self.images],
            "cyclic_vector": None if self.cyclic_vector is None else [str(v) for v in self.cyclic_vector],
        }


def random_element(A: StarAlgebra, rng: random.Random, max_val: int | None = None) -> np.ndarray:
    """Random element whose norm is p^-v for a random small v."""
    q = A.modulus
    x = np.array([rng.randrange(q) for _ in range(A.d)], dtype=object)
    top = min(max_val if max_val is not None else 3, A.precision - 1)
    v = rng.randrange(top + 1)
    x[rng.randrange(A.d)] = rng.randrange(1, A.prime)  # force a unit coordinate
    return (x * A.prime**v) % q


def direct_sum_reps(reps: list[Representation]) -> Representation:
    if not reps:
        raise ValueError("empty direct sum")
    A = reps[0].source
    for r in reps[1:]:
        if r.source is not A:
            raise MismatchError("representations of different algebras")
    H = direct_sum(*[r.target for r in reps])
    images = [PadicMatrix.block_diag([r.images[i] for r in reps]) for i in range(A.d)]
    return Representation(A, H, images)


# ---------------------------------------------------------------------------
# GNS


@dataclass
class GNSResult:
    hilbert: QuasiHilbert
    rep: Representation
    xi: np.ndarray
    null_basis: list[np.ndarray]
    quotient_columns: list[int]
    projection: np.ndarray
    checks: Report

    def __iter__(self):
        return iter((self.hilbert, self.rep, self.xi))


def gns(A: StarAlgebra, phi, strict: bool = True) -> GNSResult:
    """GNS triple (H_phi, pi_phi, xi_phi) of a quasi-state on a unital algebra.

    The null ideal is the saturated kernel of the form matrix; the quotient is
    spanned by the basis vectors outside the kernel's pivot columns.
    """
    if not isinstance(phi, QuasiState):
        phi = QuasiState(A.vec(phi))
    if A.unit is None:
        raise InvalidAlgebra("gns needs a unital algebra; call unitize first")
    qs = validate_quasi_state(A, phi)
    if not qs.valid:
        raise InvalidQuasiState(f"not a quasi-state: {qs.to_json()['checks']}")
    p, N, q, d = A.prime, A.precision, A.modulus, A.d
    Phi = form_matrix(A, phi)
    S = smith(Phi)
    divs = [k for k in S.divisors if k is not None]
    if any(k >= N - 1 for k in divs) and N > 1:
        raise DegeneratePrecision(f"form has an elementary divisor p^{max(divs)} at precision {N}")
    partial = [k for k in divs if k > 0]
    if partial and strict:
        raise NotUnimodular(f"form has non-unit elementary divisors {partial}; the quotient norm is not the coordinate norm")
    K = kernel(Phi)
    null = K.basis
    pivots = []
    for row in null:
        # rows of the kernel RREF: the first unit coordinate is the pivot (= 1)
        pivots.append(next(j for j in range(d) if int(row[j]) % p))
    cols = [j for j in range(d) if j not in pivots]
    r = len(cols)
    # projection A -> A/I: drop the kernel component along pivot columns
    proj = np.zeros((r, d), dtype=object)
    for t, j in enumerate(cols):
        proj[t, j] = 1
    for row, pc in zip(null, pivots):
        proj[:, pc] = (-row[cols]) % q
    G = PadicMatrix(p, N, Phi.a[np.ix_(cols, cols)].copy(), reduced=True)
    H = QuasiHilbert(G)
    images = []
    for k in range(d):
        L = A.left_matrix(A.basis(k)).a[:, cols]
        images.append(PadicMatrix(p, N, mat_mul(proj, L, q), reduced=True))
    xi = mat_mul(proj, A.unit.reshape(-1, 1), q).ravel()
    rep = Representation(A, H, images, xi, {"state": phi.label})
    checks = Report()
    checks.checks["unimodular"] = not partial
    ident = True
    for k in range(d):
        val = int(np.dot(xi, mat_mul(G.a, mat_mul(images[k].a, xi.reshape(-1, 1), q), q).ravel())) % q
        if val != phi.coords[k] % q:
            ident = False
            checks.witnesses["gns_identity"] = {"basis": k}
            break
    checks.checks["gns_identity"] = ident
    if not partial:
        Gi = inverse(G)
        checks.checks["star_rep"] = all(
            adjoint(H, images[k], Gi) == rep(A.invol.a[:, k]) for k in range(d)
        )
    checks.checks["contractive"] = True  # structure constants are integral
    cyc = np.array([mat_mul(M.a, xi.reshape(-1, 1), q).ravel() for M in images], dtype=object)
    checks.checks["cyclic"] = fp_rank(cyc % p, p) == r if r else True
    return GNSResult(H, rep, xi, null, cols, proj, checks)


# ---------------------------------------------------------------------------
# quasi-C* certification


@dataclass
class QCCertificate:
    certified: bool
    witnesses: dict[int, dict]
    counterexample: list[int] | None
    kills_all_quasi_states: bool | None
    ultra_space: list[list[int]]
    states: list[str]
    probes: list[dict]
    notices: list[str]

    @property
    def predicted(self) -> bool:
        """Certification is expected whenever there are no ultra-antisymmetric elements."""
        return not self.ultra_space

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
            "counterexample": self.counterexample,
            "kills_all_quasi_states": self.kills_all_quasi_states,
            "ultra_space": self.ultra_space,
            "states": self.states,
            "probes": self.probes,
            "notices": self.notices,
        }


def _state_tensor(A: StarAlgebra, states: list[QuasiState]) -> np.ndarray:
    """W[s, i, j, t] = phi_s(e_i* e_t e_j) mod p."""
    p = A.prime
    T = A.triple_mod_p()
    J = (A.invol.a % p).astype(np.int64)
    V = np.einsum("xi,xtjm->itjm", J, T, optimize=True) % p
    Psi = np.array([[int(c) % p for c in s.coords] for s in states], dtype=np.int64).reshape(len(states), A.d)
    return np.einsum("sm,itjm->sijt", Psi, V, optimize=True) % p


def quasi_cstar_certify(A: StarAlgebra, probes: int = 100, seed: int = 0) -> QCCertificate:
    """Look for norm-attaining coordinate quasi-states for every element.

    The test is exact: a norm-one element is witnessed by some phi_k(e_i* a e_j)
    being a unit, so the certificate fails precisely on the residues in the
    kernel of the stacked map a -> (phi_k(e_i* a e_j)).
    """
    if A.unit is None:
        e = find_unit(A)
        if e is None:
            raise InvalidAlgebra("quasi-C* certification needs a unital algebra")
        A = A.with_unit(e)
    p, d = A.prime, A.d
    states, notices = coordinate_quasi_states(A, with_notices=True)
    ultra = ultra_antisymmetric_space(A)
    witnesses: dict[int, dict] = {}
    if states:
        W = _state_tensor(A, states)
        stacked = W.reshape(-1, d)
        null = fp_nullspace(stacked, p)
        for t in range(d):
            hits = np.argwhere(W[..., t] % p != 0)
            if len(hits):
                s, i, j = (int(v) for v in hits[0])
                witnesses[t] = {"state": states[s].label, "b": i, "c": j}
    else:
        W = None
        null = np.eye(d, dtype=np.int64)
    counter = None if len(null) == 0 else [int(v) for v in null[0]]
    kills = None
    if counter is not None:
        kills = _kills_every_quasi_state(A, np.array(counter, dtype=np.int64))
    rng = random.Random(seed)
    probe_log = []
    for _ in range(probes if W is not None else 0):
        x = random_element(A, rng)
        v = min_valuation(x, p, A.precision)
        xbar = np.array([int(c) // p**v % p for c in x], dtype=np.int64)
        vals = np.tensordot(W, xbar, axes=([3], [0])) % p
        hit = np.argwhere(vals != 0)
        entry = {"valuation": v, "witnessed": bool(len(hit))}
        if len(hit):
            s, i, j = (int(t) for t in hit[0])
            entry.update({"state": states[s].label, "b": i, "c": j})
        probe_log.append(entry)
    return QCCertificate(
        certified=counter is None,
        witnesses=witnesses,
        counterexample=counter,
        kills_all_quasi_states=kills,
        ultra_space=[[int(v) for v in row] for row in ultra],
        states=[s.label for s in states],
        probes=probe_log,
        notices=notices,
    )


def _kills_every_quasi_state(A: StarAlgebra, abar: np.ndarray) -> bool:
    """True when |phi(b* a c)| < 1 for every quasi-state phi whatsoever.

    Any symmetric phi vanishes on y* - y, so it suffices that every e_i* a e_j
    lies in the image of (invol - 1) mod p.
    """
    p, d = A.prime, A.d
    T = A.triple_mod_p()
    J = (A.invol.a % p).astype(np.int64)
    V = np.einsum("xi,xtjm->itjm", J, T, optimize=True) % p
    vals = np.tensordot(V, abar, axes=([1], [0])) % p  # [i, j, m]
    img = (J - np.eye(d, dtype=np.int64)) % p
    base = fp_rank(img, p)
    stacked = np.concatenate([img.T, vals.reshape(-1, d)]) % p
    return fp_rank(stacked, p) == base
