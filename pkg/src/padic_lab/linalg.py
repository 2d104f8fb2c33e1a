"""Dense linear algebra over the chain ring Z/p^N.

Matrices are numpy object arrays holding Python ints reduced into
``[0, p**N)``.  Every nonzero element of Z/p^N is ``p**k`` times a unit, so
elimination always pivots on an entry of minimal valuation: that entry
divides everything else still in play.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import NormValue, inv_mod, vp
from .exceptions import (
    MismatchError,
    NotInvertible,
    NotSymmetric,
    NotUnimodular,
    PrecisionWarning,
    UnsupportedPrime,
)

# ---------------------------------------------------------------------------
# raw helpers on object arrays


def as_residues(x, q: int) -> np.ndarray:
    arr = np.array(x, dtype=object)
    if arr.ndim == 0:
        return arr
    return np.vectorize(lambda v: int(v) % q, otypes=[object])(arr) if arr.size else arr


def mat_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Exact ``a @ b mod q`` using int64 limbs where object arithmetic would crawl."""
    n = a.shape[-1]
    if a.size == 0 or b.size == 0:
        return (np.zeros((a.shape[0], b.shape[-1]), dtype=np.int64)).astype(object)
    nbits = max(n, 1).bit_length()
    qbits = q.bit_length()
    if 2 * qbits + nbits <= 62:
        c = a.astype(np.int64) @ b.astype(np.int64)
        return (c % q).astype(object)
    k = (62 - nbits) // 2
    mask = (1 << k) - 1
    limbs = -(-qbits // k)
    ai = [((a >> (k * i)) & mask).astype(np.int64) for i in range(limbs)]
    bi = [((b >> (k * i)) & mask).astype(np.int64) for i in range(limbs)]
    out = np.zeros((a.shape[0], b.shape[-1]), dtype=object)
    for i in range(limbs):
        for j in range(limbs):
            out = out + (ai[i] @ bi[j]).astype(object) * (1 << (k * (i + j)))
    return out % q


def min_valuation(arr: np.ndarray, p: int, N: int) -> int | None:
    """Smallest valuation among the entries; None if all are 0 mod p**N."""
    if arr.size == 0:
        return None
    for k in range(N):
        if np.any(arr % p ** (k + 1) != 0):
            return k
    return None


def _first_of_min_valuation(arr: np.ndarray, p: int, N: int):
    """(row, col, k) of the first entry (row-major) of minimal valuation."""
    for k in range(N):
        mask = arr % p ** (k + 1) != 0
        if mask.any():
            flat = int(np.argmax(mask))
            return flat // arr.shape[1], flat % arr.shape[1], k
    return None


def _eye(n: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=object)
    for i in range(n):
        e[i, i] = 1
    return e


def _zeros(*shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int64).astype(object)


# ---------------------------------------------------------------------------
# the matrix type


class PadicMatrix:
    """A dense matrix over Z/p^N."""

    __slots__ = ("prime", "precision", "a")

    def __init__(self, prime: int, precision: int, entries, *, reduced: bool = False):
        self.prime = prime
        self.precision = precision
        q = prime**precision
        a = np.array(entries, dtype=object)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("PadicMatrix entries must be two-dimensional")
        self.a = a if reduced else a % q

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int, p: int, N: int) -> PadicMatrix:
        return cls(p, N, _eye(n), reduced=True)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int, N: int) -> PadicMatrix:
        return cls(p, N, _zeros(rows, cols), reduced=True)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, p: int, N: int) -> PadicMatrix:
        """Matrix unit with a single 1 at (i, j); indices are 0-based."""
        e = _zeros(n, n)
        e[i, j] = 1
        return cls(p, N, e, reduced=True)

    @classmethod
    def diag(cls, values, p: int, N: int) -> PadicMatrix:
        values = [int(v) for v in values]
        e = _zeros(len(values), len(values))
        for i, v in enumerate(values):
            e[i, i] = v
        return cls(p, N, e)

    @classmethod
    def block_diag(cls, blocks: list[PadicMatrix]) -> PadicMatrix:
        p, N = blocks[0].prime, blocks[0].precision
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = _zeros(n, m)
        r = c = 0
        for b in blocks:
            _check_ring(blocks[0], b)
            out[r : r + b.rows, c : c + b.cols] = b.a
            r += b.rows
            c += b.cols
        return cls(p, N, out, reduced=True)

    def _like(self, a, reduced=True) -> PadicMatrix:
        return PadicMatrix(self.prime, self.precision, a, reduced=reduced)

    # basic properties ----------------------------------------------------
    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def T(self) -> PadicMatrix:
        return self._like(self.a.T.copy())

    def transpose(self) -> PadicMatrix:
        return self.T

    def __getitem__(self, idx):
        return self.a[idx]

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.a]

    def copy(self) -> PadicMatrix:
        return self._like(self.a.copy())

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and bool(np.all(self.a == self.a.T))

    # arithmetic --------------------------------------------------------------
    def __add__(self, other: PadicMatrix) -> PadicMatrix:
        _check_shapes(self, other)
        return self._like((self.a + other.a) % self.modulus)

    def __sub__(self, other: PadicMatrix) -> PadicMatrix:
        _check_shapes(self, other)
        return self._like((self.a - other.a) % self.modulus)

    def __neg__(self) -> PadicMatrix:
        return self._like((-self.a) % self.modulus)

    def __matmul__(self, other: PadicMatrix) -> PadicMatrix:
        _check_ring(self, other)
        if self.cols != other.rows:
            raise MismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return self._like(mat_mul(self.a, other.a, self.modulus))

    def __mul__(self, scalar) -> PadicMatrix:
        return self._like((self.a * int(scalar)) % self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicMatrix):
            return NotImplemented
        return (
            self.prime == other.prime
            and self.precision == other.precision
            and self.shape == other.shape
            and bool(np.all(self.a == other.a))
        )

    def __hash__(self):
        return hash((self.prime, self.precision, self.shape, tuple(self.a.flat)))

    def reduce(self, precision: int) -> PadicMatrix:
        """The same matrix viewed at a lower precision (1 gives the F_p image)."""
        return PadicMatrix(self.prime, precision, self.a % self.prime**precision, reduced=True)

    def __repr__(self):
        return f"PadicMatrix(p={self.prime}, N={self.precision}, {self.tolist()})"

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.prime,
            "N": self.precision,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(int(v)) for v in row] for row in self.a],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PadicMatrix:
        entries = [[int(v) for v in row] for row in obj["entries"]]
        m = cls(int(obj["p"]), int(obj["N"]), entries if entries else _zeros(0, 0))
        if "rows" in obj and m.rows != int(obj["rows"]):
            raise MismatchError("declared rows do not match entries")
        if "cols" in obj and entries and m.cols != int(obj["cols"]):
            raise MismatchError("declared cols do not match entries")
        return m


def _check_ring(a: PadicMatrix, b: PadicMatrix):
    if a.prime != b.prime or a.precision != b.precision:
        raise MismatchError(
            f"Z/{a.prime}^{a.precision} vs Z/{b.prime}^{b.precision}"
        )


def _check_shapes(a: PadicMatrix, b: PadicMatrix):
    _check_ring(a, b)
    if a.shape != b.shape:
        raise MismatchError(f"shape {a.shape} vs {b.shape}")


def mat_arith(A: PadicMatrix, B=None, op: str = "mul") -> PadicMatrix:
    if op == "add":
        return A + B
    if op == "mul":
        return A @ B
    if op == "scalar_mul":
        return A * B
    if op == "transpose":
        return A.T
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# norms


def op_norm(T: PadicMatrix) -> NormValue:
    """Operator norm for the sup-norm on coordinates: the largest entry."""
    return NormValue(min_valuation(T.a, T.prime, T.precision))


def vector_norm(v, p: int, N: int) -> NormValue:
    return NormValue(min_valuation(np.asarray(v, dtype=object).ravel(), p, N))


# ---------------------------------------------------------------------------
# elimination


@dataclass
class Echelon:
    pivots: list[tuple[int, int, int]]  # (row, col, valuation)
    form: PadicMatrix
    transform: PadicMatrix

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def unit_rank(self) -> int:
        return sum(1 for _, _, k in self.pivots if k == 0)


def echelonize(A: PadicMatrix) -> Echelon:
    """Row-reduce with recorded transform: ``transform @ A == form``.

    Pivot rows come first; each pivot is scaled to exactly ``p**k`` and its
    column is cleared below (and above wherever ``p**k`` divides).  Pivot
    valuations are weakly increasing and equal the elementary divisors.
    """
    p, N, q = A.prime, A.precision, A.modulus
    M = A.a.copy()
    m, n = M.shape
    P = _eye(m)
    pivots = []
    used_cols: list[int] = []
    t = 0
    while t < m:
        free = [c for c in range(n) if c not in used_cols]
        if not free:
            break
        found = _first_of_min_valuation(M[t:, free], p, N)
        if found is None:
            break
        i, jj, k = found
        i += t
        j = free[jj]
        if i != t:
            M[[t, i]] = M[[i, t]]
            P[[t, i]] = P[[i, t]]
        pk = p**k
        w = inv_mod(M[t, j] // pk, p, N)
        M[t] = (M[t] * w) % q
        P[t] = (P[t] * w) % q
        for r in range(m):
            if r == t or M[r, j] == 0 or M[r, j] % pk:
                continue
            f = M[r, j] // pk
            M[r] = (M[r] - f * M[t]) % q
            P[r] = (P[r] - f * P[t]) % q
        pivots.append((t, j, k))
        used_cols.append(j)
        t += 1
    return Echelon(pivots, A._like(M), A._like(P))


@dataclass
class Smith:
    """``P @ A @ Q`` is diagonal with entries ``p**k`` (None meaning zero)."""

    P: PadicMatrix
    divisors: list[int | None]
    Q: PadicMatrix

    @property
    def rank(self) -> int:
        return sum(1 for k in self.divisors if k is not None)


def smith(A: PadicMatrix) -> Smith:
    p, N, q = A.prime, A.precision, A.modulus
    M = A.a.copy()
    m, n = M.shape
    P, Q = _eye(m), _eye(n)
    divisors: list[int | None] = []
    for t in range(min(m, n)):
        found = _first_of_min_valuation(M[t:, t:], p, N)
        if found is None:
            divisors.extend([None] * (min(m, n) - t))
            break
        i, j, k = found
        i += t
        j += t
        if i != t:
            M[[t, i]] = M[[i, t]]
            P[[t, i]] = P[[i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            Q[:, [t, j]] = Q[:, [j, t]]
        pk = p**k
        w = inv_mod(M[t, t] // pk, p, N)
        M[t] = (M[t] * w) % q
        P[t] = (P[t] * w) % q
        if t + 1 < m:
            f = M[t + 1 :, t] // pk
            M[t + 1 :] = (M[t + 1 :] - np.outer(f, M[t])) % q
            P[t + 1 :] = (P[t + 1 :] - np.outer(f, P[t])) % q
        if t + 1 < n:
            g = M[t, t + 1 :] // pk
            M[:, t + 1 :] = (M[:, t + 1 :] - np.outer(M[:, t], g)) % q
            Q[:, t + 1 :] = (Q[:, t + 1 :] - np.outer(Q[:, t], g)) % q
        divisors.append(k)
    return Smith(A._like(P), divisors, A._like(Q))


def rank_mod_p(A: PadicMatrix) -> int:
    return smith(A.reduce(1)).rank


# ---------------------------------------------------------------------------
# kernels and solving


def rref_unit(rows: np.ndarray, p: int, N: int) -> np.ndarray | None:
    """Reduced row echelon form of a direct summand of (Z/p^N)^n.

    Columns are scanned left to right and each pivot is the first remaining
    row with a unit there, so the pivot columns are those of the mod-p RREF
    and the result depends only on the span.  Returns None when the rows do
    not span a saturated submodule.
    """
    q = p**N
    M = np.array(rows, dtype=object).reshape(-1, rows.shape[-1] if len(rows) else 0) % q
    if M.size == 0:
        return M
    m, n = M.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        units = [i for i in range(r, m) if M[i, c] % p]
        if not units:
            continue
        i = units[0]
        if i != r:
            M[[i, r]] = M[[r, i]]
        M[r] = M[r] * inv_mod(M[r, c], p, N) % q
        f = M[:, c].copy()
        f[r] = 0
        M = (M - np.outer(f, M[r])) % q
        r += 1
    if np.any(M[r:] % q):
        return None
    return M[:r].copy()


@dataclass
class Kernel:
    """Solutions of ``A v = 0`` mod p^N.

    ``basis`` spans the saturated part, the honest Z_p-kernel; ``torsion``
    holds the extra solutions ``p**(N-k) w`` created by elementary divisors
    ``p**k`` with ``0 < k < N``, which only exist because of truncation.
    """

    basis: list[np.ndarray]
    torsion: list[np.ndarray]
    divisors: list[int | None]

    @property
    def generators(self) -> list[np.ndarray]:
        return self.basis + self.torsion

    @property
    def precision_limited(self) -> bool:
        return bool(self.torsion)


def kernel(A: PadicMatrix) -> Kernel:
    p, N, q = A.prime, A.precision, A.modulus
    S = smith(A)
    n = A.cols
    basis_cols, torsion = [], []
    for i in range(n):
        k = S.divisors[i] if i < len(S.divisors) else None
        if k is None:
            basis_cols.append(S.Q.a[:, i])
        elif k > 0:
            torsion.append((S.Q.a[:, i] * p ** (N - k)) % q)
    if basis_cols:
        canon = rref_unit(np.array(basis_cols, dtype=object), p, N)
        assert canon is not None
        basis = [row.copy() for row in canon]
    else:
        basis = []
    return Kernel(basis, torsion, S.divisors)


def kernel_saturated(A: PadicMatrix) -> list[np.ndarray]:
    """Generators of ``{v : A v = 0 mod p^N}``, saturated ones first.

    Truncation-only generators (not having a unit coordinate) trigger a
    :class:`PrecisionWarning`.
    """
    K = kernel(A)
    if K.torsion:
        warnings.warn(
            f"{len(K.torsion)} kernel generator(s) exist only mod p^{A.precision}",
            PrecisionWarning,
            stacklevel=2,
        )
    return K.generators


def solve(A: PadicMatrix, b) -> np.ndarray | None:
    """Some x with ``A x = b`` mod p^N, or None when there is none."""
    p, N, q = A.prime, A.precision, A.modulus
    b = np.array([int(v) % q for v in b], dtype=object)
    S = smith(A)
    c = mat_mul(S.P.a, b.reshape(-1, 1), q).ravel()
    y = _zeros(A.cols)
    for i in range(A.rows):
        k = S.divisors[i] if i < len(S.divisors) else None
        if k is None:
            if c[i] % q:
                return None
            continue
        if c[i] % p**k:
            return None
        y[i] = c[i] // p**k
    return mat_mul(S.Q.a, y.reshape(-1, 1), q).ravel()


def det(A: PadicMatrix) -> int:
    if not A.is_square():
        raise MismatchError("determinant of a non-square matrix")
    p, N, q = A.prime, A.precision, A.modulus
    M = A.a.copy()
    n = A.rows
    d = 1
    for j in range(n):
        col = M[j:, j].reshape(-1, 1)
        found = _first_of_min_valuation(col, p, N)
        if found is None:
            return 0
        i = found[0] + j
        if i != j:
            M[[i, j]] = M[[j, i]]
            d = -d
        pk = p ** found[2]
        piv_unit = inv_mod(M[j, j] // pk, p, N)
        d = d * M[j, j] % q
        if j + 1 < n:
            f = (M[j + 1 :, j] // pk * piv_unit) % q
            M[j + 1 :] = (M[j + 1 :] - np.outer(f, M[j])) % q
    return d % q


def det_is_unit(A: PadicMatrix) -> tuple[int, bool]:
    d = det(A)
    return d, d % A.prime != 0


def inverse(A: PadicMatrix) -> PadicMatrix:
    if not A.is_square():
        raise NotInvertible("non-square matrix")
    p, N, q = A.prime, A.precision, A.modulus
    n = A.rows
    M = np.concatenate([A.a.copy(), _eye(n)], axis=1)
    for j in range(n):
        rows = [i for i in range(j, n) if M[i, j] % p]
        if not rows:
            raise NotInvertible("determinant is not a unit")
        i = rows[0]
        if i != j:
            M[[i, j]] = M[[j, i]]
        M[j] = (M[j] * inv_mod(M[j, j], p, N)) % q
        f = M[:, j].copy()
        f[j] = 0
        M = (M - np.outer(f, M[j])) % q
    return A._like(M[:, n:].copy())


# ---------------------------------------------------------------------------
# submodules


class Span:
    """A Z/p^N-submodule of (Z/p^N)^n given by generators.

    Saturated spans (direct summands, the ones that lift to Z_p) carry a
    canonical reduced echelon basis, so equal spans have equal bases.
    """

    def __init__(self, vectors, n: int, p: int, N: int):
        self.prime, self.precision, self.ambient = p, N, n
        q = p**N
        vecs = [np.array([int(x) % q for x in v], dtype=object) for v in vectors]
        if vecs:
            G = np.array(vecs, dtype=object).reshape(len(vecs), n)
        else:
            G = _zeros(0, n)
        canon = rref_unit(G, p, N) if len(G) else G
        if canon is not None:
            self.saturated = True
            self.basis = canon
            self.divisors = [0] * len(canon)
        else:
            ech = echelonize(PadicMatrix(p, N, G, reduced=True))
            self.saturated = False
            self.basis = ech.form.a[: ech.rank].copy()
            self.divisors = [k for _, _, k in ech.pivots]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        p, N = self.prime, self.precision
        if self.rank == 0:
            return all(int(x) % p**N == 0 for x in v)
        A = PadicMatrix(p, N, self.basis.T.copy(), reduced=True)
        return solve(A, v) is not None

    def __le__(self, other: Span) -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        if self.saturated and other.saturated:
            return self.rank == other.rank and bool(np.all(self.basis == other.basis))
        return self <= other and other <= self

    __hash__ = None

    def intersect(self, other: Span) -> Span:
        p, N, q = self.prime, self.precision, self.prime**self.precision
        if self.rank == 0 or other.rank == 0:
            return Span([], self.ambient, p, N)
        stacked = np.concatenate([self.basis.T, (-other.basis.T) % q], axis=1)
        K = kernel(PadicMatrix(p, N, stacked, reduced=True))
        vecs = [mat_mul(self.basis.T, x[: self.rank].reshape(-1, 1), q).ravel() for x in K.basis]
        return Span(vecs, self.ambient, p, N)

    def __repr__(self):
        return f"Span(rank={self.rank}, ambient={self.ambient}, saturated={self.saturated})"


# ---------------------------------------------------------------------------
# symmetric forms


def congruence_diagonalize(G: PadicMatrix) -> tuple[PadicMatrix, PadicMatrix]:
    """Find U with ``U.T @ G @ U`` diagonal with unit entries.

    Pivot on a unit diagonal entry when one exists; otherwise some
    off-diagonal g_ij is a unit and ``e_i <- e_i + e_j`` creates the unit
    diagonal entry ``g_ii + 2 g_ij + g_jj`` (2 is a unit since p is odd).
    """
    p, N, q = G.prime, G.precision, G.modulus
    if p == 2:
        raise UnsupportedPrime("congruence diagonalization needs p odd")
    if not G.is_symmetric():
        raise NotSymmetric("Gram matrix is not symmetric")
    if not det_is_unit(G)[1]:
        raise NotUnimodular("Gram matrix has non-unit determinant")
    n = G.rows
    M = G.a.copy()
    U = _eye(n)
    for t in range(n):
        units = [i for i in range(t, n) if M[i, i] % p]
        if units:
            i = units[0]
        else:
            off = [(i, j) for i in range(t, n) for j in range(i + 1, n) if M[i, j] % p]
            i, j = off[0]
            M[i] = (M[i] + M[j]) % q
            M[:, i] = (M[:, i] + M[:, j]) % q
            U[:, i] = (U[:, i] + U[:, j]) % q
        if i != t:
            M[[t, i]] = M[[i, t]]
            M[:, [t, i]] = M[:, [i, t]]
            U[:, [t, i]] = U[:, [i, t]]
        w = inv_mod(M[t, t], p, N)
        for j in range(t + 1, n):
            c = M[t, j] * w % q
            if c == 0:
                continue
            M[j] = (M[j] - c * M[t]) % q
            M[:, j] = (M[:, j] - c * M[:, t]) % q
            U[:, j] = (U[:, j] - c * U[:, t]) % q
    return G._like(U), G._like(M)


def valuation_vector(v, p: int, N: int) -> list[int | None]:
    return [vp(int(x), p, N) for x in v]


# ---------------------------------------------------------------------------
# fast routines over F_p (int64; p is small so products never overflow)


def fp_rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and its pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    if M.ndim != 2:
        raise ValueError("fp_rref expects a matrix")
    m, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        f = M[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            M[rows] = (M[rows] - np.outer(f[rows], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def fp_rank(A, p: int) -> int:
    return len(fp_rref(A, p)[1])


def fp_nullspace(A, p: int) -> np.ndarray:
    """Rows form a basis of {v : A v = 0} over F_p (RREF-canonical)."""
    A = np.array(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = fp_rref(A, p) if A.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for r, c in enumerate(piv):
            out[t, c] = (-R[r, f]) % p
    if len(out):
        out, _ = fp_rref(out, p)
    return out
