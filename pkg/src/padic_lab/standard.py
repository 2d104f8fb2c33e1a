"""Embedding finite-rank Banach *-algebras into matrices with transpose.

The chain for B(H), H of rank n with p odd:

1. an orthogonal basis normalized to diag(1^m, u^(n-m));
2. for each r, the column space C_r of M_n(Z_p[sqrt u]) under the pairing
   tau_r(x* y), which has an orthogonal basis with n ones and n copies of a
   twist w in {u, u^-1};
3. B(C_r) = M_2(Z_p)^w (x) M_n(Z_p) by cutting into n x n blocks;
4. M_2(Z_p)^w -> M_2(Z_p[sqrt u]) by scaling the off-diagonal corners;
5. Z_p[sqrt u] -> M_2(Z_p) by sqrt(u) -> [[x, y], [y, -x]], u = x^2 + y^2.

Each r gives a 4n x 4n block; the n blocks together form the image in
M_{4n^2}(Z_p).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import inv_mod, is_square_mod, nonresidue_int, sqrt_mod, two_squares_mod
from .exceptions import (
    IndexOutOfRange,
    InvalidAlgebra,
    NotIsometric,
    PrecisionExhausted,
    ProfileMismatch,
    SquareInput,
    UnsupportedPrime,
)
from .hilbert import QuasiHilbert, Report, bounded_algebra, normalize_square_classes
from .linalg import PadicMatrix, fp_rank, inverse, mat_mul, min_valuation
from .star import (
    QuasiState,
    Representation,
    StarAlgebra,
    coordinate_quasi_states,
    corner_inclusion,
    gns,
    matrix_algebra,
    random_element,
    tensor,
    unitize,
    unitize_inclusion,
    validate_quasi_state,
    _state_tensor,
)


def _odd(p: int):
    if p == 2:
        raise UnsupportedPrime("standardization needs an odd prime")


def _nonsquare(u: int | None, p: int, N: int) -> int:
    if u is None:
        return nonresidue_int(p)
    if u % p == 0:
        raise SquareInput("u must be a unit")
    if is_square_mod(u, p, N):
        raise SquareInput(f"{u} is a square in Z_{p}")
    return u % p**N


# ---------------------------------------------------------------------------
# algebra homomorphisms given by coordinate matrices


@dataclass
class AlgebraHom:
    """Z_p-linear map source -> target; column i is the image of basis i."""

    source: StarAlgebra
    target: StarAlgebra
    matrix: np.ndarray

    def __call__(self, x) -> np.ndarray:
        q = self.source.modulus
        return mat_mul(self.matrix, self.source.vec(x).reshape(-1, 1), q).ravel()

    def check(self) -> Report:
        S, T = self.source, self.target
        q, d = S.modulus, S.d
        rep = Report()
        imgs = [self.matrix[:, i] for i in range(d)]
        lhs = mat_mul(S.mult.reshape(d * d, d), self.matrix.T.copy(), q)
        rep.checks["multiplicative"] = True
        for i in range(d):
            for j in range(d):
                if np.any(lhs[i * d + j] != T.mul(imgs[i], imgs[j])):
                    rep.fail("multiplicative", {"pair": [i, j]})
                    break
            if not rep.checks["multiplicative"]:
                break
        a = mat_mul(self.matrix, S.invol.a, q)
        b = mat_mul(T.invol.a, self.matrix, q)
        bad = np.argwhere(np.any(a != b, axis=0))
        rep.checks["involutive"] = not len(bad)
        if len(bad):
            rep.witnesses["involutive"] = {"basis": int(bad[0][0])}
        rank = fp_rank(self.matrix % S.prime, S.prime)
        rep.checks["isometric"] = rank == d
        if S.unit is not None and T.unit is not None:
            rep.checks["unital"] = bool(np.all(self(S.unit) == T.unit))
        rep.witnesses["rank_mod_p"] = rank
        return rep

    @property
    def bijective(self) -> bool:
        return self.source.d == self.target.d and fp_rank(self.matrix % self.source.prime, self.source.prime) == self.target.d


def full_matrix_algebra(n: int, p: int, N: int) -> StarAlgebra:
    """M_n(Z_p) with transpose; coordinates are the row-major entries."""
    return bounded_algebra(QuasiHilbert.identity(n, p, N))


# ---------------------------------------------------------------------------
# the quadratic extension


def quad_ext(p: int, N: int, u: int | None = None) -> StarAlgebra:
    """Z_p[sqrt u] on the basis (1, sqrt u) with the trivial involution."""
    _odd(p)
    u = _nonsquare(u, p, N)
    mult = np.zeros((2, 2, 2), dtype=object)
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1, 0] = u
    A = StarAlgebra(p, N, mult, np.eye(2, dtype=np.int64), [1, 0], ["1", "sqrt(u)"], name="Z_p[sqrt u]")
    A.u = u
    return A


def sqrt_u_matrix(p: int, N: int, u: int) -> np.ndarray:
    x, y = two_squares_mod(u, p, N)
    q = p**N
    return np.array([[x, y], [y, -x % q]], dtype=object)


def quad_ext_embed(p: int, N: int, u: int | None = None) -> AlgebraHom:
    """a + b sqrt(u) -> a Id + b [[x, y], [y, -x]]; symmetric images."""
    Q = quad_ext(p, N, u)
    Jm = sqrt_u_matrix(p, N, Q.u)
    M = np.zeros((4, 2), dtype=object)
    M[:, 0] = np.eye(2, dtype=np.int64).reshape(-1)
    M[:, 1] = Jm.reshape(-1)
    return AlgebraHom(Q, full_matrix_algebra(2, p, N), M)


# ---------------------------------------------------------------------------
# twisted matrix algebras


def twisted_m2(p: int, N: int, u: int | None = None, w: int | None = None) -> StarAlgebra:
    """M_2(Z_p) with the involution of the Gram matrix diag(1, w).

    The default ``w = u^-1`` gives the explicit involution
    [[a, b], [c, d]]* = [[a, c u^-1], [b u, d]].
    """
    _odd(p)
    u = _nonsquare(u, p, N)
    if w is None:
        w = inv_mod(u, p, N)
    A = bounded_algebra(QuasiHilbert.from_diagonal([1, w], p, N))
    A.u, A.w = u, w % p**N
    A.name = "M_2^w"
    return A


def twisted_involution_formula(X, u: int, p: int, N: int) -> np.ndarray:
    """[[a, b], [c, d]] -> [[a, c u^-1], [b u, d]], written out entrywise."""
    q = p**N
    a, b, c, d = (int(v) for v in np.asarray(X, dtype=object).reshape(-1))
    ui = inv_mod(u, p, N)
    return np.array([[a, c * ui % q], [b * u % q, d]], dtype=object)


def _twist_scalars(p: int, N: int, u: int, w: int) -> tuple[int, int]:
    """(k, k w) with s = k sqrt(u), t = w s and s t = 1; needs w u a square."""
    wu = w * u % p**N
    if not is_square_mod(wu, p, N):
        raise ProfileMismatch("the twist w must lie in the square class of u")
    k = sqrt_mod(inv_mod(wu, p, N), p, N)
    return k, k * w % p**N


def twisted_m2_embed(p: int, N: int, u: int | None = None, w: int | None = None) -> AlgebraHom:
    """M_2^w -> M_2(Z_p[sqrt u]): [[a, b], [c, d]] -> [[a, b s], [c t, d]]."""
    S = twisted_m2(p, N, u, w)
    Q = quad_ext(p, N, S.u)
    T = matrix_algebra(Q, 2)
    k, kw = _twist_scalars(p, N, S.u, S.w)
    M = np.zeros((8, 4), dtype=object)
    # target index (a*2 + b)*2 + part, part 0 = rational, 1 = sqrt(u)
    M[0, 0] = 1
    M[(0 * 2 + 1) * 2 + 1, 1] = k
    M[(1 * 2 + 0) * 2 + 1, 2] = kw
    M[(1 * 2 + 1) * 2 + 0, 3] = 1
    return AlgebraHom(S, T, M)


def _diag_profile(H: QuasiHilbert) -> tuple[int, int]:
    """(n, w) for a Gram matrix diag(1^n, w^n) with w a non-square."""
    G = H.gram
    p, N = H.prime, H.precision
    if G.rows % 2:
        raise ProfileMismatch("rank must be even")
    n = G.rows // 2
    off = G.a - np.diag(np.diag(G.a))
    if np.any(off != 0):
        raise ProfileMismatch("Gram matrix is not diagonal")
    dg = [int(v) for v in np.diag(G.a)]
    w = dg[n]
    if dg[:n] != [1] * n or dg[n:] != [w] * n or is_square_mod(w, p, N):
        raise ProfileMismatch(f"expected diag(1^{n}, w^{n}) with w a non-square, got {dg}")
    return n, w


def twisted_m2n_embed(H: QuasiHilbert, u: int | None = None) -> AlgebraHom:
    """B(H) -> M_2^w (x) M_n cutting 2n x 2n matrices into n x n blocks."""
    _odd(H.prime)
    p, N = H.prime, H.precision
    n, w = _diag_profile(H)
    if u is None:
        u = nonresidue_int(p)
    S = bounded_algebra(H)
    T = tensor(twisted_m2(p, N, u, w), full_matrix_algebra(n, p, N))
    M = np.zeros((4 * n * n, 4 * n * n), dtype=object)
    for a in range(2):
        for b in range(2):
            for i in range(n):
                for j in range(n):
                    src = (a * n + i) * 2 * n + (b * n + j)
                    dst = (a * 2 + b) * n * n + i * n + j
                    M[dst, src] = 1
    return AlgebraHom(S, T, M)


# ---------------------------------------------------------------------------
# column representations


@dataclass
class ColumnRep:
    """C_r in (alpha_1..alpha_n, beta_1..beta_n) coordinates, x_k = alpha_k + beta_k sqrt(u)."""

    r: int
    space: QuasiHilbert
    basis: PadicMatrix  # columns: the orthogonal basis, ones first
    diagonal: list[int]
    twist: int
    rep: Representation
    labels: list[str]


def _column_gram(a: list[int], r: int, u: int, p: int, N: int) -> list[int]:
    q = p**N
    ar = inv_mod(a[r], p, N)
    return [ak * ar % q for ak in a] + [u * ak * ar % q for ak in a]


def column_basis(a: list[int], m: int, r: int, u: int, p: int, N: int):
    """Orthogonal basis of C_r (0-based r) with n ones then n twists.

    Returns (V, twist, labels).  For r in the first m indices the twist is
    u, otherwise u^-1.
    """
    q = p**N
    n = len(a)
    ui = inv_mod(u, p, N)
    V = np.zeros((2 * n, 2 * n), dtype=object)
    ones, twists = [], []
    for k in range(n):
        alpha = np.zeros(2 * n, dtype=object)
        alpha[k] = 1
        beta = np.zeros(2 * n, dtype=object)
        beta[n + k] = 1
        beta_inv = beta * ui % q
        if r < m:
            if k < m:
                ones.append((alpha, f"e{k + 1}"))
                twists.append((beta, f"sqrt(u)e{k + 1}"))
            else:
                ones.append((beta_inv, f"sqrt(1/u)e{k + 1}"))
                twists.append((alpha, f"e{k + 1}"))
        else:
            if k < m:
                ones.append((beta, f"sqrt(u)e{k + 1}"))
                twists.append((alpha, f"e{k + 1}"))
            else:
                ones.append((alpha, f"e{k + 1}"))
                twists.append((beta_inv, f"sqrt(1/u)e{k + 1}"))
    cols = ones + twists
    for j, (v, _) in enumerate(cols):
        V[:, j] = v
    twist = u % q if r < m else ui
    return PadicMatrix(p, N, V, reduced=True), twist, [lab for _, lab in cols]


def _quad_tensor(B: StarAlgebra, Q: StarAlgebra) -> StarAlgebra:
    return tensor(B, Q)


def column_rep(H: QuasiHilbert, r: int, m: int | None = None, u: int | None = None) -> ColumnRep:
    """Column representation of B(H) (x) Z_p[sqrt u] for a normalized H.

    ``H`` must have Gram diag(1^m, u^(n-m)); ``r`` is 1-based.
    """
    p, N = H.prime, H.precision
    _odd(p)
    n = H.rank
    if not 1 <= r <= n:
        raise IndexOutOfRange(f"r must lie in 1..{n}")
    u = _nonsquare(u, p, N)
    q = p**N
    G = H.gram
    if np.any(G.a - np.diag(np.diag(G.a)) != 0):
        raise ProfileMismatch("column_rep expects a normalized diagonal Gram matrix")
    a = [int(v) for v in np.diag(G.a)]
    if m is None:
        m = sum(1 for v in a if v == 1)
    if a != [1] * m + [u] * (n - m):
        raise ProfileMismatch(f"expected diag(1^{m}, u^{n - m}), got {a}")
    r0 = r - 1
    gamma = _column_gram(a, r0, u, p, N)
    C = QuasiHilbert.from_diagonal(gamma, p, N)
    V, twist, labels = column_basis(a, m, r0, u, p, N)
    D = V.T @ C.gram @ V
    want = [1] * n + [twist] * n
    if D != PadicMatrix.diag(want, p, N):
        raise PrecisionExhausted(f"column basis for r={r} failed to certify")
    # left multiplication by E_kl (x) 1 and E_kl (x) sqrt(u) on (alpha, beta)
    B = bounded_algebra(H)
    Qx = quad_ext(p, N, u)
    T = _quad_tensor(B, Qx)
    images = []
    for k in range(n):
        for l in range(n):
            E = np.zeros((n, n), dtype=object)
            E[k, l] = 1
            Z = np.zeros((n, n), dtype=object)
            one = np.block([[E, Z], [Z, E]])
            root = np.block([[Z, E * u % q], [E, Z]])
            images.append(PadicMatrix(p, N, one, reduced=True))
            images.append(PadicMatrix(p, N, root, reduced=True))
    rep = Representation(T, C, images, info={"r": r})
    return ColumnRep(r, C, V, want, twist, rep, labels)


# ---------------------------------------------------------------------------
# embeddings into transpose-involuted matrices


@dataclass
class StandardEmbedding:
    """A *-map from ``source`` into block-diagonal matrices with transpose.

    ``embed`` returns the diagonal blocks of the image of a coordinate vector;
    the ambient matrix size is the sum of the block sizes.
    """

    source: StarAlgebra
    block_sizes: list[int]
    embed_fn: Callable[[np.ndarray], list[PadicMatrix]]
    checks: dict[str, str] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def ambient_size(self) -> int:
        return sum(self.block_sizes)

    def embed(self, x) -> list[PadicMatrix]:
        return self.embed_fn(self.source.vec(x))

    def image(self, i: int) -> list[PadicMatrix]:
        if i not in self._cache:
            self._cache[i] = self.embed(self.source.basis(i))
        return self._cache[i]

    def dense(self, x) -> PadicMatrix:
        return PadicMatrix.block_diag(self.embed(x))

    def _valuation(self, blocks) -> int | None:
        vals = [min_valuation(b.a, b.prime, b.precision) for b in blocks]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def certify(self, probes: int = 100, seed: int = 0, pairs: list[tuple[int, int]] | None = None) -> dict[str, str]:
        A = self.source
        d, p, N = A.d, A.prime, A.precision
        imgs = [self.image(i) for i in range(d)]
        if pairs is None:
            pairs = [(i, j) for i in range(d) for j in range(d)]
        mult_ok = True
        for i, j in pairs:
            prod = [x @ y for x, y in zip(imgs[i], imgs[j])]
            want = self.embed(A.mult[i, j])
            if any(x != y for x, y in zip(prod, want)):
                mult_ok = False
                self.details["mult_failure"] = [i, j]
                break
        invol_ok = True
        for i in range(d):
            want = self.embed(A.invol.a[:, i])
            if any(x.T != y for x, y in zip(imgs[i], want)):
                invol_ok = False
                self.details["invol_failure"] = i
                break
        flat = np.array([np.concatenate([b.a.reshape(-1) for b in blocks]) for blocks in imgs], dtype=object)
        rank = fp_rank(flat % p, p)
        iso_ok = rank == d and all(self._valuation(b) == 0 for b in imgs)
        rng = random.Random(seed)
        for _ in range(probes):
            x = random_element(A, rng)
            if self._valuation(self.embed(x)) != min_valuation(x, p, N):
                iso_ok = False
                self.details["isometry_failure"] = [int(v) for v in x]
                break
        self.details.update({"rank_mod_p": rank, "probes": probes, "seed": seed, "pairs_checked": len(pairs)})
        self.checks = {
            "mult": "pass" if mult_ok else "fail",
            "invol": "pass" if invol_ok else "fail",
            "isometry": "pass" if iso_ok else "fail",
            "target_involution": "transpose",
        }
        return self.checks

    @property
    def certified(self) -> bool:
        return bool(self.checks) and all(v in ("pass", "transpose") for v in self.checks.values())

    def to_json(self, include_images: bool = True) -> dict:
        out = {
            "ambient_size": self.ambient_size,
            "block_sizes": list(self.block_sizes),
            "checks": dict(self.checks),
            "details": self.details,
            "source": {"p": self.source.prime, "N": self.source.precision, "d": self.source.d},
        }
        if include_images:
            out["images"] = [
                [[[str(v) for v in row] for row in b.tolist()] for b in self.image(i)]
                for i in range(self.source.d)
            ]
        return out


def standardize(H: QuasiHilbert, u: int | None = None, certify: bool = True,
                probes: int = 100, seed: int = 0) -> StandardEmbedding:
    """Isometric *-embedding of B(H) into M_{4n^2}(Z_p) with transpose."""
    p, N = H.prime, H.precision
    _odd(p)
    H.require_valid()
    q = p**N
    n = H.rank
    ob = normalize_square_classes(H, u)
    u = ob.u
    U, Ui = ob.U, inverse(ob.U)
    Jm = sqrt_u_matrix(p, N, u)
    I2 = np.eye(2, dtype=np.int64).astype(object)
    stages = []
    for r in range(n):
        V, twist, labels = column_basis(ob.diagonal, ob.m, r, u, p, N)
        gamma = _column_gram(ob.diagonal, r, u, p, N)
        if V.T @ PadicMatrix.diag(gamma, p, N) @ V != PadicMatrix.diag([1] * n + [twist] * n, p, N):
            raise PrecisionExhausted(f"column basis for r={r + 1} failed to certify")
        k, kw = _twist_scalars(p, N, u, twist)
        stages.append((V.a, inverse(V).a, k, kw, labels, twist))

    def embed_fn(x: np.ndarray) -> list[PadicMatrix]:
        X = PadicMatrix(p, N, x.reshape(n, n), reduced=True)
        XD = (Ui @ X @ U).a
        Z = np.zeros((n, n), dtype=object)
        big = np.block([[XD, Z], [Z, XD]])
        blocks = []
        for V, Vi, k, kw, _, _ in stages:
            Y = mat_mul(mat_mul(Vi, big, q), V, q)
            Za = np.zeros_like(Y)
            Zb = np.zeros_like(Y)
            Za[:n, :n], Za[n:, n:] = Y[:n, :n], Y[n:, n:]
            Zb[:n, n:] = Y[:n, n:] * k % q
            Zb[n:, :n] = Y[n:, :n] * kw % q
            blk = (np.kron(Za, I2) + np.kron(Zb, Jm)) % q
            blocks.append(PadicMatrix(p, N, blk, reduced=True))
        return blocks

    emb = StandardEmbedding(bounded_algebra(H), [4 * n] * n, embed_fn)
    emb.details.update({
        "m": ob.m,
        "u": u,
        "profile": [int(v) for v in ob.diagonal],
        "twists": [s[5] for s in stages],
        "column_bases": [s[4] for s in stages],
    })
    if certify:
        emb.certify(probes=probes, seed=seed)
        if not emb.certified:
            raise NotIsometric(f"standardize certificate failed: {emb.checks}")
    return emb


# ---------------------------------------------------------------------------
# arbitrary finite-rank *-algebras


def _random_states(B: StarAlgebra, rng: random.Random, count: int):
    """Seeded psi + psi o invol, keeping those of norm one."""
    q = B.modulus
    for t in range(count):
        psi = np.array([rng.randrange(q) for _ in range(B.d)], dtype=object)
        phi = QuasiState((psi + mat_mul(B.invol.a.T.copy(), psi.reshape(-1, 1), q).ravel()) % q,
                         label=f"random_{t}")
        if validate_quasi_state(B, phi).valid:
            yield phi


def _select_states(B: StarAlgebra, inc: np.ndarray, target_rank: int, seed: int = 0,
                   extra: int = 64):
    """Greedy choice of quasi-states separating the included elements.

    Coordinate states come first; when their GNS forms are not unimodular
    (common in a skewed basis) seeded random symmetric states fill the gap.
    """
    p = B.prime
    states = itertools.chain(coordinate_quasi_states(B), _random_states(B, random.Random(seed), extra))
    chosen, skipped, rows = [], [], None
    for phi in states:
        W = _state_tensor(B, [phi]).reshape(-1, B.d) % p
        cand = W @ (inc % p).astype(np.int64) % p
        stacked = cand if rows is None else np.concatenate([rows, cand])
        if rows is not None and fp_rank(stacked, p) == fp_rank(rows, p):
            continue
        try:
            g = gns(B, phi, strict=True)
        except Exception as exc:  # non-unimodular or degenerate: try the next state
            skipped.append(f"{phi.label}: {type(exc).__name__}")
            continue
        chosen.append((phi, g))
        rows = stacked
        if fp_rank(rows, p) == target_rank:
            break
    rank = 0 if rows is None else fp_rank(rows, p)
    return chosen, skipped, rank


def represent_star_algebra(A: StarAlgebra, probes: int = 100, seed: int = 0) -> StandardEmbedding:
    """Isometric *-map of A into transpose-involuted matrices.

    A -> A+ -> M_2(A+) (no ultra-antisymmetric elements) -> sum of GNS
    representations for coordinate states -> standardize each B(H_phi).
    """
    p, N = A.prime, A.precision
    _odd(p)
    Ap = unitize(A)
    B = matrix_algebra(Ap, 2)
    q = p**N
    inc = mat_mul(corner_inclusion(Ap, 2), unitize_inclusion(A, Ap), q)
    chosen, skipped, rank = _select_states(B, inc, A.d, seed=seed)
    if rank != A.d:
        raise NotIsometric(f"coordinate states only separate a rank-{rank} part of the algebra")
    parts = []
    for phi, g in chosen:
        emb = standardize(g.hilbert, certify=False)
        parts.append((g, emb))

    def embed_fn(x: np.ndarray) -> list[PadicMatrix]:
        y = mat_mul(inc, x.reshape(-1, 1), q).ravel()
        blocks = []
        for g, emb in parts:
            X = g.rep(y)
            blocks.extend(emb.embed_fn(X.a.reshape(-1)))
        return blocks

    sizes = [s for _, emb in parts for s in emb.block_sizes]
    out = StandardEmbedding(A, sizes, embed_fn)
    out.details.update({
        "states": [phi.label for phi, _ in chosen],
        "skipped_states": skipped,
        "gns_ranks": [g.hilbert.rank for _, g in chosen],
        "unitized": Ap.d != A.d,
    })
    out.certify(probes=probes, seed=seed)
    if not out.certified:
        raise NotIsometric(f"representation certificate failed: {out.checks}")
    return out


# ---------------------------------------------------------------------------
# truncated Tate algebra


def tate_truncation(n: int, p: int, N: int) -> StarAlgebra:
    """Z_p[X, Y]/(X^{n+1}, Y^{n+1}) on monomials X^a Y^b (index a*(n+1)+b), X* = Y."""
    k = n + 1
    d = k * k
    mult = np.zeros((d, d, d), dtype=object)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for e in range(k):
                    if a + c <= n and b + e <= n:
                        mult[a * k + b, c * k + e, (a + c) * k + b + e] = 1
    invol = np.zeros((d, d), dtype=object)
    for a in range(k):
        for b in range(k):
            invol[b * k + a, a * k + b] = 1
    unit = np.zeros(d, dtype=object)
    unit[0] = 1
    labels = [f"X^{a}Y^{b}" for a in range(k) for b in range(k)]
    return StarAlgebra(p, N, mult, invol, unit, labels, name=f"Tate_{n}")


@dataclass
class TateDemo:
    n: int
    algebra: StarAlgebra
    state: QuasiState
    rep: Representation
    monomial_norms: dict[str, tuple[int | None, int | None]]
    norms_preserved: bool
    adjoint_ok: bool
    direct_sum_isometric: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.algebra.d,
            "monomial_norms": {k: list(v) for k, v in self.monomial_norms.items()},
            "norms_preserved": self.norms_preserved,
            "adjoint_ok": self.adjoint_ok,
            "direct_sum_isometric": self.direct_sum_isometric,
        }


def tate_truncation_demo(n: int, p: int = 5, N: int = 16) -> TateDemo:
    from .hilbert import adjoint

    _odd(p)
    if n > 6:
        raise ValueError("n <= 6 keeps the truncation at desk scale")
    A = tate_truncation(n, p, N)
    k = n + 1
    tau = np.zeros(A.d, dtype=object)
    tau[n * k + n] = 1
    phi = QuasiState(tau, label=f"tau_{n}")
    g = gns(A, phi)
    pi = g.rep
    norms = {}
    ok = True
    for i, lab in enumerate(A.labels):
        nv = min_valuation(pi.images[i].a, p, N)
        norms[lab] = (0, nv)
        ok &= nv == 0
    adj_ok = True
    if n > 0:
        X, Y = A.basis(1 * k + 0), A.basis(0 * k + 1)
        adj_ok = adjoint(g.hilbert, pi(X)) == pi(Y)
    # direct sum of pi_0 .. pi_n on degree <= n elements: pi_n alone is faithful mod p
    faithful = pi.is_isometric()
    return TateDemo(n, A, phi, pi, norms, ok, adj_ok, faithful)
