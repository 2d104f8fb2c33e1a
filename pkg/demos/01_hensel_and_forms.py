"""Square roots by Hensel lifting, then diagonalizing a quadratic form over Z/p^N.

Run:  python3 demos/01_hensel_and_forms.py
"""

import random

from padic_lab.core import is_square_mod, nonresidue_int, sqrt_mod, two_squares_mod
from padic_lab.corpus import random_gram
from padic_lab.hilbert import normalize_square_classes, orthogonal_basis, validate

p, N = 7, 8
q = p**N

# 2 is a square mod 7 (3^2 = 9), so it lifts to every power of 7
r = sqrt_mod(2, p, N)
print(f"sqrt(2) mod 7^{N} = {r}; check r^2 - 2 = {(r * r - 2) % q}")
print(f"the first two digits agree with sqrt(2) mod 49 = {sqrt_mod(2, 7, 2)}")

# every unit is a sum of two squares when p is odd
u = nonresidue_int(p)
a, b = two_squares_mod(u, p, N)
print(f"smallest non-square u = {u} = {a}^2 + {b}^2 mod 7^{N}: {(a * a + b * b - u) % q == 0}")

# a random unimodular Gram matrix, orthogonalized and normalized to diag(1,..,1,u,..,u)
rng = random.Random(1)
H = random_gram(4, p, N, rng)
print("\nGram matrix mod 7:")
print(H.gram.a % p)
print("valid quasi-Hilbert space:", validate(H).valid)
ob = orthogonal_basis(H)
print("orthogonal diagonal (mod 7):", [d % p for d in ob.diagonal])
nb = normalize_square_classes(H)
print(f"normalized diagonal: {nb.diagonal}  (m = {nb.m} ones, u = {nb.u})")
print("U^T G U == D exactly:", nb.U.T @ H.gram @ nb.U == nb.D)
print("square classes of the diagonal:", ["square" if is_square_mod(d, p, N) else "non-square" for d in nb.diagonal])
