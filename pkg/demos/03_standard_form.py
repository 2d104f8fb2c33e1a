"""From a quasi-Hilbert space to transpose-involuted matrices over Z_p.

Run:  python3 demos/03_standard_form.py
"""

from padic_lab.corpus import antisymmetric_4x4
from padic_lab.hilbert import QuasiHilbert
from padic_lab.standard import (
    quad_ext_embed,
    represent_star_algebra,
    standardize,
    tate_truncation_demo,
    twisted_m2,
)

p, N = 5, 8

hom = quad_ext_embed(p, N, 2)
print("sqrt(2) in Z_5[sqrt 2] goes to the symmetric matrix")
print(hom([0, 1]).reshape(2, 2) % p**N)

T = twisted_m2(p, N, 2)
print("\ntwisted involution on E_12:", list(T.star(T.basis(1))), "(coordinates of u E_21)")

# B(H) for the Gram diag(1, 2): the non-square 2 forces the twisted route
H = QuasiHilbert.from_diagonal([1, 2], p, N)
emb = standardize(H)
print(f"\nstandardize diag(1,2): ambient M_{emb.ambient_size}, blocks {emb.block_sizes}")
print("certificate:", emb.checks)

# an algebra that is not quasi-C* still embeds, through M_2 of its unitization
A = antisymmetric_4x4(p, N)
emb = represent_star_algebra(A, probes=50)
print(f"\n4x4 example: ambient M_{emb.ambient_size}, states used {emb.details['states']}")
print("certificate:", emb.checks)

print("\ntruncated Tate algebras with X* = Y:")
for n in range(4):
    demo = tate_truncation_demo(n, p, N)
    print(f"  n={n}: rank {demo.algebra.d}, monomial norms kept {demo.norms_preserved}, "
          f"pi(X)* = pi(Y) {demo.adjoint_ok}")
