"""Ultra-antisymmetric elements, and why M_2 gets rid of them.

Run:  python3 demos/02_ultra_antisymmetry.py
"""

from padic_lab.corpus import antisymmetric_4x4, nilpotent_2x2
from padic_lab.star import (
    is_ultra_antisymmetric,
    matrix_algebra,
    quasi_cstar_certify,
    ultra_antisymmetric_space,
)

# span{1, a} with a = E_12 and the trivial involution
for p in (2, 3, 5):
    A = nilpotent_2x2(p, 8)
    S = ultra_antisymmetric_space(A)
    print(f"2x2 nilpotent, p={p}: a ultra-antisymmetric? {is_ultra_antisymmetric(A, [0, 1])}"
          f"  (residue space dim {len(S)})")

# the 4x4 antisymmetric element needs i = sqrt(-1), so p = 1 mod 4
A = antisymmetric_4x4(5, 8)
print("\n4x4 example at p=5, a ultra-antisymmetric:", is_ultra_antisymmetric(A, [0, 1]))
cert = quasi_cstar_certify(A)
print("quasi-C* certificate:", "certified" if cert.certified else "negative")
print("  counterexample residue:", cert.counterexample)
print("  every quasi-state kills it:", cert.kills_all_quasi_states)

# passing to 2x2 matrices over the algebra leaves nothing ultra-antisymmetric
for A in (nilpotent_2x2(2, 8), antisymmetric_4x4(5, 8)):
    M2 = matrix_algebra(A, 2)
    print(f"M_2({A.name}) rank {M2.d}: ultra space dim {len(ultra_antisymmetric_space(M2))}")
