"""Commutants and centers of group algebras acting on Z_p[G].

Run:  python3 demos/04_von_neumann.py
"""

from padic_lab.groupoid import cyclic_group, quaternion_group, symmetric_group, trivial_group
from padic_lab.vn import (
    bicommutant_check,
    center,
    class_sum_span,
    commutant,
    compacts,
    group_subalgebra,
    is_factor,
)

p, N = 3, 8

print("matrix units E_xy: the commutant is just the scalars")
for n in (2, 4, 8):
    print(f"  n={n}: rank of commutant = {commutant(compacts(n, p, N)).rank}")

print("\nleft regular representations lambda(Z_3[G]):")
print(f"  {'G':8s} {'|G|':>4s} {'rank S':>7s} {'rank S`':>8s} {'S``=S':>6s} {'center':>7s} {'= class sums':>13s} {'factor':>7s}")
for name, G in [("trivial", trivial_group()), ("C3", cyclic_group(3)), ("C4", cyclic_group(4)),
                ("S3", symmetric_group(3)), ("Q8", quaternion_group())]:
    S = group_subalgebra(G, p, N)
    chk = bicommutant_check(S)
    Z = center(S)
    print(f"  {name:8s} {G.order:4d} {S.rank:7d} {chk.commutant.rank:8d} {str(chk.is_vn):>6s} "
          f"{Z.rank:7d} {str(Z.span == class_sum_span(G, p, N)):>13s} {str(is_factor(S)):>7s}")
