"""
Counting elliptic curves over F_p
=================================

"""

# isomorphism classes of y^2 = x^3 + Ax + B over F_13, grouped by trace
from hurwitzsums import hurwitz_table
from hurwitzsums.classsums import correction_term
from hurwitzsums.ecfp import census, torsion_class_counts, trace_spectrum

p = 13
summary = trace_spectrum(p)
print(f"{summary.total} classes over F_{p}")

# each trace r contributes H(4p - r^2) + c(r, p) classes
table = hurwitz_table(4 * p)
for r, k in sorted(summary.trace_counts.items()):
    print(f"r={r:3d}  classes={k}  H(4p - r^2) + c = {table[4 * p - r * r] + correction_term(r, p)}")

# group structures Z/d1 x Z/d2 and a few torsion counts
shapes = sorted({(d.structure.d1, d.structure.d2) for d in census(p)})
print("group shapes:", shapes)
for q in ("order-2", "full-2", "order-3", "cyclic4-not-full2"):
    print(q, torsion_class_counts(p, q))
