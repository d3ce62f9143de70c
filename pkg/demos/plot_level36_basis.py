"""
A weight-two identity at level 36
=================================

"""

# the q-series of H(N) over N = 1 (mod 3), multiplied by theta
from hurwitzsums import hurwitz_table
from hurwitzsums import qseries as qs

T = 300
table = hurwitz_table(T)
target = qs.slice_theta_product(table, T)
print("first coefficients:", [str(target[n]) for n in range(10)])

# eleven Eisenstein series and the newform of y^2 = x^3 + 1 span the space;
# the Sturm bound says 13 coefficients decide the combination
basis = qs.build_basis_36(T)
terms = qs.sturm_bound(2, 36) + 1
coeffs = qs.solve_combination(target, basis, terms)
for label, c in zip(qs.BASIS_36_LABELS, coeffs):
    print(f"{label:22s} {c}")

# the combination agrees with the product well past the fitted range
print("agrees through q^%d:" % (T - 1), qs.combine(coeffs, basis) == target)
