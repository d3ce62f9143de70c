"""
Looking for linear patterns mod 5 and mod 7
===========================================

"""

# fit (alpha p + beta)/gamma to each (p mod m, +-c) cell and hold out one prime
from hurwitzsums import hurwitz_table, scan_conjectures
from hurwitzsums.traceformula import trace_level7

pmax = 20_000
table = hurwitz_table(4 * (pmax + 2_000))
for m in (5, 7):
    print(f"m = {m}")
    for fit in scan_conjectures(m, 11, pmax, table):
        c = f"+-{fit.c}" if fit.c else "0"
        print(f"  p = {fit.p_residue} (mod {m})  c = {c:<4} {fit.formula()}")

# for p = 3, 5, 6 (mod 7) the trace formula on the zero space S_2(7)
# forces some of these cells
print([str(trace_level7(p, table)) for p in (3, 5, 13, 17, 19)])
