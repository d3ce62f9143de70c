"""
Restricted sums of Hurwitz class numbers
========================================

"""

# build 12*H(N) for N up to 4 * 10^4 in one sweep over reduced forms
from fractions import Fraction

import numpy as np

from hurwitzsums import SumQuery, hurwitz_table, restricted_sum, sieve_primes
from hurwitzsums.classsums import residue_sums12

table = hurwitz_table(40_000)
print("H(0..12) =", [str(table[n]) for n in range(13)])

# the sum over all |r| < 2 sqrt(p) is 2p; split it by r mod 2
for p in sieve_primes(60)[2:]:
    even = restricted_sum(SumQuery(p, 2, 0), table)
    odd = restricted_sum(SumQuery(p, 2, 1), table)
    print(f"p={p:3d}  r even: {str(even):>6}  r odd: {str(odd):>6}  total: {even + odd}")

# the mod 4 classes follow (5p - 7)/6 on the class c = p + 1 (mod 4)
primes = np.array([p for p in sieve_primes(9_999) if p > 3])
hits = [Fraction(int(residue_sums12(p, 4, table)[(p + 1) % 4]), 12) == Fraction(5 * p - 7, 6) for p in primes]
print(f"{sum(hits)} of {len(primes)} primes match (5p - 7)/6")
