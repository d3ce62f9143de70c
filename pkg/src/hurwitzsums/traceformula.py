"""Eichler-Selberg trace of T_p on S_2(7), which is the zero space.

Only level 7 is supported: for p = 3, 5, 6 (mod 7) the local factor c(s, f, 7)
is independent of f and takes the values tabulated in ``C_TABLE``.  The
elliptic inner sum over f of h/w collapses to H(4p - s^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import divisors, euler_phi, is_prime, isqrt
from .classsums import STARRED_MOD7
from .hurwitz import HurwitzTable
from .report import VerificationReport


class UnsupportedCase(ValueError):
    pass


# (p mod 7) -> residues s mod 7 where c(s, f, 7) = 2
C_TABLE = {3: (0, 3, 4), 5: (0, 1, 6), 6: (0, 2, 5)}


@dataclass(frozen=True)
class TraceContext:
    p: int
    level: int = 7
    c_table: dict = field(default_factory=lambda: dict(C_TABLE))

    def __post_init__(self):
        if self.level != 7:
            raise UnsupportedCase("only level 7 has a local-factor table")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p % 7 not in self.c_table:
            raise UnsupportedCase(f"no local-factor data for p = {self.p % 7} (mod 7)")

    def c(self, s: int) -> int:
        return 2 if s % 7 in self.c_table[self.p % 7] else 0


def hyperbolic_set(p: int) -> list[tuple[int, int]]:
    """All (s, t), t > 0, with s^2 - 4p = t^2, from the factorizations (s-t)(s+t) = 4p."""
    out = []
    for d in divisors(4 * p):
        e = 4 * p // d
        if d <= e and (d + e) % 2 == 0 and d != e:
            s, t = (d + e) // 2, (e - d) // 2
            out.extend([(s, t), (-s, t)])
    return sorted(out)


def hyperbolic_term(ctx: TraceContext) -> Fraction:
    p = ctx.p
    total = Fraction(0)
    for s, t in hyperbolic_set(p):
        inner = sum(Fraction(euler_phi(t // f), 2) for f in divisors(t))
        total += Fraction(1, p - 1) * inner * ctx.c(s)
    return total


def elliptic_term(ctx: TraceContext, table: HurwitzTable) -> Fraction:
    p = ctx.p
    table.require(4 * p)
    bound = isqrt(4 * p - 1)
    total = Fraction(0)
    for s in range(-bound, bound + 1):
        w = ctx.c(s)
        if w:
            total += Fraction(w, 2) * table[4 * p - s * s]
    return total


def trace_level7(p: int, table: HurwitzTable) -> Fraction:
    """tr T_p on S_2(7) = p + 1 - hyperbolic - elliptic; zero for admissible p."""
    ctx = TraceContext(p)
    return p + 1 - hyperbolic_term(ctx) - elliptic_term(ctx, table)


def verify_prop42(primes, table: HurwitzTable) -> VerificationReport:
    """Starred sum of H(4p - s^2) equals p - 1, and the trace vanishes, for p = 3, 5, 6 (mod 7)."""
    report = VerificationReport("trace7")
    for p in primes:
        p = int(p)
        if p % 7 not in C_TABLE:
            continue
        report.items += 1
        ctx = TraceContext(p)
        hyp = hyperbolic_term(ctx)
        report.checks += 1
        if hyp != 2:
            report.failures.append(f"p={p}: hyperbolic term {hyp} != 2")
        starred = STARRED_MOD7[p % 7]
        bound = isqrt(4 * p - 1)
        s12 = sum(int(table.values12[4 * p - s * s]) for s in range(-bound, bound + 1) if s % 7 in starred)
        got = Fraction(s12, 12)
        report.checks += 1
        if got != p - 1:
            report.failures.append(f"p={p}: starred sum {got} != p - 1")
        ell = elliptic_term(ctx, table)
        report.checks += 1
        if ell != got:
            report.failures.append(f"p={p}: elliptic term {ell} != starred sum {got}")
        tr = p + 1 - hyp - ell
        report.checks += 1
        if tr != 0:
            report.failures.append(f"p={p}: trace {tr} != 0")
    return report
