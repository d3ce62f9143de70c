"""Hurwitz class numbers H(N) by enumeration of reduced binary quadratic forms.

A reduced positive definite form (a, b, c) of discriminant b^2 - 4ac = -N
satisfies |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.  Multiples
of x^2 + y^2 count 1/2 and multiples of x^2 + xy + y^2 count 1/3, so 12*H(N)
is always an integer and that is what tables store.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import isqrt

# weights in twelfths
_W_ONE = 12
_W_PAIR = 24  # (a, b, c) and (a, -b, c) both reduced
_W_SQUARE = 6  # a(x^2 + y^2)
_W_HEX = 4  # a(x^2 + xy + y^2)

MAX_TABLE = 2**31


class TableFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HurwitzTable:
    """values12[N] == 12*H(N) for 0 <= N <= n_max."""

    n_max: int
    values12: np.ndarray

    def __post_init__(self):
        if len(self.values12) != self.n_max + 1:
            raise ValueError("values12 must have length n_max + 1")
        self.values12.setflags(write=False)

    def __getitem__(self, n: int) -> Fraction:
        return Fraction(int(self.values12[n]), 12)

    def __eq__(self, other):
        if not isinstance(other, HurwitzTable):
            return NotImplemented
        return self.n_max == other.n_max and np.array_equal(self.values12, other.values12)

    def covers(self, n: int) -> bool:
        return n <= self.n_max

    def require(self, n: int) -> None:
        if n > self.n_max:
            raise ValueError(f"Hurwitz table covers N <= {self.n_max}, need {n}")


def hurwitz12_single(n: int) -> int:
    """12*H(n) by direct enumeration of reduced forms of discriminant -n."""
    if n < 0:
        raise ValueError("H(N) needs N >= 0")
    if n == 0:
        return -1
    if n % 4 in (1, 2):
        return 0
    total = 0
    a = 1
    # reduced forms have 3a^2 <= 4ac - b^2 = n
    while 3 * a * a <= n:
        for b in range(n % 2, a + 1, 2):
            num = b * b + n
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b == 0:
                total += _W_SQUARE if c == a else _W_ONE
            elif b == a:
                total += _W_HEX if c == a else _W_ONE
            else:
                total += _W_ONE if c == a else _W_PAIR
        a += 1
    return total


def hurwitz_single(n: int) -> Fraction:
    return Fraction(hurwitz12_single(n), 12)


def _accumulate(n_max: int, a_values) -> np.ndarray:
    out = np.zeros(n_max + 1, dtype=np.int64)
    for a in a_values:
        step = 4 * a
        for b in range(a + 1):
            # c runs from a upward; N = 4ac - b^2 steps by 4a
            n0 = 4 * a * a - b * b
            if n0 > n_max:
                continue
            if b == 0:
                out[n0] += _W_SQUARE
                out[n0 + step :: step] += _W_ONE
            elif b == a:
                out[n0] += _W_HEX
                out[n0 + step :: step] += _W_ONE
            else:
                out[n0] += _W_ONE
                out[n0 + step :: step] += _W_PAIR
    return out


def hurwitz_table(n_max: int, workers: int = 1) -> HurwitzTable:
    """12*H(N) for every N <= n_max from one sweep over reduced forms.

    With ``workers > 1`` the outer loop over ``a`` is split round-robin across
    processes and the partial tables are summed.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max >= MAX_TABLE:
        raise ValueError(f"n_max={n_max} too large for a dense table")
    a_max = isqrt(n_max // 3)
    a_all = list(range(1, a_max + 1))
    if workers <= 1 or a_max < 2:
        values = _accumulate(n_max, a_all)
    else:
        chunks = [a_all[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_accumulate, [n_max] * workers, chunks))
        values = np.sum(parts, axis=0)
    values[0] = -1
    return HurwitzTable(n_max, values)


HEADER = "HURWITZ12"
FORMAT_VERSION = 1


def save_table(table: HurwitzTable, path: str | os.PathLike) -> None:
    lines = [f"{HEADER} {FORMAT_VERSION} {table.n_max}"]
    lines.extend(f"{n} {int(v)}" for n, v in enumerate(table.values12))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def load_table(path: str | os.PathLike) -> HurwitzTable:
    with open(path, "r", encoding="ascii", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TableFormatError(f"{path}: line 1: empty file, expected '{HEADER}' header")
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != HEADER:
        raise TableFormatError(f"{path}: line 1: malformed header {lines[0]!r}")
    try:
        version, n_max = int(head[1]), int(head[2])
    except ValueError:
        raise TableFormatError(f"{path}: line 1: non-integer token in header") from None
    if version != FORMAT_VERSION:
        raise TableFormatError(f"{path}: line 1: unsupported version {version}")
    if n_max < 0:
        raise TableFormatError(f"{path}: line 1: negative n_max")
    body = lines[1:]
    if len(body) != n_max + 1:
        raise TableFormatError(
            f"{path}: line {len(lines) + 1}: expected {n_max + 1} data lines, found {len(body)}"
        )
    values = np.empty(n_max + 1, dtype=np.int64)
    for i, line in enumerate(body):
        lineno = i + 2
        parts = line.split(" ")
        if len(parts) != 2:
            raise TableFormatError(f"{path}: line {lineno}: expected '<N> <12H(N)>'")
        try:
            n, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise TableFormatError(f"{path}: line {lineno}: non-integer token") from None
        if n != i:
            raise TableFormatError(f"{path}: line {lineno}: expected N={i}, found {n}")
        values[i] = v
    return HurwitzTable(n_max, values)
