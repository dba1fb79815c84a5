"""Exact excursion counts by three independent routes, plus related tables.

``phi(n)`` denotes the number of Sinai excursions of length 4n.  The routes:

* brute force: enumerate candidate bridges through their down-time sets
  (subsets of {1, ..., 4n-1} with the exact sum that zeroes the area) and
  keep the ones whose area process stays nonnegative;
* dynamic programming: a forward pass over (step, height, area) with the
  nonnegativity constraint built in.  Counts over the area axis are packed
  into a single big integer per height, W bits per area slot, so one
  (step, height) transition is a single shift-and-add on a big int;
* recurrence: n*phi(n) = sum_k xi(k) * phi(n-k) where xi is the modular
  subset count of :func:`sinai.sterneck.residue_subset_count`.

The same packed-DP idea counts zero-area bridges (an exact subset-sum
instance over down times) and nonnegative-area bridges of any even length
(used for the meander table).  Series utilities invert the renewal identity
and exponentiate power series with exact rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ResourceGuardError
from .lattice_paths import Walk, classify, first_block_length
from .sterneck import residue_subset_count

BRUTE_FORCE_MAX_N = 7
DP_MAX_N = 128


@dataclass(frozen=True)
class CountTable:
    """An exact integer sequence indexed 0..max_n."""

    name: str
    entries: dict[int, int]
    max_n: int

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def values(self) -> list[int]:
        return [self.entries[n] for n in range(self.max_n + 1)]


@dataclass(frozen=True)
class SeriesCoefficients:
    """Truncated power series with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]
    order: int

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]


# ---------------------------------------------------------------------------
# enumeration route


def iter_subsets_with_sum(lo: int, hi: int, size: int, total: int) -> Iterator[tuple[int, ...]]:
    """Ascending subsets of {lo, ..., hi} of the given size and exact sum.

    Recursive enumeration with min/max partial-sum pruning, so the work is
    proportional to the surviving search tree rather than C(hi-lo+1, size).
    """

    def rec(start: int, need: int, rem: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if need == 0:
            if rem == 0:
                yield tuple(acc)
            return
        # smallest/largest achievable sums from `need` elements in [start, hi]
        if start + need - 1 > hi:
            return
        lo_sum = need * start + need * (need - 1) // 2
        hi_sum = need * hi - need * (need - 1) // 2
        if rem < lo_sum or rem > hi_sum:
            return
        for v in range(start, hi - need + 2):
            if v > rem:
                break
            acc.append(v)
            yield from rec(v + 1, need - 1, rem - v, acc)
            acc.pop()

    yield from rec(lo, size, total, [])


def iter_excursions(n: int) -> Iterator[tuple[int, ...]]:
    """All Sinai excursions of length 4n, as increment tuples.

    Candidates are bridges whose down times lie in {1, ..., 4n-1} and sum to
    n(4n-1) (total area zero); the nonnegative-area filter is applied
    directly.
    """
    if n == 0:
        yield ()
        return
    L = 4 * n
    for ts in iter_subsets_with_sum(1, L - 1, 2 * n, n * (4 * n - 1)):
        chosen = set(ts)
        inc = tuple(-1 if k in chosen else 1 for k in range(L))
        h = a = 0
        ok = True
        for e in inc:
            h += e
            a += h
            if a < 0:
                ok = False
                break
        if ok:
            yield inc


def _check_brute_bound(n: int) -> None:
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceGuardError(
            f"brute-force enumeration guarded at n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )


def excursion_count_bruteforce(n: int) -> int:
    """phi(n) by filtering enumerated candidate bridges (n <= 7)."""
    _check_brute_bound(n)
    return sum(1 for _ in iter_excursions(n))


def irreducible_count_bruteforce(n: int) -> int:
    """Number of irreducible Sinai excursions of length 4n, by enumeration."""
    _check_brute_bound(n)
    if n == 0:
        return 0
    return sum(1 for inc in iter_excursions(n) if classify(Walk(inc)).is_irreducible)


def marked_count_bruteforce(n: int) -> int:
    """Number of marked pairs (excursion, s) with 0 <= s < k, 4k the length
    of the excursion's first irreducible block (renewal units).

    This equals residue_subset_count(n): each excursion contributes its first
    block length divided by 4.
    """
    _check_brute_bound(n)
    if n == 0:
        return 0
    return sum(first_block_length(Walk(inc)) // 4 for inc in iter_excursions(n))


# ---------------------------------------------------------------------------
# packed big-integer DP route


def _fold_slots(v: int, width: int) -> int:
    """Sum all width-bit slots of a packed counter."""
    mask = (1 << width) - 1
    total = 0
    while v:
        total += v & mask
        v >>= width
    return total


def excursion_count_table_dp(max_n: int) -> CountTable:
    """phi(0..max_n) from one forward (step, height, area) DP pass.

    State at step k is a mapping height -> packed big int whose slot A holds
    the number of nonnegative-area paths reaching (k, height, A).  Stepping to
    height S' adds S' to every area, i.e. shifts the packed integer by S'
    slots; a right shift drops exactly the states whose area would go
    negative.  Slots above the area cap

        cap(k) = min(k(k+1), (L-k)(L-k+1)) / 2,   L = 4*max_n

    cannot return to area 0 by any step 4m <= L and are masked off.  The
    count phi(m) is read from slot 0 of height 0 at step 4m.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if max_n > DP_MAX_N:
        raise ResourceGuardError(f"dp table guarded at max_n <= {DP_MAX_N}, got {max_n}")
    entries = {0: 1}
    if max_n == 0:
        return CountTable("phi", entries, 0)
    L = 4 * max_n
    W = L + 8  # slot width: per-state counts are < 2^L
    slot0_mask = (1 << W) - 1
    cur: dict[int, int] = {0: 1}
    for k in range(1, L + 1):
        r = L - k
        cap = min(k * (k + 1), r * (r + 1)) // 2
        keep = (1 << ((cap + 1) * W)) - 1
        nxt: dict[int, int] = {}
        for h, packed in cur.items():
            for h2 in (h - 1, h + 1):
                v = (packed << (h2 * W)) if h2 >= 0 else (packed >> (-h2 * W))
                if v:
                    if h2 in nxt:
                        nxt[h2] += v
                    else:
                        nxt[h2] = v
        for h2 in list(nxt):
            v = nxt[h2] & keep
            if v:
                nxt[h2] = v
            else:
                del nxt[h2]
        cur = nxt
        if k % 4 == 0:
            entries[k // 4] = cur.get(0, 0) & slot0_mask
    return CountTable("phi", entries, max_n)


def excursion_count_dp(n: int) -> int:
    """phi(n) via the packed DP (single value)."""
    return excursion_count_table_dp(n)[n]


def nonneg_area_bridge_table(max_m: int) -> CountTable:
    """Counts of length-2m bridges whose areas A_1..A_2m are all >= 0.

    Same packed DP as the excursion table, but the terminal area is free: at
    every even step the whole height-0 counter is folded (summed over area).
    Used as the numerator of the meander probabilities.
    """
    if max_m < 0:
        raise ValueError("max_m must be >= 0")
    if max_m > DP_MAX_N:
        raise ResourceGuardError(f"meander table guarded at max_m <= {DP_MAX_N}")
    entries = {0: 1}
    if max_m == 0:
        return CountTable("nonneg_area_bridges", entries, 0)
    L = 2 * max_m
    W = L + 8
    cur: dict[int, int] = {0: 1}
    for k in range(1, L + 1):
        nxt: dict[int, int] = {}
        for h, packed in cur.items():
            for h2 in (h - 1, h + 1):
                v = (packed << (h2 * W)) if h2 >= 0 else (packed >> (-h2 * W))
                if v:
                    if h2 in nxt:
                        nxt[h2] += v
                    else:
                        nxt[h2] = v
        cur = nxt
        if k % 2 == 0:
            entries[k // 2] = _fold_slots(cur.get(0, 0), W)
    return CountTable("nonneg_area_bridges", entries, max_m)


def zero_area_bridge_count(n: int) -> int:
    """Number of length-4n bridges with total area zero.

    By the down-time encoding this is the number of 2n-element subsets of
    {0, ..., 4n-1} with exact sum n(4n-1).  Counted by a subset-sum DP whose
    sum axis is packed into big integers (rows[c] holds all sums for c chosen
    elements); one (element, count) transition is a shift-and-add.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > DP_MAX_N:
        raise ResourceGuardError(f"bridge count guarded at n <= {DP_MAX_N}, got {n}")
    if n == 0:
        return 1
    size, target = 2 * n, n * (4 * n - 1)
    W = 4 * n + 8
    keep = (1 << ((target + 1) * W)) - 1
    rows = [0] * (size + 1)
    rows[0] = 1
    for e in range(4 * n):
        for c in range(min(e, size - 1), -1, -1):
            v = rows[c]
            if v:
                rows[c + 1] = (rows[c + 1] + (v << (e * W))) & keep
    return (rows[size] >> (target * W)) & ((1 << W) - 1)


def zero_area_bridge_table(max_n: int) -> CountTable:
    """Table n -> zero_area_bridge_count(n) for n = 0..max_n."""
    return CountTable(
        "zero_area_bridges",
        {n: zero_area_bridge_count(n) for n in range(max_n + 1)},
        max_n,
    )


# ---------------------------------------------------------------------------
# recurrence / series routes


def xi_table(max_n: int) -> CountTable:
    """Table of the modular subset counts driving the recurrence."""
    entries = {0: 0}
    for n in range(1, max_n + 1):
        entries[n] = residue_subset_count(n)
    return CountTable("xi", entries, max_n)


def excursion_count_table_recurrence(max_n: int) -> CountTable:
    """phi(0..max_n) from n*phi(n) = sum_{k=1..n} xi(k) phi(n-k).

    The division by n must be exact; a remainder signals a wrong xi and is a
    hard error.
    """
    xi = xi_table(max_n)
    phi = [1]
    for n in range(1, max_n + 1):
        s = sum(xi[k] * phi[n - k] for k in range(1, n + 1))
        if s % n:
            raise ArithmeticError(f"recurrence sum {s} not divisible by n = {n}")
        phi.append(s // n)
    return CountTable("phi", dict(enumerate(phi)), max_n)


def irreducible_table(phi: CountTable) -> CountTable:
    """Irreducible counts by inverting the renewal identity.

    With P(x) = sum phi_n x^n and I(x) the irreducible generating function,
    P = 1/(1 - I), i.e. I_n = phi_n - sum_{k=1..n-1} I_k phi_{n-k}.
    """
    irr = {0: 0}
    for n in range(1, phi.max_n + 1):
        irr[n] = phi[n] - sum(irr[k] * phi[n - k] for k in range(1, n))
    return CountTable("phi_irreducible", irr, phi.max_n)


def marked_table(max_n: int) -> CountTable:
    """Enumerated marked-pair counts (first-block renewal units)."""
    return CountTable(
        "phi_marked", {n: marked_count_bruteforce(n) for n in range(max_n + 1)}, max_n
    )


def power_series_exp(inner: list[Fraction], order: int) -> list[Fraction]:
    """Coefficients of exp(g) for g = sum_{k>=1} inner[k] x^k, to the order.

    Solved coefficientwise from E' = g' E:  n E_n = sum_{k=1..n} k g_k E_{n-k}.
    Exact rational arithmetic throughout.
    """
    if inner and inner[0] != 0:
        raise ValueError("inner series must have zero constant term")
    g = list(inner) + [Fraction(0)] * (order + 1 - len(inner))
    out = [Fraction(1)]
    for n in range(1, order + 1):
        s = sum(k * g[k] * out[n - k] for k in range(1, n + 1))
        out.append(s / n)
    return out


def excursion_series_check(order: int) -> SeriesCoefficients:
    """Coefficients of exp(sum_k xi_k x^k / k), xi_k = residue_subset_count(k) / 2^(4k).

    The n-th coefficient of the exponential equals phi(n)/2^(4n) exactly:
    this is the generating-function identity tying the excursion counts to
    the modular subset counts.
    """
    inner = [Fraction(0)] + [
        Fraction(residue_subset_count(k), k * 2 ** (4 * k)) for k in range(1, order + 1)
    ]
    return SeriesCoefficients(tuple(power_series_exp(inner, order)), order)
