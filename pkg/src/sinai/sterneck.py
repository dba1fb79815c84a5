"""Number-theoretic kernel: divisor sums, exact modular subset counts, oracles.

The closed formulas here go back to von Sterneck's work on counting residue
classes of subset sums.  ``multiset_count_mod`` counts size-k multisets of
{0, ..., n-1} with a prescribed sum mod n; ``residue_subset_count`` is the
special case that drives the excursion recurrence: the number of 2n-element
subsets of {1, ..., 4n-1} whose sum is congruent to 3n mod 4n.

Every closed formula divides out the modulus exactly; a non-integer
intermediate indicates a wrong normalization and raises instead of rounding.
``brute_count`` provides an independent enumeration/DP oracle used by the
test suite to pin the normalizations down.

All arithmetic is exact (Python ints); no floating point.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import comb, gcd

from .errors import ResourceGuardError

# Cache of primes for trial division, grown on demand.
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]
_PRIMES_LOCK = threading.Lock()


def _extend_primes(limit: int) -> None:
    # First-wins under the lock; semantics unchanged by concurrent callers.
    with _PRIMES_LOCK:
        cand = _PRIMES[-1]
        while _PRIMES[-1] < limit:
            cand += 2
            if all(cand % p for p in _PRIMES if p * p <= cand):
                _PRIMES.append(cand)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (intended for n up to ~10^10)."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out: dict[int, int] = {}
    m = n
    i = 0
    while True:
        if i >= len(_PRIMES):
            _extend_primes(2 * _PRIMES[-1])
        p = _PRIMES[i]
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        i += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisors requires n >= 1")
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def totient(n: int) -> int:
    """Euler's totient."""
    if n < 1:
        raise ValueError("totient requires n >= 1")
    r = n
    for p in factorize(n):
        r = r // p * (p - 1)
    return r


def moebius(n: int) -> int:
    """Moebius function: 0 on non-squarefree, else (-1)^(#prime factors)."""
    if n < 1:
        raise ValueError("moebius requires n >= 1")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def binomial(a: int, b: int) -> int:
    """Exact binomial coefficient; out-of-range b returns 0."""
    if a < 0:
        raise ValueError("binomial requires a >= 0")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def multiset_count_mod(k: int, n: int, s: int) -> int:
    """Number of size-k multisets of {0, ..., n-1} summing to s mod n.

    Closed form (von Sterneck): a divisor sum over d | gcd(k, n) of
    C((n+k)/d - 1, k/d) * mu(d/gcd(d,s)) * phi(d) / phi(d/gcd(d,s)),
    all divided by the modulus n.  The division is exact; a remainder is an
    internal error, not a rounding situation.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if k < 0:
        raise ValueError("size must be >= 0")
    if not 0 <= s < n:
        raise ValueError(f"residue {s} out of range for modulus {n}")
    total = 0
    for d in divisors(gcd(k, n)):  # gcd(0, n) == n covers k == 0
        g = gcd(d, s)
        total += comb((n + k) // d - 1, k // d) * moebius(d // g) * totient(d) // totient(d // g)
    if total % n:
        raise ArithmeticError(f"von Sterneck sum {total} not divisible by modulus {n}")
    return total // n


def residue_subset_count(n: int) -> int:
    """Number of 2n-element subsets of {1, ..., 4n-1} summing to 3n mod 4n.

    Closed form: (1/4n) * sum over d | 2n of C(4n/d - 1, 2n/d) * phi(d).
    Twice this count equals multiset_count_mod(2n, 2n, 0).
    """
    if n < 1:
        raise ValueError("residue_subset_count requires n >= 1")
    total = sum(comb(4 * n // d - 1, 2 * n // d) * totient(d) for d in divisors(2 * n))
    if total % (4 * n):
        raise ArithmeticError(f"divisor sum {total} not divisible by 4n = {4 * n}")
    return total // (4 * n)


@dataclass(frozen=True)
class SubsetCountQuery:
    """A modular subset/multiset counting instance.

    Universe is {1, ..., universe_max} for subsets and {0, ..., universe_max}
    for multisets (unbounded repetition).
    """

    universe_max: int
    size: int
    residue: int
    modulus: int
    multiset: bool = False

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range")
        if self.size < 0:
            raise ValueError("size must be >= 0")
        if self.universe_max < 0:
            raise ValueError("universe_max must be >= 0")


_EXHAUSTIVE_LIMIT = 2_000_000  # max enumerated tuples in exhaustive mode
_DP_STATE_LIMIT = 200_000_000  # max (element, size, residue) transitions


def brute_count(q: SubsetCountQuery, mode: str = "auto") -> int:
    """Independent oracle for the closed formulas.

    mode="exhaustive" enumerates tuples (guarded by instance size);
    mode="dp" runs an exact dynamic program over (element, chosen, residue);
    mode="auto" picks exhaustive for small instances, DP otherwise.
    Oversized requests raise ResourceGuardError rather than truncating.
    """
    if mode not in ("auto", "exhaustive", "dp"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        mode = "exhaustive" if _enumeration_size(q) <= 200_000 else "dp"
    if mode == "exhaustive":
        if q.universe_max > 40 or _enumeration_size(q) > _EXHAUSTIVE_LIMIT:
            raise ResourceGuardError(
                f"exhaustive enumeration of {q} refused; use dp mode"
            )
        return _count_exhaustive(q)
    n_items = q.universe_max + (1 if q.multiset else 0)
    if n_items * (q.size + 1) * q.modulus > _DP_STATE_LIMIT:
        raise ResourceGuardError(f"dp table for {q} exceeds the state guard")
    return _count_dp(q)


def _enumeration_size(q: SubsetCountQuery) -> int:
    if q.multiset:
        return comb(q.universe_max + 1 + q.size - 1, q.size)
    return comb(q.universe_max, q.size) if q.size <= q.universe_max else 0


def _count_exhaustive(q: SubsetCountQuery) -> int:
    if q.multiset:
        pool = range(0, q.universe_max + 1)
        tuples = itertools.combinations_with_replacement(pool, q.size)
    else:
        pool = range(1, q.universe_max + 1)
        tuples = itertools.combinations(pool, q.size)
    return sum(1 for t in tuples if sum(t) % q.modulus == q.residue)


def _count_dp(q: SubsetCountQuery) -> int:
    m = q.modulus
    # table[c][r] = number of ways to choose c elements with sum r mod m
    table = [[0] * m for _ in range(q.size + 1)]
    table[0][0] = 1
    if q.multiset:
        # Unbounded repetition: ascending size loop lets each element recur.
        for e in range(0, q.universe_max + 1):
            for c in range(1, q.size + 1):
                prev = table[c - 1]
                cur = table[c]
                for r in range(m):
                    cur[r] += prev[(r - e) % m]
    else:
        # Each element used at most once: descending size loop.
        for e in range(1, q.universe_max + 1):
            for c in range(min(e, q.size), 0, -1):
                prev = table[c - 1]
                cur = table[c]
                for r in range(m):
                    cur[r] += prev[(r - e) % m]
    return table[q.size][q.residue]
