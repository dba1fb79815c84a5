"""Cyclic-shift bijection between marked excursions and residue subsets.

A *marked excursion* is a pair (B, j): a Sinai excursion B of length 4n whose
first irreducible block has length 4k, together with an index 1 <= j <= 2k
into the times before up steps of that first block.  Cyclically shifting B to
start at the j-th such time yields a bridge whose down-time set sums to n or
3n mod 4n; this map is a bijection onto all 2n-element subsets of
{1, ..., 4n-1} with those residues.

The inverse rebuilds the bridge from the subset, finds the horizontal axis
that splits the signed area evenly (the translated area is then zero), and
scans the times before up steps from the right: the first shift that yields a
standalone Sinai excursion is the unique one whose recovered mark lands in
the first irreducible block.  Existence of a valid shift is a cycle-lemma
(Raney) fact; a failed scan therefore raises an internal error rather than a
user error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceGuardError
from .excursion_counts import BRUTE_FORCE_MAX_N, iter_excursions
from .lattice_paths import Walk, classify, down_times, first_block_length


@dataclass(frozen=True)
class MarkedExcursion:
    """A Sinai excursion with a mark on its first irreducible block.

    ``j`` is 1-based and indexes the times before up steps of the first
    block; that block has i_1 = 0 and i_{2k} = 4k - 1 among them.
    """

    excursion: Walk
    j: int

    def __post_init__(self):
        cls = classify(self.excursion)
        if not cls.is_sinai_excursion or len(self.excursion) == 0:
            raise ValueError("marked excursion requires a nonempty Sinai excursion")
        k4 = first_block_length(self.excursion)
        if not 1 <= self.j <= k4 // 2:
            raise ValueError(f"mark index {self.j} out of range 1..{k4 // 2}")


@dataclass(frozen=True)
class ResidueSubset:
    """A 2n-element subset of {1, ..., 4n-1} summing to n or 3n mod 4n."""

    subset: tuple[int, ...]
    n: int

    def __post_init__(self):
        n = self.n
        t = self.subset
        if len(t) != 2 * n:
            raise ValueError(f"subset must have {2 * n} elements")
        if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
            raise ValueError("subset must be strictly increasing")
        if t and (t[0] < 1 or t[-1] > 4 * n - 1):
            raise ValueError("subset elements must lie in {1, ..., 4n-1}")
        if sum(t) % (4 * n) not in (n % (4 * n), (3 * n) % (4 * n)):
            raise ValueError("subset sum must be n or 3n mod 4n")


def _first_block_up_times(walk: Walk) -> list[int]:
    block = first_block_length(walk)
    return [i for i, e in enumerate(walk.increments[:block]) if e == 1]


def _cyclic_shift(inc: tuple[int, ...], offset: int) -> tuple[int, ...]:
    off = offset % len(inc)
    return inc[off:] + inc[:off]


def upsilon(m: MarkedExcursion) -> ResidueSubset:
    """Map a marked excursion to the down-time set of its cyclic shift.

    The shift starts at the j-th time before an up step of the first
    irreducible block; j = 1 returns the excursion's own down times.
    """
    inc = m.excursion.increments
    n = len(inc) // 4
    shift = _first_block_up_times(m.excursion)[m.j - 1]
    shifted = _cyclic_shift(inc, shift)
    return ResidueSubset(down_times(Walk(shifted)).times, n)


def upsilon_inv(t: ResidueSubset) -> MarkedExcursion:
    """Invert :func:`upsilon` by the rightmost qualifying cyclic shift.

    Scanning m = 4n, 4n-1, ..., 1 (m taken mod 4n must be a time before an up
    step of the rebuilt bridge), the first m whose shift is a standalone
    Sinai excursion recovers the unique preimage; the mark is the up-step
    time (4n - m) mod 4n, which for that m lies in the first irreducible
    block.  Any later standalone-excursion shift corresponds to a rotation at
    a renewal boundary and carries a strictly larger mark.
    """
    marked, _ = _invert_with_multiplicity(t)
    return marked


def qualifying_shift_count(t: ResidueSubset) -> int:
    """Number of up-step shifts of the rebuilt bridge that yield a standalone
    Sinai excursion (the rightmost one is the inverse; uniqueness is not
    guaranteed and this reports the observed multiplicity)."""
    _, count = _invert_with_multiplicity(t)
    return count


def _invert_with_multiplicity(t: ResidueSubset) -> tuple[MarkedExcursion, int]:
    n = t.n
    L = 4 * n
    chosen = set(t.subset)
    inc = tuple(-1 if k in chosen else 1 for k in range(L))
    up = {i for i, e in enumerate(inc) if e == 1}
    # a cyclic shift is a standalone excursion iff its start point sits on
    # the axis that zeroes the translated area AND the translated areas stay
    # nonnegative, so the translation never needs materializing
    found = None
    count = 0
    for m in range(L, 0, -1):
        if m % L not in up:
            continue
        shifted = _cyclic_shift(inc, m)
        if not classify(Walk(shifted)).is_sinai_excursion:
            continue
        count += 1
        if found is None:
            walk = Walk(shifted)
            mark = (L - m) % L
            block_ups = _first_block_up_times(walk)
            if mark not in block_ups:
                raise AssertionError(
                    f"rightmost shift mark {mark} outside first block for {t}"
                )
            found = MarkedExcursion(walk, block_ups.index(mark) + 1)
    if found is None:
        raise AssertionError(f"no qualifying shift for {t}; cycle lemma violated")
    return found, count


def iter_marked_excursions(n: int):
    """All marked excursions of size n (brute-force bound applies)."""
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceGuardError(f"marked enumeration guarded at n <= {BRUTE_FORCE_MAX_N}")
    for inc in iter_excursions(n):
        if not inc:
            continue
        walk = Walk(inc)
        for j in range(1, first_block_length(walk) // 2 + 1):
            yield MarkedExcursion(walk, j)


def enumerate_image(n: int) -> set[tuple[int, ...]]:
    """Image of upsilon over all marked excursions of size n.

    Raises if a duplicate appears (the map must be injective); the result has
    exactly twice residue_subset_count(n) elements.
    """
    image: set[tuple[int, ...]] = set()
    for m in iter_marked_excursions(n):
        t = upsilon(m).subset
        if t in image:
            raise AssertionError(f"duplicate image subset {t}")
        image.add(t)
    return image
