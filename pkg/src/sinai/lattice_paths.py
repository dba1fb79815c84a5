"""Walks with unit up/down steps, their area process, and the down-time encoding.

A walk of length ``L`` is a sequence of increments in ``{+1, -1}``.  Its
heights are the partial sums ``S_k`` and its areas the second-order partial
sums ``A_k = S_1 + ... + S_k``.  The central objects are *Sinai walks* (all
areas nonnegative) and *Sinai excursions* (Sinai walks of length ``4n`` that
end with ``S = A = 0``).  Height and area can only vanish simultaneously at
multiples of 4, so excursions renew on a 4-step lattice and decompose into
irreducible blocks between renewal times.

A bridge is encoded bijectively by its set of *down times* (times ``k`` whose
increment is ``-1``); the total area of a length-``4n`` bridge is an affine
function of the sum of its down times, which makes "area zero" an exact
subset-sum condition.

Everything here is an immutable value and every function is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Walk:
    """A finite sequence of unit steps, each +1 (up) or -1 (down)."""

    increments: tuple[int, ...]

    def __post_init__(self):
        if any(e not in (1, -1) for e in self.increments):
            raise ValueError("walk increments must be +1 or -1")

    def __len__(self) -> int:
        return len(self.increments)

    def heights(self) -> list[int]:
        """Partial sums S_0 = 0, S_1, ..., S_L."""
        out = [0]
        h = 0
        for e in self.increments:
            h += e
            out.append(h)
        return out

    def areas(self) -> list[int]:
        """Second-order partial sums A_0 = 0, A_1, ..., A_L."""
        out = [0]
        h = a = 0
        for e in self.increments:
            h += e
            a += h
            out.append(a)
        return out

    def to_string(self) -> str:
        """Serialize as a string over {U, D}."""
        return "".join("U" if e == 1 else "D" for e in self.increments)

    @classmethod
    def from_string(cls, s: str) -> "Walk":
        """Parse a {U, D} string (bit-exact inverse of :meth:`to_string`)."""
        try:
            return cls(tuple(1 if c == "U" else {"D": -1}[c] for c in s))
        except KeyError as exc:
            raise ValueError(f"invalid walk character {exc.args[0]!r}") from None

    @classmethod
    def from_increments(cls, inc: Iterable[int]) -> "Walk":
        return cls(tuple(inc))


@dataclass(frozen=True)
class DownTimeSet:
    """Strictly increasing times in [0, L-1] at which a walk steps down."""

    times: tuple[int, ...]
    length: int

    def __post_init__(self):
        t = self.times
        if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
            raise ValueError("down times must be strictly increasing")
        if t and (t[0] < 0 or t[-1] >= self.length):
            raise ValueError(f"down times must lie in [0, {self.length - 1}]")

    def __len__(self) -> int:
        return len(self.times)

    def to_string(self) -> str:
        """Serialize as comma-separated integers."""
        return ",".join(str(t) for t in self.times)

    @classmethod
    def from_string(cls, s: str, length: int) -> "DownTimeSet":
        times = tuple(int(tok) for tok in s.split(",")) if s.strip() else ()
        return cls(times, length)


@dataclass(frozen=True)
class ExcursionClass:
    """Classification flags for a walk; see :func:`classify`."""

    is_bridge: bool
    is_sinai_walk: bool
    is_sinai_excursion: bool
    is_irreducible: bool

    @property
    def label(self) -> str:
        """Most specific class name."""
        if self.is_irreducible:
            return "irreducible_sinai_excursion"
        if self.is_sinai_excursion:
            return "sinai_excursion"
        if self.is_sinai_walk:
            return "sinai_walk"
        if self.is_bridge:
            return "bridge"
        return "general"


def classify(walk: Walk) -> ExcursionClass:
    """Classify a walk (total function, no errors).

    * bridge: final height 0;
    * sinai_walk: every area A_1..A_L >= 0;
    * sinai_excursion: sinai_walk and bridge with A_L = 0 and L divisible by 4;
    * irreducible: nonempty sinai_excursion with no interior renewal time
      (a time 0 < t < L with S_t = A_t = 0).

    Inside a Sinai walk an interior zero of the area forces the height to be
    0 or -1 there, so interior renewals are exactly the interior times where
    the area vanishes at an even step; these occur only at multiples of 4.
    """
    L = len(walk)
    h = a = 0
    sinai = True
    renewal = False
    for t, e in enumerate(walk.increments, start=1):
        h += e
        a += h
        if a < 0:
            sinai = False
        if t < L and h == 0 and a == 0:
            renewal = True
    bridge = h == 0
    excursion = sinai and bridge and a == 0 and L % 4 == 0
    irreducible = excursion and L > 0 and not renewal
    return ExcursionClass(bridge, sinai, excursion, irreducible)


def down_times(walk: Walk) -> DownTimeSet:
    """Times before down steps; inverse of :func:`walk_from_down_times`."""
    return DownTimeSet(
        tuple(i for i, e in enumerate(walk.increments) if e == -1), len(walk)
    )


def walk_from_down_times(t: DownTimeSet) -> Walk:
    """Rebuild the unique walk of the given length with these down times."""
    chosen = set(t.times)
    return Walk(tuple(-1 if k in chosen else 1 for k in range(t.length)))


def area_from_down_times(t: DownTimeSet) -> int:
    """Total area of the length-4n bridge encoded by ``t``.

    Requires ``L = 4n`` and ``|t| = 2n`` (a bridge).  Writing each height as a
    weighted sum of increments gives A_{4n} = -2n(4n-1) + 2*sum(t).
    """
    L = t.length
    if L % 4 != 0:
        raise ValueError(f"length {L} is not divisible by 4")
    n = L // 4
    if len(t.times) != 2 * n:
        raise ValueError(f"need exactly {2 * n} down times for a bridge, got {len(t.times)}")
    return -2 * n * (4 * n - 1) + 2 * sum(t.times)


def standard_excursion(n: int) -> Walk:
    """The sawtooth excursion of length 4n oscillating between heights +-1.

    Its down times are (1, 2, 5, 6, ..., 4n-3, 4n-2), which sum to n(4n-1);
    n = 0 yields the empty walk.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Walk((1, -1, -1, 1) * n)


def is_majorized(x: DownTimeSet | Sequence[int], y: DownTimeSet | Sequence[int]) -> bool:
    """True iff every partial sum of ``x`` is >= the matching partial sum of
    ``y``, with equality at the full length.

    This is the comparison under which down-time sets of excursions dominate
    the sawtooth's; note the inequality runs opposite to the textbook
    majorization convention.
    """
    xs = x.times if isinstance(x, DownTimeSet) else tuple(x)
    ys = y.times if isinstance(y, DownTimeSet) else tuple(y)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    sx = sy = 0
    for a, b in zip(xs, ys):
        sx += a
        sy += b
        if sx < sy:
            return False
    return sx == sy


def renewal_times(walk: Walk) -> list[int]:
    """Interior times 0 < t < L where height and area both vanish."""
    out = []
    h = a = 0
    L = len(walk)
    for t, e in enumerate(walk.increments, start=1):
        h += e
        a += h
        if t < L and h == 0 and a == 0:
            out.append(t)
    return out


def first_block_length(walk: Walk) -> int:
    """Length of the first irreducible block of a Sinai excursion."""
    h = a = 0
    for t, e in enumerate(walk.increments, start=1):
        h += e
        a += h
        if h == 0 and a == 0:
            return t
    raise ValueError("walk has no renewal point; not a Sinai excursion")


def irreducible_decomposition(walk: Walk) -> list[Walk]:
    """Split a Sinai excursion at its renewal times.

    The parts are irreducible Sinai excursions and their concatenation
    reproduces the input exactly.
    """
    if not classify(walk).is_sinai_excursion:
        raise ValueError("irreducible_decomposition requires a Sinai excursion")
    cuts = [0] + renewal_times(walk) + [len(walk)]
    if len(walk) == 0:
        return []
    return [Walk(walk.increments[a:b]) for a, b in zip(cuts, cuts[1:])]
