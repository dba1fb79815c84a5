"""One-shot verification suite behind ``sinai verify``.

Each check recomputes a cross-cutting identity at desk scale and reports
pass/fail with a short detail string.  The suite is intentionally quick
(a few seconds) -- the heavier acceptance run lives in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import asymptotics, bijection, excursion_counts, sterneck
from .lattice_paths import Walk, classify


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def check_three_route_counts() -> CheckResult:
    brute = [excursion_counts.excursion_count_bruteforce(n) for n in range(5)]
    dp = excursion_counts.excursion_count_table_dp(20)
    rec = excursion_counts.excursion_count_table_recurrence(20)
    ok = brute == dp.values()[:5] and dp.values() == rec.values()
    return CheckResult(
        "three_route_excursion_counts",
        ok,
        f"brute(n<=4)={brute}, dp==recurrence up to n=20: {dp.values() == rec.values()}",
    )


def check_subset_count_oracles() -> CheckResult:
    bad = []
    for n in range(1, 6):
        q = sterneck.SubsetCountQuery(4 * n - 1, 2 * n, (3 * n) % (4 * n), 4 * n)
        if sterneck.residue_subset_count(n) != sterneck.brute_count(q):
            bad.append(("xi", n))
    for n in range(1, 9):
        for k in range(0, 9):
            for s in range(n):
                q = sterneck.SubsetCountQuery(n - 1, k, s, n, multiset=True)
                if sterneck.multiset_count_mod(k, n, s) != sterneck.brute_count(q, mode="dp"):
                    bad.append((k, n, s))
    return CheckResult(
        "subset_count_oracles", not bad, f"mismatches: {bad or 'none'}"
    )


def check_bijection_roundtrips() -> CheckResult:
    for n in range(1, 4):
        image = set()
        for m in bijection.iter_marked_excursions(n):
            t = bijection.upsilon(m)
            back = bijection.upsilon_inv(t)
            if (back.excursion, back.j) != (m.excursion, m.j):
                return CheckResult("bijection_roundtrips", False, f"roundtrip broken at n={n}")
            image.add(t.subset)
        if len(image) != 2 * sterneck.residue_subset_count(n):
            return CheckResult("bijection_roundtrips", False, f"image size wrong at n={n}")
    return CheckResult("bijection_roundtrips", True, "roundtrips and image sizes hold for n<=3")


def check_series_identity() -> CheckResult:
    order = 20
    series = excursion_counts.excursion_series_check(order)
    phi = excursion_counts.excursion_count_table_recurrence(order)
    ok = all(
        series[n] == Fraction(phi[n], 2 ** (4 * n)) for n in range(order + 1)
    )
    return CheckResult("exp_series_identity", ok, f"coefficients match to order {order}: {ok}")


def check_constant_algebra() -> CheckResult:
    enc = asymptotics.lambda_enclosure(terms=500, digits=30)
    consts = asymptotics.limit_constants(enc, digits=30)
    mp.dps = 30
    lhs = consts.c_excursion.midpoint
    rhs = consts.c_phi.midpoint / consts.c_local.midpoint
    ok = abs(lhs - rhs) <= abs(lhs) * mp.mpf(10) ** -12
    return CheckResult(
        "constant_algebra_identity",
        bool(ok),
        f"|lhs-rhs|/lhs = {mp.nstr(abs(lhs - rhs) / abs(lhs), 3)}",
    )


def check_classification_samples() -> CheckResult:
    w = Walk.from_string("UDDU")
    cls = classify(w)
    ok = cls.is_sinai_excursion and cls.is_irreducible
    empty_ok = classify(Walk(())).is_sinai_excursion
    not_sinai = not classify(Walk.from_string("DUUD")).is_sinai_walk
    ok = ok and empty_ok and not_sinai
    return CheckResult("classification_samples", ok, "UDDU excursion, empty walk, DUUD bridge")


ALL_CHECKS = (
    check_classification_samples,
    check_subset_count_oracles,
    check_three_route_counts,
    check_series_identity,
    check_bijection_roundtrips,
    check_constant_algebra,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
