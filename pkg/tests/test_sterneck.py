"""Number-theoretic kernel and the counting oracles that pin it down."""

import pytest

from sinai.errors import ResourceGuardError
from sinai.sterneck import (
    SubsetCountQuery,
    binomial,
    brute_count,
    divisors,
    moebius,
    multiset_count_mod,
    residue_subset_count,
    totient,
)


class TestBasics:
    def test_totient(self):
        assert totient(1) == 1
        assert totient(8) == 4
        assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]

    def test_moebius(self):
        assert moebius(1) == 1
        assert moebius(6) == 1
        assert moebius(4) == 0
        assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_divisors(self):
        assert divisors(1) == [1]
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(97) == [1, 97]

    def test_binomial(self):
        assert binomial(7, 4) == 35
        assert binomial(5, 7) == 0
        assert binomial(5, -1) == 0
        with pytest.raises(ValueError):
            binomial(-1, 0)

    @pytest.mark.parametrize("fn", [totient, moebius, divisors])
    def test_zero_rejected(self, fn):
        with pytest.raises(ValueError):
            fn(0)

    def test_totient_moebius_convolutions(self):
        # sum_{d|n} phi(d) = n and sum_{d|n} mu(d) = [n == 1]
        for n in range(1, 60):
            assert sum(totient(d) for d in divisors(n)) == n
            assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)


class TestMultisetCountMod:
    def test_small_examples(self):
        assert multiset_count_mod(2, 2, 0) == 2  # {0,0}, {1,1}
        assert multiset_count_mod(2, 2, 1) == 1  # {0,1}
        assert multiset_count_mod(5, 1, 0) == 1  # single-element universe

    def test_size_zero(self):
        assert multiset_count_mod(0, 5, 0) == 1
        assert multiset_count_mod(0, 5, 3) == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            multiset_count_mod(2, 0, 0)
        with pytest.raises(ValueError):
            multiset_count_mod(2, 3, 3)
        with pytest.raises(ValueError):
            multiset_count_mod(-1, 3, 0)

    def test_matches_exhaustive_enumeration(self):
        for n in range(1, 7):
            for k in range(0, 7):
                for s in range(n):
                    q = SubsetCountQuery(n - 1, k, s, n, multiset=True)
                    assert multiset_count_mod(k, n, s) == brute_count(q, mode="exhaustive")

    def test_total_over_residues(self):
        for n in range(1, 13):
            for k in range(1, 13):
                total = sum(multiset_count_mod(k, n, s) for s in range(n))
                assert total == binomial(n + k - 1, k)

    def test_doubles_residue_subset_count(self):
        for n in range(1, 9):
            assert 2 * residue_subset_count(n) == multiset_count_mod(2 * n, 2 * n, 0)


class TestResidueSubsetCount:
    def test_known_values(self):
        assert [residue_subset_count(n) for n in range(1, 6)] == [1, 5, 40, 405, 4626]

    def test_matches_exhaustive(self):
        for n in (1, 2, 3):
            q = SubsetCountQuery(4 * n - 1, 2 * n, (3 * n) % (4 * n), 4 * n)
            assert residue_subset_count(n) == brute_count(q, mode="exhaustive")

    def test_matches_dp(self):
        for n in range(1, 9):
            q = SubsetCountQuery(4 * n - 1, 2 * n, (3 * n) % (4 * n), 4 * n)
            assert residue_subset_count(n) == brute_count(q, mode="dp")

    def test_residue_symmetry(self):
        # as many subsets sum to n as to 3n mod 4n (negation symmetry)
        for n in range(1, 7):
            q3 = SubsetCountQuery(4 * n - 1, 2 * n, (3 * n) % (4 * n), 4 * n)
            q1 = SubsetCountQuery(4 * n - 1, 2 * n, n % (4 * n), 4 * n)
            assert brute_count(q3, mode="dp") == brute_count(q1, mode="dp")

    def test_validation(self):
        with pytest.raises(ValueError):
            residue_subset_count(0)


class TestBruteCount:
    def test_tiny_subset_example(self):
        q = SubsetCountQuery(3, 2, 3, 4)
        assert brute_count(q) == 1  # {1,2} only

    def test_residues_2_or_6_mod_8(self):
        q2 = SubsetCountQuery(7, 4, 2, 8)
        q6 = SubsetCountQuery(7, 4, 6, 8)
        assert brute_count(q2) + brute_count(q6) == 10

    def test_empty_size(self):
        assert brute_count(SubsetCountQuery(5, 0, 0, 3)) == 1

    def test_modes_agree(self):
        for m in (1, 2, 5, 8):
            for k in (0, 1, 3, 5):
                for s in range(m):
                    for multiset in (False, True):
                        q = SubsetCountQuery(9, k, s, m, multiset=multiset)
                        assert brute_count(q, "exhaustive") == brute_count(q, "dp")

    def test_exhaustive_guard(self):
        q = SubsetCountQuery(60, 30, 0, 2)
        with pytest.raises(ResourceGuardError):
            brute_count(q, mode="exhaustive")

    def test_query_validation(self):
        with pytest.raises(ValueError):
            SubsetCountQuery(5, 2, 3, 3)
        with pytest.raises(ValueError):
            SubsetCountQuery(5, -1, 0, 3)
        with pytest.raises(ValueError):
            brute_count(SubsetCountQuery(5, 2, 0, 3), mode="bogus")

    def test_dp_state_guard(self):
        q = SubsetCountQuery(100_000, 50_000, 0, 100_000)
        with pytest.raises(ResourceGuardError):
            brute_count(q, mode="dp")


class TestConcurrentSieve:
    def test_parallel_factorizations_agree(self):
        # the prime cache grows lazily; hammer it from several threads
        from concurrent.futures import ThreadPoolExecutor

        import sinai.sterneck as st

        st._PRIMES[:] = [2, 3, 5, 7, 11, 13]  # shrink the cache to force growth
        values = list(range(9_900, 10_060))
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(totient, values))
        assert results == [totient(v) for v in values]
