"""Cyclic-shift bijection: golden vectors, roundtrips, image structure."""

import pytest

from sinai.bijection import (
    MarkedExcursion,
    ResidueSubset,
    enumerate_image,
    iter_marked_excursions,
    qualifying_shift_count,
    upsilon,
    upsilon_inv,
)
from sinai.lattice_paths import Walk
from sinai.sterneck import residue_subset_count

# The three excursions of length 8 and the subsets their shifts produce.
GOLDEN_N2 = {
    "UDDUUDDU": [(1, 2, 5, 6), (2, 3, 6, 7)],
    "UDUDDUDU": [(1, 3, 4, 6), (1, 2, 4, 7), (1, 4, 6, 7), (2, 4, 5, 7)],
    "UUDDDDUU": [(2, 3, 4, 5), (1, 2, 3, 4), (4, 5, 6, 7), (3, 4, 5, 6)],
}


class TestGoldenVectors:
    @pytest.mark.parametrize("excursion,subsets", GOLDEN_N2.items())
    def test_forward_shifts(self, excursion, subsets):
        w = Walk.from_string(excursion)
        for j, subset in enumerate(subsets, start=1):
            assert upsilon(MarkedExcursion(w, j)).subset == subset

    def test_image_is_all_ten_subsets(self):
        expected = {s for subsets in GOLDEN_N2.values() for s in subsets}
        assert enumerate_image(2) == expected
        assert len(expected) == 2 * residue_subset_count(2)

    def test_inverse_golden_cases(self):
        m = upsilon_inv(ResidueSubset((2, 3, 6, 7), 2))
        assert m.excursion.to_string() == "UDDUUDDU"
        assert m.j == 2
        m = upsilon_inv(ResidueSubset((1, 2, 5, 6), 2))
        assert m.excursion.to_string() == "UDDUUDDU"
        assert m.j == 1
        m = upsilon_inv(ResidueSubset((1, 2, 3, 4), 2))
        assert m.excursion.to_string() == "UUDDDDUU"
        assert m.j == 2


class TestMarkedExcursion:
    def test_identity_shift(self):
        w = Walk.from_string("UDDUUDDU")
        t = upsilon(MarkedExcursion(w, 1))
        assert t.subset == (1, 2, 5, 6)

    def test_mark_range_enforced(self):
        w = Walk.from_string("UDDUUDDU")  # first block has k = 1, so j <= 2
        with pytest.raises(ValueError):
            MarkedExcursion(w, 3)
        with pytest.raises(ValueError):
            MarkedExcursion(w, 0)

    def test_requires_excursion(self):
        with pytest.raises(ValueError):
            MarkedExcursion(Walk.from_string("UD"), 1)

    def test_counts_by_size(self):
        for n in (1, 2, 3):
            assert sum(1 for _ in iter_marked_excursions(n)) == 2 * residue_subset_count(n)


class TestResidueSubset:
    def test_residue_enforced(self):
        with pytest.raises(ValueError):
            ResidueSubset((1, 2, 3, 5), 2)  # sums to 11 = 3 mod 8: not 2 or 6
        with pytest.raises(ValueError):
            ResidueSubset((1, 2, 5), 2)
        with pytest.raises(ValueError):
            ResidueSubset((0, 2, 5, 7), 2)  # 0 not allowed

    def test_shift_changes_sum_consistently(self):
        # each output's residue is n or 3n mod 4n
        for n in (1, 2, 3):
            for t in enumerate_image(n):
                assert sum(t) % (4 * n) in {n % (4 * n), (3 * n) % (4 * n)}


class TestBijectivity:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_roundtrips_both_ways(self, n):
        seen = {}
        for m in iter_marked_excursions(n):
            t = upsilon(m)
            assert t.subset not in seen
            seen[t.subset] = m
            back = upsilon_inv(t)
            assert back.excursion == m.excursion and back.j == m.j
        # other direction: every target subset is hit and maps back to itself
        expected = set()
        for total_residue in {n % (4 * n), (3 * n) % (4 * n)}:
            expected.update(_subsets_with_residue(n, total_residue))
        assert set(seen) == expected
        for t in expected:
            m = upsilon_inv(ResidueSubset(t, n))
            assert upsilon(m).subset == t

    def test_image_cardinality(self):
        for n in (1, 2, 3, 4):
            assert len(enumerate_image(n)) == 2 * residue_subset_count(n)

    def test_rightmost_choice_is_not_always_unique(self):
        # the scan can meet several standalone-excursion shifts; record that
        counts = [qualifying_shift_count(ResidueSubset(t, 2)) for t in enumerate_image(2)]
        assert all(c >= 1 for c in counts)
        assert max(counts) > 1


def _subsets_with_residue(n, residue):
    import itertools

    for t in itertools.combinations(range(1, 4 * n), 2 * n):
        if sum(t) % (4 * n) == residue:
            yield t
