import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from clustermethod.errors import InvalidInput, ResourceLimit
from clustermethod.perm import (
    PatternSet,
    Permutation,
    all_patterns,
    brute_avoiders,
    brute_distribution,
    brute_distributions,
    complement,
    is_non_overlapping,
    nonoverlapping_fraction,
    occurrences,
    overlap_set,
    parse_pattern,
    reduce,
    reverse,
)

patterns = st.integers(2, 6).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation)
words = st.lists(st.integers(1, 60), min_size=1, max_size=9, unique=True)


class TestReduce:
    @pytest.mark.parametrize(
        "word, expected",
        [((4, 6, 3, 8, 2), (3, 4, 2, 5, 1)), ((1, 2, 3), (1, 2, 3)), ((5, 9, 2), (2, 3, 1))],
    )
    def test_examples(self, word, expected):
        assert reduce(word) == expected

    def test_duplicates_rejected(self):
        with pytest.raises(InvalidInput):
            reduce((3, 3, 1))

    @given(words)
    def test_order_isomorphic(self, word):
        r = reduce(word)
        assert sorted(r) == list(range(1, len(word) + 1))
        assert all((word[i] < word[j]) == (r[i] < r[j]) for i in range(len(word)) for j in range(len(word)))


class TestSymmetries:
    def test_examples(self):
        assert reverse("1324") == (4, 2, 3, 1)
        assert complement("1324") == (4, 2, 3, 1)

    @given(patterns)
    def test_involutions(self, p):
        assert reverse(reverse(p)) == p
        assert complement(complement(p)) == p
        assert p.inverse().inverse() == p

    @given(patterns)
    def test_orbit_is_closed(self, p):
        orbit = p.symmetry_orbit()
        assert all(reverse(q) in orbit and complement(q) in orbit for q in orbit)


class TestPermutation:
    def test_not_a_bijection(self):
        with pytest.raises(InvalidInput):
            Permutation((1, 3))

    def test_parse_long_pattern(self):
        p = parse_pattern("10,1,2,3,4,5,6,7,8,9")
        assert p.length == 10 and str(p) == "10,1,2,3,4,5,6,7,8,9"

    def test_length_one_pattern_rejected(self):
        with pytest.raises(InvalidInput):
            PatternSet(["1"])

    def test_duplicate_patterns_rejected(self):
        with pytest.raises(InvalidInput):
            PatternSet(["123", "123"])


class TestOccurrences:
    def test_examples(self):
        assert occurrences("142536879", "1324") == [1, 3, 6]
        assert occurrences("123", "132") == []
        assert occurrences("1234", "123") == [1, 2]

    @given(st.permutations(range(1, 9)), patterns)
    def test_matches_naive_scan(self, pi, sigma):
        assert occurrences(pi, sigma) == oracles.occ(tuple(pi), sigma)


class TestOverlapSet:
    @pytest.mark.parametrize(
        "sigma, expected",
        [("1324", {2, 3}), ("13254", {2, 4}), ("12345", {1, 2, 3, 4}), ("132", {2}), ("1243", {3})],
    )
    def test_examples(self, sigma, expected):
        assert overlap_set(sigma) == expected

    @given(patterns)
    def test_properties(self, sigma):
        o = overlap_set(sigma)
        assert len(sigma) - 1 in o
        assert o == overlap_set(reverse(sigma)) == overlap_set(complement(sigma))
        assert o == oracles.overlaps(sigma)

    def test_non_overlapping(self):
        assert not is_non_overlapping("1324")
        assert is_non_overlapping("132")
        assert is_non_overlapping("1243")


class TestNonOverlappingFraction:
    def test_small(self):
        assert nonoverlapping_fraction(2) == 1
        assert nonoverlapping_fraction(3) == Fraction(4, 6)

    def test_m4_bound(self):
        value = nonoverlapping_fraction(4)
        census = sum(is_non_overlapping(p) for p in all_patterns(4))
        assert value == Fraction(census, 24) and value >= Fraction(364, 1000)

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            nonoverlapping_fraction(9)


class TestBruteForce:
    def test_avoiders(self):
        assert brute_avoiders("123", 2) == 2
        assert brute_avoiders("123", 3) == 5
        assert brute_avoiders("123", 4) == 17

    def test_distribution_examples(self):
        assert brute_distribution("123", 3).coefficients == {0: 5, 1: 1}
        assert brute_distribution("123", 4).coefficients == {0: 17, 1: 6, 2: 1}
        assert brute_distribution("1234", 3).coefficients == {0: 6}

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            brute_distribution("123", 11)
        with pytest.raises(ResourceLimit):
            brute_avoiders("123", 12)

    def test_pattern_set_avoidance(self):
        # permutations avoiding both 123 and 321 consecutively are the alternating ones
        assert [brute_avoiders(["123", "321"], n) for n in range(1, 8)] == [1, 2, 4, 10, 32, 122, 544]

    @pytest.mark.parametrize("n", range(0, 8))
    def test_matches_naive_distribution(self, n):
        for sigma in ("132", "1324", "2413"):
            assert brute_distribution(sigma, n).coefficients == oracles.distribution(sigma, n)

    @given(st.integers(3, 4).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation), st.integers(0, 8))
    def test_distribution_properties(self, sigma, n):
        dists = brute_distributions([sigma, reverse(sigma), complement(sigma)], n)
        d = dists[sigma]
        assert d.total() == math.factorial(n)
        assert d.avoiders == brute_avoiders(sigma, n)
        assert dists[reverse(sigma)].coefficients == d.coefficients == dists[complement(sigma)].coefficients
