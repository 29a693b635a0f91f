import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from clustermethod.cluster import (
    FeetTable,
    cluster_polynomial,
    cluster_polynomials,
    count_layouts,
    dense_cluster_count,
    dense_pattern,
    enumerate_layouts,
    nonoverlap_block_poset,
    fuss_catalan,
    monotone_cluster_coeffs,
    nonoverlapping_d,
    nonoverlapping_d2_closed_form,
    rec1423,
    rec1423_signed,
    rec2143,
    sigma_family_member,
    sigma_family_polynomial,
    sigma_family_set,
)
from clustermethod.config import override
from clustermethod.errors import InvalidInput, ResourceLimit
from clustermethod.perm import Permutation, all_patterns, complement, is_non_overlapping, overlap_set, reverse
from clustermethod.poset import count_linear_extensions

small_patterns = st.integers(3, 5).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation)


class TestLayouts:
    def test_non_overlapping_single_layout(self):
        for sigma in ("132", "1243", "13542"):
            m = len(sigma)
            for k in (1, 2, 3):
                layouts = enumerate_layouts(sigma, k * (m - 1) + 1)
                assert [l.starts for l in layouts] == [tuple(1 + j * (m - 1) for j in range(k))]

    def test_n_equals_m(self):
        assert [l.starts for l in enumerate_layouts("2413", 4)] == [(1,)]

    def test_1324_n7(self):
        assert [l.starts for l in enumerate_layouts("1324", 7)] == [(1, 4)]

    def test_empty(self):
        assert enumerate_layouts("1324", 3) == []
        assert enumerate_layouts("1324", 5) == []

    @given(small_patterns, st.integers(3, 14))
    def test_count_and_order(self, sigma, n):
        layouts = enumerate_layouts(sigma, n)
        assert len(layouts) == count_layouts(sigma, n)
        assert [l.marks for l in layouts] == sorted(l.marks for l in layouts)
        assert len({l.marks for l in layouts}) == len(layouts)
        o = overlap_set(sigma)
        for l in layouts:
            assert all(b - a in o for a, b in zip(l.starts, l.starts[1:]))


class TestClusterPolynomial:
    def test_examples(self):
        assert cluster_polynomial("2413", 4).coefficients == {1: 1}
        assert cluster_polynomial("1324", 6).coefficients == {2: 2}
        assert cluster_polynomial("1324", 7).coefficients == {2: 1}

    @pytest.mark.parametrize("sigma", ["123", "132", "1324", "2143", "2413", "1342"])
    @pytest.mark.parametrize("n", range(0, 9))
    def test_matches_brute_cluster_enumeration(self, sigma, n):
        if n < len(sigma):
            assert cluster_polynomial(sigma, n).coefficients == {}
        else:
            assert cluster_polynomial(sigma, n, method="poset").coefficients == oracles.cluster_counts(sigma, n)

    @given(small_patterns)
    def test_symmetry(self, sigma):
        a = cluster_polynomials(sigma, 12)
        assert a == cluster_polynomials(reverse(sigma), 12) == cluster_polynomials(complement(sigma), 12)

    @given(st.integers(3, 6).flatmap(lambda m: st.permutations(range(1, m + 1))).map(Permutation))
    def test_poset_and_transfer_agree(self, sigma):
        assert cluster_polynomials(sigma, 14, method="poset") == cluster_polynomials(sigma, 14, method="transfer")

    @given(st.lists(small_patterns, min_size=2, max_size=3, unique=True))
    def test_pattern_sets_poset_and_transfer_agree(self, pats):
        assert cluster_polynomials(pats, 11, method="poset") == cluster_polynomials(pats, 11, method="transfer")

    def test_single_pattern_at_m(self):
        for sigma in all_patterns(4):
            assert cluster_polynomial(sigma, 4).coefficients == {1: 1}

    def test_caps(self):
        with override(cluster_n_max=10):
            with pytest.raises(ResourceLimit):
                cluster_polynomials("123", 11)
        with pytest.raises(InvalidInput):
            cluster_polynomials("123", 5, method="magic")

    def test_evaluation(self):
        p = cluster_polynomial("123", 5)
        assert p(1) == 2 and p(-1) == 0 and p.total() == 2
        assert str(p) == "t^2 + t^3"
        assert p.to_json() == {"2": "1", "3": "1"}


class TestFastPaths:
    def test_monotone_examples(self):
        rows = monotone_cluster_coeffs(3, 6)
        assert rows[3].coefficients == {1: 1}
        assert rows[4].coefficients == {2: 1}
        assert rows[5].coefficients == {2: 1, 3: 1}

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_monotone_matches_generic(self, m):
        generic = cluster_polynomials(Permutation(range(1, m + 1)), 20)
        assert monotone_cluster_coeffs(m, 20) == generic

    def test_rec1423_examples(self):
        assert rec1423(4, 1) == 1
        assert rec1423(6, 2) == 1
        assert rec1423(7, 2) == 4

    def test_rec1423_matches_generic(self):
        polys = cluster_polynomials("1423", 22)
        for n in range(2, 23):
            assert {k: rec1423(n, k) for k in range(n) if rec1423(n, k)} == polys[n].coefficients
            assert rec1423_signed(n) == polys[n](-1)

    def test_rec2143_examples(self):
        assert rec2143(6, 2).values == {0: 1}
        assert rec2143(5, 2).values == {}

    def test_rec2143_row_sums(self):
        polys = cluster_polynomials("2143", 16)
        for n in range(4, 17):
            for k in range(1, n):
                assert rec2143(n, k).total() == polys[n][k]
        assert isinstance(rec2143(9, 3), FeetTable)

    def test_rec2143_feet_against_brute_force(self):
        # l counts the clusters with first entry l + 2
        import itertools

        for n in (6, 7, 8):
            for k in range(1, n):
                table = rec2143(n, k).values
                by_first = {}
                for pi in itertools.permutations(range(1, n + 1)):
                    starts = oracles.occ(pi, (2, 1, 4, 3))
                    if not starts or starts[0] != 1 or starts[-1] != n - 3:
                        continue
                    ways = count_chains(starts, n, k)
                    if ways:
                        by_first[pi[0] - 2] = by_first.get(pi[0] - 2, 0) + ways
                assert by_first == table

    def test_fuss_catalan(self):
        assert [fuss_catalan(2, k) for k in range(5)] == [1, 1, 2, 5, 14]
        assert fuss_catalan(3, 3) == 12 == oracles.s_dyck_paths(3, 3)
        assert fuss_catalan(5, 0) == 1
        for s in (2, 3, 4):
            for k in range(5):
                assert fuss_catalan(s, k) == oracles.s_dyck_paths(s, k)

    def test_dense_examples(self):
        assert dense_pattern(2, 4) == (1, 3, 2, 4)
        assert dense_pattern(3, 5) == (1, 3, 4, 2, 5)
        assert dense_cluster_count(2, 4, 3) == 5
        assert dense_cluster_count(3, 5, 2) == 3
        assert dense_cluster_count(3, 6, 1) == 1

    @pytest.mark.parametrize("s, m", [(2, 4), (3, 5), (3, 6), (4, 6), (4, 8)])
    def test_dense_is_fuss_catalan(self, s, m):
        for k in range(1, 5):
            assert dense_cluster_count(s, m, k) == fuss_catalan(s, k)

    def test_dense_invalid(self):
        with pytest.raises(InvalidInput):
            dense_cluster_count(3, 7, 2)

    def test_nonoverlapping_examples(self):
        assert nonoverlapping_d(1, 2, 3, 1) == 1
        assert nonoverlapping_d(1, 2, 3, 2) == 3
        with pytest.raises(InvalidInput):
            nonoverlapping_d(2, 1, 3, 2)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_nonoverlapping_d_matches_generic(self, m):
        for sigma in all_patterns(m):
            if not is_non_overlapping(sigma):
                continue
            a, b = sigma[0], sigma[-1]
            if a > b:
                continue
            for k in (1, 2, 3):
                generic = cluster_polynomial(sigma, k * (m - 1) + 1, method="poset")[k]
                assert nonoverlapping_d(a, b, m, k) == generic
                assert count_linear_extensions(nonoverlap_block_poset(a, b, m, k)) == generic
            assert nonoverlapping_d2_closed_form(a, b, m) == nonoverlapping_d(a, b, m, 2)

    def test_sigma_family(self):
        assert sigma_family_member(2) == (1, 2, 4, 3)
        assert sigma_family_member(3) == (1, 2, 3, 5, 6, 4)
        assert len(sigma_family_set(9)) == 3
        assert sigma_family_polynomial(4).coefficients == {1: 1}
        assert sigma_family_polynomial(7)[2] == rec1423(7, 2) == 4

    def test_sigma_family_parity(self):
        for n in range(4, 15):
            assert all((n - h) % 2 == 1 for h in sigma_family_polynomial(n).coefficients)


def count_chains(starts, n, k):
    """Covering chains of k occurrences (gaps 2 or 3) from start 1 to n - 3."""
    target = n - 3
    ways = {(1, 1): 1}
    for s in starts[1:]:
        for (prev, j), c in list(ways.items()):
            if 0 < s - prev < 4:
                ways[(s, j + 1)] = ways.get((s, j + 1), 0) + c
    return ways.get((target, k), 0)
