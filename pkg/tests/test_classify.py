import pytest

from clustermethod.classify import default_n_max, fingerprint, partition, verify_pair
from clustermethod.errors import InvalidInput
from clustermethod.perm import all_patterns, reverse


class TestFingerprint:
    def test_123(self):
        fp = fingerprint("123", 5)
        assert [p.coefficients for p in fp.polynomials] == [{1: 1}, {2: 1}, {2: 1, 3: 1}]

    def test_1324(self):
        fp = fingerprint("1324", 7)
        assert [p.coefficients for p in fp.polynomials] == [{1: 1}, {}, {2: 2}, {2: 1}]

    def test_reverse(self):
        for sigma in all_patterns(5):
            assert fingerprint(sigma, 10).key() == fingerprint(reverse(sigma), 10).key()

    def test_too_short(self):
        with pytest.raises(InvalidInput):
            fingerprint("1324", 3)


class TestPartition:
    def test_m3(self):
        p = partition(3, 9)
        assert len(p) == 2 and [str(r) for r in p.representatives] == ["123", "132"]

    def test_m4(self):
        p = partition(4, 12)
        assert {str(r) for r in p.representatives} == {"1234", "2413", "2143", "1324", "1423", "1342", "1243"}

    def test_m5_count(self):
        assert len(partition(5, 13)) == 25

    def test_classes_are_orbit_unions(self):
        p = partition(5, 13)
        assert sorted(x for c in p.classes for x in c) == sorted(all_patterns(5))
        for c in p.classes:
            for sigma in c:
                assert sigma.symmetry_orbit() <= set(c)

    @pytest.mark.parametrize("m", [4, 5])
    def test_refinement(self, m):
        coarse = partition(m, m + 3)
        fine = partition(m, m + 6)
        for c in fine.classes:
            assert any(set(c) <= set(d) for d in coarse.classes)

    def test_validation_mode(self):
        assert partition(4, 10, validate=True) == partition(4, 10)

    def test_parallel_matches_serial(self):
        assert partition(4, 10, threads=2) == partition(4, 10, threads=1)

    def test_defaults(self):
        assert [default_n_max(m) for m in (3, 4, 5, 6)] == [12, 12, 13, 16]

    def test_json(self):
        data = partition(3, 9).to_json()
        assert data["m"] == 3 and data["n_max"] == 9
        assert data["classes"][0][0] == "123"


class TestPairs:
    def test_equal(self):
        assert verify_pair("123546", "124536", 14).equal

    def test_divergence(self):
        r = verify_pair("123", "132", 4)
        assert not r.equal and r.first_divergence == 4

    def test_length_mismatch(self):
        with pytest.raises(InvalidInput):
            verify_pair("123", "1234", 6)
