import pytest

from clustermethod.errors import InvalidInput
from clustermethod.perm import is_non_overlapping
from clustermethod.series.ode import (
    CATALOG,
    builtin_ode,
    cor5_parameters,
    ode_for_pattern,
    ode_residual,
    verify_ode,
)
from clustermethod.series.power import EgfSeries, omega_series
from clustermethod.series.upoly import ONE, U, ZERO

W = 1 - U


def terms(ode):
    return {j: dict(coef) for j, coef in ode.terms}


class TestCatalog:
    def test_monotone_3(self):
        ode = builtin_ode("monotone", m=3)
        assert terms(ode) == {2: {0: ONE}, 1: {0: W}, 0: {0: W}}
        assert ode.initial == ((0, ONE), (1, -ONE))

    def test_cor4_12435(self):
        ode = builtin_ode("cor4", s=3, m=5)
        assert terms(ode) == {4: {0: ONE}, 1: {0: W}, 0: {0: W}}
        assert ode.initial == ((0, ONE), (1, -ONE), (2, ZERO), (3, ZERO))

    def test_nonoverlap_132(self):
        ode = builtin_ode("nonoverlap_1b", m=3, b=2)
        assert terms(ode) == {2: {0: ONE}, 1: {1: W}}
        assert ode.initial == ((0, ONE), (1, -ONE))

    def test_order_six_variants(self):
        assert builtin_ode("p12534", m=6).order == 5
        assert builtin_ode("p13254", m=6).order == 5

    def test_p1324_shape(self):
        ode = builtin_ode("p1324")
        assert ode.order == 5 and ode.z_degree == 1
        assert terms(ode)[0] == {1: 4 * (U - 1) * (U - 1)}

    def test_unknown_name(self):
        with pytest.raises(InvalidInput):
            builtin_ode("p9999")

    @pytest.mark.parametrize(
        "name, params",
        [
            ("monotone", {"m": 2}),
            ("cor4", {"s": 2, "m": 4}),
            ("cor4", {"s": 3, "m": 9}),
            ("cor5", {"sigma": "12345"}),
            ("cor5", {"sigma": "1324"}),
            ("chain", {"sigma": "1324"}),
            ("nonoverlap_1b", {"sigma": "2143"}),
            ("p12534", {"m": 7}),
            ("monotone", {}),
        ],
    )
    def test_bad_parameters(self, name, params):
        with pytest.raises(InvalidInput):
            builtin_ode(name, **params)

    def test_cor5_parameters(self):
        assert cor5_parameters("123546") == {"r": 3, "s": 1, "a": 4, "b": 2, "c": 2}
        assert cor5_parameters("124536") == {"r": 2, "s": 1, "a": 4, "b": 2, "c": 2}

    def test_cor5_pair_shares_equation(self):
        assert builtin_ode("cor5", sigma="123546").terms == builtin_ode("cor5", sigma="124536").terms

    def test_dispatch(self):
        assert ode_for_pattern("123").name == "monotone(m=3)"
        assert ode_for_pattern("1342").name == "nonoverlap_1b(m=4,b=2)"
        assert ode_for_pattern("1324").name == "p1324"
        assert ode_for_pattern("142365").name == "p13254(m=6)"
        with pytest.raises(InvalidInput):
            ode_for_pattern("1423")

    def test_json(self):
        data = builtin_ode("monotone", m=3).to_json()
        assert data["terms"][0] == {"order": 2, "coef": [{"z": 0, "u": ["1/1"]}]}


CASES = [
    ("123", "monotone", {"m": 3}),
    ("1234", "monotone", {"m": 4}),
    ("12345", "monotone", {"m": 5}),
    ("12435", "cor4", {"s": 3, "m": 5}),
    ("12435", "chain", {"sigma": "12435"}),
    ("123546", "cor5", {"sigma": "123546"}),
    ("124536", "cor5", {"sigma": "124536"}),
    ("132", "nonoverlap_1b", {"m": 3, "b": 2}),
    ("1243", "nonoverlap_1b", {"sigma": "1243"}),
    ("12534", "p12534", {}),
    ("13254", "p13254", {}),
    ("1324", "p1324", {}),
]


class TestResiduals:
    @pytest.mark.parametrize("sigma, name, params", CASES)
    def test_vanishes(self, sigma, name, params):
        report = verify_ode(builtin_ode(name, **params), omega_series(sigma, 20))
        assert report.passed, report

    def test_checked_range(self):
        ode = builtin_ode("p1324")
        report = verify_ode(ode, omega_series("1324", 20))
        assert report.checked_through == 20 - 5 - 1
        assert ode_residual(ode, omega_series("1324", 20)).N == 15

    def test_wrong_pattern_fails(self):
        report = verify_ode(builtin_ode("monotone", m=3), omega_series("132", 20))
        assert not report.passed and report.first_nonzero is not None and report.initial_ok

    def test_initial_conditions_checked(self):
        ode = builtin_ode("monotone", m=3)
        fake = omega_series("123", 20) * 2
        report = verify_ode(ode, fake)
        assert not report.initial_ok and report.initial_mismatch == 0

    def test_short_series_rejected(self):
        with pytest.raises(InvalidInput):
            ode_residual(builtin_ode("p1324"), omega_series("1324", 5))

    def test_every_non_overlapping_first_entry_one(self):
        from clustermethod.perm import all_patterns

        for m in (3, 4, 5):
            for sigma in all_patterns(m):
                if sigma[0] == 1 and is_non_overlapping(sigma):
                    assert verify_ode(builtin_ode("nonoverlap_1b", sigma=sigma), omega_series(sigma, 16)).passed

    def test_residual_of_zero_series(self):
        s = EgfSeries.zero(10)
        assert ode_residual(builtin_ode("monotone", m=3), s) == EgfSeries.zero(8)

    def test_catalog_names(self):
        assert set(CATALOG) == {"monotone", "chain", "cor4", "cor5", "nonoverlap_1b", "p12534", "p13254", "p1324"}
