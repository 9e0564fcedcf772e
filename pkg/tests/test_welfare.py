import pytest
from hypothesis import given, settings, strategies as st

from src.core.dist_core import cdf_from_atoms, point_mass
from src.core.stieltjes import MonotonePL
from src.handlers.welfare import (
    corollary1_check,
    corollary2_check,
    expected_utility,
    gini_index,
    identity_perception,
    lorenz_curve,
    mean,
    more_inequality_averse,
    perception,
    rdeu,
    s_gini_perception,
    yaari,
    yaari_forms,
)
from src.utils.errors import BadBoundary, RhoOutOfRange, ZeroMeanNormalize


@pytest.fixture(scope='module')
def sgini2():
    return s_gini_perception(2.0, 1001)


class TestFunctionals:
    def test_mean(self, coin):
        assert mean(coin) == pytest.approx(0.5)

    def test_rdeu_identity(self, coin):
        assert rdeu(MonotonePL.identity(0.0, 1.0), identity_perception(), coin) == pytest.approx(0.5)

    def test_rdeu_squared_perception(self, coin, sgini2):
        assert rdeu(MonotonePL.identity(0.0, 1.0), sgini2, coin) == pytest.approx(0.75, abs=1e-6)

    def test_rdeu_clipped_utility(self, coin):
        u0 = MonotonePL(((0.0, 0.0), (0.5, 0.5)))
        assert rdeu(u0, identity_perception(), coin) == pytest.approx(0.25)

    def test_expected_utility(self, spread):
        assert expected_utility(MonotonePL.identity(0.0, 2.0).clip_above(1.0), spread) == pytest.approx(0.5)

    def test_yaari_identity_is_mean(self, coin):
        assert yaari(identity_perception(), coin) == pytest.approx(0.5)

    def test_yaari_sgini(self, coin, sgini2):
        assert yaari(sgini2, coin) == pytest.approx(0.75, abs=1e-6)

    @pytest.mark.parametrize("rho", [1.5, 2.0, 4.0])
    def test_yaari_degenerate(self, rho):
        assert yaari(s_gini_perception(rho, 101), point_mass(3.0)) == pytest.approx(3.0)

    def test_gini(self, coin):
        assert gini_index(coin) == pytest.approx(0.5, abs=1e-6)
        assert gini_index(point_mass(2.0)) == pytest.approx(0.0, abs=1e-9)

    def test_gini_needs_positive_mean(self):
        with pytest.raises(ZeroMeanNormalize):
            gini_index(cdf_from_atoms([(-1, 0.5), (1, 0.5)]))


class TestPerception:
    def test_sgini_knot(self, sgini2):
        assert sgini2.f0.value(0.5) == pytest.approx(0.25, abs=1e-6)
        assert sgini2.approx_error == pytest.approx(2.5e-7, rel=1e-3)

    def test_rho_near_one(self):
        f0 = s_gini_perception(1.0 + 1e-9, 101)
        assert f0.f0.value(0.5) == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize("rho", [1.0, 0.5, float('inf')])
    def test_rho_out_of_range(self, rho):
        with pytest.raises(RhoOutOfRange):
            s_gini_perception(rho)

    def test_bad_boundary(self):
        with pytest.raises(BadBoundary):
            perception(MonotonePL(((0.0, 0.0), (1.0, 0.5))))

    def test_more_inequality_averse(self, sgini2):
        assert more_inequality_averse(sgini2.f0, identity_perception()).holds
        assert not more_inequality_averse(identity_perception().f0, sgini2).holds


class TestLorenz:
    def test_rows(self, coin):
        assert lorenz_curve(coin, 2) == [(0.0, 0.0), (0.5, 0.0), (1.0, 0.5)]

    def test_normalized(self, coin):
        rows = lorenz_curve(coin, 2, normalize=True)
        assert rows[-1] == (1.0, 1.0)

    def test_default_points(self, coin):
        assert len(lorenz_curve(coin)) == 11

    def test_zero_mean(self):
        with pytest.raises(ZeroMeanNormalize):
            lorenz_curve(cdf_from_atoms([(-1, 0.5), (1, 0.5)]), 4, normalize=True)


class TestCorollaries:
    def test_risk_averse_identity(self, spread, point):
        assert corollary1_check(identity_perception(), spread, point) == (True, True)
        assert corollary1_check(identity_perception(), point, spread) == (False, False)

    def test_equal_laws(self, spread, sgini2):
        assert corollary1_check(sgini2, spread, spread) == (True, True)
        assert corollary2_check(MonotonePL.identity(0.0, 2.0), sgini2, spread, spread) == (True, True)

    def test_identity_reduces(self, spread, point):
        u0 = MonotonePL.identity(0.0, 2.0)
        assert corollary2_check(u0, identity_perception(), spread, point) == corollary1_check(
            identity_perception(), spread, point)

    def test_concave_base(self, spread, point):
        u0 = MonotonePL(((0.0, 0.0), (1.0, 1.0), (2.0, 1.5)))
        s3, s4 = corollary2_check(u0, s_gini_perception(2.0, 101), spread, point)
        assert s3 == s4


_law = st.lists(st.tuples(st.integers(-3, 6), st.integers(1, 5)), min_size=1, max_size=5)


@settings(max_examples=40, deadline=None)
@given(_law, st.sampled_from([1.5, 2.0, 3.0]))
def test_yaari_forms_agree(atoms, rho):
    F = cdf_from_atoms([(float(x), float(w)) for x, w in atoms], normalize=True)
    forms = yaari_forms(s_gini_perception(rho, 51), F)
    assert forms.quantile_form == pytest.approx(forms.cdf_form, abs=1e-9)
    assert forms.survivor_form == pytest.approx(forms.cdf_form, abs=1e-9)


_perceptions = st.sampled_from([None, 1.5, 2.0, 3.0])


def _perception(rho):
    return identity_perception() if rho is None else s_gini_perception(rho, 51)


@settings(max_examples=40, deadline=None)
@given(_law, _perceptions, st.integers(-5, 5))
def test_yaari_translation_equivariant(atoms, rho, t):
    f0 = _perception(rho)
    F = cdf_from_atoms([(float(x), float(w)) for x, w in atoms], normalize=True)
    assert yaari(f0, F.shift(float(t))) == pytest.approx(yaari(f0, F) + t, abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(_law, _perceptions, st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_yaari_monotone_under_fsd(atoms, rho, bumps):
    f0 = _perception(rho)
    F1 = cdf_from_atoms([(float(x), float(w)) for x, w in atoms], normalize=True)
    # 每个原子只向右移动，F2 一阶随机占优 F1
    F2 = cdf_from_atoms([(float(x + d), float(w)) for (x, w), d in zip(atoms, bumps)], normalize=True)
    assert yaari(f0, F1) <= yaari(f0, F2) + 1e-9
