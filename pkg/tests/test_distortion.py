import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.distortion import (
    check_relative_concavity,
    convex_ray,
    dual_distortion,
    extreme_ray_family,
    generate_utility,
    identity_pair,
    make_standard_pair,
    tilde_transform,
)
from src.core.stieltjes import MonotonePL, StepFn, sample_pl
from src.utils.errors import (
    BadBoundary,
    CutOutOfRange,
    DegenerateBase,
    NotIncreasing,
    UnknownName,
    WrongMonotonicity,
)

UNIT = MonotonePL(((0.0, 0.0), (1.0, 1.0)))


class TestStandardPair:
    def test_identity_pair_is_valid(self):
        pair = make_standard_pair(MonotonePL.identity(-5.0, 5.0), UNIT)
        assert pair.u0.continuity == 'left'
        assert pair.v0.continuity == 'right'

    def test_squared_distortion_is_valid(self, squared_pair):
        assert squared_pair.v0.value(0.5) == pytest.approx(0.25)

    def test_half_distortion_rejected(self):
        with pytest.raises(BadBoundary):
            make_standard_pair(MonotonePL.identity(0.0, 1.0), MonotonePL(((0.0, 0.0), (1.0, 0.5))))

    def test_distortion_outside_unit_interval(self):
        with pytest.raises(BadBoundary):
            make_standard_pair(MonotonePL.identity(0.0, 1.0), MonotonePL(((-0.5, 0.0), (1.0, 1.0))))

    def test_decreasing_utility(self):
        u0 = MonotonePL(((0.0, 1.0), (1.0, 0.0)), direction='decreasing')
        with pytest.raises(NotIncreasing):
            make_standard_pair(u0, UNIT)

    def test_to_dict(self):
        assert identity_pair(0.0, 2.0).to_dict() == {'u0': [[0.0, 0.0], [2.0, 2.0]], 'v0': [[0.0, 0.0], [1.0, 1.0]]}


class TestGenerateUtility:
    def test_concave_indicator(self):
        base = MonotonePL.identity(0.0, 4.0)
        k = StepFn(1.0, ((2.0, -1.0),), 'right')
        u = generate_utility(base, k, 'concave').realized
        assert u.value(1.0) == pytest.approx(1.0)
        assert u.value(3.0) == pytest.approx(2.0)
        assert check_relative_concavity(u, base).holds

    def test_convex_indicator(self):
        base = MonotonePL.identity(0.0, 4.0)
        m = StepFn(0.0, ((2.0, 1.0),), 'right')
        u = generate_utility(base, m, 'convex').realized
        assert u.value(1.0) == pytest.approx(0.0)
        assert u.value(3.0) == pytest.approx(1.0)
        assert check_relative_concavity(u, base, kind='convex').holds

    def test_linear_generator_is_quadratic_at_knots(self):
        base = MonotonePL.identity(0.0, 2.0)
        u = generate_utility(base, MonotonePL(((0.0, 0.0), (2.0, 2.0))), 'convex').realized
        assert u.value(1.0) == pytest.approx(0.5, abs=1e-9)
        assert u.value(2.0) == pytest.approx(2.0, abs=1e-9)

    def test_concave_clamped_ramp(self):
        base = MonotonePL.identity(0.0, 2.0)
        k = MonotonePL(((0.0, 1.0), (1.0, 0.0)), direction='decreasing')
        u = generate_utility(base, k, 'concave').realized
        # u(x) = x - x**2 / 2 on [0, 1], flat afterwards
        assert u.value(0.5) == pytest.approx(0.375, abs=1e-9)
        assert u.value(1.0) == pytest.approx(0.5, abs=1e-9)
        assert u.value(2.0) == pytest.approx(0.5, abs=1e-9)
        assert check_relative_concavity(u, base).holds

    def test_wrong_direction(self):
        with pytest.raises(WrongMonotonicity):
            generate_utility(MonotonePL.identity(0.0, 2.0), StepFn(0.0, ((1.0, 1.0),)), 'concave')

    def test_unknown_kind(self):
        with pytest.raises(UnknownName):
            generate_utility(MonotonePL.identity(0.0, 2.0), StepFn(0.0, ((1.0, 1.0),)), 'linear')


_drops = st.lists(st.floats(0.1, 1.0), min_size=1, max_size=3)
_weight = st.floats(0.1, 5.0)


@settings(max_examples=40, deadline=None)
@given(_drops, _drops, _weight, _weight)
def test_generated_utilities_closed_under_positive_combination(drops1, drops2, lam1, lam2):
    base = MonotonePL(((0.0, 0.0), (1.0, 2.0), (4.0, 3.0)))
    # 两个生成函数的跳跃点互不重合
    k1 = StepFn(4.0, tuple((1.0 + i, -d) for i, d in enumerate(drops1)), 'right')
    k2 = StepFn(4.0, tuple((0.5 + i, -d) for i, d in enumerate(drops2)), 'right')
    combined = StepFn(lam1 * k1.base + lam2 * k2.base,
                      tuple(sorted([(x, lam1 * d) for x, d in k1.jumps] + [(x, lam2 * d) for x, d in k2.jumps])),
                      'right')
    u1 = generate_utility(base, k1, 'concave').realized
    u2 = generate_utility(base, k2, 'concave').realized
    u = generate_utility(base, combined, 'concave').realized
    grid = np.linspace(0.0, 4.0, 17)
    assert np.allclose(u.value(grid), lam1 * u1.value(grid) + lam2 * u2.value(grid), atol=1e-9)
    assert check_relative_concavity(u, base).holds


class TestRelativeConcavity:
    def test_clipped_identity_is_concave(self):
        base = MonotonePL.identity(0.0, 4.0)
        result = check_relative_concavity(base.clip_above(2.0), base)
        assert result.holds
        assert result.witness is None

    def test_hinge_is_not_concave(self):
        base = MonotonePL.identity(0.0, 4.0)
        hinge = base.clip_below(2.0).affine(1.0, -2.0)
        result = check_relative_concavity(hinge, base)
        assert not result.holds
        assert result.witness == 2.0

    def test_flat_base(self):
        base = MonotonePL.identity(0.0, 4.0)
        with pytest.raises(DegenerateBase):
            check_relative_concavity(base, base.clip_above(2.0))


class TestRays:
    def test_u_side(self):
        ray = extreme_ray_family(identity_pair(0.0, 4.0), 'u_side', 2.0)
        assert ray.value(1.0) == 1.0
        assert ray.value(3.0) == 2.0

    def test_v_side(self):
        ray = extreme_ray_family(identity_pair(0.0, 4.0), 'v_side', 0.5)
        assert ray.value(0.25) == 0.25
        assert ray.value(0.75) == 0.5

    def test_v_side_composes_with_distortion(self, squared_pair):
        ray = extreme_ray_family(squared_pair, 'v_side', 0.5)
        assert ray.value(0.9) == pytest.approx(0.25)

    def test_cut_out_of_range(self):
        with pytest.raises(CutOutOfRange):
            extreme_ray_family(identity_pair(0.0, 4.0), 'v_side', 1.5)

    def test_convex_ray(self):
        ray = convex_ray(identity_pair(0.0, 2.0), 'u_side', 1.0)
        assert ray.value(0.5) == 0.0
        assert ray.value(1.5) == 0.5
        assert extreme_ray_family(identity_pair(0.0, 2.0), 'u_side', 1.0, kind='convex') == ray

    def test_unknown_side(self):
        with pytest.raises(UnknownName):
            extreme_ray_family(identity_pair(0.0, 2.0), 'w_side', 1.0)


class TestTilde:
    def test_identity_pair(self):
        pair = tilde_transform(identity_pair(-1.0, 3.0))
        assert pair.u0.knots == ((-3.0, -3.0), (1.0, 1.0))
        assert pair.v0.knots == ((0.0, 0.0), (1.0, 1.0))

    def test_squared_distortion(self, squared_pair):
        v = tilde_transform(squared_pair).v0
        for a in (0.25, 0.5, 0.75):
            assert v.value(a) == pytest.approx(1.0 - (1.0 - a) ** 2)

    def test_involution(self):
        u0 = MonotonePL(((-1.0, -1.0), (2.0, 2.0), (4.0, 3.0)))
        v0 = MonotonePL(((0.0, 0.0), (0.3, 0.6), (1.0, 1.0)))
        pair = make_standard_pair(u0, v0)
        twice = tilde_transform(tilde_transform(pair))
        assert twice.u0.knots == pair.u0.knots
        flat = [c for knot in twice.v0.knots for c in knot]
        assert flat == pytest.approx([c for knot in pair.v0.knots for c in knot])

    def test_dual_distortion(self):
        f = MonotonePL(((0.0, 0.0), (0.5, 0.25), (1.0, 1.0)))
        assert dual_distortion(f).value(0.5) == pytest.approx(0.75)
        assert dual_distortion(dual_distortion(f)).value(0.5) == pytest.approx(0.25)

    def test_reflection_is_reused(self, squared_pair):
        assert tilde_transform(squared_pair) is tilde_transform(squared_pair)
        assert identity_pair(0.0, 2.0) is identity_pair(0.0, 2.0)
