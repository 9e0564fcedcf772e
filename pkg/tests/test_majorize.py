import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from src.core.distortion import identity_pair
from src.core.stieltjes import MonotonePL
from src.handlers.majorize import (
    KINDS,
    RealVector,
    as_uniform_cdf,
    majorization_statements,
    majorizes,
    statements_hold,
)
from src.handlers.ordering import lower_ordering, upper_ordering
from src.utils.errors import BadParams, LengthMismatch, NonPositiveEntryForLog, UnknownName

THIRDS = (1 / 3, 1 / 3, 1 / 3)


class TestMajorizes:
    def test_strong(self):
        assert majorizes((1, 0, 0), THIRDS, 'strong').holds
        assert not majorizes(THIRDS, (1, 0, 0), 'strong').holds

    def test_weak_upper_direction(self):
        assert majorizes((3, 1), (3, 2), 'weak_upper').holds
        result = majorizes((3, 2), (3, 1), 'weak_upper')
        assert not result.holds
        assert result.witness == 1
        assert result.margin == pytest.approx(-1.0)

    def test_weak_lower(self):
        assert majorizes((3, 2), (3, 1), 'weak_lower').holds
        assert not majorizes((3, 1), (3, 2), 'weak_lower').holds

    def test_strong_needs_equal_totals(self):
        result = majorizes((3, 2), (3, 1), 'strong')
        assert not result.holds
        assert result.witness == 2

    @pytest.mark.parametrize("kind", ['strong', 'weak_upper', 'weak_lower', 'log', 'log_weak_upper', 'log_weak_lower'])
    def test_reflexive(self, kind):
        assert majorizes((2, 5, 1), (1, 2, 5), kind).holds

    def test_log(self):
        assert majorizes((4, 1), (2, 2), 'log').holds
        with pytest.raises(NonPositiveEntryForLog):
            majorizes((1, 0), (1, 0), 'log')

    def test_errors(self):
        with pytest.raises(LengthMismatch):
            majorizes((1, 2), (1, 2, 3))
        with pytest.raises(UnknownName):
            majorizes((1, 2), (1, 2), 'weakest')
        with pytest.raises(BadParams):
            RealVector(())


class TestUniformLaw:
    def test_distinct(self):
        assert as_uniform_cdf((1, 3)).atoms == ((1.0, 0.5), (3.0, 0.5))

    def test_merge(self):
        assert as_uniform_cdf((2, 2)).atoms == ((2.0, 1.0),)
        F = as_uniform_cdf((0, 1, 1, 2))
        assert [x for x, _ in F.atoms] == [0.0, 1.0, 2.0]
        assert [m for _, m in F.atoms] == pytest.approx([0.25, 0.5, 0.25])


class TestStatements:
    def test_all_hold(self):
        u = MonotonePL(((0.0, 0.0), (1.0, 1.0)))
        v = MonotonePL(((0.0, 0.0), (1.0, 1.0)))
        assert majorization_statements((1, 0, 0), THIRDS, u, v, K=0.0) == {
            'anchored_increments': True, 'rank_weighted': True, 'utility_sum': True, 'distorted_mean': True,
        }

    def test_universal_statements(self):
        results = statements_hold((1, 0, 0), THIRDS)
        assert all(r.holds for r in results.values())

    def test_reversed_fails_with_witness(self):
        results = statements_hold(THIRDS, (1, 0, 0))
        assert not results['utility_sum'].holds
        assert results['utility_sum'].witness is not None
        assert not any(r.holds for r in results.values())

    def test_equal_vectors(self):
        results = statements_hold((2, 1, 4), (4, 2, 1), K=3.0)
        assert all(r.holds for r in results.values())


def test_exhaustive_bridges():
    grid = (0.0, 1.0, 2.0, 3.0)
    vectors = list(itertools.product(grid, repeat=2))
    pair = identity_pair(0.0, 3.0)
    for x, y in itertools.product(vectors, repeat=2):
        Fx, Fy = as_uniform_cdf(x), as_uniform_cdf(y)
        upper = majorizes(x, y, 'weak_upper').holds
        lower = majorizes(x, y, 'weak_lower').holds
        assert upper == upper_ordering(pair, Fx, Fy).holds, (x, y)
        assert lower == lower_ordering(pair, Fy, Fx).holds, (x, y)
        assert majorizes(x, y, 'strong').holds == (upper and lower), (x, y)


_vec = st.lists(st.integers(-4, 4), min_size=3, max_size=3)
_positive_vec = st.lists(st.integers(1, 9), min_size=3, max_size=3)


@given(_vec, _vec, st.sampled_from([-50.0, 0.0, 2.0, 50.0]))
def test_statements_match_weak_upper(x, y, anchor):
    expected = majorizes(x, y, 'weak_upper').holds
    results = statements_hold(x, y, K=anchor)
    assert {name: r.holds for name, r in results.items()} == dict.fromkeys(results, expected)


@pytest.mark.parametrize("kind", KINDS)
@given(_positive_vec, _positive_vec, st.permutations(range(3)), st.permutations(range(3)))
def test_permutation_invariant(kind, x, y, px, py):
    expected = majorizes(x, y, kind)
    permuted = majorizes([x[i] for i in px], [y[i] for i in py], kind)
    assert permuted.holds == expected.holds
    assert permuted.margin == pytest.approx(expected.margin, abs=1e-12)


@given(_vec, _vec, st.sampled_from([-2.0, 0.0, 3.0]))
def test_statements_match_each_ray(x, y, anchor):
    n = len(x)
    def identity(t):
        return np.asarray(t, float)

    cuts = sorted({float(e) for e in x + y} | {anchor})
    levels = [k / n for k in range(1, n + 1)]
    rays = {
        'anchored_increments': [(c, lambda t, c=c: np.minimum(t, c), identity) for c in cuts],
        'utility_sum': [(c, lambda t, c=c: np.minimum(t, c), identity) for c in cuts],
        'rank_weighted': [(k, identity, lambda a, p=p: np.minimum(a, p)) for k, p in enumerate(levels, 1)],
        'distorted_mean': [(p, identity, lambda a, p=p: np.minimum(a, p)) for p in levels],
    }
    results = statements_hold(x, y, K=anchor)
    for name, family in rays.items():
        failing = [point for point, u, v in family if not majorization_statements(x, y, u, v, K=anchor)[name]]
        assert results[name].holds == (not failing), name
        if failing:
            assert results[name].witness == pytest.approx(failing[0]), name

def test_descending():
    assert np.array_equal(RealVector((1, 3, 2)).descending(), [3.0, 2.0, 1.0])
