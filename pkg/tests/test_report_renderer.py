import json

import pytest

from src.handlers.dualcheck import Counterexample, EquivalenceReport
from src.handlers.majorize import majorizes, statements_hold
from src.handlers.ordering import classic
from src.handlers.report_renderer import (
    format_number,
    render_equivalence,
    render_lorenz,
    render_majorization,
    render_template,
    render_verdict,
    render_welfare,
    to_json,
)
from src.handlers.welfare import lorenz_curve
from src.utils.errors import UnknownName


def test_format_number():
    assert format_number(0.5) == '0.5'
    assert format_number(1 / 3) == '0.3333333333'
    assert format_number(True) == 'True'
    assert format_number(None) == 'None'
    assert format_number('x') == 'x'


def test_verdict_holds(spread, point):
    text = render_verdict('SSD', classic('SSD', spread, point), ('a.json', 'b.json'))
    assert text.startswith('SSD: a.json vs b.json\n')
    assert 'HOLDS' in text
    assert 'clause:    T1.i' in text


def test_verdict_fails_with_witness(spread, point):
    text = render_verdict('SSD', classic('SSD', point, spread))
    assert 'FAILS' in text
    assert 'witness:   x = 1' in text
    assert 'margin:    -' in text


def test_lorenz_rows(coin):
    text = render_lorenz(lorenz_curve(coin, 2))
    assert text.splitlines() == ['p,cumulative_quantile', '0,0', '0.5,0', '1,0.5']
    assert render_lorenz(lorenz_curve(coin, 2, True), True).splitlines()[0] == 'p,L(p)'


def test_welfare():
    text = render_welfare('sgini', 0.75, 1e-12, {'rho': 2.0})
    assert text.splitlines()[0] == 'sgini: 0.75'
    assert '  rho = 2' in text
    assert 'residual' in text
    assert 'residual' not in render_welfare('mean', 0.5)


def test_majorization():
    text = render_majorization('strong', majorizes((1, 0, 0), (1, 0.5, 0)),
                               statements_hold((1, 0, 0), (1, 0.5, 0)))
    assert text.startswith('majorization (strong): FAILS')
    assert 'first failing partial sum: k = 2' in text
    assert 'statement utility_sum:' in text


def test_equivalence():
    cx = Counterexample(trial=3, instance={'x': [1.0]}, verdicts={'a': True})
    report = EquivalenceReport(theorem='T2', trials=4, agreements=3, marginal=1, counterexamples=[cx])
    text = render_equivalence(report)
    assert text.splitlines()[0] == 'theorem T2: 3/4 trials agree (1 tolerance-marginal)'
    assert 'counterexample at trial 3:' in text


def test_unknown_template():
    with pytest.raises(UnknownName):
        render_template('histogram')


def test_to_json():
    body = json.loads(to_json({'holds': True}))
    assert body == {'schema_version': 1, 'holds': True}
