import copy

import pytest

from config import LOGGING_CONFIG, STOCHORD_CONFIG, load_env_config, tolerance


@pytest.fixture
def saved_config(monkeypatch):
    monkeypatch.setitem(LOGGING_CONFIG, 'loggers', copy.deepcopy(LOGGING_CONFIG['loggers']))
    monkeypatch.setitem(STOCHORD_CONFIG, 'suite_defaults', dict(STOCHORD_CONFIG['suite_defaults']))
    monkeypatch.setitem(STOCHORD_CONFIG, 'eps', STOCHORD_CONFIG['eps'])
    monkeypatch.delenv('STOCHORD_EPS', raising=False)


@pytest.mark.parametrize("env, level", [('production', 'WARNING'), ('testing', 'INFO'), ('development', 'DEBUG')])
def test_log_level_applied(saved_config, env, level):
    assert load_env_config(env)['log_level'] == level
    assert LOGGING_CONFIG['loggers']['src']['level'] == level
    assert LOGGING_CONFIG['loggers']['stochord']['level'] == level


def test_unknown_env_falls_back(saved_config):
    assert load_env_config('staging')['log_level'] == 'DEBUG'


def test_testing_trials(saved_config):
    load_env_config('testing')
    assert STOCHORD_CONFIG['suite_defaults']['trials'] == 200


def test_env_tolerance(saved_config, monkeypatch):
    monkeypatch.setenv('STOCHORD_EPS', '1e-6')
    assert load_env_config('development')['eps'] == 1e-6
    assert tolerance() == 1e-6
    assert tolerance(1e-3) == 1e-3


@pytest.mark.parametrize("raw", ['abc', '-1', '0'])
def test_bad_env_tolerance_ignored(saved_config, monkeypatch, raw):
    before = STOCHORD_CONFIG['eps']
    monkeypatch.setenv('STOCHORD_EPS', raw)
    assert 'eps' not in load_env_config('development')
    assert STOCHORD_CONFIG['eps'] == before
