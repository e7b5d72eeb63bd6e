import pytest

from utils import ConfigKeyError, default_seed, get_config, summarize_games, write_results


def test_defaults():
    config = get_config()
    assert config.game.k == 3
    assert config.simulate.n0_threshold == 24
    assert config.oracle.solver_bounds.to_dict() == {"3": 7, "4": 6}


def test_user_file_overrides(tmp_path):
    path = tmp_path / 'user.yaml'
    path.write_text('game:\n  n: 30\nopponent:\n  merge: 5\n')
    config = get_config(str(path))
    assert config.game.n == 30
    assert config.game.k == 3
    assert config.opponent.merge == 5
    assert config.opponent.attach == 2


def test_unknown_keys(tmp_path):
    path = tmp_path / 'user.yaml'
    path.write_text('simulate:\n  gamez: 3\n')
    with pytest.raises(ConfigKeyError, match='simulate.gamez'):
        get_config(str(path))


def test_seed_from_environment(monkeypatch):
    config = get_config()
    monkeypatch.setenv('DEGREE_GAME_SEED', '17')
    assert default_seed(config) == 17
    monkeypatch.setenv('DEGREE_GAME_SEED', '')
    assert default_seed(config) == 0
    monkeypatch.setenv('DEGREE_GAME_SEED', 'x')
    with pytest.raises(ConfigKeyError):
        default_seed(config)


def test_summary(tmp_path):
    results = [
        {'objective_met': True, 'moves': 10, 'witness_at': 4},
        {'objective_met': False, 'moves': 14, 'witness_at': None},
    ]
    summary = summarize_games(results)
    assert summary['successes'] == 1
    assert summary['success_rate'] == 0.5
    assert summary['length_mean'] == 12.0
    assert summary['length_std'] == 2.0
    assert summary['witness_games'] == 1
    assert summary['witness_at_mean'] == 4.0
    write_results(str(tmp_path), 'args', summary, {'no_type_y': 1})
    text = (tmp_path / 'results.txt').read_text()
    assert 'Success: 1/2 (0.5000)' in text
    assert 'Monitor no_type_y: 1 failing games' in text
