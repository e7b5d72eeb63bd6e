# coding: utf-8

import os
from typing import Dict, List, Optional

import numpy as np
import yaml
from ml_collections import ConfigDict

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'configs', 'game_defaults.yaml')
SEED_ENV = 'DEGREE_GAME_SEED'


class ConfigKeyError(ValueError): pass


def _check_keys(base: Dict, override: Dict, prefix: str = ''):
    for key, value in override.items():
        if key not in base:
            raise ConfigKeyError('Unknown config key: {}{}'.format(prefix, key))
        if isinstance(value, dict) and isinstance(base[key], dict) and key != 'solver_bounds':
            _check_keys(base[key], value, prefix + key + '.')


def _merge(base: Dict, override: Dict) -> Dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict) and key != 'solver_bounds':
            out[key] = _merge(base[key], value)
        else:
            out[key] = value
    return out


def get_config(config_path: Optional[str] = None) -> ConfigDict:
    """ Defaults from configs/game_defaults.yaml, overlaid with the user file when given. """
    with open(DEFAULT_CONFIG) as f:
        data = yaml.load(f, Loader=yaml.FullLoader)
    if config_path:
        with open(config_path) as f:
            user = yaml.load(f, Loader=yaml.FullLoader) or {}
        _check_keys(data, user)
        data = _merge(data, user)
    return ConfigDict(data)


def default_seed(config: ConfigDict) -> int:
    value = os.environ.get(SEED_ENV)
    if value is None or value == '':
        return int(config.game.seed)
    try:
        return int(value)
    except ValueError:
        raise ConfigKeyError('{} must be an integer, got {!r}'.format(SEED_ENV, value))


def summarize_games(results: List[Dict]) -> Dict:
    """ Success rate plus mean/std of game length and of the first witness index. """
    ok = np.array([1.0 if r['objective_met'] else 0.0 for r in results])
    length = np.array([r['moves'] for r in results], dtype=float)
    witness = np.array([r['witness_at'] for r in results if r.get('witness_at') is not None], dtype=float)
    summary = {
        'games': len(results),
        'successes': int(ok.sum()),
        'success_rate': float(ok.mean()) if len(ok) else 0.0,
        'length_mean': float(length.mean()) if len(length) else 0.0,
        'length_std': float(length.std()) if len(length) else 0.0,
        'witness_games': int(len(witness)),
        'witness_at_mean': float(witness.mean()) if len(witness) else None,
        'witness_at_std': float(witness.std()) if len(witness) else None,
    }
    return summary


def write_results(store_dir: str, args, summary: Dict, monitor_failures: Dict[str, int]):
    if not os.path.isdir(store_dir):
        os.makedirs(store_dir)
    with open(os.path.join(store_dir, 'results.txt'), 'w') as out:
        out.write(str(args) + "\n")
        out.write("Success: {}/{} ({:.4f})".format(summary['successes'], summary['games'], summary['success_rate']) + "\n")
        out.write("Game length: {:.4f} (Std: {:.4f})".format(summary['length_mean'], summary['length_std']) + "\n")
        if summary['witness_at_mean'] is not None:
            out.write("First witness: {:.4f} (Std: {:.4f}) in {} games".format(
                summary['witness_at_mean'], summary['witness_at_std'], summary['witness_games']) + "\n")
        for name, count in sorted(monitor_failures.items()):
            out.write("Monitor {}: {} failing games".format(name, count) + "\n")
