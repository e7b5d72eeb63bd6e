from argparse import Namespace

import pytest

from tools import acceptance


class WitnessTrace:
    def first_witness(self):
        return 0


@pytest.fixture
def smallest_win(monkeypatch):
    def install(n_min):
        def fake_games(role, k, n, opponent, count, seed):
            return [(n >= n_min, WitnessTrace()) for _ in range(count)]
        monkeypatch.setattr(acceptance, 'games', fake_games)
        monkeypatch.setattr(acceptance, 'run_monitors', lambda trace: [])
    return install


def runs(sizes=(24, 30), floor=6):
    return acceptance.avoider_runs(Namespace(avoider_sizes=list(sizes), n0_floor=floor, games=3, seed=0), 'random')


def test_n0_sweeps_below_the_configured_sizes(smallest_win):
    smallest_win(11)
    ok, details = runs()
    assert ok
    assert details['n0'] == 11
    assert details['n0_exact']
    assert not details['n0_floor_reached']


def test_n0_at_the_floor_is_an_upper_bound(smallest_win):
    smallest_win(3)
    _, details = runs(floor=8)
    assert details['n0'] == 8
    assert details['n0_floor_reached']
    assert not details['n0_exact']


def test_n0_when_the_smallest_size_loses(smallest_win):
    smallest_win(27)
    ok, details = runs()
    assert not ok
    assert details['n0'] == 30
    assert not details['n0_exact']
