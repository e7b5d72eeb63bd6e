from degree_game.graph_core import GameGraph, MoveEdge, has_witness
from degree_game.engine import GameConfig, run_game

__all__ = ['GameGraph', 'MoveEdge', 'has_witness', 'GameConfig', 'run_game']
