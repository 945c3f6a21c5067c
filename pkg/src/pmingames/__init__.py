"""Minimum-partition restricted games on weighted graphs.

Build P_min-restricted games, certify convexity by brute force, and decide in
O(n^2) whether convexity is inherited from every underlying game.
"""

from .games import Game, restricted_game, unanimity
from .graph import WeightedGraph, parse_graph, read_graph
from .oracle import inheritance_convexity_bruteforce, inheritance_fconvexity_bruteforce
from .partition import Partition, p_min, p_myerson
from .recognizer import Verdict, decide

__all__ = [
    "Game",
    "Partition",
    "Verdict",
    "WeightedGraph",
    "decide",
    "inheritance_convexity_bruteforce",
    "inheritance_fconvexity_bruteforce",
    "p_min",
    "p_myerson",
    "parse_graph",
    "read_graph",
    "restricted_game",
    "unanimity",
]

__version__ = "0.1.0"
