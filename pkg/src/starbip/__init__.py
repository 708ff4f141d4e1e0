"""Signed bipartite graphs with totally disconnected star complements:
exact constructions, closed-form maximum-order engine, and a brute-force
search oracle."""

__version__ = "0.1.0"
