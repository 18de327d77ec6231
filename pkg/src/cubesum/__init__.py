"""Exact arithmetic toolkit for consecutive-cube sums that are cubes.

The same object three ways: a diophantine equation searched exhaustively, a
singular K3 elliptic fibration analyzed symbolically, and finite-field point
counts certified against closed formulas.
"""

__version__ = "0.1.0"
