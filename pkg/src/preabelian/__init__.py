"""Exact computations in small preabelian categories.

Finitely generated abelian groups and representations of the A3 quiver,
with purity checkers, effective unions and semi-abelian scans.
"""

__version__ = "0.1.0"
