"""Exact-rational laboratory for log canonical surfaces.

Pairs (X, B) are modelled as curve configurations on P^2, P^1 x P^1 and
Hirzebruch surfaces, followed by a script of point blow-ups.  Every number
is a :class:`fractions.Fraction`.
"""

from logsurf.rational import Q, fmt, parse_rational

__all__ = ["Q", "fmt", "parse_rational"]
__version__ = "0.1.0"
