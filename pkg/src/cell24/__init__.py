"""Exact-arithmetic engine for ideal 24-cell side-pairing codes.

Given a six-digit side-pairing code this package rebuilds the manifold's
combinatorics (pairings, ridge cycles, edge-face orbits, cusps), derives the
fundamental-group presentation and its orientable double cover two
independent ways, performs boundary fillings, computes algebraic invariants,
and exports Kirby-diagram data.
"""

__version__ = "0.1.0"

REFERENCE_CODE = "146928"
