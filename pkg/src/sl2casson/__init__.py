"""Twisted Reidemeister torsion, the dilogarithm Chern-Simons cocycle and
SL2(R)-Casson invariants of Brieskorn and Seifert 3-manifolds."""

__version__ = "0.1.0"
