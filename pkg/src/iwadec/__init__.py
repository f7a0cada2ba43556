"""Wedderburn decomposition of quotient rings of Iwasawa algebras.

The package computes, in exact arithmetic, the simple components of the
total ring of quotients of the completed group algebra of G = H x| Z_p
(H finite, the Z_p factor acting through a p-power-order automorphism),
together with the invariants and explicit skew-field descriptions of each
component, and the constructive sub-procedures behind them: central
idempotents, extension of Galois automorphisms to division algebras, and
truncated skew power series with their matrix embedding.
"""

__version__ = "0.1.0"
