"""Finite computations around locally induced modular Galois representations:
level-one Hecke eigensystems mod p, character theory of S4 and A5, and the
arithmetic and character-theoretic checks that classify (p, k) pairs.
"""

__version__ = "0.1.0"
