"""Exact GF(2^n) toolkit for permutations of the form L1(x^-1) + L2(x).

Subpackages cover field arithmetic (gf2n), linearized polynomials and
their subspace geometry (linmap), truth-table analytics (vbf),
Kloosterman sums and the dyadic filter (kloosterman), the pair criteria
and the coefficient-recurrence engine (inverse_perm), the searches
(search), and claim verification drivers (verify).
"""

__version__ = "0.1.0"
