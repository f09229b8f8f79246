#!/usr/bin/env python3
# The mechanized core of the non-existence argument for n >= 5.  With
# L1* = x^2 + x and L2*(1) = 1, the necessary conditions force L2*'s
# coefficients into the rigid pattern c_i = c0^(2^i) (+1 for even i).
# For even n the pattern is self-contradictory; for odd n it satisfies
# two of the three conditions identically and violates the third: the
# reduced polynomial behind the quadratic-form condition carries a
# stubborn x^8 coefficient equal to 1.

from invperm.gf2n import make_field
from invperm.inverse_perm import (
    recurrence_coeffs,
    verify_conditions,
    x8_coefficient_parity,
    x8_parity_via_interpolation,
    x8_tuples,
)

print("== even degrees: the forced coefficients cannot exist ==")
for n in (6, 8, 10):
    ctx = make_field(n)
    assert all(recurrence_coeffs(ctx, c0) is None for c0 in ctx.elements())
    print(f"n={n}: inconsistent for every c0")

print("\n== odd degrees: two conditions hold, the third breaks ==")
for n in (5, 7, 9):
    ctx = make_field(n)
    verdicts = set()
    for c0 in ctx.elements():
        rep = verify_conditions(recurrence_coeffs(ctx, c0))
        verdicts.add((rep.a1_holds, rep.a2_holds, rep.a3_holds))
    print(f"n={n}: (a1, a2, a3) verdicts over all c0 = {verdicts}")

print("\n== the x^8 coefficient, two independent ways ==")
for n in (5, 7, 9, 11):
    parity = x8_coefficient_parity(n)
    oracle = x8_parity_via_interpolation(make_field(n), 1)
    print(f"n={n}: combinatorial route {parity}, interpolation route {oracle}")

print("\nindex tuples reducing to x^8 at n=5 (term value 0 when i=r or j=s):")
for tup, val in x8_tuples(5):
    print("   (i,j,r,s) =", tup, "->", val)
