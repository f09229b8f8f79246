#!/usr/bin/env python3
# A tour of exact GF(2^n) arithmetic: elements are plain ints in the
# polynomial basis, addition is XOR, and 0^-1 = 0 makes inversion total.

import numpy as np

from invperm.gf2n import alternate_modulus, make_field

ctx = make_field(5)  # default modulus: lexicographically smallest irreducible
print(f"field {ctx.spec}: 2^{ctx.n} = {ctx.order} elements, generator {ctx.generator:#x}")

a, b = 0b10110, 0b01011
print(f"{a:#07b} * {b:#07b} = {ctx.mul(a, b):#07b}")
print(f"{a:#07b} + {b:#07b} = {a ^ b:#07b}   (addition is XOR)")

# inversion is an involution and a bijection of the whole field
inv = ctx.inv_table
assert np.array_equal(inv[inv], np.arange(ctx.order))
print("inv0 fixes 0 and 1:", ctx.inv0(0), ctx.inv0(1))
print("a * a^-1 =", ctx.mul(a, ctx.inv0(a)))

# the absolute trace splits the field in half
tr = ctx.trace_table
print("trace counts:", {0: int((tr == 0).sum()), 1: int((tr == 1).sum())})
print("Tr(1) = n mod 2 =", ctx.trace(1))

# hyperplanes: kernels of x -> Tr(ax); any two distinct ones overlap in 2^(n-2)
h3, h5 = ctx.hyperplane(3), ctx.hyperplane(5)
print("hyperplane sizes:", len(h3), len(h5), " intersection:", len(h3 & h5))

# subfields sit inside compound-degree fields
ctx6 = make_field(6)
for k in (1, 2, 3, 6):
    print(f"subfield of size 2^{k} inside GF(2^6):", sorted(ctx6.subfield_elements(k))[:8])

# a different irreducible modulus gives an isomorphic field; invariants agree
alt = make_field(5, alternate_modulus(5))
print(f"alternate model {alt.spec}: trace split",
      {0: int((alt.trace_table == 0).sum()), 1: int((alt.trace_table == 1).sum())})
