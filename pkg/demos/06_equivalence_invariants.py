#!/usr/bin/env python3
# Truth-table analytics: differential uniformity, Walsh spectra, and
# graph-equivalence witnesses.  The inverse map is an involution, so the
# coordinate swap on the product space fixes its graph exactly.

import random

from invperm.gf2n import make_field
from invperm.vbf import (
    AffineMap,
    AffineMapProduct,
    TruthTable,
    check_ccz_witness,
    check_ea_witness,
    power_ccz_equivalent,
)

# differential uniformity of the classic exponents
for n in (4, 5, 6, 7):
    ctx = make_field(n)
    cube = TruthTable.from_exponent(ctx, 3).differential_uniformity()
    inv = TruthTable.inverse_map(ctx).differential_uniformity()
    print(f"n={n}: uniformity of x^3 = {cube}, of x^-1 = {inv}")

ctx = make_field(6)
f = TruthTable.inverse_map(ctx)

# swapping the two product-space coordinates maps a permutation's graph
# to the graph of its compositional inverse; an involution is fixed
print("\nswap witness fixes the inverse-map graph:",
      check_ccz_witness(f, f, AffineMapProduct.swap(ctx)))

# affine triples are witnesses too, and leave the spectra untouched
rng = random.Random(1)
a1 = AffineMap.random(ctx, rng, bijective=True)
a2 = AffineMap.random(ctx, rng, bijective=True)
a3 = AffineMap.random(ctx, rng)
g = TruthTable(ctx, a1.table()[f.values[a2.table()]] ^ a3.table())
print("affine triple verifies:", check_ea_witness(f, g, a1, a2, a3))
print("differential spectra equal:", g.differential_spectrum() == f.differential_spectrum())
print("Walsh magnitude spectra equal:", g.walsh_spectrum() == f.walsh_spectrum())

# exponent-level equivalence of power maps: cube vs inverse on GF(2^5)
print("\nx^3 ~ x^6 on GF(2^5):", power_ccz_equivalent(3, 6, 5))
print("x^3 ~ x^-1 on GF(2^5):", power_ccz_equivalent(3, 2**5 - 2, 5))

# interpolation recovers the unique reduced univariate polynomial
coeffs = TruthTable.from_exponent(ctx, 3).interpolate()
print("nonzero interpolation coefficients of x^3:",
      {int(j): int(c) for j, c in enumerate(coeffs) if c})
