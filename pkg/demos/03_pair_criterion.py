#!/usr/bin/env python3
# When is F(x) = L1(x^-1) + L2(x) a permutation?  The exact criterion:
# K(L1*(b) L2*(b)) = 0 for every b, with trivially intersecting adjoint
# kernels.  Here the criterion races the direct occupancy check.

import random

from invperm.gf2n import make_field
from invperm.inverse_perm import build_F, kernel_structure_check, perm_criterion_kloosterman
from invperm.linmap import LinearizedPoly

ctx = make_field(4)
rng = random.Random(2)

# the inverse map itself: L1 = x, L2 = 0
l1 = LinearizedPoly.identity(ctx)
l2 = LinearizedPoly.zero(ctx)
print("inverse map is a permutation:", build_F(l1, l2).is_permutation())

# a known witness pair over GF(2^4): L1 = x, L2 = x^2 + x^8
l2 = LinearizedPoly.from_text(ctx, "0,1,0,1")
rep = kernel_structure_check(l1, l2)
print("witness pair:", rep.to_json_dict())

# criterion == bijectivity on random pairs (it is an equivalence)
agree = 0
for _ in range(500):
    a = LinearizedPoly.random(ctx, rng)
    b = LinearizedPoly.random(ctx, rng)
    agree += perm_criterion_kloosterman(a, b) == build_F(a, b).is_permutation()
print("criterion vs direct check on 500 random pairs:", agree, "/ 500")

# adjoints realized concretely: Tr(L(x) y) = Tr(x L*(y))
l = LinearizedPoly.random(ctx, rng)
ls = l.adjoint()
x, y = 7, 12
print("adjoint duality at (7, 12):",
      ctx.trace(ctx.mul(l(x), y)) == ctx.trace(ctx.mul(x, ls(y))))

# sharing a kernel point kills the pair instantly
shared = LinearizedPoly(ctx, (1, 1, 0, 0))  # kernel {0, 1}
rep = kernel_structure_check(shared, shared)
print("shared-kernel pair: criterion",
      rep.kloosterman_criterion, "/ permutation", rep.is_permutation)
