#!/usr/bin/env python3
# Kloosterman sums K(a) = sum_x (-1)^Tr(x^-1 + ax), their mod-16
# structure, and the census of zeros.  The dyadic filter Tr(a)=Q(a)=0
# narrows the candidates; exact summation confirms each zero.

import numpy as np

from invperm.gf2n import make_field
from invperm.kloosterman import (
    bform,
    kloosterman_all,
    kloosterman_sum,
    kloosterman_zeros,
    qform,
    qform_table,
)

ctx = make_field(6)
ks = kloosterman_all(ctx)  # fast-transform route, all a at once
print("K over GF(2^6), first 12 values:", ks[:12].tolist())
print("direct summation agrees at a=9:", kloosterman_sum(ctx, 9) == int(ks[9]))

# the quadratic form behind the mod-16 test, and its polarization
print("Q(0), Q(1):", qform(ctx, 0), qform(ctx, 1))
x, y = 13, 44
assert bform(ctx, x, y) == qform(ctx, x) ^ qform(ctx, y) ^ qform(ctx, x ^ y)
print("B(x,y) = Q(x)+Q(y)+Q(x+y) checked at", (x, y))

# 16 | K(a) exactly on the set {Tr(a)=0 and Q(a)=0}
by_form = (ctx.trace_table == 0) & (qform_table(ctx) == 0)
print("mod-16 set size:", int(by_form.sum()),
      " matches divisibility:", bool(np.array_equal(by_form, ks % 16 == 0)))

# the census across a range of degrees; zeros exist for every n and
# avoid proper subfields once n > 4
print(f"\n{'n':>3} {'zeros':>6} {'candidates':>11}  subfield hits")
for n in range(3, 13):
    census = kloosterman_zeros(make_field(n))
    hits = sum(len(v) for v in census.subfield_hits.values())
    print(f"{n:>3} {census.zero_count:>6} {census.candidates:>11}  {hits}")
