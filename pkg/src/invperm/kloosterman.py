"""Kloosterman sums over GF(2^n), their quadratic-form approximation,
and the census of Kloosterman zeros.

K_n(a) = sum over x of (-1)^Tr(x^-1 + a x), with 0^-1 = 0.  A
Kloosterman zero is a nonzero a with K_n(a) = 0; K_n(0) = 0 always
(inversion permutes the field, so the sum telescopes) but 0 is kept out
of the zero set and reported separately.

The dyadic filter: for n >= 4, 16 divides K_n(a) exactly when
Tr(a) = 0 and Q(a) = 0, where Q(x) = sum_{i<j} x^(2^i + 2^j).  The
census uses this as a prefilter and then confirms each candidate by
exact direct summation, independent of the fast-transform path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .gf2n import FieldContext
from .vbf import walsh_transform_signs

__all__ = [
    "kloosterman_sum",
    "kloosterman_all",
    "qform",
    "qform_table",
    "bform",
    "divisible_by_16",
    "kloosterman_zeros",
    "KloostermanCensus",
]

_QFORM_CACHE: Dict[FieldContext, np.ndarray] = {}
_KALL_CACHE: Dict[FieldContext, np.ndarray] = {}


def kloosterman_sum(ctx: FieldContext, a: int) -> int:
    """K_n(a) by literal summation over the whole field."""
    ctx.check(a)
    xs = np.arange(ctx.order)
    bits = ctx.trace_table[ctx.inv_table ^ ctx.mul_vec(a, xs)]
    return int(ctx.order - 2 * int(np.sum(bits)))


def kloosterman_all(ctx: FieldContext) -> np.ndarray:
    """K_n(a) for every a at once, via a fast transform (cached).

    The sign vector of x -> Tr(x^-1) is transformed over the character
    group; the trace pairing is transported to the standard dot product
    by the context's dual-index table.
    """
    out = _KALL_CACHE.get(ctx)
    if out is None:
        signs = 1 - 2 * ctx.trace_table[ctx.inv_table].astype(np.int64)
        hat = walsh_transform_signs(signs)
        out = hat[ctx.trace_dual_table]
        out.setflags(write=False)
        _KALL_CACHE[ctx] = out
    return out


def qform_table(ctx: FieldContext) -> np.ndarray:
    """Q(x) for every x, by the defining double sum (cached)."""
    tab = _QFORM_CACHE.get(ctx)
    if tab is None:
        pw = ctx.pow2k_table
        acc = np.zeros(ctx.order, dtype=np.int64)
        for i in range(ctx.n):
            for j in range(i + 1, ctx.n):
                acc ^= ctx.mul_vec(pw[i], pw[j])
        if not bool(np.all(acc <= 1)):
            raise AssertionError("quadratic form left the prime field")
        tab = acc.astype(np.uint8)
        tab.setflags(write=False)
        _QFORM_CACHE[ctx] = tab
    return tab


def qform(ctx: FieldContext, x: int) -> int:
    return int(qform_table(ctx)[ctx.check(x)])


def bform(ctx: FieldContext, x: int, y: int) -> int:
    """The polarization Tr(xy) + Tr(x)Tr(y) of Q."""
    return ctx.trace(ctx.mul(x, y)) ^ (ctx.trace(x) & ctx.trace(y))


def divisible_by_16(ctx: FieldContext, a: int) -> bool:
    """Necessary-and-sufficient dyadic test: Tr(a) = 0 and Q(a) = 0 (n >= 4)."""
    if ctx.n < 4:
        raise ValueError("the mod-16 characterization requires n >= 4")
    return ctx.trace(a) == 0 and qform(ctx, a) == 0


@dataclass(frozen=True)
class KloostermanCensus:
    """All Kloosterman zeros of one concrete field, with provenance."""

    field_spec: str
    n: int
    modulus: int
    zeros: Tuple[int, ...]
    zero_count: int
    k_at_zero_element: int  # K_n(0), reported separately from the zero set
    prefilter: str
    candidates: int
    subfield_hits: Dict[int, Tuple[int, ...]]  # proper divisor k -> zeros inside
    sums: Optional[Tuple[int, ...]] = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        d = {
            "field": self.field_spec,
            "n": self.n,
            "modulus": f"{self.modulus:#x}",
            "zeros": [f"{z:x}" for z in self.zeros],
            "zero_count": self.zero_count,
            "k_at_zero_element": self.k_at_zero_element,
            "prefilter": self.prefilter,
            "candidates": self.candidates,
            "subfield_hits": {
                str(k): [f"{z:x}" for z in v] for k, v in sorted(self.subfield_hits.items())
            },
        }
        if self.sums is not None:
            d["sums"] = list(self.sums)
        return d


def kloosterman_zeros(ctx: FieldContext, dump_sums: bool = False) -> KloostermanCensus:
    """Census of all nonzero a with K_n(a) = 0.

    For n >= 4 the candidates are prefiltered by the mod-16 test; every
    candidate is then confirmed by exact direct summation (the fast
    transform is deliberately not used here, so the census and the
    transform stay independent cross-checks).
    """
    q = ctx.order
    xs = np.arange(1, q)
    if ctx.n >= 4:
        qt = qform_table(ctx)
        cand = xs[(ctx.trace_table[xs] == 0) & (qt[xs] == 0)]
        prefilter = "trace-and-qform"
    else:
        cand = xs
        prefilter = "none"
    zeros = [int(a) for a in cand if kloosterman_sum(ctx, int(a)) == 0]
    if not zeros:
        raise AssertionError(f"no Kloosterman zeros found for {ctx.spec}")
    hits: Dict[int, Tuple[int, ...]] = {}
    for k in range(1, ctx.n):
        if ctx.n % k == 0:
            sub = ctx.subfield_elements(k)
            hits[k] = tuple(z for z in zeros if z in sub)
    sums = tuple(int(v) for v in kloosterman_all(ctx)) if dump_sums else None
    return KloostermanCensus(
        field_spec=ctx.spec,
        n=ctx.n,
        modulus=ctx.modulus,
        zeros=tuple(zeros),
        zero_count=len(zeros),
        k_at_zero_element=kloosterman_sum(ctx, 0),
        prefilter=prefilter,
        candidates=int(cand.size),
        subfield_hits=hits,
        sums=sums,
    )
