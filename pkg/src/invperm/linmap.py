"""Linearized polynomials over GF(2^n) and their GF(2)-subspace geometry.

A linearized polynomial L(x) = sum_i c_i x^(2^i) is stored as its
coefficient vector (c_0, ..., c_{n-1}); these are exactly the
GF(2)-linear self-maps of the field.  The adjoint L* is the unique
linear map with Tr(L(x) y) = Tr(x L*(y)) for all x, y.

Matrix forms use the row-int convention of gf2mat: an n x n matrix M
with column j equal to the image of the basis element 2^j, so applying
the matrix to the bit-vector of x evaluates the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2mat
from .gf2n import FieldContext

__all__ = ["LinearizedPoly", "Subspace", "bijective_factor", "kernels_intersect_trivially"]

# per-context solver for matrix -> coefficients (built on first use)
_FROM_MATRIX_CACHE: dict = {}


@dataclass(frozen=True)
class LinearizedPoly:
    """GF(2)-linear map x -> sum c_i x^(2^i) on a fixed field."""

    ctx: FieldContext
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n:
            raise ValueError(f"need exactly {self.ctx.n} coefficients")
        for c in self.coeffs:
            self.ctx.check(c)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldContext) -> "LinearizedPoly":
        return cls(ctx, (0,) * ctx.n)

    @classmethod
    def identity(cls, ctx: FieldContext) -> "LinearizedPoly":
        return cls(ctx, (1,) + (0,) * (ctx.n - 1))

    @classmethod
    def frobenius(cls, ctx: FieldContext, k: int, c: int = 1) -> "LinearizedPoly":
        """The single-term map x -> c x^(2^k)."""
        coeffs = [0] * ctx.n
        coeffs[k % ctx.n] = c
        return cls(ctx, tuple(coeffs))

    @classmethod
    def scalar(cls, ctx: FieldContext, c: int) -> "LinearizedPoly":
        """Multiplication by the constant c."""
        return cls(ctx, (c,) + (0,) * (ctx.n - 1))

    @classmethod
    def random(cls, ctx: FieldContext, rng) -> "LinearizedPoly":
        return cls(ctx, tuple(rng.randrange(ctx.order) for _ in range(ctx.n)))

    @classmethod
    def from_matrix(cls, ctx: FieldContext, rows: Sequence[int]) -> "LinearizedPoly":
        """Recover the coefficient vector from an n x n bit matrix."""
        n = ctx.n
        solver = _FROM_MATRIX_CACHE.get(ctx)
        if solver is None:
            # unknowns: bit t of c_i at position i*n + t; equations: output
            # bit b of the image of basis 2^j at position j*n + b
            eq_rows = []
            for j in range(n):
                for b in range(n):
                    row = 0
                    for i in range(n):
                        xq = ctx.pow2k(1 << j, i)
                        for t in range(n):
                            if (ctx.mul(1 << t, xq) >> b) & 1:
                                row |= 1 << (i * n + t)
                    eq_rows.append(row)
            solver = gf2mat.inverse(eq_rows, n * n)
            if solver is None:
                raise AssertionError("coefficient/matrix correspondence not invertible")
            _FROM_MATRIX_CACHE[ctx] = solver
        rhs = 0
        for j in range(n):
            col = gf2mat.mat_vec(rows, 1 << j)
            rhs |= col << (j * n)
        sol = gf2mat.mat_vec(solver, rhs)
        coeffs = tuple((sol >> (i * n)) & ctx.mask for i in range(n))
        return cls(ctx, coeffs)

    @classmethod
    def from_text(cls, ctx: FieldContext, text: str) -> "LinearizedPoly":
        """Parse the "c0,c1,..." comma-separated hex form."""
        parts = [p.strip() for p in text.split(",")]
        return cls(ctx, tuple(int(p, 16) for p in parts))

    def to_text(self) -> str:
        return ",".join(f"{c:x}" for c in self.coeffs)

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                acc ^= ctx.mul(c, ctx.pow2k(x, i))
        return acc

    def table(self) -> np.ndarray:
        """Values on all 2^n inputs, by linear extension from the basis."""
        ctx = self.ctx
        out = np.zeros(ctx.order, dtype=np.int64)
        for j in range(ctx.n):
            v = self(1 << j)
            out[1 << j : 2 << j] = out[: 1 << j] ^ v
        return out

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        self._same_ctx(other)
        return LinearizedPoly(
            self.ctx, tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs))
        )

    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        """self after other: x -> self(other(x))."""
        self._same_ctx(other)
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                if not d:
                    continue
                out[(i + j) % n] ^= ctx.mul(c, ctx.pow2k(d, i))
        return LinearizedPoly(ctx, tuple(out))

    def adjoint(self) -> "LinearizedPoly":
        """L* with Tr(L(x) y) = Tr(x L*(y)); an involution."""
        ctx = self.ctx
        n = ctx.n
        coeffs = tuple(ctx.pow2k(self.coeffs[(n - j) % n], j) for j in range(n))
        return LinearizedPoly(ctx, coeffs)

    def _same_ctx(self, other: "LinearizedPoly") -> None:
        if self.ctx != other.ctx:
            raise ValueError("context mismatch between linearized polynomials")

    # -- linear-algebra views ---------------------------------------------

    def matrix(self) -> List[int]:
        """n x n bit matrix (gf2mat rows); column j = image of 2^j."""
        n = self.ctx.n
        cols = [self(1 << j) for j in range(n)]
        return [sum(((cols[j] >> i) & 1) << j for j in range(n)) for i in range(n)]

    def rank(self) -> int:
        return gf2mat.rank(self.matrix(), self.ctx.n)

    def is_bijective(self) -> bool:
        return self.rank() == self.ctx.n

    def kernel(self) -> "Subspace":
        basis = gf2mat.nullspace(self.matrix(), self.ctx.n)
        return Subspace.from_basis(self.ctx, basis)

    def image(self) -> "Subspace":
        return Subspace.from_elements(self.ctx, (self(1 << j) for j in range(self.ctx.n)))

    def apply_to_subspace(self, s: "Subspace") -> "Subspace":
        if s.ctx != self.ctx:
            raise ValueError("context mismatch")
        return Subspace.from_elements(self.ctx, (self(b) for b in s.basis))


class Subspace:
    """GF(2)-subspace of the field, held as a reduced-row-echelon basis.

    The canonical basis makes equality a tuple comparison.
    """

    def __init__(self, ctx: FieldContext, basis: Iterable[int]):
        red, _ = gf2mat.rref(list(basis), ctx.n)
        self.ctx = ctx
        self.basis: Tuple[int, ...] = tuple(sorted(red, reverse=True))
        self.dim = len(self.basis)

    @classmethod
    def from_basis(cls, ctx: FieldContext, basis: Iterable[int]) -> "Subspace":
        return cls(ctx, basis)

    @classmethod
    def from_elements(cls, ctx: FieldContext, elems: Iterable[int]) -> "Subspace":
        return cls(ctx, elems)

    @classmethod
    def trivial(cls, ctx: FieldContext) -> "Subspace":
        return cls(ctx, ())

    def elements(self) -> List[int]:
        """The full span, 2^dim ints in increasing order."""
        span = [0]
        for b in self.basis:
            span += [x ^ b for x in span]
        return sorted(span)

    def __contains__(self, x: int) -> bool:
        # rref pivots are the lowest set bits of the basis rows
        for b in self.basis:
            if x & (b & -b):
                x ^= b
        return x == 0

    def __len__(self) -> int:
        return 1 << self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[hex(b) for b in self.basis]})"

    def intersection(self, other: "Subspace") -> "Subspace":
        """Intersection via the nullspace of the stacked coefficient system."""
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        a, b = self.basis, other.basis
        if not a or not b:
            return Subspace.trivial(self.ctx)
        # columns: coefficients on a-basis then b-basis; rows: field bits
        rows = []
        for bit in range(self.ctx.n):
            row = 0
            for idx, v in enumerate(a):
                row |= ((v >> bit) & 1) << idx
            for idx, v in enumerate(b):
                row |= ((v >> bit) & 1) << (len(a) + idx)
            rows.append(row)
        elems = []
        for u in gf2mat.nullspace(rows, len(a) + len(b)):
            x = 0
            for idx, v in enumerate(a):
                if (u >> idx) & 1:
                    x ^= v
            elems.append(x)
        return Subspace.from_elements(self.ctx, elems)

    def is_subfield_translate(self) -> Optional[Tuple[int, int]]:
        """(a, k) with self = a * F_{2^k}, or None.

        Every nonzero member is tried as the scale candidate.
        """
        if self.dim < 1:
            return None
        k = self.dim
        if self.ctx.n % k != 0:
            return None
        target = self.ctx.subfield_elements(k)
        span = self.elements()
        for s in span:
            if s == 0:
                continue
            s_inv = self.ctx.inv0(s)
            if frozenset(self.ctx.mul(s_inv, x) for x in span) == target:
                return (s, k)
        return None


def kernels_intersect_trivially(l1: LinearizedPoly, l2: LinearizedPoly) -> bool:
    """ker(l1) ∩ ker(l2) = {0}, decided by the rank of the stacked matrix."""
    l1._same_ctx(l2)
    n = l1.ctx.n
    return gf2mat.rank(l1.matrix() + l2.matrix(), n) == n


def bijective_factor(l: LinearizedPoly, lp: LinearizedPoly) -> LinearizedPoly:
    """A bijective B with lp = B ∘ l; requires ker(l) == ker(lp)."""
    l._same_ctx(lp)
    ctx = l.ctx
    n = ctx.n
    if l.kernel() != lp.kernel():
        raise ValueError("kernels differ; no exact factorization exists")
    u_cols: List[int] = []
    v_cols: List[int] = []
    # independent image pairs (l(x), lp(x)) over a spanning set of inputs
    for j in range(n):
        u = l(1 << j)
        if gf2mat.rank([*u_cols, u], n) > len(u_cols):
            u_cols.append(u)
            v_cols.append(lp(1 << j))
    # complete both sides to bases of the whole space
    w_cols: List[int] = []
    z_cols: List[int] = []
    for t in range(n):
        e = 1 << t
        if gf2mat.rank([*u_cols, *w_cols, e], n) > len(u_cols) + len(w_cols):
            w_cols.append(e)
        z = 1 << t
        if gf2mat.rank([*v_cols, *z_cols, z], n) > len(v_cols) + len(z_cols):
            z_cols.append(z)
    # column-assembled matrices: B [U|W] = [V|Z]
    def cols_to_rows(cols: List[int]) -> List[int]:
        return [sum(((cols[j] >> i) & 1) << j for j in range(len(cols))) for i in range(n)]

    uw = cols_to_rows(u_cols + w_cols)
    vz = cols_to_rows(v_cols + z_cols[: n - len(v_cols)])
    uw_inv = gf2mat.inverse(uw, n)
    if uw_inv is None:
        raise AssertionError("completion failed to produce a basis")
    b_rows = gf2mat.matmul(vz, uw_inv)
    return LinearizedPoly.from_matrix(ctx, b_rows)
