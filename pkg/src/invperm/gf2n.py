"""Exact arithmetic in GF(2^n) for 2 <= n <= 16.

Field elements are plain Python ints in [0, 2^n), interpreted as
coordinate vectors in the polynomial basis of an irreducible modulus:
bit i of the int is the coefficient of x^i.  Addition is XOR.
Inversion uses the convention 0^-1 = 0, which makes it a bijection of
the whole field.

A FieldContext owns the modulus and the precomputed exp/log, inverse
and trace tables.  Contexts are immutable and safe to share between
threads or processes; every operation is a pure function of
(context, inputs).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

__all__ = [
    "FieldContext",
    "make_field",
    "default_modulus",
    "alternate_modulus",
    "irreducible_polys",
    "is_irreducible",
    "parse_field_spec",
    "DEFAULT_MODULI",
    "MIN_N",
    "MAX_N",
]

MIN_N = 2
MAX_N = 16

# Lexicographically smallest irreducible bitmask per degree.  Re-verified
# against is_irreducible() at import time; see _check_default_table().
DEFAULT_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_degree(m)
    while a and _poly_degree(a) >= dm:
        a ^= m << (_poly_degree(a) - dm)
    return a


def is_irreducible(p: int) -> bool:
    """Irreducibility over GF(2) by trial division up to degree n/2."""
    n = _poly_degree(p)
    if n <= 0:
        return False
    if n == 1:
        return True
    if not (p & 1):
        return False
    for d in range(1, n // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod(p, q) == 0:
                return False
    return True


def irreducible_polys(n: int) -> Iterator[int]:
    """All irreducible degree-n bitmasks in increasing order."""
    for p in range(1 << n, 1 << (n + 1)):
        if is_irreducible(p):
            yield p


def default_modulus(n: int) -> int:
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"extension degree n={n} out of range [{MIN_N}, {MAX_N}]")
    return DEFAULT_MODULI[n]


def alternate_modulus(n: int) -> Optional[int]:
    """Second-smallest irreducible of degree n, or None (n=2 has only one)."""
    it = irreducible_polys(n)
    next(it)
    return next(it, None)


def _check_default_table() -> None:
    for n, m in DEFAULT_MODULI.items():
        if _poly_degree(m) != n or not is_irreducible(m):
            raise AssertionError(f"default modulus table corrupt at n={n}")
        if m != next(irreducible_polys(n)):
            raise AssertionError(f"default modulus for n={n} is not the smallest")


_check_default_table()


def parse_field_spec(spec: str) -> tuple[int, Optional[int]]:
    """Parse "n" or "n:0xHEX" into (n, modulus or None)."""
    part, _, hexpart = spec.partition(":")
    try:
        n = int(part)
    except ValueError:
        raise ValueError(f"bad field spec {spec!r}") from None
    if not hexpart:
        return n, None
    try:
        return n, int(hexpart, 16)
    except ValueError:
        raise ValueError(f"bad modulus in field spec {spec!r}") from None


class FieldContext:
    """A concrete model of GF(2^n): degree, modulus, and lookup tables."""

    def __init__(self, n: int, modulus: Optional[int] = None):
        if not MIN_N <= n <= MAX_N:
            raise ValueError(f"extension degree n={n} out of range [{MIN_N}, {MAX_N}]")
        if modulus is None:
            modulus = DEFAULT_MODULI[n]
        if _poly_degree(modulus) != n:
            raise ValueError(f"modulus {modulus:#x} does not have degree {n}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self.mask = self.order - 1
        self._build_tables()
        self._pow2k_table: Optional[np.ndarray] = None
        self._mul_table: Optional[np.ndarray] = None
        self._trace_dual: Optional[np.ndarray] = None

    # -- construction -------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Shift-and-reduce product, independent of the log tables."""
        p = 0
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a & self.order:
                a ^= self.modulus
        return p

    def _find_generator(self) -> int:
        group = self.order - 1
        primes = []
        m = group
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.append(m)
        for g in range(2, self.order):
            if all(self._pow_raw(g, group // p) != 1 for p in primes):
                return g
        raise AssertionError("no generator found (unreachable for a field)")

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        q = self.order
        g = self._find_generator()
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, g)
        exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
        self.generator = g
        self._exp = exp
        self._log = log
        # inv0: a^(2^n-2), with 0 -> 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1) - log[1:]]
        self.inv_table = inv
        # trace: a + a^2 + ... + a^(2^(n-1)), landing in {0, 1}
        tr = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            t, x = 0, a
            for _ in range(self.n):
                t ^= x
                x = self._mul_raw(x, x)
            tr[a] = t
        self.trace_table = tr
        self.sqr_table = np.array([self._mul_raw(a, a) for a in range(q)], dtype=np.int64)

    # -- identity -----------------------------------------------------

    @property
    def spec(self) -> str:
        """The "n:0xHEX" field specification string."""
        return f"{self.n}:{self.modulus:#x}"

    def __repr__(self) -> str:
        return f"FieldContext({self.spec})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldContext)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.n, self.modulus))

    def __reduce__(self):
        return (make_field, (self.n, self.modulus))

    # -- scalar operations ---------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"element {a} out of range for GF(2^{self.n})")
        return a

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv0(self, a: int) -> int:
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        return self.mul(a, self.inv0(b))

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    def sqr(self, a: int) -> int:
        return int(self.sqr_table[a])

    def pow2k(self, a: int, k: int) -> int:
        """Frobenius power a^(2^k) for 0 <= k < n."""
        if not 0 <= k < self.n:
            raise ValueError(f"Frobenius exponent k={k} out of range [0, {self.n})")
        for _ in range(k):
            a = int(self.sqr_table[a])
        return a

    def pow(self, a: int, e: int) -> int:
        """a^e with e >= 0; 0^0 = 1 and 0^e = 0 for e > 0."""
        if e < 0:
            raise ValueError("negative exponent; use inv0 explicitly")
        if a == 0:
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])

    # -- vectorized operations ------------------------------------------

    def mul_vec(self, a, b) -> np.ndarray:
        """Elementwise product of int arrays (broadcasting allowed)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, a, e: int) -> np.ndarray:
        """Elementwise a^e for e >= 1 (0 maps to 0)."""
        if e < 1:
            raise ValueError("pow_vec requires e >= 1")
        a = np.asarray(a, dtype=np.int64)
        out = self._exp[(self._log[a] * (e % (self.order - 1) or (self.order - 1)))
                        % (self.order - 1)]
        return np.where(a == 0, 0, out)

    @property
    def pow2k_table(self) -> np.ndarray:
        """pow2k_table[k][x] = x^(2^k), shape (n, 2^n)."""
        if self._pow2k_table is None:
            t = np.empty((self.n, self.order), dtype=np.int64)
            t[0] = np.arange(self.order)
            for k in range(1, self.n):
                t[k] = self.sqr_table[t[k - 1]]
            t.setflags(write=False)
            self._pow2k_table = t
        return self._pow2k_table

    @property
    def trace_dual_table(self) -> np.ndarray:
        """t[a] with Tr(a x) = popcount(t[a] & x) mod 2 for all x.

        Transports the trace pairing to the standard dot product, which
        lets fast transforms over the character group compute the
        exponential sums indexed by field elements.
        """
        if self._trace_dual is None:
            # column j of the Gram matrix G[i][j] = Tr(2^i 2^j)
            cols = []
            for j in range(self.n):
                col = 0
                for i in range(self.n):
                    col |= self.trace(self.mul(1 << i, 1 << j)) << i
                cols.append(col)
            t = np.zeros(self.order, dtype=np.int64)
            for j in range(self.n):
                t[1 << j : 2 << j] = t[: 1 << j] ^ cols[j]
            t.setflags(write=False)
            self._trace_dual = t
        return self._trace_dual

    @property
    def mul_table(self) -> np.ndarray:
        """Full 2^n x 2^n product table; only built for n <= 8."""
        if self._mul_table is None:
            if self.n > 8:
                raise ValueError("mul_table is limited to n <= 8; use mul_vec")
            xs = np.arange(self.order, dtype=np.int64)
            t = self.mul_vec(xs[:, None], xs[None, :])
            t.setflags(write=False)
            self._mul_table = t
        return self._mul_table

    # -- structured subsets ----------------------------------------------

    def hyperplane(self, a: int) -> frozenset:
        """{x : Tr(ax) = 0}, a 2^(n-1)-element GF(2)-subspace (a != 0)."""
        if a == 0:
            raise ValueError("hyperplane requires a nonzero defining element")
        prods = self.mul_vec(a, np.arange(self.order))
        return frozenset(int(x) for x in np.nonzero(self.trace_table[prods] == 0)[0])

    def subfield_elements(self, k: int) -> frozenset:
        """The unique subfield of size 2^k: {0} union {x : x^(2^k-1) = 1}."""
        if k < 1 or self.n % k != 0:
            raise ValueError(f"k={k} does not divide n={self.n}")
        if k == self.n:
            return frozenset(range(self.order))
        e = (1 << k) - 1
        xs = np.arange(1, self.order)
        members = xs[self.pow_vec(xs, e) == 1]
        return frozenset([0] + [int(x) for x in members])


@lru_cache(maxsize=None)
def _cached_field(n: int, modulus: int) -> FieldContext:
    return FieldContext(n, modulus)


def make_field(n: int, modulus: Optional[int] = None) -> FieldContext:
    """Shared, cached FieldContext for the given degree and modulus."""
    if modulus is None:
        modulus = default_modulus(n)
    return _cached_field(n, modulus)
