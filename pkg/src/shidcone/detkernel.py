"""Integer polynomial kernel used by the determinant verification.

The determinant of the basis matrix is a huge polynomial (200k terms at
rank 5), so the verify module clears denominators per matrix column and runs
the expansion over integer-coefficient polynomials with monomials packed
into single integers (8 bits per exponent, most significant field = x1, so
integer comparison is pure-lex comparison).

Two interchangeable implementations provide the same small API:

  * ``DictPoly``       — pure Python, dict[int, int]; works for any rank.
  * ``_fastdet.IntPoly`` — compiled open-addressing hash with 128-bit
                            accumulators; requires nvars <= 7 (keys < 2^56).

Determinants are computed by minor expansion over column subsets
(Gentleman-Johnson dynamic programming): every intermediate is an honest
k x k minor, and each multiplication pairs a minor with an *original*
matrix entry, which measured orders of magnitude faster on these sparse
matrices than fraction-free elimination whose exact divisions pair two
large intermediates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Protocol, Sequence

from .exactpoly import FIELD_BITS, FIELD_MASK, ExponentOverflowError, Poly

PACK_BITS = 8
PACK_MASK = (1 << PACK_BITS) - 1
MAX_KERNEL_VARS = 7

try:
    from . import _fastdet

    HAS_FAST_KERNEL = True
except ImportError:  # pragma: no cover - depends on build environment
    _fastdet = None
    HAS_FAST_KERNEL = False


class IntPolyLike(Protocol):
    @staticmethod
    def from_dict(d: dict) -> "IntPolyLike": ...
    def to_dict(self) -> dict: ...
    def nnz(self) -> int: ...
    def is_zero(self) -> bool: ...
    def copy(self) -> "IntPolyLike": ...
    def fma(self, a, b, sign: int) -> None: ...
    def add_scaled(self, a, c: int) -> None: ...
    def equal_scaled(self, ca: int, other, cb: int) -> bool: ...
    def max_key(self) -> int | None: ...
    def get(self, key: int) -> int: ...


class DictPoly:
    """Pure-Python reference implementation of the kernel polynomial."""

    __slots__ = ("d",)

    def __init__(self, d: dict[int, int] | None = None):
        self.d = {} if d is None else d

    @staticmethod
    def from_dict(d: dict) -> "DictPoly":
        return DictPoly({k: v for k, v in d.items() if v})

    def to_dict(self) -> dict:
        return {k: v for k, v in self.d.items() if v}

    def nnz(self) -> int:
        return sum(1 for v in self.d.values() if v)

    def is_zero(self) -> bool:
        return not any(self.d.values())

    def copy(self) -> "DictPoly":
        return DictPoly(self.to_dict())

    def max_bits(self) -> int:
        return max((abs(v).bit_length() for v in self.d.values()), default=0)

    def fma(self, a: "DictPoly", b: "DictPoly", sign: int) -> None:
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if a is self or b is self:
            raise ValueError("fma operands must not alias the accumulator")
        out = self.d
        get = out.get
        for ka, va in a.d.items():
            if not va:
                continue
            if sign < 0:
                va = -va
            for kb, vb in b.d.items():
                k = ka + kb
                cur = get(k)
                if cur is None:
                    out[k] = va * vb
                else:
                    cur += va * vb
                    if cur:
                        out[k] = cur
                    else:
                        del out[k]

    def add_scaled(self, a: "DictPoly", c: int) -> None:
        if a is self:
            raise ValueError("add_scaled operand must not alias the accumulator")
        if not c:
            return
        out = self.d
        for k, v in a.d.items():
            cur = out.get(k, 0) + v * c
            if cur:
                out[k] = cur
            else:
                out.pop(k, None)

    def equal_scaled(self, ca: int, other: "DictPoly", cb: int) -> bool:
        a = self.to_dict()
        b = other.to_dict()
        if len(a) != len(b):
            return False
        for k, v in a.items():
            if k not in b or ca * v != cb * b[k]:
                return False
        return True

    def max_key(self) -> int | None:
        keys = [k for k, v in self.d.items() if v]
        return max(keys) if keys else None

    def get(self, key: int) -> int:
        return self.d.get(key, 0)


def get_impl(fast: bool | None = None):
    """Return the kernel polynomial class.

    fast=None picks the compiled kernel when available; fast=True requires
    it; fast=False forces the pure-Python implementation.
    """
    if fast is None:
        return _fastdet.IntPoly if HAS_FAST_KERNEL else DictPoly
    if fast:
        if not HAS_FAST_KERNEL:
            raise RuntimeError("compiled kernel _fastdet is not available")
        return _fastdet.IntPoly
    return DictPoly


# -- conversions -------------------------------------------------------------


def repack_key(key16: int, nvars: int) -> int:
    """Convert a 16-bit-field packed monomial to the kernel's 8-bit fields."""
    out = 0
    for i in range(nvars):
        e = key16 & FIELD_MASK
        key16 >>= FIELD_BITS
        if e > PACK_MASK:
            raise ExponentOverflowError(f"exponent {e} exceeds kernel field width")
        out |= e << (PACK_BITS * i)
    return out


def unpack_key(key8: int, nvars: int) -> tuple[int, ...]:
    exps = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        exps[i] = key8 & PACK_MASK
        key8 >>= PACK_BITS
    return tuple(exps)


def poly_to_int_dict(f: Poly) -> tuple[dict[int, int], int]:
    """Clear denominators: returns (integer term dict, den) with f = terms/den."""
    if f.nvars > MAX_KERNEL_VARS:
        raise ValueError(f"kernel supports at most {MAX_KERNEL_VARS} variables")
    den = 1
    for c in f._terms.values():
        den = lcm(den, c.denominator)
    out = {}
    for k, c in f._terms.items():
        out[repack_key(k, f.nvars)] = int(c * den)
    return out, den


def int_dict_to_poly(d: dict[int, int], den: int, nvars: int) -> Poly:
    """Inverse of poly_to_int_dict (den may be any nonzero integer)."""
    terms = {}
    for k, v in d.items():
        if v:
            terms[unpack_key(k, nvars)] = Fraction(v, den)
    return Poly.from_terms(nvars, terms)


# -- determinant by minor expansion ------------------------------------------


def det_minor_expansion(rows: Sequence[Sequence[IntPolyLike]], impl) -> IntPolyLike:
    """Determinant of a square matrix of kernel polynomials.

    Dynamic programming over column subsets: after processing r rows the
    table holds the minor of rows 0..r-1 for every r-subset of columns.
    Laplace expansion along the last added row gives the recurrence, with
    sign (-1)^(r + position).  Deterministic and division-free.
    """
    n = len(rows)
    if n == 0:
        return impl.from_dict({0: 1})
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
    minors = {(): impl.from_dict({0: 1})}
    for r in range(n):
        nxt = {}
        for subset in combinations(range(n), r + 1):
            acc = impl.from_dict({})
            for pos, col in enumerate(subset):
                sub = minors[subset[:pos] + subset[pos + 1 :]]
                entry = rows[r][col]
                if sub.is_zero() or entry.is_zero():
                    continue
                acc.fma(sub, entry, 1 if (r + pos) % 2 == 0 else -1)
            nxt[subset] = acc
        minors = nxt
    return minors[tuple(range(n))]


def int_product(factors: Sequence[dict[int, int]], impl) -> IntPolyLike:
    """Product of integer term dicts (empty product = 1)."""
    acc = impl.from_dict({0: 1})
    for f in factors:
        nxt = impl.from_dict({})
        nxt.fma(acc, impl.from_dict(f), 1)
        acc = nxt
    return acc
