"""Independent brute-force oracles that do not presume the construction.

Two families of checks:

* graded dimensions of the derivation module, computed as exact null-space
  dimensions of a linear system over the rationals, compared against the
  free-module prediction from exponents (1, h, ..., h) with h = 2l - 2;

* point counts over small finite fields: the number of points of F_q^(l+1)
  avoiding every hyperplane must be (q-1) * (q-h)^l, consistent with the
  factorization of the characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Iterator, Sequence

from .arrangement import shi_d_cone
from .exactpoly import Poly
from .shi_basis import Derivation, basis

POINT_ENUMERATION_CAP = 10**7

_F0 = Fraction(0)


@dataclass(frozen=True)
class GradedDimReport:
    ell: int
    degree: int
    computed_dim: int
    expected_dim: int

    @property
    def ok(self) -> bool:
        return self.computed_dim == self.expected_dim


def expected_dim(ell: int, d: int) -> int:
    """Graded dimension predicted by exponents (1, h, ..., h):
    sum over exponents e <= d of C(d - e + l, l)."""
    if ell < 2 or d < 0:
        raise ValueError("require ell >= 2 and d >= 0")
    h = 2 * ell - 2
    exponents = [1] + [h] * ell
    return sum(comb(d - e + ell, ell) for e in exponents if e <= d)


def monomials_of_degree(nvars: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples of total degree d, lexicographically descending."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def _sparse_rank(rows: Iterator[dict[int, Fraction]]) -> int:
    """Exact rank of a sparse rational matrix given as an iterable of rows.

    Forward elimination keyed on each row's smallest column index; pivot
    rows are normalized, so eliminating a column only introduces larger
    ones and the reduction terminates.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            factor = row[c]
            for k, v in piv.items():
                cur = row.get(k, _F0) - factor * v
                if cur:
                    row[k] = cur
                else:
                    row.pop(k, None)
        # empty row: linearly dependent, contributes nothing
    return len(pivots)


def _membership_rows(
    ell: int, d: int
) -> tuple[int, Iterator[dict[int, Fraction]]]:
    """Linear system whose null space is the degree-d graded piece of the
    derivation module.

    Unknowns: one coefficient per (variable slot v, degree-d monomial m).
    For every hyperplane form alpha the polynomial theta(alpha) =
    sum_v alpha_v * c_v must vanish after eliminating the lex-leading
    variable of alpha; each coefficient of the substituted polynomial is one
    linear equation.
    """
    nvars = ell + 1
    arr = shi_d_cone(ell)
    monos = list(monomials_of_degree(nvars, d))
    mono_index = {m: i for i, m in enumerate(monos)}
    n_unknowns = nvars * len(monos)

    def rows() -> Iterator[dict[int, Fraction]]:
        for form in arr.forms:
            coeffs = form.coeffs
            s = next(i for i, c in enumerate(coeffs) if c)
            # x_s == -(sum of the other terms of alpha) modulo alpha
            repl = Poly.linear_form(
                nvars, [(-c if i != s else 0) for i, c in enumerate(coeffs)]
            )
            substituted: dict[tuple, Poly] = {}
            for m in monos:
                substituted[m] = Poly.from_terms(nvars, {m: 1}).substitute(s, repl)
            by_target: dict[tuple, dict[int, Fraction]] = {}
            for v in range(nvars):
                if not coeffs[v]:
                    continue
                for m in monos:
                    uid = v * len(monos) + mono_index[m]
                    for target, c in substituted[m]._terms.items():
                        row = by_target.setdefault(target, {})
                        row[uid] = row.get(uid, _F0) + coeffs[v] * c
            yield from by_target.values()

    return n_unknowns, rows()


def derivation_dim(ell: int, d: int) -> int:
    """Dimension of the space of derivations with homogeneous degree-d
    coefficients preserving every hyperplane, by exact linear algebra."""
    if ell < 2 or d < 0:
        raise ValueError("require ell >= 2 and d >= 0")
    n_unknowns, rows = _membership_rows(ell, d)
    return n_unknowns - _sparse_rank(rows)


def graded_dims(ell: int, max_degree: int) -> list[GradedDimReport]:
    return [
        GradedDimReport(ell, d, derivation_dim(ell, d), expected_dim(ell, d))
        for d in range(max_degree + 1)
    ]


def _derivation_vector(
    theta: Derivation, monos_index: dict[tuple, int], n_mono: int
) -> dict[int, Fraction]:
    vec: dict[int, Fraction] = {}
    for v, poly in enumerate(theta.coefficients()):
        for mono, c in poly.terms():
            vec[v * n_mono + monos_index[mono]] = c
    return vec


def basis_span_rank_at_h(ell: int) -> tuple[int, int]:
    """(rank of the span of {monomial * theta_E} u {phi_j} in degree h,
    expected graded dimension).

    Containment of the span in the derivation module follows from the
    membership checks; equal dimension at degree h then certifies that the
    oracle's null space at the exponent degree is exactly the span of the
    constructed basis there.
    """
    h = 2 * ell - 2
    nvars = ell + 1
    monos = list(monomials_of_degree(nvars, h))
    index = {m: i for i, m in enumerate(monos)}
    derivs = basis(ell)
    euler, phis = derivs[0], derivs[1:]
    vectors = []
    for m in monomials_of_degree(nvars, h - 1):
        mp = Poly.from_terms(nvars, {m: 1})
        scaled = Derivation(
            ell=ell,
            name="m*euler",
            coeff_x=tuple(mp * c for c in euler.coeff_x),
            coeff_z=mp * euler.coeff_z,
        )
        vectors.append(_derivation_vector(scaled, index, len(monos)))
    for phi in phis:
        vectors.append(_derivation_vector(phi, index, len(monos)))
    return _sparse_rank(iter(vectors)), expected_dim(ell, h)


# -- finite-field point counts -------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def charpoly_count(ell: int, q: int) -> int:
    """Number of points of F_q^(l+1) lying on none of the hyperplanes,
    by exhaustive enumeration.

    Requires q an odd prime with q > 2l - 1 (small q below that boundary
    produce degenerate reductions) and q^(l+1) <= 10^7.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if not _is_prime(q) or q == 2:
        raise ValueError(f"q = {q} is not an odd prime")
    if q <= 2 * ell - 1:
        raise ValueError(f"q = {q} too small for ell = {ell} (need q > {2 * ell - 1})")
    if q ** (ell + 1) > POINT_ENUMERATION_CAP:
        raise ValueError("enumeration exceeds the 10^7 point cap")
    pairs = [
        (s, t, eps)
        for s in range(ell - 1)
        for t in range(s + 1, ell)
        for eps in (1, -1)
    ]
    count = 0
    for zval in range(1, q):
        for x in iproduct(range(q), repeat=ell):
            good = True
            for s, t, eps in pairs:
                base = x[s] + eps * x[t]
                if base % q == 0 or (base - zval) % q == 0:
                    good = False
                    break
            if good:
                count += 1
    return count


def expected_count(ell: int, q: int) -> int:
    """(q - 1) * (q - h)^l, the count consistent with exponents (1, h, ..., h)."""
    h = 2 * ell - 2
    return (q - 1) * (q - h) ** ell
