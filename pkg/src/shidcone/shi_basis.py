"""Construction of the derivation-module basis: theta_E, phi_1, ..., phi_l.

Each phi_j is a polynomial vector field sum_i phi_j(x_i) d/dx_i with
phi_j(z) = 0, whose coefficients are assembled from elementary symmetric
functions and homogenized Bernoulli-relative polynomials:

  phi_j = (x_j - x_{j+1} - z) * sum_i sum_{K1,K2} (prod K1)(prod K2)^2
          * (-z)^|K1| * sum_{n1,n2} (-1)^(n1+n2) sigma_{n1} tau_{2 n2}
          * Bbar_{k,k0}(x_i, z) d/dx_i                 (1 <= j <= l-1)

  phi_l = sum_i sum_{K1,K2} (prod K1)(prod K2)^2 (-z)^|K1|
          * (-x_l) * Bbar_{-1,k0}(x_i, z) d/dx_i

where (K1, K2) ranges over ordered pairs of disjoint subsets of
J = {x_1, ..., x_{j-1}}, sigma is taken over J1 = {x_j, x_{j+1}}, tau over
the squares of J2 = {x_{j+2}, ..., x_l}, k0 = |J \\ (K1 u K2)| and
k = (|J1| - n1) + 2(|J2| - n2) - 1.

The summand with (k, k0) = (-1, 0) stands for the rational function -1/x_i.
It never becomes a Laurent object here: each coefficient accumulates the
whole sum multiplied through by x_i and is divided by x_i exactly at the
end.  A failed division would mean the formula was transcribed wrongly, so
it aborts loudly.

Together with the Euler field theta_E = z d/dz + sum_i x_i d/dx_i these
l + 1 derivations are the basis that the verify module checks against
Saito's criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterator, Sequence

from .bernoulli import make_bernoulli
from .exactpoly import Poly, elementary_symmetric, exact_div, remap_variables

_F1 = Fraction(1)


@dataclass(frozen=True)
class Derivation:
    """A polynomial vector field on Q[x1..xl, z].

    coeff_x[i] is the coefficient of d/dx_{i+1}; coeff_z of d/dz.
    """

    ell: int
    name: str
    coeff_x: tuple[Poly, ...]
    coeff_z: Poly

    @property
    def nvars(self) -> int:
        return self.ell + 1

    def coefficients(self) -> list[Poly]:
        """Coefficients in row order x1, ..., xl, z."""
        return list(self.coeff_x) + [self.coeff_z]

    def __call__(self, f: Poly) -> Poly:
        return apply(self, f)


@dataclass(frozen=True)
class TermIndex:
    """Index data of one summand of a phi coefficient.

    Variable sets are stored as tuples of 0-based variable indices.
    Invariants: k0 >= 0 and k >= -1.
    """

    j: int  # 1-based, which phi
    J: tuple[int, ...]
    J1: tuple[int, ...]
    J2: tuple[int, ...]
    K1: tuple[int, ...]
    K2: tuple[int, ...]
    n1: int
    n2: int
    k0: int
    k: int


def enumerate_k1_k2(
    J: Sequence[int],
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered pairs of disjoint subsets (K1, K2) of J, each exactly once.

    Deterministic order: a ternary counter over the elements of J in variable
    order (digit 0: in neither, 1: in K1, 2: in K2).
    """
    J = tuple(J)
    for digits in iproduct((0, 1, 2), repeat=len(J)):
        k1 = tuple(v for v, d in zip(J, digits) if d == 1)
        k2 = tuple(v for v, d in zip(J, digits) if d == 2)
        yield k1, k2


def term_indices(j: int, ell: int) -> Iterator[TermIndex]:
    """All summand indices of phi_j at rank ell, in construction order."""
    if not 1 <= j <= ell:
        raise ValueError(f"j must be in 1..{ell}")
    if j < ell:
        J = tuple(range(j - 1))
        J1 = (j - 1, j)
        J2 = tuple(range(j + 1, ell))
    else:
        J = tuple(range(ell - 1))
        J1 = ()
        J2 = ()
    for K1, K2 in enumerate_k1_k2(J):
        k0 = len(J) - len(K1) - len(K2)
        if j == ell:
            yield TermIndex(j, J, J1, J2, K1, K2, 0, 0, k0, -1)
            continue
        for n1 in range(len(J1) + 1):
            for n2 in range(len(J2) + 1):
                k = (len(J1) - n1) + 2 * (len(J2) - n2) - 1
                yield TermIndex(j, J, J1, J2, K1, K2, n1, n2, k0, k)


@lru_cache(maxsize=None)
def _bernoulli_embedded(k: int, k0: int, var: int, nvars: int) -> Poly | None:
    """Bbar_{k,k0}(x_var, z) inside the nvars-variable ring; None flags the
    (-1, 0) case (the symbolic -1/x_var)."""
    br = make_bernoulli(k, k0)
    if br.is_negative_one_zero:
        return None
    return remap_variables(br.homogenized, nvars, (var, nvars - 1))


@lru_cache(maxsize=None)
def _sigma_tau_table(j: int, ell: int) -> dict[tuple[int, int], Poly]:
    """(-1)^(n1+n2) * sigma_{n1}^{J1} * tau_{2 n2}^{J2} for all (n1, n2)."""
    nvars = ell + 1
    J1 = (j - 1, j)
    J2 = tuple(range(j + 1, ell))
    sigma = [
        elementary_symmetric(nvars, [Poly.variable(nvars, v) for v in J1], n1)
        for n1 in range(len(J1) + 1)
    ]
    tau = [
        elementary_symmetric(
            nvars, [Poly.variable(nvars, v) ** 2 for v in J2], n2
        )
        for n2 in range(len(J2) + 1)
    ]
    table = {}
    for n1, s in enumerate(sigma):
        for n2, t in enumerate(tau):
            table[(n1, n2)] = s * t * (Fraction(-1) ** (n1 + n2))
    return table


def _subset_weight(K1: Sequence[int], K2: Sequence[int], nvars: int) -> Poly:
    """(prod K1) * (prod K2)^2 * (-z)^|K1| as a polynomial."""
    w = Poly.one(nvars)
    for v in K1:
        w = w * Poly.variable(nvars, v)
    for v in K2:
        w = w * (Poly.variable(nvars, v) ** 2)
    if K1:
        w = w * ((-Poly.variable(nvars, nvars - 1)) ** len(K1))
    return w


def build_phi(j: int, ell: int) -> Derivation:
    """The derivation phi_j for 1 <= j <= ell - 1."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if not 1 <= j <= ell - 1:
        raise ValueError(f"j must be in 1..{ell - 1}")
    nvars = ell + 1
    z = Poly.variable(nvars, nvars - 1)
    prefactor = Poly.variable(nvars, j - 1) - Poly.variable(nvars, j) - z
    st = _sigma_tau_table(j, ell)
    indices = list(term_indices(j, ell))
    coeff_x = []
    for i in range(ell):
        xi = Poly.variable(nvars, i)
        # accumulate x_i * (inner sum); the (k, k0) = (-1, 0) summands carry
        # the factor x_i * (-1/x_i) = -1
        acc = Poly.zero(nvars)
        weight_cache: dict[tuple, Poly] = {}
        for t in indices:
            wkey = (t.K1, t.K2)
            weight = weight_cache.get(wkey)
            if weight is None:
                weight = _subset_weight(t.K1, t.K2, nvars)
                weight_cache[wkey] = weight
            bbar = _bernoulli_embedded(t.k, t.k0, i, nvars)
            if bbar is None:
                acc = acc - weight * st[(t.n1, t.n2)]
            elif bbar:
                acc = acc + weight * st[(t.n1, t.n2)] * bbar * xi
        coeff = exact_div(acc, xi) * prefactor
        coeff_x.append(coeff)
    return Derivation(
        ell=ell, name=f"phi_{j}", coeff_x=tuple(coeff_x), coeff_z=Poly.zero(nvars)
    )


def build_phi_ell(ell: int) -> Derivation:
    """The derivation phi_ell (the j = ell case, built from Bbar_{-1, k0})."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    nvars = ell + 1
    x_last = Poly.variable(nvars, ell - 1)
    indices = list(term_indices(ell, ell))
    coeff_x = []
    for i in range(ell):
        xi = Poly.variable(nvars, i)
        acc = Poly.zero(nvars)
        for t in indices:
            weight = _subset_weight(t.K1, t.K2, nvars)
            bbar = _bernoulli_embedded(-1, t.k0, i, nvars)
            if bbar is None:
                # (-x_l) * (-1/x_i) * x_i = x_l
                acc = acc + weight * x_last
            elif bbar:
                acc = acc - weight * x_last * bbar * xi
        coeff_x.append(exact_div(acc, xi))
    return Derivation(
        ell=ell, name=f"phi_{ell}", coeff_x=tuple(coeff_x), coeff_z=Poly.zero(nvars)
    )


def build_euler(ell: int) -> Derivation:
    """theta_E = z d/dz + sum_i x_i d/dx_i."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    nvars = ell + 1
    return Derivation(
        ell=ell,
        name="euler",
        coeff_x=tuple(Poly.variable(nvars, i) for i in range(ell)),
        coeff_z=Poly.variable(nvars, nvars - 1),
    )


def basis(ell: int) -> list[Derivation]:
    """[theta_E, phi_1, ..., phi_ell], the candidate basis at rank ell >= 2."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    derivs = [build_euler(ell)]
    derivs.extend(build_phi(j, ell) for j in range(1, ell))
    derivs.append(build_phi_ell(ell))
    return derivs


def apply(theta: Derivation, f: Poly) -> Poly:
    """theta acting on f: sum_i coeff_x[i] * df/dx_i + coeff_z * df/dz."""
    if f.nvars != theta.nvars:
        raise ValueError("polynomial lives in a different ring than the derivation")
    out = Poly.zero(f.nvars)
    for i, c in enumerate(theta.coeff_x):
        if c:
            d = f.partial_derivative(i)
            if d:
                out = out + c * d
    if theta.coeff_z:
        d = f.partial_derivative(f.nvars - 1)
        if d:
            out = out + theta.coeff_z * d
    return out


# -- wire format -------------------------------------------------------------


def derivation_to_dict(theta: Derivation) -> dict:
    """JSON-ready encoding: coefficients as lists of
    [exponent array, "numerator", "denominator"] triples in descending lex
    order, integers rendered as decimal strings."""
    names = [f"x{i + 1}" for i in range(theta.ell)] + ["z"]
    coeffs = {}
    for name, poly in zip(names, theta.coefficients()):
        coeffs[name] = [
            [list(mono), str(c.numerator), str(c.denominator)]
            for mono, c in poly.terms()
        ]
    return {"ell": theta.ell, "name": theta.name, "coeffs": coeffs}


def derivation_from_dict(data: dict) -> Derivation:
    """Inverse of derivation_to_dict."""
    ell = int(data["ell"])
    nvars = ell + 1
    names = [f"x{i + 1}" for i in range(ell)] + ["z"]
    polys = []
    for name in names:
        terms = {
            tuple(mono): Fraction(int(num), int(den))
            for mono, num, den in data["coeffs"][name]
        }
        polys.append(Poly.from_terms(nvars, terms))
    return Derivation(
        ell=ell, name=str(data["name"]), coeff_x=tuple(polys[:ell]), coeff_z=polys[ell]
    )
