"""The cone over the Shi arrangement of type D: hyperplane forms and Q.

The arrangement lives in variables x1, ..., xl, z and consists of the
hyperplane z = 0 together with, for every 1 <= s < t <= l and eps in
{+1, -1}, the hyperplanes  x_s + eps*x_t = 0  and  x_s + eps*x_t - z = 0.
That is 2*l*(l-1) + 1 hyperplanes; the defining polynomial Q is their
product.  The Coxeter number of type D_l is h = 2l - 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import Poly, exact_div, product

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form, normalized so the lex-first nonzero
    coefficient equals +1.  Coefficient order: x1, ..., xl, z."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        lead = next((c for c in self.coeffs if c), None)
        if lead is None:
            raise ValueError("linear form must be nonzero")
        if lead != 1:
            raise ValueError("linear form must be normalized to leading coefficient 1")

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def poly(self) -> Poly:
        return Poly.linear_form(self.nvars, self.coeffs)

    def text(self) -> str:
        return self.poly().render()

    def proportional_to(self, other: "LinearForm") -> bool:
        # both normalized, so proportional == equal
        return self.coeffs == other.coeffs


@dataclass(frozen=True)
class Arrangement:
    """The cone of the type-D Shi arrangement at rank ``ell``."""

    ell: int
    forms: tuple[LinearForm, ...]
    h: int  # Coxeter number, 2*ell - 2

    @property
    def nvars(self) -> int:
        return self.ell + 1


def shi_d_cone(ell: int) -> Arrangement:
    """Build the arrangement for rank ``ell`` >= 2.

    Enumeration order (fixed for reproducible reports): z first, then (s, t)
    lexicographic, eps = +1 before -1, and for each (s, t, eps) the
    homogeneous form before its -z shift.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    n = ell + 1
    forms: list[LinearForm] = []
    z_coeffs = [_F0] * n
    z_coeffs[-1] = _F1
    forms.append(LinearForm(tuple(z_coeffs)))
    for s in range(ell - 1):
        for t in range(s + 1, ell):
            for eps in (1, -1):
                for shift in (0, -1):
                    coeffs = [_F0] * n
                    coeffs[s] = _F1
                    coeffs[t] = Fraction(eps)
                    coeffs[-1] = Fraction(shift)
                    forms.append(LinearForm(tuple(coeffs)))
    assert len(forms) == 2 * ell * (ell - 1) + 1
    return Arrangement(ell=ell, forms=tuple(forms), h=2 * ell - 2)


def defining_poly(arr: Arrangement) -> Poly:
    """Q: the product of all hyperplane forms, homogeneous of degree
    2*ell*(ell-1) + 1."""
    return product(arr.nvars, (f.poly() for f in arr.forms))


def forms_json(arr: Arrangement) -> list[dict]:
    """JSON-ready list of forms as coefficient arrays (num/den strings)
    alongside the canonical text rendering."""
    return [
        {
            "coeffs": [
                {"num": str(c.numerator), "den": str(c.denominator)}
                for c in f.coeffs
            ],
            "text": f.text(),
        }
        for f in arr.forms
    ]


def is_squarefree_product(arr: Arrangement, q: Poly) -> bool:
    """Check q is divisible by every form exactly once (used in tests)."""
    from .exactpoly import divides

    for f in arr.forms:
        fp = f.poly()
        quotient = exact_div(q, fp)
        if divides(fp, quotient):
            return False
    return True
