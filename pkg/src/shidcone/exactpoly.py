"""Exact sparse multivariate polynomial arithmetic over the rationals.

The ring is Q[x1, ..., x_{n-1}, z]: a fixed number of variables ``nvars``,
where by convention the last variable is the homogenizing coordinate and is
rendered as ``z``.  Coefficients are :class:`fractions.Fraction` (always
reduced, exact); monomials are exponent tuples.

The one and only monomial order used anywhere in this package is pure
lexicographic with x1 > x2 > ... > z.  Internally each monomial is packed
into a single integer, 16 bits per exponent with x1 occupying the most
significant field, so that *integer comparison of packed keys is exactly the
pure-lex comparison*.  All operations guard against exponent-field overflow
(which would silently corrupt results) by bounding total degrees.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction
Monomial = tuple  # exponent tuple, one entry per variable

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1

_F0 = Fraction(0)
_F1 = Fraction(1)


def to_rational(c) -> Fraction:
    """Convert to Fraction, rejecting floats (this package is float-free)."""
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed")
    return Fraction(c)


class DivisionNotExactError(ArithmeticError):
    """Raised when an exact polynomial division leaves a nonzero remainder."""


class ExponentOverflowError(OverflowError):
    """Raised when an operation would exceed the packed exponent range."""


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in exps:
        if e < 0 or e > FIELD_MASK:
            raise ExponentOverflowError(f"exponent {e} outside [0, {FIELD_MASK}]")
        key = (key << FIELD_BITS) | e
    return key


def _unpack(key: int, nvars: int) -> Monomial:
    exps = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        exps[i] = key & FIELD_MASK
        key >>= FIELD_BITS
    return tuple(exps)


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & FIELD_MASK
        key >>= FIELD_BITS
    return d


def _monomial_divides_key(bkey: int, akey: int) -> bool:
    """True iff the monomial with key ``bkey`` divides the one with ``akey``."""
    while bkey:
        if (bkey & FIELD_MASK) > (akey & FIELD_MASK):
            return False
        bkey >>= FIELD_BITS
        akey >>= FIELD_BITS
    return True


class UniPoly:
    """Dense univariate polynomial over the rationals.

    Coefficients are stored lowest degree first; the highest stored
    coefficient is nonzero unless the polynomial is zero (empty tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[object] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [_F0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly((1,))
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x) -> Fraction:
        """Exact evaluation at a rational point (Horner)."""
        x = to_rational(x)
        acc = _F0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_negate(self) -> "UniPoly":
        """P(-x)."""
        return UniPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def render(self, name: str = "x") -> str:
        """Canonical text: descending powers, 'num/den' coefficients."""
        if not self.coeffs:
            return "0"
        pieces: list[str] = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mag = abs(c)
            if e == 0:
                body = _render_rational(mag)
            elif e == 1:
                body = name if mag == 1 else f"{_render_rational(mag)}*{name}"
            else:
                body = f"{name}^{e}" if mag == 1 else f"{_render_rational(mag)}*{name}^{e}"
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"UniPoly({self.render()})"


def default_names(nvars: int) -> list[str]:
    """Variable names used by the canonical text rendering: x1..x_{n-1}, z."""
    return [f"x{i + 1}" for i in range(nvars - 1)] + ["z"]


class Poly:
    """Immutable sparse multivariate polynomial with rational coefficients.

    Stored terms never have a zero coefficient; two polynomials are equal
    iff their term maps are equal.  Instances are safe to share across
    threads (all operations are pure).
    """

    __slots__ = ("nvars", "_terms", "_maxdeg")

    def __init__(self, nvars: int, _terms: dict[int, Fraction] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        self._terms = _terms if _terms is not None else {}
        self._maxdeg = max(map(_key_degree, self._terms), default=-1)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls(nvars, {0: _F1})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = to_rational(c)
        return cls(nvars, {0: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, var: int) -> "Poly":
        if not 0 <= var < nvars:
            raise IndexError(f"variable index {var} out of range for {nvars} variables")
        return cls(nvars, {1 << (FIELD_BITS * (nvars - 1 - var)): _F1})

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Sequence[int], object]) -> "Poly":
        out: dict[int, Fraction] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"monomial {exps} has wrong length for nvars={nvars}")
            c = to_rational(c)
            if not c:
                continue
            key = _pack(exps)
            acc = out.get(key, _F0) + c
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return cls(nvars, out)

    @classmethod
    def linear_form(cls, nvars: int, coeffs: Sequence[object]) -> "Poly":
        """Polynomial c_0*x1 + ... + c_{n-1}*z from a coefficient vector."""
        if len(coeffs) != nvars:
            raise ValueError("coefficient vector has wrong length")
        out: dict[int, Fraction] = {}
        for i, c in enumerate(coeffs):
            c = to_rational(c)
            if c:
                out[1 << (FIELD_BITS * (nvars - 1 - i))] = c
        return cls(nvars, out)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Yield (monomial, coefficient) pairs in descending pure-lex order."""
        for key in sorted(self._terms, reverse=True):
            yield _unpack(key, self.nvars), self._terms[key]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(_pack(tuple(exps)), _F0)

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        return self._maxdeg

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """True if all terms share one total degree (the zero poly is homogeneous)."""
        if not self._terms:
            return True
        degs = {_key_degree(k) for k in self._terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def initial_monomial(self) -> Monomial:
        """Lex-greatest monomial.  Raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no initial monomial")
        return _unpack(max(self._terms), self.nvars)

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._terms[max(self._terms)]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    __hash__ = None  # mutable-dict backed; identity hashing would be a trap

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"mismatched nvars: {self.nvars} vs {other.nvars}")

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compat(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            acc = out.get(k, _F0) + c
            if acc:
                out[k] = acc
            else:
                del out[k]
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = to_rational(other)
            if not c:
                return Poly(self.nvars)
            return Poly(self.nvars, {k: v * c for k, v in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compat(other)
        if not self._terms or not other._terms:
            return Poly(self.nvars)
        # One O(1) overflow guard covers every product monomial: each packed
        # field is bounded by the total degree, and degrees add under *.
        if self._maxdeg + other._maxdeg > FIELD_MASK:
            raise ExponentOverflowError(
                f"product degree {self._maxdeg + other._maxdeg} exceeds {FIELD_MASK}"
            )
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Fraction] = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                acc = get(k)
                if acc is None:
                    out[k] = ca * cb
                else:
                    acc = acc + ca * cb
                    if acc:
                        out[k] = acc
                    else:
                        del out[k]
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, var: int) -> "Poly":
        """Formal partial derivative with respect to variable index ``var``."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        shift = FIELD_BITS * (self.nvars - 1 - var)
        unit = 1 << shift
        out: dict[int, Fraction] = {}
        for k, c in self._terms.items():
            e = (k >> shift) & FIELD_MASK
            if e:
                out[k - unit] = c * e
        return Poly(self.nvars, out)

    def substitute(self, var: int, g: "Poly") -> "Poly":
        """Replace variable ``var`` by the polynomial ``g``, expanded."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        self._check_compat(g)
        shift = FIELD_BITS * (self.nvars - 1 - var)
        unit = 1 << shift
        # Group terms by the exponent of var, then apply Horner's rule in g
        # over the descending distinct exponents.
        by_exp: dict[int, dict[int, Fraction]] = {}
        for k, c in self._terms.items():
            e = (k >> shift) & FIELD_MASK
            by_exp.setdefault(e, {})[k - e * unit] = c
        result = Poly(self.nvars)
        prev: int | None = None
        for e in sorted(by_exp, reverse=True):
            if prev is not None:
                for _ in range(prev - e):
                    result = result * g
            result = result + Poly(self.nvars, by_exp[e])
            prev = e
        if prev:
            for _ in range(prev):
                result = result * g
        return result

    def evaluate(self, point: Sequence[object]) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        vals = [to_rational(v) for v in point]
        total = _F0
        for k, c in self._terms.items():
            term = c
            for i in range(self.nvars - 1, -1, -1):
                e = k & FIELD_MASK
                if e:
                    term *= vals[i] ** e
                k >>= FIELD_BITS
            total += term
        return total

    # -- rendering ---------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form: descending pure lex, 'num/den' coefficients."""
        if not self._terms:
            return "0"
        if names is None:
            names = default_names(self.nvars)
        pieces: list[str] = []
        for exps, c in self.terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = _render_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _render_rational(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.render()})"


def _render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- module-level operations (the public algebra API) ----------------------


def poly_add(a: Poly, b: Poly) -> Poly:
    """Termwise sum with zero terms dropped."""
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Distributive product in canonical form."""
    return a * b


def initial_monomial(f: Poly) -> Monomial:
    """The lex-greatest monomial of a nonzero polynomial."""
    return f.initial_monomial()


def partial_derivative(f: Poly, var: int) -> Poly:
    return f.partial_derivative(var)


def substitute(f: Poly, var: int, g: Poly) -> Poly:
    return f.substitute(var, g)


def division_with_remainder(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Single-divisor multivariate division under pure lex.

    Returns (q, r) with a = q*b + r and no monomial of r divisible by the
    initial monomial of b.  For a single divisor this property makes the
    remainder canonical, so r == 0 is a sound exact-divisibility test.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    a._check_compat(b)
    b_lead_key = max(b._terms)
    b_lead_c = b._terms[b_lead_key]
    b_rest = [(k, c) for k, c in b._terms.items() if k != b_lead_key]

    rem: dict[int, Fraction] = {}
    quo: dict[int, Fraction] = {}
    work = dict(a._terms)
    heap = [-k for k in work]
    heapify(heap)
    while heap:
        key = -heappop(heap)
        c = work.get(key)
        if c is None:
            continue  # stale heap entry
        del work[key]
        if _monomial_divides_key(b_lead_key, key):
            qk = key - b_lead_key
            qc = c / b_lead_c
            acc = quo.get(qk, _F0) + qc
            if acc:
                quo[qk] = acc
            else:
                quo.pop(qk, None)
            for bk, bc in b_rest:
                nk = qk + bk
                prev = work.get(nk)
                if prev is None:
                    work[nk] = -qc * bc
                    heappush(heap, -nk)
                else:
                    prev = prev - qc * bc
                    if prev:
                        work[nk] = prev
                    else:
                        del work[nk]
        else:
            rem[key] = c
    return Poly(a.nvars, quo), Poly(a.nvars, rem)


def exact_div(a: Poly, b: Poly) -> Poly:
    """Exact quotient a/b; raises DivisionNotExactError on nonzero remainder.

    A failed exact division signals a violated algebraic identity upstream;
    results are never silently truncated.
    """
    q, r = division_with_remainder(a, b)
    if not r.is_zero():
        raise DivisionNotExactError(
            f"division not exact: remainder has {len(r)} terms"
        )
    return q


def divides(b: Poly, a: Poly) -> bool:
    """True iff b divides a in the polynomial ring (divides(b, 0) is True)."""
    if b.is_zero():
        raise ZeroDivisionError("divisibility by the zero polynomial")
    if a.is_zero():
        return True
    if a.total_degree() < b.total_degree():
        return False
    _, r = division_with_remainder(a, b)
    return r.is_zero()


def elementary_symmetric(nvars: int, gens: Sequence[Poly], n: int) -> Poly:
    """Elementary symmetric polynomial sigma_n of the given generators.

    sigma_0 = 1 (also for an empty generator list).  By convention n < 0 or
    n > len(gens) yields the zero polynomial rather than an error.
    """
    if n < 0 or n > len(gens):
        return Poly.zero(nvars)
    rows = [Poly.one(nvars)] + [Poly.zero(nvars) for _ in range(n)]
    for g in gens:
        if g.nvars != nvars:
            raise ValueError("generator in a different ring")
        for i in range(min(n, len(gens)), 0, -1):
            rows[i] = rows[i] + rows[i - 1] * g
    return rows[n]


def remap_variables(f: Poly, nvars: int, mapping: Sequence[int]) -> Poly:
    """Embed f into a ring with ``nvars`` variables, sending old variable i
    to new variable mapping[i].  The mapping must be injective."""
    if len(mapping) != f.nvars:
        raise ValueError("mapping length must equal f.nvars")
    if len(set(mapping)) != len(mapping):
        raise ValueError("variable mapping must be injective")
    for m in mapping:
        if not 0 <= m < nvars:
            raise IndexError("mapped variable index out of range")
    out: dict[int, Fraction] = {}
    for k, c in f._terms.items():
        exps = _unpack(k, f.nvars)
        new = [0] * nvars
        for i, e in enumerate(exps):
            new[mapping[i]] = e
        out[_pack(new)] = c
    return Poly(nvars, out)


def product(nvars: int, factors: Iterable[Poly]) -> Poly:
    """Product of a sequence of polynomials (empty product = 1)."""
    result = Poly.one(nvars)
    for f in factors:
        result = result * f
    return result
