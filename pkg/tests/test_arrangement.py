import pytest

from shidcone.arrangement import (
    LinearForm,
    defining_poly,
    forms_json,
    shi_d_cone,
)
from shidcone.exactpoly import Poly, divides, exact_div


def test_ell2_forms():
    arr = shi_d_cone(2)
    assert len(arr.forms) == 5
    assert arr.h == 2
    texts = [f.text() for f in arr.forms]
    assert texts == ["z", "x1 + x2", "x1 + x2 - z", "x1 - x2", "x1 - x2 - z"]


def test_ell3_count():
    assert len(shi_d_cone(3).forms) == 13


def test_ell4_coxeter_number():
    assert shi_d_cone(4).h == 6


def test_form_count_formula():
    for ell in (2, 3, 4, 5, 6):
        assert len(shi_d_cone(ell).forms) == 2 * ell * (ell - 1) + 1


def test_invalid_rank():
    with pytest.raises(ValueError):
        shi_d_cone(1)


def test_forms_pairwise_nonproportional():
    for ell in (2, 3, 4):
        arr = shi_d_cone(ell)
        assert len({f.coeffs for f in arr.forms}) == len(arr.forms)


def test_linear_form_validation():
    with pytest.raises(ValueError):
        LinearForm((0, 0, 0))
    with pytest.raises(ValueError):
        LinearForm((2, 0, 0))  # not normalized


def test_defining_poly_ell2():
    arr = shi_d_cone(2)
    q = defining_poly(arr)
    n = 3
    x1, x2, z = (Poly.variable(n, i) for i in range(3))
    expected = z * (x1 + x2) * (x1 - x2) * (x1 + x2 - z) * (x1 - x2 - z)
    assert q == expected
    assert q.is_homogeneous(5)


def test_defining_poly_degree_ell3():
    arr = shi_d_cone(3)
    q = defining_poly(arr)
    assert q.total_degree() == 13
    assert q.is_homogeneous(13)


def test_q_over_z_degree():
    for ell in (2, 3):
        arr = shi_d_cone(ell)
        q = defining_poly(arr)
        z = Poly.variable(arr.nvars, arr.nvars - 1)
        assert exact_div(q, z).total_degree() == 2 * ell * (ell - 1)


def test_q_squarefree():
    for ell in (2, 3):
        arr = shi_d_cone(ell)
        q = defining_poly(arr)
        for form in arr.forms:
            fp = form.poly()
            quotient = exact_div(q, fp)
            assert not divides(fp, quotient)


def test_forms_json():
    payload = forms_json(shi_d_cone(2))
    assert payload[0]["text"] == "z"
    assert payload[0]["coeffs"] == [
        {"num": "0", "den": "1"},
        {"num": "0", "den": "1"},
        {"num": "1", "den": "1"},
    ]
    assert payload[2]["text"] == "x1 + x2 - z"


def test_every_form_vanishes_somewhere():
    arr = shi_d_cone(3)
    for form in arr.forms:
        fp = form.poly()
        # the point with the lex-leading variable solved is a nonzero zero
        s = next(i for i, c in enumerate(form.coeffs) if c)
        point = [1] * arr.nvars
        point[s] = -sum(c for i, c in enumerate(form.coeffs) if i != s)
        assert fp.evaluate(point) == 0
        assert any(point)
