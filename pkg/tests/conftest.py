import pytest

from shidcone.shi_basis import basis

_basis_cache: dict[int, list] = {}


@pytest.fixture(scope="session")
def cached_basis():
    """Share constructed bases across the suite (construction is pure and
    deterministic, so reuse is sound)."""

    def get(ell: int):
        if ell not in _basis_cache:
            _basis_cache[ell] = basis(ell)
        return _basis_cache[ell]

    return get
