import pytest

from triwalk.errors import DomainError, ValidationError
from triwalk.lattice import SiteIndex, TriangularLattice, enumerate_sites, site_index


def test_single_site_domain():
    assert enumerate_sites(0) == [SiteIndex(0, 0)]


def test_order_one_enumeration():
    assert enumerate_sites(1) == [SiteIndex(0, 0), SiteIndex(0, 1), SiteIndex(1, 0)]


def test_order_two_count_and_last():
    sites = enumerate_sites(2)
    assert len(sites) == 6
    assert sites[-1] == SiteIndex(2, 0)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 50])
def test_site_index_roundtrip(n):
    sites = enumerate_sites(n)
    assert len(sites) == (n + 1) * (n + 2) // 2
    for q, site in enumerate(sites):
        assert site_index(site, n) == q


def test_site_index_examples():
    assert site_index((0, 0), 5) == 0
    assert site_index((0, 1), 1) == 1
    assert site_index((2, 0), 2) == 5


def test_out_of_domain_site_rejected():
    with pytest.raises(DomainError):
        site_index((2, 2), 3)
    with pytest.raises(DomainError):
        site_index((-1, 0), 3)
    with pytest.raises(DomainError):
        TriangularLattice(2).index_of((3, 0))


def test_negative_order_rejected():
    with pytest.raises(ValidationError):
        enumerate_sites(-1)
    with pytest.raises(ValidationError):
        TriangularLattice(-2)


def test_lattice_helpers():
    lat = TriangularLattice(3)
    assert lat.dim == 10
    assert (1, 2) in lat
    assert (2, 2) not in lat
    assert lat.hypotenuse() == [SiteIndex(k, 3 - k) for k in range(4)]
    for q, site in enumerate(lat.sites):
        assert lat.index_of(site) == q
