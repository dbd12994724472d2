"""Triangular site domain: points (i, j) with i, j >= 0 and i + j <= N.

Sites are ordered lexicographically by (i, j); the order is the row/column
convention for every matrix in the package.
"""
from typing import List, NamedTuple

from .errors import DomainError, ValidationError


class SiteIndex(NamedTuple):
    i: int
    j: int


class TriangularLattice:
    """Fixed bijection between sites (i, j) and linear matrix indices."""

    def __init__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValidationError(f"lattice order must be a nonnegative integer, got {n!r}")
        self.n = n
        self.sites = enumerate_sites(n)
        self.dim = len(self.sites)
        self._index = {site: q for q, site in enumerate(self.sites)}

    def __contains__(self, site) -> bool:
        i, j = site
        return 0 <= i and 0 <= j and i + j <= self.n

    def index_of(self, site) -> int:
        """Linear index of a site; raises DomainError outside the triangle."""
        key = SiteIndex(*site)
        try:
            return self._index[key]
        except KeyError:
            raise DomainError(f"site {tuple(site)} outside triangular domain of order {self.n}") from None

    def hypotenuse(self) -> List[SiteIndex]:
        """Boundary sites (k, n - k), k ascending."""
        return [SiteIndex(k, self.n - k) for k in range(self.n + 1)]

    def __repr__(self):
        return f"TriangularLattice(n={self.n}, dim={self.dim})"


def enumerate_sites(n: int) -> List[SiteIndex]:
    """All sites with i + j <= n, lexicographic in (i, j); (0, 0) comes first."""
    if n < 0:
        raise ValidationError(f"lattice order must be nonnegative, got {n}")
    return [SiteIndex(i, j) for i in range(n + 1) for j in range(n + 1 - i)]


def site_index(site, n: int) -> int:
    """Position of a site in enumerate_sites(n) without building the list.

    For lexicographic order the sites with first coordinate < i occupy
    sum_{a<i} (n + 1 - a) slots, then j more.
    """
    i, j = site
    if i < 0 or j < 0 or i + j > n:
        raise DomainError(f"site {tuple(site)} outside triangular domain of order {n}")
    return i * (n + 1) - i * (i - 1) // 2 + j
