"""Couplings, magnetic fields, and Hamiltonian matrices for the lattice model.

The model is an XX-type spin-1/2 Hamiltonian on the triangular domain with
nearest-neighbor couplings I (horizontal, between (i-1,j) and (i,j)) and
J (vertical, between (i,j-1) and (i,j)) plus an on-site field B.  It
conserves the number of up spins, so the one-excitation sector is a finite
symmetric matrix indexed by sites.  Everything here is parameterized by
four positive reals p1..p4 with p1*p4 != p2*p3.
"""
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DegeneracyError, SizeError, ValidationError
from .lattice import TriangularLattice

# largest site count for which the full 2^dim Hamiltonian may be built
FULL_HAMILTONIAN_MAX_SITES = 10


@dataclass(frozen=True)
class ModelParams:
    """Lattice order and the four coupling parameters.

    All p must be positive and finite and p1*p4 - p2*p3 must not vanish;
    the weights and the field formula are singular otherwise.
    """

    n: int
    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValidationError(f"lattice order must be a nonnegative integer, got {self.n!r}")
        for name in ("p1", "p2", "p3", "p4"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} must be positive and finite, got {value}")
        if self.p1 * self.p4 == self.p2 * self.p3:
            raise DegeneracyError(
                f"p1*p4 == p2*p3 == {self.p1 * self.p4}: field formula and weights are singular"
            )

    @property
    def S(self) -> float:
        return self.p1 + self.p2 + self.p3 + self.p4

    @property
    def delta(self) -> float:
        return self.p1 * self.p4 - self.p2 * self.p3

    def as_tuple(self):
        return (self.p1, self.p2, self.p3, self.p4)


def validate_params(n: int, p1, p2, p3, p4) -> ModelParams:
    """Validate and package model parameters; raises ValidationError/DegeneracyError."""
    return ModelParams(n, p1, p2, p3, p4)


def coupling_i(params: ModelParams, i: int, j: int) -> float:
    """Horizontal coupling I_{i,j} between (i-1,j) and (i,j); zero off the lattice."""
    n = params.n
    if i < 1 or j < 0 or i + j > n:
        return 0.0
    p1, p2, p3, p4 = params.as_tuple()
    # grouping mirrors coupling_j so that I_{i,j} == -J_{j,i} is float-exact
    # whenever p1 == p4 and p2 == p3
    radicand = params.S * (p1 * p3) * (p2 + p4) * (i * (n + 1 - i - j))
    return math.sqrt(radicand) / (p1 + p3)


def coupling_j(params: ModelParams, i: int, j: int) -> float:
    """Vertical coupling J_{i,j} between (i,j-1) and (i,j); <= 0 by convention."""
    n = params.n
    if j < 1 or i < 0 or i + j > n:
        return 0.0
    p1, p2, p3, p4 = params.as_tuple()
    radicand = params.S * (p2 * p4) * (p1 + p3) * (j * (n + 1 - i - j))
    return -math.sqrt(radicand) / (p2 + p4)


def field_b(params: ModelParams, i: int, j: int) -> float:
    """On-site magnetic field strength B_{i,j}."""
    p1, p2, p3, p4 = params.as_tuple()
    delta = params.delta
    brace = (p2 * p4) * (p1 + p3) / (p2 + p4) - (p1 * p3) * (p2 + p4) / (p1 + p3)
    return (params.n - i - j) * params.S / delta * brace + j * delta / (p2 + p4) - i * delta / (p1 + p3)


@dataclass(frozen=True)
class CouplingSet:
    """Couplings and fields tabulated over the lattice, in site order."""

    lattice: TriangularLattice
    I: np.ndarray
    J: np.ndarray
    B: np.ndarray

    def i_at(self, i: int, j: int) -> float:
        if (i, j) not in self.lattice:
            return 0.0
        return float(self.I[self.lattice.index_of((i, j))])

    def j_at(self, i: int, j: int) -> float:
        if (i, j) not in self.lattice:
            return 0.0
        return float(self.J[self.lattice.index_of((i, j))])

    def b_at(self, i: int, j: int) -> float:
        return float(self.B[self.lattice.index_of((i, j))])


def couplings(params: ModelParams) -> CouplingSet:
    """Tabulate I, J, B over the lattice of order params.n."""
    lat = TriangularLattice(params.n)
    I = np.zeros(lat.dim)
    J = np.zeros(lat.dim)
    B = np.zeros(lat.dim)
    for q, (i, j) in enumerate(lat.sites):
        I[q] = coupling_i(params, i, j)
        J[q] = coupling_j(params, i, j)
        B[q] = field_b(params, i, j)
    for arr in (I, J, B):
        arr.flags.writeable = False
    return CouplingSet(lat, I, J, B)


def build_one_excitation_hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense symmetric matrix of the one-excitation sector.

    Row structure: diagonal B_{i,j}, entry I_{i+1,j} toward (i+1,j) and
    J_{i,j+1} toward (i,j+1).  Both triangle halves are assigned from the
    same computed value, so the matrix is symmetric exactly.
    """
    lat = TriangularLattice(params.n)
    cpl = couplings(params)
    h = np.zeros((lat.dim, lat.dim))
    for q, (i, j) in enumerate(lat.sites):
        h[q, q] = cpl.B[q]
        if (i + 1, j) in lat:
            r = lat.index_of((i + 1, j))
            h[q, r] = h[r, q] = cpl.I[r]
        if (i, j + 1) in lat:
            r = lat.index_of((i, j + 1))
            h[q, r] = h[r, q] = cpl.J[r]
    return h


def build_chain_hamiltonian_1d(n: int) -> np.ndarray:
    """One-excitation matrix of the reference chain on n+1 sites.

    Tridiagonal, zero diagonal, hopping J_l = sqrt(l (n+1-l)) / 2.  Its
    spectrum is s - n/2 for s = 0..n, which supports end-to-end perfect
    transfer at time pi.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"chain order must be an integer >= 1, got {n!r}")
    h = np.zeros((n + 1, n + 1))
    for l in range(1, n + 1):
        h[l - 1, l] = h[l, l - 1] = 0.5 * math.sqrt(l * (n + 1 - l))
    return h


# --- full Hilbert-space oracle (tiny sizes only) ---------------------------

# single-site operators in the (down, up) basis: index 0 = down, 1 = up
_N_UP = np.array([[0.0, 0.0], [0.0, 1.0]])
_S_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]])   # down -> up
_S_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # up -> down
_SZ = np.array([[-1.0, 0.0], [0.0, 1.0]])
_ID2 = np.eye(2)


def _embed(ops: dict, num_sites: int) -> np.ndarray:
    """Kronecker-embed single-site 2x2 operators; site q is bit q of the basis index."""
    factors = [ops.get(q, _ID2) for q in range(num_sites - 1, -1, -1)]
    return reduce(np.kron, factors)


def total_sz_full(num_sites: int) -> np.ndarray:
    """Total magnetization operator on the full 2^num_sites space."""
    return sum(_embed({q: _SZ}, num_sites) for q in range(num_sites))


def build_full_hamiltonian(params: ModelParams) -> np.ndarray:
    """Full spin-1/2 Hamiltonian on 2^dim dimensions; oracle use only.

    Each edge contributes c * (S+ S- + S- S+), which equals the XX exchange
    (sigma^x sigma^x + sigma^y sigma^y)/2 with strength c; each site
    contributes B * n_up from the B (sigma^z + 1)/2 field term.
    """
    lat = TriangularLattice(params.n)
    if lat.dim > FULL_HAMILTONIAN_MAX_SITES:
        raise SizeError(
            f"full Hamiltonian needs 2^{lat.dim} dimensions; limit is 2^{FULL_HAMILTONIAN_MAX_SITES}"
        )
    cpl = couplings(params)
    dim_full = 2 ** lat.dim
    h = np.zeros((dim_full, dim_full))
    for q, (i, j) in enumerate(lat.sites):
        h += cpl.B[q] * _embed({q: _N_UP}, lat.dim)
        if (i + 1, j) in lat:
            r = lat.index_of((i + 1, j))
            hop = _embed({q: _S_PLUS, r: _S_MINUS}, lat.dim)
            h += cpl.I[r] * (hop + hop.T)
        if (i, j + 1) in lat:
            r = lat.index_of((i, j + 1))
            hop = _embed({q: _S_PLUS, r: _S_MINUS}, lat.dim)
            h += cpl.J[r] * (hop + hop.T)
    return h


def one_excitation_block(h_full: np.ndarray, num_sites: int) -> np.ndarray:
    """Restrict a full-space matrix to the one-up-spin sector, in site order."""
    basis = [1 << q for q in range(num_sites)]
    return h_full[np.ix_(basis, basis)]
