"""Time evolution, transition amplitudes, and state-transfer experiments.

Two independent routes compute the propagator exp(-iTH) restricted to the
one-excitation sector:

* the spectral sum over the closed-form orthogonal eigenbasis W
  (`amplitude_spectral`, the authoritative path), and
* a numeric eigendecomposition of H that never touches W
  (`amplitude_numeric_oracle`).

The perfect-transfer experiment restricts parameters to p1 = p4, p2 = p3
with (p1+p2)^2 = 8 p1 p2; at the revival time pi/(p1+p2) the excitation
started at the apex (0,0) lands on the hypotenuse with binomial weights.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, RestrictionError, SizeError, ValidationError
from .krawtchouk import eigensystem_for, numeric_eigh_for, sqrt_weight_signed
from .lattice import SiteIndex, TriangularLattice
from .model import ModelParams, build_chain_hamiltonian_1d

NUMERIC_ORACLE_MAX_DIM = 5000

# roots of (p1+p2)^2 = 8 p1 p2 as ratios p2/p1
PST_ROOT_PLUS = 3.0 + 2.0 * math.sqrt(2.0)
PST_ROOT_MINUS = 3.0 - 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class PstParams:
    """Parameter pair for the perfect-transfer regime (p4 = p1, p3 = p2).

    Requires (p1+p2)^2 = 8 p1 p2, i.e. p2/p1 in {3 + 2 sqrt 2, 3 - 2 sqrt 2};
    equivalently (p1-p2)/(p1+p2) = -/+ 1/sqrt(2).
    """

    p1: float
    p2: float

    def __post_init__(self):
        if not (math.isfinite(self.p1) and self.p1 > 0 and math.isfinite(self.p2) and self.p2 > 0):
            raise RestrictionError(f"transfer parameters must be positive, got {self.p1}, {self.p2}")
        lhs = (self.p1 + self.p2) ** 2
        rhs = 8.0 * self.p1 * self.p2
        if abs(lhs - rhs) > 1e-12 * lhs:
            raise RestrictionError(
                f"(p1+p2)^2 = {lhs} but 8 p1 p2 = {rhs}; ratio p2/p1 must be 3 +/- 2 sqrt 2"
            )

    @classmethod
    def from_root(cls, p1: float, root: str) -> "PstParams":
        """Build from p1 and the root choice so the constraint holds to machine precision."""
        if root not in ("plus", "minus"):
            raise ValidationError(f"root must be 'plus' or 'minus', got {root!r}")
        ratio = PST_ROOT_PLUS if root == "plus" else PST_ROOT_MINUS
        return cls(p1=p1, p2=p1 * ratio)

    @property
    def revival_time(self) -> float:
        return math.pi / (self.p1 + self.p2)

    def model(self, n: int) -> ModelParams:
        return ModelParams(n, self.p1, self.p2, self.p2, self.p1)


@dataclass(frozen=True)
class AmplitudeTable:
    """Transition amplitudes from one site to every site at a fixed time."""

    time: float
    from_site: SiteIndex
    sites: Tuple[SiteIndex, ...]
    amplitudes: np.ndarray
    probabilities: np.ndarray

    def total_probability(self) -> float:
        return float(np.sum(self.probabilities))

    def amplitude_at(self, site) -> complex:
        return complex(self.amplitudes[list(self.sites).index(SiteIndex(*site))])


def amplitude_spectral(params: ModelParams, from_site, to_site, time: float) -> complex:
    """f_{from,to}(T) = sum over (s,t) of W_from W_to exp(-iT x_{s,t})."""
    es = eigensystem_for(params)
    qf = es.lattice.index_of(from_site)
    qt = es.lattice.index_of(to_site)
    phases = np.exp(-1j * time * es.eigenvalues)
    return complex(np.sum(es.w[qf] * es.w[qt] * phases))


def propagator_spectral(params: ModelParams, time: float) -> np.ndarray:
    """Full one-excitation propagator from the closed-form eigenbasis."""
    es = eigensystem_for(params)
    phases = np.exp(-1j * time * es.eigenvalues)
    return (es.w * phases[None, :]) @ es.w.T


def amplitude_table(params: ModelParams, from_site, time: float) -> AmplitudeTable:
    """Amplitudes from one site to every site, spectral route."""
    es = eigensystem_for(params)
    qf = es.lattice.index_of(from_site)
    phases = np.exp(-1j * time * es.eigenvalues)
    amps = (es.w[qf] * phases) @ es.w.T
    return AmplitudeTable(
        time=time,
        from_site=SiteIndex(*from_site),
        sites=tuple(es.lattice.sites),
        amplitudes=amps,
        probabilities=np.abs(amps) ** 2,
    )


def amplitude_numeric_oracle(params: ModelParams, time: float) -> np.ndarray:
    """Propagator via numeric eigendecomposition of H; shares no code with
    the closed-form route and serves as its independent check."""
    lat = TriangularLattice(params.n)
    if lat.dim > NUMERIC_ORACLE_MAX_DIM:
        raise SizeError(f"numeric propagator limited to dimension {NUMERIC_ORACLE_MAX_DIM}")
    lam, vec = numeric_eigh_for(params)
    return (vec * np.exp(-1j * time * lam)[None, :]) @ vec.T


def apex_amplitude_closed(params: ModelParams, i: int, j: int, time: float) -> complex:
    """Closed-form amplitude from the apex (0,0) to (i,j); needs p1=p4, p2=p3.

    Written in z = exp(-iT(p1+p2)).  Validated against the spectral sum
    rather than trusted; the spectral route stays authoritative.
    """
    p1, p2, p3, p4 = params.as_tuple()
    scale = max(abs(p1), abs(p2), abs(p3), abs(p4))
    if abs(p1 - p4) > 1e-12 * scale or abs(p2 - p3) > 1e-12 * scale:
        raise RestrictionError("closed-form apex amplitude requires p1 = p4 and p2 = p3")
    n = params.n
    if i < 0 or j < 0 or i + j > n:
        raise DomainError(f"site ({i}, {j}) outside triangular domain of order {n}")
    z = cmath.exp(-1j * time * (p1 + p2))
    bracket = 2.0 * p1 * p2 * (z - 1.0) ** 2 + (p1 + p2) ** 2 * z
    numerator = (
        bracket ** (n - i - j)
        * (p1 - p2) ** i
        * (p2 - p1) ** j
        * (z - 1.0) ** (i + j)
        * (p2 * z + p1) ** i
        * (p1 * z + p2) ** j
    )
    denominator = sqrt_weight_signed(i, j, params) * z ** n * (p1 + p2) ** (2 * n)
    return complex(numerator / denominator)


def pst_distribution(pst: PstParams, n: int) -> Dict[SiteIndex, float]:
    """Probabilities on the hypotenuse at the revival time, apex start.

    The excitation arrives spread over the whole boundary with total
    probability one; the expected weights are binomial, 2^-n C(n, k).
    """
    params = pst.model(n)
    table = amplitude_table(params, (0, 0), pst.revival_time)
    lat = TriangularLattice(n)
    return {
        site: float(table.probabilities[lat.index_of(site)])
        for site in lat.hypotenuse()
    }


def binomial_reference(n: int) -> Dict[SiteIndex, float]:
    """Expected hypotenuse distribution 2^-n C(n, k) at site (k, n-k)."""
    return {SiteIndex(k, n - k): math.comb(n, k) / 2.0 ** n for k in range(n + 1)}


def light_cone_check(pst: PstParams, n: int) -> float:
    """Max |f| at the revival time over site pairs with i+j+k+l < n.

    These amplitudes vanish identically in the transfer regime; the return
    value is the worst numerical violation.
    """
    params = pst.model(n)
    u = propagator_spectral(params, pst.revival_time)
    lat = TriangularLattice(n)
    level = np.array([i + j for (i, j) in lat.sites])
    mask = level[:, None] + level[None, :] < n
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(u)[mask]))


def pst_condition_check(spectrum: Sequence[float], time: float) -> Tuple[bool, List[int]]:
    """Check the spectral condition for perfect transfer at the given time.

    Every successive eigenvalue gap must equal (pi/T) M with M a positive
    odd integer, within relative tolerance 1e-9.  Returns the verdict and
    the rounded integers for each gap.
    """
    levels = np.asarray(spectrum, dtype=float)
    if levels.size < 2:
        raise ValidationError("need at least two levels to check gap structure")
    if np.any(np.diff(levels) < 0):
        raise ValidationError("spectrum must be sorted ascending")
    if not (math.isfinite(time) and time > 0):
        raise ValidationError(f"transfer time must be positive, got {time}")
    m_float = np.diff(levels) * time / math.pi
    m_int = np.rint(m_float).astype(int)
    ok = True
    for mf, mi in zip(m_float, m_int):
        if mi < 1 or mi % 2 == 0 or abs(mf - mi) > 1e-9 * mi:
            ok = False
    return ok, [int(m) for m in m_int]


def chain_pst_fidelity(n: int) -> float:
    """End-to-end transfer amplitude modulus of the reference chain at T = pi."""
    h = build_chain_hamiltonian_1d(n)
    lam, vec = np.linalg.eigh(h)
    u = (vec * np.exp(-1j * math.pi * lam)[None, :]) @ vec.T
    return float(abs(u[n, 0]))


def fidelity_scan(params: ModelParams, from_site, to_site, t_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """|f_{from,to}(t)|^2 sampled on an ascending time grid."""
    grid = np.asarray(t_grid, dtype=float)
    if grid.size == 0:
        return []
    if not np.all(np.isfinite(grid)):
        raise ValidationError("time grid must be finite")
    if np.any(np.diff(grid) < 0):
        raise ValidationError("time grid must be ascending")
    es = eigensystem_for(params)
    qf = es.lattice.index_of(from_site)
    qt = es.lattice.index_of(to_site)
    weights = es.w[qf] * es.w[qt]
    amps = np.exp(-1j * np.outer(grid, es.eigenvalues)) @ weights
    probs = np.abs(amps) ** 2
    return [(float(t), float(p)) for t, p in zip(grid, probs)]
