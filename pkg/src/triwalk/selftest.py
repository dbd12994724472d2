"""Built-in invariant suite: every library property checked at desk scale.

Each check returns a measured defect and the threshold it must stay under;
`run_selftest` evaluates all of them (in parallel when TRIWALK_THREADS asks
for it) and reports one result per property.  The CLI and the service
expose the suite as `selftest`.
"""
import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from . import dynamics, krawtchouk, model
from .lattice import TriangularLattice, enumerate_sites, site_index
from .runtime import run_parallel

_SEED = 20240817


def _random_params(rng, n) -> model.ModelParams:
    while True:
        p = rng.uniform(0.6, 1.8, size=4)
        if abs(p[0] * p[3] - p[1] * p[2]) > 0.15:
            return model.ModelParams(n, *[float(x) for x in p])


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.measured <= self.threshold


def _lattice_roundtrip() -> Tuple[float, float]:
    bad = 0
    for n in (0, 1, 2, 7, 23, 50):
        sites = enumerate_sites(n)
        if len(sites) != (n + 1) * (n + 2) // 2:
            bad += 1
        bad += sum(1 for q, s in enumerate(sites) if site_index(s, n) != q)
    return float(bad), 0.0


def _hamiltonian_symmetry() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for n in (3, 6):
        h = model.build_one_excitation_hamiltonian(_random_params(rng, n))
        worst = max(worst, float(np.max(np.abs(h - h.T))))
    return worst, 0.0


def _spectrum_linearity() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 1)
    params = _random_params(rng, 9)
    h = model.build_one_excitation_hamiltonian(params)
    lam = np.sort(np.linalg.eigvalsh(h))
    lin = np.sort([krawtchouk.eigenvalue(s, t, params) for (s, t) in TriangularLattice(9).sites])
    return float(np.max(np.abs(lam - lin)) / np.max(np.abs(lin))), 1e-8


def _sector_equivalence() -> Tuple[float, float]:
    params = model.ModelParams(2, 1.0, 2.0, 3.0, 4.0)
    full = model.build_full_hamiltonian(params)
    sz = model.total_sz_full(TriangularLattice(2).dim)
    comm = float(np.max(np.abs(full @ sz - sz @ full)))
    block = model.one_excitation_block(full, TriangularLattice(2).dim)
    h = model.build_one_excitation_hamiltonian(params)
    return max(comm, float(np.max(np.abs(block - h)))), 1e-12


def _chain_spectrum() -> Tuple[float, float]:
    n = 12
    lam = np.sort(np.linalg.eigvalsh(model.build_chain_hamiltonian_1d(n)))
    want = np.arange(n + 1) - n / 2.0
    return float(np.max(np.abs(lam - want))), 1e-10


def _orthogonality() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 2)
    es = krawtchouk.eigensystem_for(_random_params(rng, 8))
    gram = es.w.T @ es.w
    return float(np.max(np.abs(gram - np.eye(es.lattice.dim)))), 1e-9


def _eigen_relation() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 3)
    params = _random_params(rng, 8)
    es = krawtchouk.eigensystem_for(params)
    h = model.build_one_excitation_hamiltonian(params)
    err = float(np.max(np.abs(h @ es.w - es.w * es.eigenvalues[None, :])))
    return err / float(np.max(np.abs(h))), 1e-8


def _w00_normalization() -> Tuple[float, float]:
    params = model.ModelParams(6, 1.0, 2.0, 3.0, 4.0)
    total = sum(krawtchouk.w00(s, t, params) ** 2 for (s, t) in TriangularLattice(6).sites)
    return abs(total - 1.0), 1e-12


def _recurrence_residual() -> Tuple[float, float]:
    params = model.ModelParams(6, 1.0, 2.0, 3.0, 4.0)
    lat = TriangularLattice(6)
    kmat = krawtchouk.krawtchouk_matrix(params)
    worst = 0.0
    for c, (s, t) in enumerate(lat.sites):
        table = {site: float(kmat[q, c]) for q, site in enumerate(lat.sites)}
        residual = krawtchouk.recurrence_residual(params, s, t, table)
        scale = krawtchouk.recurrence_scale(params, s, t, table)
        worst = max(worst, residual / max(scale, 1e-300))
    return worst, 1e-9


def _unitarity() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 4)
    params = _random_params(rng, 6)
    worst = 0.0
    for time in rng.uniform(0.0, 10.0, size=3):
        u = dynamics.propagator_spectral(params, float(time))
        worst = max(worst, float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])))))
    return worst, 1e-10


def _oracle_equivalence() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 5)
    params = _random_params(rng, 6)
    worst = 0.0
    for time in rng.uniform(0.0, 10.0, size=3):
        u_spec = dynamics.propagator_spectral(params, float(time))
        u_num = dynamics.amplitude_numeric_oracle(params, float(time))
        worst = max(worst, float(np.max(np.abs(u_spec - u_num))))
    return worst, 1e-9


def _apex_closed_form() -> Tuple[float, float]:
    rng = np.random.default_rng(_SEED + 6)
    n = 6
    params = model.ModelParams(n, 1.0, 2.5, 2.5, 1.0)
    lat = TriangularLattice(n)
    worst = 0.0
    for time in rng.uniform(0.0, 5.0, size=3):
        for (i, j) in lat.sites:
            closed = dynamics.apex_amplitude_closed(params, i, j, float(time))
            spectral = dynamics.amplitude_spectral(params, (0, 0), (i, j), float(time))
            worst = max(worst, abs(abs(closed) - abs(spectral)))
    return worst, 1e-9


def _pst_binomial() -> Tuple[float, float]:
    n = 10
    worst = 0.0
    for root in ("plus", "minus"):
        pst = dynamics.PstParams.from_root(1.0, root)
        dist = dynamics.pst_distribution(pst, n)
        ref = dynamics.binomial_reference(n)
        worst = max(worst, max(abs(dist[site] - ref[site]) for site in dist))
        worst = max(worst, abs(sum(dist.values()) - 1.0))
    return worst, 1e-8


def _light_cone() -> Tuple[float, float]:
    worst = 0.0
    for root in ("plus", "minus"):
        pst = dynamics.PstParams.from_root(1.0, root)
        worst = max(worst, dynamics.light_cone_check(pst, 8))
    return worst, 1e-8


def _revival_periodicity() -> Tuple[float, float]:
    pst = dynamics.PstParams.from_root(1.0, "plus")
    params = pst.model(6)
    u = dynamics.propagator_spectral(params, 2.0 * math.pi / (pst.p1 + pst.p2))
    phase = u[0, 0] / abs(u[0, 0])
    return float(np.max(np.abs(u - phase * np.eye(u.shape[0])))), 1e-9


def _specialized_couplings() -> Tuple[float, float]:
    pst = dynamics.PstParams.from_root(1.0, "plus")
    n = 9
    params = pst.model(n)
    cpl = model.couplings(params)
    scale = pst.p1 + pst.p2
    anti = (pst.p1 - pst.p2) / scale
    worst = 0.0
    for (i, j) in cpl.lattice.sites:
        worst = max(worst, abs(cpl.i_at(i, j) / scale - 0.5 * math.sqrt(i * (n + 1 - i - j))))
        worst = max(worst, abs(cpl.j_at(i, j) / scale + 0.5 * math.sqrt(j * (n + 1 - i - j))))
        worst = max(worst, abs(cpl.b_at(i, j) / scale - anti * (j - i)))
        worst = max(worst, abs(cpl.i_at(i, j) + cpl.j_at(j, i)))
    return worst, 1e-12


_CHECKS: List[Tuple[str, Callable[[], Tuple[float, float]]]] = [
    ("lattice-roundtrip", _lattice_roundtrip),
    ("hamiltonian-symmetry", _hamiltonian_symmetry),
    ("spectrum-linearity", _spectrum_linearity),
    ("sector-equivalence", _sector_equivalence),
    ("chain-spectrum", _chain_spectrum),
    ("krawtchouk-orthogonality", _orthogonality),
    ("eigen-relation", _eigen_relation),
    ("w00-normalization", _w00_normalization),
    ("recurrence-residual", _recurrence_residual),
    ("unitarity", _unitarity),
    ("oracle-equivalence", _oracle_equivalence),
    ("apex-closed-form", _apex_closed_form),
    ("pst-binomial", _pst_binomial),
    ("light-cone", _light_cone),
    ("revival-periodicity", _revival_periodicity),
    ("specialized-couplings", _specialized_couplings),
]


def run_selftest() -> List[CheckResult]:
    """Run every invariant check; results keep the declaration order."""
    def make(name, fn):
        def task():
            measured, threshold = fn()
            return CheckResult(name=name, measured=measured, threshold=threshold)
        return task

    return run_parallel([make(name, fn) for name, fn in _CHECKS])
