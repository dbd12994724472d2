"""Command implementations shared by the HTTP routes and the CLI.

Each handler takes a validated request model and returns a response model;
library errors (TriwalkError) propagate to the caller, which maps them to
an HTTP status or an exit code.
"""
import math

import numpy as np

from .. import dynamics, model, selftest
from ..krawtchouk import eigenvalue
from ..lattice import TriangularLattice
from . import schemas

PST_TOLERANCE = 1e-8
LIGHTCONE_TOLERANCE = 1e-8


def spectrum(req: schemas.SpectrumRequest) -> schemas.SpectrumResponse:
    params = req.params.model_params(req.n)
    rows = [
        schemas.SpectrumRow(s=s, t=t, x=eigenvalue(s, t, params))
        for t in range(req.n + 1)
        for s in range(req.n + 1 - t)
    ]
    return schemas.SpectrumResponse(n=req.n, rows=rows)


def couplings(req: schemas.CouplingsRequest) -> schemas.CouplingsResponse:
    params = req.params.model_params(req.n)
    cpl = model.couplings(params)
    rows = [
        schemas.CouplingsRow(i=i, j=j, I=cpl.i_at(i, j), J=cpl.j_at(i, j), B=cpl.b_at(i, j))
        for (i, j) in cpl.lattice.sites
    ]
    return schemas.CouplingsResponse(n=req.n, rows=rows)


def evolve(req: schemas.EvolveRequest) -> schemas.EvolveResponse:
    params = req.params.model_params(req.n)
    lat = TriangularLattice(req.n)
    qf = lat.index_of(req.from_site)

    if req.times is not None:
        if req.method == "numeric":
            qt = lat.index_of(req.to_site)
            rows = []
            for t in req.times:
                u = dynamics.amplitude_numeric_oracle(params, float(t))
                rows.append(schemas.ScanRow(t=float(t), probability=float(abs(u[qf, qt]) ** 2)))
        else:
            scan = dynamics.fidelity_scan(params, req.from_site, req.to_site, req.times)
            rows = [schemas.ScanRow(t=t, probability=p) for t, p in scan]
        return schemas.EvolveResponse(kind="scan", scan=rows)

    time = float(req.time)
    if req.method == "numeric":
        u = dynamics.amplitude_numeric_oracle(params, time)
        amps = u[qf]
    else:
        amps = dynamics.amplitude_table(params, req.from_site, time).amplitudes
    probs = np.abs(amps) ** 2

    if req.to_site is not None:
        targets = [lat.index_of(req.to_site)]
    else:
        targets = range(lat.dim)
    rows = [
        schemas.AmplitudeRow(
            k=lat.sites[q].i,
            l=lat.sites[q].j,
            re=float(amps[q].real),
            im=float(amps[q].imag),
            probability=float(probs[q]),
        )
        for q in targets
    ]
    return schemas.EvolveResponse(
        kind="table", time=time, table=rows, total_probability=float(np.sum(probs))
    )


def pst(req: schemas.PstRequest) -> schemas.PstResponse:
    pst_params = dynamics.PstParams.from_root(req.p1, req.root)
    dist = dynamics.pst_distribution(pst_params, req.n)
    ref = dynamics.binomial_reference(req.n)
    rows = []
    for site in sorted(dist, key=lambda s: s.i):
        deviation = abs(dist[site] - ref[site])
        rows.append(
            schemas.PstRow(
                k=site.i, l=site.j,
                probability=dist[site], reference=ref[site], deviation=deviation,
            )
        )
    max_dev = max(row.deviation for row in rows)
    total = sum(row.probability for row in rows)
    passed = max_dev < PST_TOLERANCE and abs(total - 1.0) < 1e-10
    return schemas.PstResponse(
        n=req.n,
        revival_time=pst_params.revival_time,
        rows=rows,
        max_deviation=max_dev,
        total_probability=total,
        passed=passed,
    )


def lightcone(req: schemas.LightconeRequest) -> schemas.LightconeResponse:
    pst_params = dynamics.PstParams.from_root(req.p1, req.root)
    violation = dynamics.light_cone_check(pst_params, req.n)
    return schemas.LightconeResponse(
        n=req.n,
        revival_time=pst_params.revival_time,
        max_violation=violation,
        passed=violation < LIGHTCONE_TOLERANCE,
    )


def chain1d(req: schemas.Chain1dRequest) -> schemas.Chain1dResponse:
    return schemas.Chain1dResponse(
        n=req.n, time=math.pi, fidelity=dynamics.chain_pst_fidelity(req.n)
    )


def run_selftest() -> schemas.SelftestResponse:
    results = selftest.run_selftest()
    checks = [
        schemas.SelftestCheck(
            name=r.name, passed=r.passed, measured=r.measured, threshold=r.threshold
        )
        for r in results
    ]
    return schemas.SelftestResponse(checks=checks, passed=all(c.passed for c in checks))
