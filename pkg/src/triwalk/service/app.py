"""HTTP front end: one POST route per experiment, JSON in and out.

Run with:  uvicorn triwalk.service:app

Closed-form eigensystems are cached per parameter set inside the library,
so a long-running service answers repeated evolve/pst queries for the same
model without rebuilding anything.
"""
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import TriwalkError
from . import handlers, schemas

app = FastAPI(
    title="triwalk",
    description="One-excitation dynamics and state transfer on a triangular XX lattice",
)


@app.exception_handler(TriwalkError)
async def _triwalk_error(_: Request, exc: TriwalkError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/spectrum", response_model=schemas.SpectrumResponse)
def spectrum(req: schemas.SpectrumRequest):
    return handlers.spectrum(req)


@app.post("/couplings", response_model=schemas.CouplingsResponse)
def couplings(req: schemas.CouplingsRequest):
    return handlers.couplings(req)


@app.post("/evolve", response_model=schemas.EvolveResponse, response_model_exclude_none=True)
def evolve(req: schemas.EvolveRequest):
    return handlers.evolve(req)


@app.post("/pst", response_model=schemas.PstResponse)
def pst(req: schemas.PstRequest):
    return handlers.pst(req)


@app.post("/lightcone", response_model=schemas.LightconeResponse)
def lightcone(req: schemas.LightconeRequest):
    return handlers.lightcone(req)


@app.post("/chain1d", response_model=schemas.Chain1dResponse)
def chain1d(req: schemas.Chain1dRequest):
    return handlers.chain1d(req)


@app.post("/selftest", response_model=schemas.SelftestResponse)
def selftest():
    return handlers.run_selftest()
