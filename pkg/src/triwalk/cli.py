"""Command-line front end; a thin client over the service handlers.

Subcommands: spectrum, couplings, evolve, pst, lightcone, chain1d,
selftest.  Output is a CSV or JSON table with fixed field order and fixed
float formatting, so identical configurations produce byte-identical
files.  Exit codes: 0 success, 1 validation or domain errors (one line on
stderr), 2 tolerance failures in selftest or pst.
"""
import argparse
import json
import sys

import pydantic

from .errors import ConfigError, TriwalkError
from .service import handlers, schemas
from .tables import FORMATS, Table, dumps

_CONFIG_KEYS = {
    "N": "n",
    "p": "p",
    "p1": "p1",
    "root": "root",
    "from": "from_site",
    "to": "to_site",
    "T": "time",
    "times": "times",
    "method": "method",
    "format": "fmt",
    "output": "output",
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for tolerance
    # failures here, so route usage errors through the normal error path
    def error(self, message):
        raise ConfigError(message)


def _parse_floats(value, what: str):
    if isinstance(value, (list, tuple)):
        return [float(x) for x in value]
    try:
        return [float(x) for x in str(value).split(",") if x.strip() != ""]
    except ValueError:
        raise ConfigError(f"cannot parse {what} from {value!r}") from None


def _parse_site(value, what: str):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        parts = str(value).split(",")
    if len(parts) != 2:
        raise ConfigError(f"{what} must be two integers i,j, got {value!r}")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise ConfigError(f"{what} must be two integers i,j, got {value!r}") from None


def _params_spec(args) -> schemas.ParamsSpec:
    explicit = args.p is not None
    pst_mode = args.p1 is not None or args.root is not None
    if explicit and pst_mode:
        raise ConfigError("give either --p or (--p1, --root), not both")
    if explicit:
        values = _parse_floats(args.p, "--p")
        if len(values) != 4:
            raise ConfigError(f"--p needs four comma-separated values, got {args.p!r}")
        return schemas.ParamsSpec(p=tuple(values))
    if args.p1 is None or args.root is None:
        raise ConfigError("parameters required: either --p or both --p1 and --root")
    return schemas.ParamsSpec(p1=float(args.p1), root=args.root)


def _require_n(args) -> int:
    if args.n is None:
        raise ConfigError("--N is required")
    return int(args.n)


def build_parser() -> _Parser:
    parser = _Parser(prog="triwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    def add(name: str, help_text: str, n=True, params=False, pst=False):
        p = sub.add_parser(name, help=help_text)
        if n:
            p.add_argument("--N", dest="n", type=int, default=None, help="lattice order")
        if params:
            p.add_argument("--p", default=None, help="explicit parameters p1,p2,p3,p4")
        if params or pst:
            p.add_argument("--p1", type=float, default=None, help="base transfer parameter")
            p.add_argument("--root", choices=("plus", "minus"), default=None,
                           help="ratio p2/p1 = 3 +/- 2 sqrt 2")
        p.add_argument("--format", dest="fmt", choices=FORMATS, default=None,
                       help="output format (default csv)")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument("--config", default=None, help="JSON file with default flag values")
        return p

    add("spectrum", "eigenvalues x_{s,t} = (p1+p2)s - (p3+p4)t", params=True)
    add("couplings", "couplings I, J and fields B over the lattice", params=True)
    ev = add("evolve", "amplitudes at a fixed time, or a probability scan on a grid", params=True)
    ev.add_argument("--from", dest="from_site", default=None, help="start site i,j")
    ev.add_argument("--to", dest="to_site", default=None, help="target site i,j")
    ev.add_argument("--T", dest="time", type=float, default=None, help="evolution time")
    ev.add_argument("--times", default=None, help="comma-separated ascending time grid")
    ev.add_argument("--method", choices=("spectral", "numeric"), default=None,
                    help="propagator route (default spectral)")
    add("pst", "hypotenuse distribution at the revival time vs the binomial law", pst=True)
    add("lightcone", "max |amplitude| over pairs with i+j+k+l < N at the revival time", pst=True)
    add("chain1d", "end-to-end transfer fidelity of the reference chain at T = pi")
    add("selftest", "run the invariant suite and report pass/fail per property", n=False)
    return parser


def _apply_config(args):
    if getattr(args, "config", None) is None:
        return
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {args.config}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    for key, value in doc.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        dest = _CONFIG_KEYS[key]
        if getattr(args, dest, None) is None:  # flags take precedence
            setattr(args, dest, value)


def _evolve_request(args) -> schemas.EvolveRequest:
    from_site = _parse_site(args.from_site, "--from")
    if from_site is None:
        raise ConfigError("--from is required for evolve")
    times = None
    if args.times is not None:
        times = _parse_floats(args.times, "--times")
    if (args.time is None) == (times is None):
        raise ConfigError("give exactly one of --T or --times")
    return schemas.EvolveRequest(
        n=_require_n(args),
        params=_params_spec(args),
        from_site=from_site,
        to_site=_parse_site(args.to_site, "--to"),
        time=None if args.time is None else float(args.time),
        times=times,
        method=args.method or "spectral",
    )


def _pst_request(args, cls):
    if args.p1 is None or args.root is None:
        raise ConfigError("this command runs in the transfer regime: --p1 and --root are required")
    return cls(n=_require_n(args), p1=float(args.p1), root=args.root)


def _spectrum_table(resp: schemas.SpectrumResponse) -> Table:
    out = Table(columns=["s", "t", "x"])
    for row in resp.rows:
        out.append(row.s, row.t, row.x)
    return out


def _couplings_table(resp: schemas.CouplingsResponse) -> Table:
    out = Table(columns=["i", "j", "I", "J", "B"])
    for row in resp.rows:
        out.append(row.i, row.j, row.I, row.J, row.B)
    return out


def _evolve_table(resp: schemas.EvolveResponse) -> Table:
    if resp.kind == "scan":
        out = Table(columns=["t", "probability"])
        for row in resp.scan:
            out.append(row.t, row.probability)
        return out
    out = Table(columns=["k", "l", "re", "im", "probability"])
    for row in resp.table:
        out.append(row.k, row.l, row.re, row.im, row.probability)
    return out


def _pst_table(resp: schemas.PstResponse) -> Table:
    out = Table(columns=["k", "l", "probability", "reference", "deviation"])
    for row in resp.rows:
        out.append(row.k, row.l, row.probability, row.reference, row.deviation)
    return out


def _lightcone_table(resp: schemas.LightconeResponse) -> Table:
    out = Table(columns=["n", "time", "max_violation"])
    out.append(resp.n, resp.revival_time, resp.max_violation)
    return out


def _chain1d_table(resp: schemas.Chain1dResponse) -> Table:
    out = Table(columns=["n", "time", "fidelity"])
    out.append(resp.n, resp.time, resp.fidelity)
    return out


def _selftest_table(resp: schemas.SelftestResponse) -> Table:
    out = Table(columns=["name", "status", "measured", "threshold"])
    for check in resp.checks:
        out.append(check.name, "pass" if check.passed else "fail", check.measured, check.threshold)
    return out


def _emit(table: Table, args):
    text = dumps(table, args.fmt or "csv")
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def run(argv) -> int:
    """Parse arguments, run one command, write one table; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ConfigError("a subcommand is required (see --help)")
        _apply_config(args)

        exit_code = 0
        if args.command == "spectrum":
            table = _spectrum_table(handlers.spectrum(schemas.SpectrumRequest(
                n=_require_n(args), params=_params_spec(args))))
        elif args.command == "couplings":
            table = _couplings_table(handlers.couplings(schemas.CouplingsRequest(
                n=_require_n(args), params=_params_spec(args))))
        elif args.command == "evolve":
            table = _evolve_table(handlers.evolve(_evolve_request(args)))
        elif args.command == "pst":
            resp = handlers.pst(_pst_request(args, schemas.PstRequest))
            table = _pst_table(resp)
            if not resp.passed:
                exit_code = 2
        elif args.command == "lightcone":
            table = _lightcone_table(handlers.lightcone(_pst_request(args, schemas.LightconeRequest)))
        elif args.command == "chain1d":
            table = _chain1d_table(handlers.chain1d(schemas.Chain1dRequest(n=_require_n(args))))
        elif args.command == "selftest":
            resp = handlers.run_selftest()
            table = _selftest_table(resp)
            if not resp.passed:
                exit_code = 2
        else:
            raise ConfigError(f"unknown command {args.command!r}")

        _emit(table, args)
        return exit_code
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        print(f"error: {first['msg']}", file=sys.stderr)
        return 1
    except TriwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
