"""Command-line front end.

    umbral-stats expand --stat bose-einstein --quantity w --order 5
    umbral-stats dual --stat bose-einstein
    umbral-stats compose --stat bose-einstein --stat2 fermi-dirac --m 0
    umbral-stats polyseq --stat exponential --kind conjugate --n 4
    umbral-stats spectral --stat fermi-dirac --points 1/3,1/2
    umbral-stats maxent --stat boltzmann-gibbs --energies 0,1 --energy-target 1/4
    umbral-stats verify --suite all --order 16 --seed 0
    umbral-stats oeis-check --entry lah --quantity X_of_w --sequence A000108

Default truncation order is 16, overridable per command with --order or
globally with the UMBRAL_ORDER environment variable.  Output is JSON by
default; --format csv/pretty are available for series-like payloads.
Exit status is 0 only if the requested computation (and any checks)
succeeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import catalog as cat
from . import oeis
from . import series as fps
from . import statistics as st
from . import verify as verify_mod
from .deformed_entropy import MaxentConvergenceError, maxent_solve
from .series import LogSeries, TruncatedSeries
from .umbral import (
    DeltaSeries,
    InvertibleSeries,
    associated_sequence,
    conjugate_sequence,
    poly_to_json,
    sheffer_sequence,
)

EXPAND_QUANTITIES = (
    "F",
    "z",
    "w",
    "X_of_w",
    "phi",
    "phi_in_X",
    "xi",
    "ln_phi",
    "entropy",
    "phi_entropy",
)


def default_order() -> int:
    env = os.environ.get("UMBRAL_ORDER")
    if env is not None:
        try:
            value = int(env)
            if value >= 1:
                return value
        except ValueError:
            pass
        print(f"warning: ignoring invalid UMBRAL_ORDER={env!r}", file=sys.stderr)
    return fps.DEFAULT_ORDER


def parse_params(pairs: list[str] | None) -> dict:
    params: dict = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        if "," in value:
            params[key] = [Fraction(v) for v in value.split(",") if v]
        elif key == "t":
            params[key] = [Fraction(value)]
        elif key == "p":
            params[key] = int(value)
        else:
            params[key] = Fraction(value)
    return params


def parse_rationals(text: str) -> list[Fraction]:
    return [Fraction(part) for part in text.split(",") if part]


def payload_json(value) -> object:
    if isinstance(value, TruncatedSeries):
        return fps.series_to_json(value)
    if isinstance(value, LogSeries):
        return fps.logseries_to_json(value)
    return value


def emit(record: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(record, stream, indent=1)
        stream.write("\n")
        return
    payload = record["payload"]
    if fmt == "csv":
        _emit_csv(payload, stream)
        return
    _emit_pretty(payload, stream)


def _emit_csv(payload, stream) -> None:
    if isinstance(payload, dict) and "coeffs" in payload:
        stream.write("index,coefficient\n")
        for k, c in enumerate(payload["coeffs"]):
            stream.write(f"{k},{c}\n")
    elif isinstance(payload, dict) and "plain" in payload and "log" in payload:
        stream.write("index,plain,log\n")
        plain = payload["plain"]["coeffs"]
        logc = payload["log"]["coeffs"]
        for k, (a, b) in enumerate(zip(plain, logc)):
            stream.write(f"{k},{a},{b}\n")
    elif isinstance(payload, dict) and "samples" in payload:
        stream.write("X,z,Y\n")
        for row in payload["samples"]:
            stream.write(f"{row['X']},{row['z']},{row['Y']}\n")
    elif isinstance(payload, dict) and "polynomials" in payload:
        stream.write("n,k,coefficient\n")
        for n, poly in enumerate(payload["polynomials"]):
            for k, c in enumerate(poly["coeffs"]):
                stream.write(f"{n},{k},{c}\n")
    else:
        raise ValueError("this payload has no CSV rendering; use --format json")


def _emit_pretty(payload, stream) -> None:
    if isinstance(payload, dict) and "pretty" in payload:
        stream.write(payload["pretty"] + "\n")
    else:
        json.dump(payload, stream, indent=2)
        stream.write("\n")


def _record(command: str, parameters: dict, payload, t0: float) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "payload": payload,
        "elapsed_seconds": round(time.perf_counter() - t0, 6),
    }


# -- command handlers ----------------------------------------------------------


def cmd_expand(args, stream) -> int:
    t0 = time.perf_counter()
    params = parse_params(args.param)
    entry = cat.get(args.stat)
    value = entry.quantity(args.quantity, args.order, **params)
    payload = payload_json(value)
    if isinstance(payload, dict):
        payload["pretty"] = str(value)
    if args.quantity == "phi_entropy":
        constant = entry.registered_constant
        payload["normalization"] = (
            "constant-normalized: the linear constant F(X(1)) - log X(1) is "
            + (f"registered as {constant}" if constant is not None else "not evaluated")
        )
    emit(_record("expand", {"stat": args.stat, "quantity": args.quantity,
                            "order": args.order,
                            "params": {k: str(v) for k, v in params.items()}},
                 payload, t0), args.format, stream)
    return 0


def cmd_dual(args, stream) -> int:
    t0 = time.perf_counter()
    params = parse_params(args.param)
    stat = cat.get(args.stat).build(args.order, **params)
    image = st.dual(stat)
    payload = st.statistics_to_json(image)
    emit(_record("dual", {"stat": args.stat, "order": args.order}, payload, t0),
         args.format, stream)
    return 0


def cmd_compose(args, stream) -> int:
    t0 = time.perf_counter()
    a = cat.get(args.stat).build(args.order, **parse_params(args.param))
    b = cat.get(args.stat2).build(args.order, **parse_params(args.param2))
    result = st.group_compose_m(a, b, args.m)
    payload = st.statistics_to_json(result)
    emit(_record("compose", {"stat": args.stat, "stat2": args.stat2, "m": args.m,
                             "order": args.order}, payload, t0), args.format, stream)
    return 0


def cmd_polyseq(args, stream) -> int:
    t0 = time.perf_counter()
    params = parse_params(args.param)
    stat = cat.get(args.stat).build(max(args.order, args.n), **params)
    if args.kind == "conjugate":
        seq = conjugate_sequence(DeltaSeries(stat.F), args.n)
    elif args.kind == "associated":
        seq = associated_sequence(DeltaSeries(fps.lagrange_invert(stat.F)), args.n)
    else:
        g = InvertibleSeries(TruncatedSeries(parse_rationals(args.g_coeffs))) if (
            args.g_coeffs
        ) else InvertibleSeries(fps.one(stat.order))
        seq = sheffer_sequence(g, DeltaSeries(fps.lagrange_invert(stat.F)), args.n)
    payload = {
        "polynomials": [poly_to_json(p) for p in seq],
        "pretty": "\n".join(f"p_{n} = {p}" for n, p in enumerate(seq)),
    }
    emit(_record("polyseq", {"stat": args.stat, "kind": args.kind, "n": args.n},
                 payload, t0), args.format, stream)
    return 0


def cmd_spectral(args, stream) -> int:
    t0 = time.perf_counter()
    params = parse_params(args.param)
    stat = cat.get(args.stat).build(args.order, **params)
    samples = st.spectral_samples(stat, parse_rationals(args.points))
    payload = {
        "samples": [
            {"X": str(s.X), "z": str(s.z), "Y": str(s.Y)} for s in samples
        ]
    }
    emit(_record("spectral", {"stat": args.stat, "points": args.points,
                              "order": args.order}, payload, t0), args.format, stream)
    return 0


def cmd_maxent(args, stream) -> int:
    t0 = time.perf_counter()
    params = parse_params(args.param)
    stat = cat.get(args.stat).build(args.order, **params)
    energies = [float(Fraction(e)) for e in args.energies.split(",") if e]
    try:
        sol = maxent_solve(
            stat,
            energies,
            energy_target=float(Fraction(args.energy_target)),
            number_target=float(Fraction(args.number_target)),
            a0=args.a0,
            b0=args.b0,
        )
        code = 0
    except MaxentConvergenceError as exc:
        sol = exc.last
        code = 1
    payload = {
        "a": sol.a,
        "b": sol.b,
        "p": sol.p,
        "residuals": list(sol.residuals),
        "iterations": sol.iterations,
        "converged": sol.converged,
    }
    emit(_record("maxent", {"stat": args.stat, "energies": args.energies,
                            "energy_target": args.energy_target,
                            "number_target": args.number_target},
                 payload, t0), args.format, stream)
    return code


def cmd_verify(args, stream) -> int:
    t0 = time.perf_counter()
    report = verify_mod.run(args.suite, order=args.order, seed=args.seed)
    payload = report.to_json()
    emit(_record("verify", {"suite": args.suite, "order": args.order,
                            "seed": args.seed}, payload, t0), args.format, stream)
    if not report.passed:
        for failure in report.failures():
            print(f"FAIL {failure.suite}:{failure.name} {failure.detail}",
                  file=sys.stderr)
        return 1
    return 0


def cmd_oeis_check(args, stream) -> int:
    t0 = time.perf_counter()
    check = oeis.check_entry_quantity(
        args.entry, args.quantity, args.sequence, fetch=args.fetch
    )
    payload = {
        "entry": check.entry,
        "quantity": check.quantity,
        "sequence": check.oeis_id,
        "matching_prefix": check.prefix,
        "min_prefix": check.min_prefix,
        "passed": check.passed,
        "source": check.source,
        "computed": check.computed,
        "reference": check.reference,
    }
    emit(_record("oeis-check", {"entry": args.entry, "quantity": args.quantity,
                                "mode": "fetch" if args.fetch else "offline"},
                 payload, t0), args.format, stream)
    return 0 if check.passed else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbral-stats",
        description="exact series engine for interpolating statistics, "
        "polynomial sequences, and deformed entropy",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, stat=True):
        if stat:
            p.add_argument("--stat", required=True,
                           help=f"catalog entry ({', '.join(cat.list_entries())})")
            p.add_argument("--param", action="append", metavar="K=V",
                           help="entry parameter, repeatable (e.g. --param eps=1/2)")
        p.add_argument("--order", type=int, default=default_order(),
                       help="truncation order (env UMBRAL_ORDER, default 16)")
        p.add_argument("--format", choices=("json", "csv", "pretty"),
                       default="json")

    p = sub.add_parser("expand", help="emit a truncated expansion")
    common(p)
    p.add_argument("--quantity", required=True, choices=EXPAND_QUANTITIES)
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("dual", help="the dual statistics")
    common(p)
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("compose", help="group composition of two statistics")
    common(p)
    p.add_argument("--stat2", required=True)
    p.add_argument("--param2", action="append", metavar="K=V")
    p.add_argument("--m", type=int, default=0, help="twist exponent (default 0)")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("polyseq", help="polynomial sequence of an entry")
    common(p)
    p.add_argument("--kind", required=True,
                   choices=("conjugate", "associated", "sheffer"))
    p.add_argument("--n", type=int, required=True, help="highest degree")
    p.add_argument("--g-coeffs", default="",
                   help="sheffer only: ordinary coefficients of g, e.g. 1,0,1/2")
    p.set_defaults(handler=cmd_polyseq)

    p = sub.add_parser("spectral", help="sample the plane curves z=z(X), e^Y=z(X)")
    common(p)
    p.add_argument("--points", required=True, help="comma-separated rationals")
    p.set_defaults(handler=cmd_spectral)

    p = sub.add_parser("maxent", help="stationary occupation via Newton multipliers")
    common(p)
    p.add_argument("--energies", required=True, help="comma-separated rationals")
    p.add_argument("--energy-target", required=True)
    p.add_argument("--number-target", default="1")
    p.add_argument("--a0", type=float, default=0.0)
    p.add_argument("--b0", type=float, default=0.0)
    p.set_defaults(handler=cmd_maxent)

    p = sub.add_parser("verify", help="run property/fixture suites")
    common(p, stat=False)
    p.add_argument("--suite", default="all",
                   choices=("all",) + verify_mod.SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oeis-check", help="compare a fixture against its sequence")
    common(p, stat=False)
    p.add_argument("--entry", required=True)
    p.add_argument("--quantity", required=True)
    p.add_argument("--sequence", default=None, help="expected OEIS id (optional)")
    p.add_argument("--fetch", action="store_true",
                   help="fetch the b-file over HTTP instead of embedded terms")
    p.set_defaults(handler=cmd_oeis_check)

    return parser


def main(argv: list[str] | None = None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = stream or sys.stdout
    try:
        return args.handler(args, stream)
    except (ValueError, cat.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
