"""``synaptica`` command line: analyze elements, query the projection lattice, run audits.

Exit codes::

    0  success
    1  at least one audited law failed (the report is still printed)
    2  unreadable or invalid input / bad arguments
    3  matrix is not symmetric
    4  lattice input is not a projection

Element files are JSON::

    {"model": "matrix", "dim": n, "data": [n*n reals, row-major]}
    {"model": "setfn", "universe": n, "field": [[points], ...], "values": [n reals]}

``field`` lists subsets that generate the field (a complete list of members
is accepted too).  ``$SYNAPTICA_TOL_SCALE`` multiplies every tolerance;
``audit`` ignores it unless ``--allow-tol-scale`` is given.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import calculus, lattice, spectral
from .core import (
    DEFAULT_TOL,
    Element,
    NotMeasurableError,
    NotProjectionError,
    NotSymmetricError,
    Tolerances,
    as_projection,
    carrier,
    tolerances_from_env,
)
from .matrix_model import MatrixModel
from .setfn_model import SetFnModel, field_generate

EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_USAGE = 2
EXIT_NOT_SYMMETRIC = 3
EXIT_NOT_PROJECTION = 4


class InputError(Exception):
    """The element file could not be read or does not describe a valid element."""


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _sig(x: float, digits: int = 6) -> float:
    return float(f"{x:.{digits}g}")


def _matrix(e: Element) -> list:
    return np.vectorize(_sig)(e.data).tolist() if e.data.size else e.data.tolist()


# -- element files ----------------------------------------------------------------


def parse_element(doc: dict, tol: Tolerances = DEFAULT_TOL) -> Element:
    if not isinstance(doc, dict):
        raise InputError("element file must hold a JSON object")
    kind = doc.get("model")
    try:
        if kind == "matrix":
            n = doc["dim"]
            data = doc["data"]
            if not isinstance(n, int) or n < 1:
                raise InputError("dim must be a positive integer")
            arr = np.asarray(data, dtype=float)
            if arr.size != n * n:
                raise InputError(f"data must hold dim^2 = {n * n} numbers, got {arr.size}")
            return MatrixModel(n, tol).element(arr.reshape(n, n))
        if kind == "setfn":
            n = doc["universe"]
            if not isinstance(n, int) or n < 1:
                raise InputError("universe must be a positive integer")
            gens = [list(map(int, s)) for s in doc.get("field", [])]
            for s in gens:
                if any(x < 0 or x >= n for x in s):
                    raise InputError("field subsets must lie in {0..universe-1}")
            values = np.asarray(doc["values"], dtype=float)
            if values.shape != (n,):
                raise InputError(f"values must hold {n} numbers")
            return SetFnModel(field_generate(n, gens), tol).element(values)
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (NotSymmetricError, InputError)):
            raise
        if isinstance(exc, NotMeasurableError):
            raise InputError(str(exc)) from None
        raise InputError(f"malformed element: {exc}") from None
    raise InputError("model must be 'matrix' or 'setfn'")


def load_element(path: str, tol: Tolerances = DEFAULT_TOL) -> Element:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_element(doc, tol)


# -- analyze ----------------------------------------------------------------------


def analyze(a: Element, full: bool = False) -> dict:
    lo, hi = spectral.spectral_bounds(a)
    res = spectral.spectral_resolution(a)
    pol = calculus.polar(a)
    dec = spectral.simple_decompose(a)
    out = {
        "model": a.model.name,
        "dim": a.model.dim,
        "L": lo,
        "U": hi,
        "norm": a.model.norm(a),
        "spectrum": [float(x) for x in spectral.spectrum(a)],
        "carrier_rank": lattice.rank(carrier(a)),
        "polar_residuals": pol.residuals(),
        "breakpoints": [
            {"lambda": lam, "rank_p": lattice.rank(p), "rank_d": lattice.rank(d)}
            for lam, p, d in zip(res.breakpoints, res.projections_at, res.eigenprojections_at)
        ],
        "simple_decomposition": [
            {"alpha": alpha, "rank": lattice.rank(u)} for alpha, u in zip(dec.coefficients, dec.projections)
        ],
    }
    if full:
        out["matrices"] = {
            "element": _matrix(a),
            "carrier": _matrix(carrier(a)),
            "absolute": _matrix(pol.absolute),
            "signum": _matrix(pol.signum),
            "p": [_matrix(p) for p in res.projections_at],
            "d": [_matrix(d) for d in res.eigenprojections_at],
        }
    return out


def render_analysis(r: dict) -> str:
    lines = [
        f"model      {r['model']} (dim {r['dim']})",
        f"L          {r['L']:.6g}",
        f"U          {r['U']:.6g}",
        f"norm       {r['norm']:.6g}",
        "spectrum   " + ", ".join(f"{x:.6g}" for x in r["spectrum"]),
        f"carrier    rank {r['carrier_rank']}",
        "polar residuals",
    ]
    lines += [f"  {k:<14} {v:.3g}" for k, v in r["polar_residuals"].items()]
    lines.append("breakpoints")
    lines.append(f"  {'lambda':>12}  {'rank p':>6}  {'rank d':>6}")
    lines += [f"  {b['lambda']:>12.6g}  {b['rank_p']:>6}  {b['rank_d']:>6}" for b in r["breakpoints"]]
    lines.append("simple decomposition")
    lines += [f"  {t['alpha']:>12.6g} x projection of rank {t['rank']}" for t in r["simple_decomposition"]]
    if "matrices" in r:
        for name in ("element", "carrier", "absolute", "signum"):
            lines.append(f"{name}:")
            lines.append(_render_matrix(r["matrices"][name]))
        for i, (p, d) in enumerate(zip(r["matrices"]["p"], r["matrices"]["d"])):
            lam = r["breakpoints"][i]["lambda"]
            lines.append(f"p at {lam:.6g}:")
            lines.append(_render_matrix(p))
            lines.append(f"d at {lam:.6g}:")
            lines.append(_render_matrix(d))
    return "\n".join(lines) + "\n"


def _render_matrix(m) -> str:
    rows = m if isinstance(m[0], list) else [m]
    return "\n".join("  " + " ".join(f"{x:>12.6g}" for x in row) for row in rows)


# -- lattice ----------------------------------------------------------------------


def lattice_query(p: Element, q: Element, op: str) -> dict:
    p, q = as_projection(p), as_projection(q)
    out: dict = {"op": op, "sasaki_identity_residual": lattice.sasaki_identity_residual(p, q)}
    if op == "compatible":
        out["result"] = lattice.compatible(p, q)
        return out
    fn = {"meet": lattice.meet, "join": lattice.join, "sasaki": lattice.sasaki_projection}[op]
    r = fn(p, q)
    out["rank"] = lattice.rank(r)
    out["result"] = _matrix(r)
    return out


def render_lattice(r: dict) -> str:
    lines = [f"op         {r['op']}"]
    if isinstance(r["result"], bool):
        lines.append(f"result     {'true' if r['result'] else 'false'}")
    else:
        lines.append(f"rank       {r['rank']}")
        lines.append("projection")
        lines.append(_render_matrix(r["result"]))
    lines.append(f"Sasaki identity residual  {r['sasaki_identity_residual']:.3g}")
    return "\n".join(lines) + "\n"


# -- command dispatch -------------------------------------------------------------


def _dims(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a dimension list: {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="synaptica", description="Synaptic-algebra kernel: analysis, lattice queries, audits.")
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="spectral and polar analysis of one element")
    an.add_argument("file")
    an.add_argument("--json", action="store_true", help="emit one JSON object")
    an.add_argument("--full", action="store_true", help="include matrices (6 significant digits)")

    la = sub.add_parser("lattice", help="meet/join/Sasaki projection/compatibility of two projections")
    la.add_argument("p")
    la.add_argument("q")
    la.add_argument("--op", required=True, choices=["meet", "join", "sasaki", "compatible"])
    la.add_argument("--json", action="store_true")

    au = sub.add_parser("audit", help="randomized audit of the axioms and theorems")
    au.add_argument("--model", required=True, choices=["matrix", "setfn"])
    au.add_argument("--dim", required=True, type=_dims, nargs="+",
                    help="dimensions (universe sizes), space or comma separated")
    au.add_argument("--trials", required=True, type=int)
    au.add_argument("--seed", required=True, type=int)
    au.add_argument("--json", action="store_true")
    au.add_argument("--allow-tol-scale", action="store_true", help="honour SYNAPTICA_TOL_SCALE")
    au.add_argument("--inject-fault", metavar="NAME", help="run with a documented fault (see --list-faults)")
    au.add_argument("--list-faults", action="store_true", help="list the documented faults and exit")
    au.add_argument("--shrink", action="store_true", help="shrink each counterexample before reporting")
    return ap


def _env_tolerances() -> Tolerances:
    try:
        return tolerances_from_env()
    except ValueError as exc:
        raise InputError(f"bad SYNAPTICA_TOL_SCALE: {exc}") from None


def _cmd_analyze(args, out) -> int:
    a = load_element(args.file, _env_tolerances())
    r = analyze(a, full=args.full)
    out.write(_dump(r) if args.json else render_analysis(r))
    return EXIT_OK


def _cmd_lattice(args, out) -> int:
    tol = _env_tolerances()
    p, q = load_element(args.p, tol), load_element(args.q, tol)
    if p.model != q.model:
        raise InputError("p and q must belong to the same model")
    r = lattice_query(p, q, args.op)
    out.write(_dump(r) if args.json else render_lattice(r))
    return EXIT_OK


def _cmd_audit(args, out) -> int:
    from .audit import FAULTS, audit, counterexample_shrink, inject

    args.dim = [d for group in args.dim for d in group]
    if args.trials < 1 or not args.dim or any(d < 1 for d in args.dim):
        raise InputError("--trials and --dim must be positive")
    tol = _env_tolerances() if args.allow_tol_scale else DEFAULT_TOL
    if args.inject_fault is not None and args.inject_fault not in FAULTS:
        raise InputError(f"unknown fault {args.inject_fault!r}; known: {', '.join(FAULTS)}")

    def run():
        rep = audit(args.model, args.dim, args.trials, args.seed, tol=tol)
        if args.shrink:
            for r in rep.laws:
                if r.counterexample is not None:
                    r.counterexample = counterexample_shrink(r.counterexample)
        return rep

    if args.inject_fault is None:
        report = run()
    else:
        with inject(args.inject_fault):
            report = run()
    out.write(report.to_json() if args.json else report.table() + "\n")
    if not report.ok:
        print("failing laws: " + ", ".join(report.failing_laws()), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_LAW_FAILURE


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = _parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv[:1] == ["audit"] and "--list-faults" in argv:
        from .audit import FAULTS

        for f in FAULTS.values():
            out.write(f"{f.name:28s} {f.description}\n")
        return EXIT_OK
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"analyze": _cmd_analyze, "lattice": _cmd_lattice, "audit": _cmd_audit}[args.command]
    try:
        return handler(args, out)
    except NotSymmetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SYMMETRIC
    except NotProjectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PROJECTION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
