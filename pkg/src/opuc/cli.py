"""Command-line entry point: ``opuc compute`` and ``opuc verify``."""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io as _io
import json
import os
import sys

import numpy as np

from . import io
from .asymptotics import szego_report
from .cmv import build_cmv, phi_zeros
from .errors import ConvergenceError, NotPositiveDefinite, OpucError, TerminalParameter
from .measure import CircleMeasure, MomentSeq, caratheodory_series, moments, schur_from_caratheodory
from .periodic import PeriodicSpec, band_structure
from .recursion import VerblunskySeq, szego_forward, verblunsky_from_moments
from .schur import schur_parameters
from .suites import SUITES, RunConfig, run_suite
from .synthesis import moments_from_verblunsky
from .szego_map import JacobiParams, geronimus_forward, geronimus_inverse

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_CONVERGE = 0, 1, 2, 3
TARGETS = ("phi", "zeros", "moments", "schur", "cmv", "bands", "jacobi", "szego-report")
OUT_ENV = "OPUC_OUT"

CSV_HELP = """CSV columns per target:
  phi           k, phi_re, phi_im           coefficients of Phi_N (z^k)
  zeros         index, re, im, modulus      zeros of Phi_N sorted by (angle, modulus)
  moments       n, re, im                   c_n = int e^{-in theta} d mu, n = 0..max-n
  schur         k, f_re, f_im, gamma_re, gamma_im
                                            Taylor coefficients of f and Schur parameters
  cmv           row, col, re, im            nonzero entries of the N x N CMV matrix
  bands         kind, x, y, mass, closed    band and gap arcs (radians)
  jacobi        k, a, b                     Jacobi parameters a_k, b_k (k from 1)
  szego-report  key, index, value           D_n, F_limit, G_limit, entropy, strong_sum
verify:         suite, name, residual, tol, passed

exit codes: 0 pass, 1 assertion failure, 2 input error, 3 non-convergence.
"""


def _c(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _alphas(obj, cfg: RunConfig) -> VerblunskySeq:
    """Verblunsky coefficients for any supported input."""
    if isinstance(obj, VerblunskySeq):
        return obj
    if isinstance(obj, JacobiParams):
        return geronimus_inverse(obj)
    c = obj if isinstance(obj, MomentSeq) else moments(obj, cfg.max_n)
    N = min(cfg.max_n, c.N)
    try:
        return verblunsky_from_moments(c, N)
    except NotPositiveDefinite:
        # finitely supported: the Schur route stops at the unimodular parameter
        f = schur_from_caratheodory(caratheodory_series(c, N))
        return schur_parameters(f, N, strict=False)


def _moments(obj, alpha: VerblunskySeq, cfg: RunConfig) -> MomentSeq:
    if isinstance(obj, CircleMeasure):
        return moments(obj, cfg.max_n)
    if isinstance(obj, MomentSeq):
        return obj
    return moments_from_verblunsky(alpha, cfg.max_n)


def compute_target(target: str, obj, cfg: RunConfig) -> tuple[dict, list, list]:
    """``(json_payload, csv_header, csv_rows)`` for one target."""
    alpha = _alphas(obj, cfg)
    N = len(alpha)
    if target == "phi":
        fam = szego_forward(alpha)
        P = fam.Phi[N]
        return ({"n": N, "Phi": [_c(x) for x in P], "Phi_star": [_c(x) for x in fam.PhiStar[N]]},
                ["k", "phi_re", "phi_im"], [[k, *_c(x)] for k, x in enumerate(P)])
    if target == "zeros":
        if N == 0:
            raise ValueError("zeros need at least one Verblunsky coefficient")
        z = phi_zeros(alpha, N)
        z = z[np.lexsort((np.round(np.abs(z), 12), np.round(np.angle(z) % (2 * np.pi), 12)))]
        z = np.where(np.abs(z) < 1e-14, 0, z)
        return ({"n": N, "zeros": [_c(x) for x in z]},
                ["index", "re", "im", "modulus"], [[j, *_c(x), float(abs(x))] for j, x in enumerate(z)])
    if target == "moments":
        c = _moments(obj, alpha, cfg)
        return c.to_json(), ["n", "re", "im"], [[n, *_c(x)] for n, x in enumerate(c.c)]
    if target == "schur":
        K = cfg.series_order
        c = _moments(obj, alpha, cfg) if not isinstance(obj, (VerblunskySeq, JacobiParams)) else moments_from_verblunsky(alpha, K + 1)
        f = schur_from_caratheodory(caratheodory_series(c, min(K + 1, c.N)))
        g = schur_parameters(f, min(N, f.order + 1), strict=False).alphas if N else np.zeros(0)
        rows = [[k, *_c(x), *(_c(g[k]) if k < len(g) else ["", ""])] for k, x in enumerate(f.coeffs)]
        return ({"f": [_c(x) for x in f.coeffs], "gammas": [_c(x) for x in g]},
                ["k", "f_re", "f_im", "gamma_re", "gamma_im"], rows)
    if target == "cmv":
        if N == 0:
            raise ValueError("cmv needs at least one Verblunsky coefficient")
        C = build_cmv(alpha, N)
        band = [(int(i), int(j), v) for i, j, v in C.band()]
        return ({"n": N, "entries": [[i, j, *_c(v)] for i, j, v in band], "unitary": bool(C.is_unitary())},
                ["row", "col", "re", "im"], [[i, j, *_c(v)] for i, j, v in band])
    if target == "bands":
        bs = band_structure(PeriodicSpec(alpha.alphas), max(cfg.grid_size, 512)).to_json()
        rows = [["band", b["x"], b["y"], b["mass"], ""] for b in bs["bands"]]
        rows += [["gap", g["x"], g["y"], "", g["closed"]] for g in bs["gaps"]]
        return bs, ["kind", "x", "y", "mass", "closed"], rows
    if target == "jacobi":
        J = obj if isinstance(obj, JacobiParams) else geronimus_forward(alpha)
        return (J.to_json(), ["k", "a", "b"],
                [[k + 1, float(a), float(b)] for k, (a, b) in enumerate(zip(J.a, J.b))])
    if target == "szego-report":
        rep = szego_report(alpha, cfg.grid_size).to_json()
        rows = [["D_n", n, d] for n, d in enumerate(rep["D_n"])]
        rows += [[k, "", rep[k]] for k in ("F_limit", "G_limit", "entropy", "strong_sum")]
        return rep, ["key", "index", "value"], rows
    raise ValueError(f"unknown target {target!r}")


def _csv(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _emit(name: str, payload: dict, header, rows, cfg: RunConfig, out: str | None) -> None:
    text = io.dumps(payload) if cfg.output_format == "json" else _csv(header, rows)
    if out is None:
        sys.stdout.write(text if cfg.output_format == "json" else f"# {name}\n{text}")
        return
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, f"{name}.{cfg.output_format}"), "w") as fh:
        fh.write(text)


def cmd_compute(args, cfg: RunConfig) -> int:
    obj = io.load(args.input)
    targets = args.target or ["phi"]
    results = {t: compute_target(t, obj, cfg) for t in targets}
    if args.out is None and cfg.output_format == "json":
        sys.stdout.write(io.dumps({t: r[0] for t, r in results.items()}))
        return EXIT_OK
    for t, (payload, header, rows) in results.items():
        _emit(t, payload, header, rows, cfg, args.out)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    names = sorted(SUITES) if args.suite in (None, "all") else [args.suite]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))} or all")
    report = {n: [c.to_json() for c in run_suite(n, cfg)] for n in names}
    ok = all(c["passed"] for checks in report.values() for c in checks)
    if cfg.output_format == "json":
        payload = {"passed": ok, "suites": report}
        _emit("verify", payload, None, None, cfg, args.out)
    else:
        rows = [[n, c["name"], c["residual"], c["tol"], c["passed"]] for n, checks in report.items() for c in checks]
        _emit("verify", {}, ["suite", "name", "residual", "tol", "passed"], rows, cfg, args.out)
    return EXIT_OK if ok else EXIT_ASSERT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opuc", description="OPUC pipelines and verification suites.",
                                 epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, help="quadrature grid size")
    common.add_argument("--order", type=int, help="power series order")
    common.add_argument("--max-n", type=int, help="number of coefficients / moments")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--samples", type=int, help="Monte Carlo samples (haar suite)")
    common.add_argument("--trials", type=int, help="random instances per suite")
    common.add_argument("--tol", type=float, help="tolerance for quadrature-based checks")
    common.add_argument("--format", choices=["json", "csv"], help="output format (default json)")
    common.add_argument("--config", help="JSON file overriding RunConfig fields; flags win over it")
    common.add_argument("--out", default=os.environ.get(OUT_ENV),
                        help=f"output directory, one file per target (default ${OUT_ENV} or stdout)")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", parents=[common], help="run pipelines on an input file",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    c.add_argument("--input", required=True,
                   help="JSON with alphas, grid_size+ac_weight, a+b, or c (detected by keys)")
    c.add_argument("--target", action="append", choices=TARGETS, help="repeatable; default phi")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite",
                       epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    v.add_argument("--suite", default="all", help=f"one of {', '.join(sorted(SUITES))}, or all")
    return ap


def make_config(args) -> RunConfig:
    fields = {}
    if args.config:
        with open(args.config) as fh:
            fields.update(json.load(fh))
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(fields) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
    flags = {"grid_size": args.grid, "series_order": args.order, "max_n": args.max_n, "seed": args.seed,
             "samples": args.samples, "trials": args.trials, "tol": args.tol, "output_format": args.format}
    fields.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(**fields)


def _fail(code: int, exc: Exception) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        if args.command == "compute":
            return cmd_compute(args, cfg)
        return cmd_verify(args, cfg)
    except (ConvergenceError, TerminalParameter, np.linalg.LinAlgError) as exc:
        return _fail(EXIT_CONVERGE, exc)
    except AssertionError as exc:
        return _fail(EXIT_ASSERT, exc)
    except (OpucError, ValueError, IndexError, KeyError, TypeError, OSError) as exc:
        return _fail(EXIT_INPUT, exc)


if __name__ == "__main__":
    sys.exit(main())
