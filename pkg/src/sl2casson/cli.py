"""Command-line interface: ``sl2casson {seifert,brieskorn,torsion,check}``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import casson, catalog, suites
from .local_systems import CoefficientKind, transversality_check, twisted_cochain_complex
from .reps import Rep, RepError, first_violated_relator, relator_residual, zariski_dense_check
from .scalars import DEFAULT_EPS, Backend
from .torsion import ComplexError, complex_from_json, compute_torsion, sign_of

EPS_ENV = "SL2CASSON_EPS"
SIG_DIGITS = 12


class CLIError(Exception):
    pass


@dataclass
class RunConfig:
    eps: float = DEFAULT_EPS
    backend: Backend = Backend.FLOAT
    output: str | None = None
    seed: int = 0
    fmt: str = "json"

    def __post_init__(self):
        if self.backend is Backend.EXACT:
            self.eps = 0.0
        elif not self.eps > 0:
            raise CLIError("the float backend needs a positive tolerance")


# ---------------------------------------------------------------------------
# output

def _clean(x):
    """Round floats to 12 significant digits and make values JSON-friendly."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return str(x)
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "item"):
        return _clean(x.item())
    return _clean(float(x))


def render_json(report: dict) -> str:
    return json.dumps(_clean(report), sort_keys=True, ensure_ascii=False) + "\n"


def render_table(report: dict) -> str:
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            cols = sorted({c for v in val for c in v})
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(f"{c:>14}" for c in cols))
            for v in val:
                lines.append("  " + "  ".join(f"{_fmt(v.get(c)):>14}" for c in cols))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for k in sorted(val):
                lines.append(f"  {k}: {_fmt(val[k])}")
        else:
            lines.append(f"{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    v = _clean(v)
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def emit(report: dict, cfg: RunConfig) -> None:
    text = render_table(report) if cfg.fmt == "table" else render_json(report)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_seifert(args, cfg: RunConfig) -> dict:
    try:
        md = catalog.seifert(args.m, args.n)
    except catalog.SpecError as exc:
        raise CLIError(str(exc)) from exc
    grading = None if args.grading == "none" else casson.Grading(args.grading)
    report = casson.seifert_report(md, catalog.seifert_reps(args.m, args.n), grading, cfg.eps)
    report["grading"] = args.grading
    report["rep_count"] = len(report["per_rep"])
    if args.dump_manifold:
        with open(args.dump_manifold, "w", encoding="utf-8") as fh:
            fh.write(catalog.dump_json(md))
    return report


def _load_rep(path: str) -> Rep:
    try:
        with open(path, encoding="utf-8") as fh:
            return Rep.from_json(fh.read())
    except OSError as exc:
        raise CLIError(f"cannot read representation file: {exc}") from exc


def cmd_brieskorn(args, cfg: RunConfig) -> dict:
    try:
        md = catalog.brieskorn(args.m, args.p, args.q)
        count = catalog.brieskorn_count(args.m, args.p, args.q)
    except catalog.SpecError as exc:
        raise CLIError(str(exc)) from exc
    report = {"manifold": md.name, "count": count, "genus": md.genus,
              "d": md.params["d"], "generators": md.presentation.n_gens}
    if args.dump_manifold:
        with open(args.dump_manifold, "w", encoding="utf-8") as fh:
            fh.write(catalog.dump_json(md))
    if args.rep is None:
        return report
    rho = _load_rep(args.rep)
    if rho.n_gens != md.presentation.n_gens:
        raise CLIError(f"representation has {rho.n_gens} images, {md.name} has {md.presentation.n_gens} generators")
    relator_eps = max(cfg.eps, args.relator_eps)
    bad = first_violated_relator(md.presentation, rho, relator_eps)
    if bad is not None:
        raise CLIError(f"representation violates relator r{bad + 1} = {md.presentation.relators[bad]}")
    rep = {"relator_residual": relator_residual(md.presentation, rho),
           "zariski_dense": zariski_dense_check(rho.images, cfg.eps)}
    if not transversality_check(md.chain, rho, cfg.eps):
        rep["transversal"] = False
    else:
        tau = casson.refined_torsion_adjoint(md, rho, cfg.eps)
        rep.update({"transversal": True, "torsion": tau, "sign": sign_of(tau),
                    "epsilon": (-1) ** md.genus * sign_of(tau)})
        if rho.dtype is float:
            rep["cs24"] = float(casson.cs24_grade(md, rho))
    std = twisted_cochain_complex(md.chain, rho, CoefficientKind.STANDARD2, relator_eps, check_relators=False)
    if std.is_acyclic():
        rep["torsion_standard"] = compute_torsion(std)
    report["rep"] = rep
    return report


def cmd_torsion(args, cfg: RunConfig) -> dict:
    try:
        with open(args.complex, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CLIError(f"cannot read complex file: {exc}") from exc
    backend = Backend(args.backend) if args.backend else None
    C = complex_from_json(data, backend)
    if C.backend is Backend.FLOAT:
        C.eps = cfg.eps
    if C.cohomology is None and not C.is_acyclic():
        raise CLIError(f"complex is not acyclic (betti {C.betti()}); supply cohomology bases")
    T = compute_torsion(C)
    return {"torsion": T, "backend": C.backend.value, "dims": C.dims, "betti": C.betti()}


def cmd_check(args, cfg: RunConfig) -> dict:
    fn = suites.SUITES[args.suite]
    rep = fn(args.seed) if args.trials is None else fn(args.seed, args.trials)
    return {"suite": rep.name, "seed": args.seed, "passed": rep.passed, "total": rep.total,
            "ok": rep.ok, "failures": [str(f) for f in rep.failures[:10]]}


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    env_eps = os.environ.get(EPS_ENV)
    default_eps = float(env_eps) if env_eps else DEFAULT_EPS
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=default_eps,
                        help=f"rank/relator tolerance (default {default_eps:g}; env {EPS_ENV})")
    common.add_argument("--format", choices=["json", "table"], default="json", dest="fmt")
    common.add_argument("--output", "-o", help="write the report to this file")

    p = argparse.ArgumentParser(prog="sl2casson", description="Torsions and SL2(R)-Casson invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seifert", parents=[common], help="Seifert manifolds M_{m,n}")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--grading", choices=["cs24", "torsion", "none"], default="cs24")
    s.add_argument("--dump-manifold", metavar="FILE")
    s.set_defaults(func=cmd_seifert)

    b = sub.add_parser("brieskorn", parents=[common], help="Brieskorn spheres Sigma(m,p,q)")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--rep", metavar="FILE", help='representation JSON {"gens": [[[a,b],[c,d]], ...]}')
    b.add_argument("--relator-eps", type=float, default=1e-8,
                   help="relator tolerance for user-supplied representations")
    b.add_argument("--dump-manifold", metavar="FILE")
    b.set_defaults(func=cmd_brieskorn)

    t = sub.add_parser("torsion", parents=[common], help="torsion of a based complex given as JSON")
    t.add_argument("--complex", required=True, metavar="FILE")
    t.add_argument("--backend", choices=["exact", "float"])
    t.set_defaults(func=cmd_torsion)

    c = sub.add_parser("check", parents=[common], help="randomized property suites")
    c.add_argument("--suite", choices=sorted(suites.SUITES), required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int)
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        backend = Backend(getattr(args, "backend", None) or "float")
        cfg = RunConfig(args.eps, backend, args.output, getattr(args, "seed", 0), args.fmt)
        report = args.func(args, cfg)
        emit(report, cfg)
    except (CLIError, catalog.SpecError, RepError, ComplexError, casson.TransversalityError, ValueError) as exc:
        print(f"sl2casson: error: {exc}", file=sys.stderr)
        return 1
    if args.command == "check" and not report["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
