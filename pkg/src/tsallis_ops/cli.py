"""Command line: ``verify``, ``replay``, ``eval`` and ``gen``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import SCHEMA_VERSION, __version__, entropies, scalar
from .entropies import OperatorPair
from .generate import GenSpec, random_certified_pair, random_ratio_k_instance, random_spd
from .report import FORMATS, ConfigError, RunConfig, persist, run_suite, serialize_report
from .serialize import MatrixFormatError, case_from_dict, matrix_from_json, matrix_to_json, read_json, write_json
from .theorems import DEFAULT_V_GRID, PreconditionError, QuadratureError, check_case

SEED_ENV = "TSALLIS_OPS_SEED"

SCALAR_FNS = {
    "ln_v": lambda a: scalar.ln_v(a.x, a.v),
    "exp_v": lambda a: scalar.exp_v(a.x, a.v),
    "xi": lambda a: scalar.xi(a.t, a.m, a.M),
    "psi": lambda a: scalar.psi(a.t, a.m, a.M),
    "m_v": lambda a: scalar.m_v(a.x, a.v),
    "M_v": lambda a: scalar.M_v(a.x, a.v),
    "kantorovich": lambda a: scalar.kantorovich(a.x),
    "generalized_kantorovich": lambda a: scalar.generalized_kantorovich(a.m, a.M, a.v),
    "g_remark": lambda a: scalar.g_remark(a.v, a.x),
    "g_remark_minimum": lambda a: dict(zip(("x", "value"), scalar.g_remark_minimum(a.v))),
    "hermite_f": lambda a: scalar.hermite_f(a.t, a.v),
    "tangent_gap": lambda a: scalar.tangent_gap(a.s, a.t, a.v),
    "compare_fv": lambda a: scalar.compare_fv(a.s, a.t, a.v)._asdict(),
    "classical_entropies": lambda a: scalar.classical_entropies(
        _floats(a.svec), _floats(a.tvec), a.v)._asdict(),
}

MATRIX_FNS = {
    "natural_mean": lambda p, a: entropies.natural_mean(p, a.v),
    "relative_entropy": lambda p, a: entropies.relative_entropy(p),
    "tsallis": lambda p, a: entropies.tsallis_entropy(p, a.v),
    "exp_entropy": lambda p, a: entropies.exp_entropy(p, a.v),
    "exp_entropy_limit": lambda p, a: entropies.exp_entropy_limit(p),
}


def _floats(text: str | None) -> list[float]:
    if not text:
        return []
    return [float(x) for x in text.split(",")]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "42"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsallis-ops", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"tsallis-ops {__version__} (schema {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run inequality suites over random instances")
    v.add_argument("--suite", default="all", help="comma-separated inequality ids, or 'all'")
    v.add_argument("--dims", default="2,3,4,8")
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--v-grid", default=",".join(f"{x:g}" for x in DEFAULT_V_GRID))
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--quad-nodes", type=int, default=32)
    v.add_argument("--cond-max", type=float, default=1e4)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--format", choices=FORMATS, default="text")
    v.add_argument("--out", default=None, help="write the report here (failing cases go to <stem>_cases/)")
    v.add_argument("--replay", default=None, metavar="CASE_JSON", help="re-check one persisted case")

    r = sub.add_parser("replay", help="re-check one persisted case")
    r.add_argument("case")
    r.add_argument("--format", choices=("json", "text"), default="text")

    e = sub.add_parser("eval", help="evaluate one scalar or operator function")
    e.add_argument("--fn", required=True, choices=sorted(SCALAR_FNS) + sorted(MATRIX_FNS))
    for name in ("x", "v", "t", "s", "m", "M"):
        e.add_argument(f"--{name}", type=float)
    e.add_argument("--svec", help="comma-separated vector for classical_entropies")
    e.add_argument("--tvec")
    e.add_argument("--A", help="matrix JSON file")
    e.add_argument("--B", help="matrix JSON file")
    e.add_argument("--format", choices=("json", "text"), default="text")

    g = sub.add_parser("gen", help="emit random instances as matrix JSON")
    g.add_argument("--kind", choices=("spd", "pair", "ratio-k"), default="pair")
    g.add_argument("--dim", type=int, default=4)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--index", type=int, default=0)
    g.add_argument("--cond-max", type=float, default=1e4)
    g.add_argument("--m", type=float, default=0.5)
    g.add_argument("--M", type=float, default=2.0)
    g.add_argument("--v", type=float, default=None)
    g.add_argument("--out-dir", default=None, help="write a.json, b.json (c.json); default prints to stdout")
    return parser


def _replay(path: str, fmt: str) -> int:
    try:
        case = case_from_dict(read_json(path))
        verdict = check_case(case)
    except (PreconditionError, QuadratureError, MatrixFormatError, ValueError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 2
    if fmt == "json":
        print(json.dumps(verdict.to_dict(), indent=1))
    else:
        print(f"{verdict.id}: {'holds' if verdict.overall_holds else 'VIOLATED'}")
        for i, lv in enumerate(verdict.links):
            print(f"  {verdict.labels[i]}  <=  {verdict.labels[i + 1]}: margin={lv.margin!r} "
                  f"scale={lv.scale!r} {'ok' if lv.holds else 'FAIL'}")
    return 0 if verdict.overall_holds else 1


def cmd_verify(args) -> int:
    if args.replay:
        return _replay(args.replay, "json" if args.format == "json" else "text")
    try:
        config = RunConfig(
            suites=[s.strip() for s in args.suite.split(",") if s.strip()],
            dims=_ints(args.dims),
            trials=args.trials,
            v_grid=_floats(args.v_grid),
            seed=args.seed if args.seed is not None else _default_seed(),
            tol=args.tol,
            quad_nodes=args.quad_nodes,
            cond_max=args.cond_max,
            format=args.format,
            out=args.out,
            workers=args.workers,
        )
        report = run_suite(config)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        persist(report, args.out, args.format)
        print(f"report written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(serialize_report(report, args.format).decode())
    return report.exit_code


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def cmd_eval(args) -> int:
    try:
        if args.fn in SCALAR_FNS:
            value = SCALAR_FNS[args.fn](args)
            if args.format == "json":
                print(json.dumps({"fn": args.fn, "value": _jsonable(value)}))
            else:
                print(repr(value) if not isinstance(value, dict) else
                      "\n".join(f"{k} = {val!r}" for k, val in value.items()))
            return 0
        if not (args.A and args.B):
            raise ValueError(f"{args.fn} needs --A and --B matrix files")
        pair = OperatorPair(matrix_from_json(read_json(args.A)), matrix_from_json(read_json(args.B)))
        result = MATRIX_FNS[args.fn](pair, args)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    eig = np.linalg.eigvalsh(result)
    if args.format == "json":
        print(json.dumps({"fn": args.fn, "matrix": matrix_to_json(result),
                          "eigenvalues": [float(x) for x in eig]}))
    else:
        with np.printoptions(precision=17):
            print(result)
            print("eigenvalues:", eig)
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        if args.kind == "spd":
            mats = {"a": random_spd(GenSpec(args.dim, args.cond_max, seed=seed, index=args.index))}
        elif args.kind == "pair":
            constraint = "exp-domain" if args.v is not None else "certified-window"
            pair = random_certified_pair(GenSpec(args.dim, args.cond_max, (args.m, args.M), seed,
                                                 constraint, args.v, "pair", args.index))
            mats = {"a": pair.A, "b": pair.B}
        else:
            if args.v is None:
                raise ValueError("ratio-k instances need --v")
            inst = random_ratio_k_instance(GenSpec(args.dim, args.cond_max, (args.m, args.M), seed,
                                                   "ratio-K", args.v, "ratio-k", args.index))
            mats = {"a": inst.A, "b": inst.B, "c": inst.C}
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out_dir:
        for name, M in mats.items():
            write_json(matrix_to_json(M), Path(args.out_dir) / f"{name}.json")
    else:
        print(json.dumps({k.upper(): matrix_to_json(M) for k, M in mats.items()}))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "replay":
        return _replay(args.case, args.format)
    if args.command == "eval":
        return cmd_eval(args)
    return cmd_gen(args)


if __name__ == "__main__":
    sys.exit(main())
