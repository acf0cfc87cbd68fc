"""JSON wire formats for matrices, maps and inequality cases."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .entropies import OperatorPair
from .linalg import as_spd, check_symmetric
from .maps import PositiveMap
from .theorems import InequalityCase

CASE_SCHEMA = "tsallis-ops/case/1"


class MatrixFormatError(ValueError):
    pass


def matrix_to_json(A: np.ndarray) -> dict:
    A = np.asarray(A, dtype=float)
    return {"dim": int(A.shape[0]), "data": [float(x) for x in A.ravel()]}


def matrix_from_json(obj: dict, spd: bool = True) -> np.ndarray:
    """Read ``{"dim": n, "data": [...]}``; rejects asymmetric input and, with ``spd``, non-PD input."""
    try:
        n = int(obj["dim"])
        data = np.asarray(obj["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed matrix object: {exc}") from exc
    if n < 1 or data.size != n * n:
        raise MatrixFormatError(f"expected {n * n} entries for dim {n}, got {data.size}")
    A = data.reshape(n, n)
    try:
        return as_spd(A) if spd else check_symmetric(A)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from exc


def array_to_json(X: np.ndarray) -> dict:
    X = np.asarray(X, dtype=float)
    return {"rows": int(X.shape[0]), "cols": int(X.shape[1]), "data": [float(x) for x in X.ravel()]}


def array_from_json(obj: dict) -> np.ndarray:
    try:
        return np.asarray(obj["data"], dtype=float).reshape(int(obj["rows"]), int(obj["cols"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"malformed array object: {exc}") from exc


def map_to_dict(phi: PositiveMap) -> dict:
    out: dict = {"kind": phi.kind, "dim": phi.dim}
    if phi.kind == "pinching":
        out["blocks"] = list(phi.blocks)
    elif phi.kind == "unitary_mixture":
        out["weights"] = list(phi.weights)
        out["unitaries"] = [array_to_json(U) for U in phi.unitaries]
    elif phi.kind == "compression":
        out["isometry"] = array_to_json(phi.isometry)
    return out


def map_from_dict(obj: dict) -> PositiveMap:
    kind = obj["kind"]
    dim = int(obj["dim"])
    if kind == "pinching":
        return PositiveMap(kind, dim, blocks=tuple(int(b) for b in obj["blocks"]))
    if kind == "unitary_mixture":
        return PositiveMap(kind, dim, weights=tuple(float(w) for w in obj["weights"]),
                           unitaries=tuple(array_from_json(u) for u in obj["unitaries"]))
    if kind == "compression":
        return PositiveMap(kind, dim, isometry=array_from_json(obj["isometry"]))
    return PositiveMap(kind, dim)


def case_to_dict(case: InequalityCase) -> dict:
    return {
        "schema": CASE_SCHEMA,
        "id": case.id,
        "A": matrix_to_json(case.pair.A),
        "B": matrix_to_json(case.pair.B),
        "window": list(case.pair.window) if case.pair.window is not None else None,
        "v": case.v,
        "s": case.s,
        "t": case.t,
        "mu": case.mu,
        "map": map_to_dict(case.phi) if case.phi is not None else None,
        "C": matrix_to_json(case.C) if case.C is not None else None,
        "quad_nodes": case.quad_nodes,
        "tol": case.tol,
        "seed": case.seed,
        "index": case.index,
    }


def case_from_dict(obj: dict) -> InequalityCase:
    if obj.get("schema") != CASE_SCHEMA:
        raise MatrixFormatError(f"unsupported case schema {obj.get('schema')!r}")
    window = tuple(obj["window"]) if obj.get("window") is not None else None
    pair = OperatorPair(matrix_from_json(obj["A"]), matrix_from_json(obj["B"]), window)
    return InequalityCase(
        id=obj["id"],
        pair=pair,
        v=obj.get("v"),
        s=obj.get("s"),
        t=obj.get("t"),
        mu=obj.get("mu"),
        phi=map_from_dict(obj["map"]) if obj.get("map") is not None else None,
        C=matrix_from_json(obj["C"]) if obj.get("C") is not None else None,
        quad_nodes=int(obj.get("quad_nodes", 32)),
        tol=float(obj.get("tol", 1e-9)),
        seed=obj.get("seed"),
        index=obj.get("index"),
    )


def read_json(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_json(obj, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
