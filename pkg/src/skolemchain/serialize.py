"""JSON file formats. Rationals are canonical "p/q" strings, indices are 1-based."""

from __future__ import annotations

import json
from pathlib import Path

from .kernel import Matrix, format_rational, parse_rational
from .lrs import Lrs, lrs_to_dict, parse_lrs
from .reduction import MarkovInstance, Query, ReductionCertificate


class InputError(ValueError):
    """Unreadable or malformed input file."""


def load_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps(obj))


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(e) for e in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("a matrix must be a nested array of rational tokens")
    return Matrix.from_rows([[parse_rational(e) for e in row] for row in data])


def vector_to_json(v) -> list:
    return [format_rational(x) for x in v]


def vector_from_json(data) -> tuple:
    return tuple(parse_rational(x) for x in data)


def read_lrs(path) -> Lrs:
    data = load_json(path)
    try:
        return parse_lrs(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def instance_to_dict(inst: MarkovInstance) -> dict:
    return {
        "dimension": inst.dimension,
        "matrix": matrix_to_json(inst.matrix),
        "source": inst.source,
        "target": inst.target,
        "threshold": format_rational(inst.threshold),
        "query": inst.query.value,
    }


def instance_from_dict(data) -> MarkovInstance:
    if not isinstance(data, dict):
        raise ValueError("instance must be a mapping")
    missing = [k for k in ("matrix", "source", "target", "threshold") if k not in data]
    if missing:
        raise ValueError(f"instance is missing key(s): {', '.join(missing)}")
    m = matrix_from_json(data["matrix"])
    if "dimension" in data and data["dimension"] != m.rows:
        raise ValueError(f"'dimension' is {data['dimension']} but the matrix has {m.rows} rows")
    if not m.is_square:
        raise ValueError(f"instance matrix is {m.rows}x{m.cols}, not square")
    for key in ("source", "target"):
        idx = data[key]
        if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= m.rows:
            raise ValueError(f"'{key}' must be an index in 1..{m.rows}, got {idx!r}")
    return MarkovInstance(
        matrix=m,
        source=data["source"],
        target=data["target"],
        threshold=parse_rational(data["threshold"]),
        query=Query.parse(data.get("query", "Equal")),
    )


def read_instance(path) -> MarkovInstance:
    data = load_json(path)
    try:
        return instance_from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def certificate_to_dict(cert: ReductionCertificate) -> dict:
    return {
        "lrs": lrs_to_dict(cert.lrs),
        "stationary": vector_to_json(cert.stationary),
        "S": matrix_to_json(cert.S),
        "anchor_index": cert.anchor_index,
        "anchor": vector_to_json(cert.anchor),
        "eta": format_rational(cert.eta),
        "F": matrix_to_json(cert.F),
        "B": matrix_to_json(cert.B),
        "C": matrix_to_json(cert.C),
        "gamma": format_rational(cert.gamma),
        "sigma": format_rational(cert.sigma),
        "rho": format_rational(cert.rho),
        "D": matrix_to_json(cert.D),
    }


def certificate_from_dict(data) -> ReductionCertificate:
    if not isinstance(data, dict):
        raise ValueError("certificate must be a mapping")
    fields = ("lrs", "stationary", "S", "anchor_index", "anchor", "eta", "F", "B", "C",
              "gamma", "sigma", "rho", "D")
    missing = [k for k in fields if k not in data]
    if missing:
        raise ValueError(f"certificate is missing key(s): {', '.join(missing)}")
    return ReductionCertificate(
        lrs=parse_lrs(data["lrs"]),
        stationary=vector_from_json(data["stationary"]),
        S=matrix_from_json(data["S"]),
        anchor_index=int(data["anchor_index"]),
        anchor=vector_from_json(data["anchor"]),
        eta=parse_rational(data["eta"]),
        F=matrix_from_json(data["F"]),
        B=matrix_from_json(data["B"]),
        C=matrix_from_json(data["C"]),
        gamma=parse_rational(data["gamma"]),
        sigma=parse_rational(data["sigma"]),
        rho=parse_rational(data["rho"]),
        D=matrix_from_json(data["D"]),
    )


def read_certificate(path) -> ReductionCertificate:
    data = load_json(path)
    try:
        return certificate_from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
