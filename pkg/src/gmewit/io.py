"""JSON matrix files, CSV tables and state specifiers."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable

import numpy as np

from .analysis import LambdaScanRow, RegionScanRow, RegionVerdict
from .hermitian import HermiticityError, check_hermitian, projector
from .multipartite import SpaceShape
from .states import add_white_noise, ghz, rho_lambda, two_param_family
from .witness import Verdict

REGION_HEADER = ["p", "q", "value_ppt", "value_choi", "verdict"]
LAMBDA_HEADER = ["lambda", "value", "verdict"]


class MatrixFormatError(ValueError):
    pass


def _num(x) -> str:
    return repr(float(x))


def parse_number(text: str) -> float:
    """Float from a decimal or rational literal such as ``1/9``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def matrix_to_json(M, dims) -> str:
    M = np.asarray(M, dtype=complex)
    # repr-based float output round-trips bit for bit
    payload = {
        "dims": [int(d) for d in dims],
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }
    return json.dumps(payload)


def write_matrix(path, M, dims) -> None:
    Path(path).write_text(matrix_to_json(M, dims) + "\n")


def matrix_from_json(text: str, source: str = "<string>", hermitian: bool = False) -> tuple[np.ndarray, SpaceShape]:
    """Parse the ``{"dims": [...], "matrix": [[[re, im], ...], ...]}`` format.

    With ``hermitian`` set, a non-Hermitian matrix is rejected and the
    offending entry pair named.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise MatrixFormatError(f"{source}: top level must be an object with 'dims' and 'matrix'")
    for key in ("dims", "matrix"):
        if key not in data:
            raise MatrixFormatError(f"{source}: missing field '{key}'")
    dims = data["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 2 for d in dims) or not dims:
        raise MatrixFormatError(f"{source}: field 'dims' must be a nonempty list of integers >= 2, got {dims!r}")
    shape = SpaceShape(tuple(dims))
    rows = data["matrix"]
    n = shape.total_dim
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f"{source}: field 'matrix' must have {n} rows for dims {dims}")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"{source}: matrix[{i}] must have {n} entries")
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)):
                raise MatrixFormatError(f"{source}: matrix[{i}][{j}] must be a [re, im] pair of numbers, got {z!r}")
            M[i, j] = complex(z[0], z[1])
    if hermitian:
        try:
            check_hermitian(M)
        except HermiticityError as exc:
            raise MatrixFormatError(f"{source}: {exc}") from None
    return M, shape


def read_matrix(path, hermitian: bool = False) -> tuple[np.ndarray, SpaceShape]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"{path}: {exc.strerror}") from None
    return matrix_from_json(text, str(path), hermitian)


def parse_state(text: str) -> tuple[np.ndarray, SpaceShape]:
    """Density matrix from ``ghz:n,d``, ``rho-lambda:l``, ``noise:p,l`` or ``two-param:p,q``."""
    kind, _, rest = text.strip().partition(":")
    args = [a for a in rest.split(",")] if rest.strip() else []

    def need(k):
        if len(args) != k:
            raise ValueError(f"state {kind!r} takes {k} argument(s), got {len(args)} in {text!r}")

    qutrits = SpaceShape((3, 3, 3))
    if kind == "ghz":
        need(2)
        try:
            n, d = int(args[0]), int(args[1])
        except ValueError:
            raise ValueError(f"ghz expects integers n,d, got {rest!r}") from None
        return projector(ghz(n, d)), SpaceShape((d,) * n)
    if kind == "rho-lambda":
        need(1)
        return rho_lambda(parse_number(args[0])), qutrits
    if kind == "noise":
        need(2)
        return add_white_noise(rho_lambda(parse_number(args[1])), parse_number(args[0])), qutrits
    if kind == "two-param":
        need(2)
        return two_param_family(parse_number(args[0]), parse_number(args[1])), qutrits
    raise ValueError(f"unknown state {kind!r}; expected ghz, rho-lambda, noise or two-param")


def write_region_csv(path_or_file, rows: Iterable[RegionScanRow]) -> None:
    def emit(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(REGION_HEADER)
        for r in rows:
            w.writerow([_num(r.p), _num(r.q), _num(r.value_ppt), _num(r.value_choi), str(r.verdict)])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as f:
            emit(f)


def read_region_csv(path_or_file) -> list[RegionScanRow]:
    def parse(f):
        reader = csv.reader(f)
        header = next(reader, None)
        if header != REGION_HEADER:
            raise ValueError(f"line 1: expected header {','.join(REGION_HEADER)}, got {header}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != 5:
                raise ValueError(f"line {lineno}: expected 5 fields, got {len(rec)}")
            try:
                rows.append(RegionScanRow(float(rec[0]), float(rec[1]), float(rec[2]), float(rec[3]),
                                          RegionVerdict(rec[4])))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return rows

    if hasattr(path_or_file, "read"):
        return parse(path_or_file)
    with open(path_or_file, newline="") as f:
        return parse(f)


def write_lambda_csv(path_or_file, rows: Iterable[LambdaScanRow]) -> None:
    def emit(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(LAMBDA_HEADER)
        for r in rows:
            w.writerow([_num(r.lam), _num(r.value), str(r.verdict)])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as f:
            emit(f)


def read_lambda_csv(path_or_file) -> list[LambdaScanRow]:
    def parse(f):
        reader = csv.reader(f)
        if next(reader, None) != LAMBDA_HEADER:
            raise ValueError(f"line 1: expected header {','.join(LAMBDA_HEADER)}")
        return [LambdaScanRow(float(a), float(b), Verdict(c)) for a, b, c in reader]

    if hasattr(path_or_file, "read"):
        return parse(path_or_file)
    with open(path_or_file, newline="") as f:
        return parse(f)
