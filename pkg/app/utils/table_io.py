"""Plain-text tables: weight tables and time histories

Weight table layout (LF line endings, '.' decimal, 17 significant digits):

    # kind=be
    # kappa=0.10000000000000001
    # N=128
    # R=0.86867...
    # eps=2.2204460492503131e-16
    # d1=1
    # d2=1
    # symbol=resolvent(c=-1)
    n,re_0_0,im_0_0
    0,0.090909090909090912,0
    ...

Runge-Kutta tables add ``tableau`` and ``p``; d1/d2 are then the block sizes
p·d1 and p·d2.
"""
from pathlib import Path
from typing import Dict, Union
import logging

import numpy as np

from app.cq.multistep_cq import WeightTable
from app.cq.rk_cq import RKWeightTable
from app.exceptions import WeightFormatError

logger = logging.getLogger(__name__)

NUMBER_FORMAT = "%.17g"


def _header(table: WeightTable) -> Dict[str, str]:
    d1, d2 = table.dims
    header = {
        "kind": table.kind,
        "kappa": NUMBER_FORMAT % table.kappa,
        "N": str(table.N),
        "R": NUMBER_FORMAT % table.radius,
        "eps": NUMBER_FORMAT % table.eps,
        "d1": str(d1),
        "d2": str(d2),
        "symbol": table.symbol_name,
    }
    if table.tableau is not None:
        header["tableau"] = table.tableau
        header["p"] = str(table.stages)
    return header


def column_names(d1: int, d2: int):
    names = ["n"]
    for i in range(d1):
        for j in range(d2):
            names += [f"re_{i}_{j}", f"im_{i}_{j}"]
    return names


def save_weight_table(path: Union[str, Path], table: WeightTable) -> Path:
    """Write a weight table; returns the path written"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    d1, d2 = table.dims
    flat = table.weights.reshape(table.N + 1, d1 * d2)
    data = np.empty((table.N + 1, 1 + 2 * d1 * d2))
    data[:, 0] = np.arange(table.N + 1)
    data[:, 1::2] = flat.real
    data[:, 2::2] = flat.imag

    with open(path, "w", newline="\n") as fh:
        for key, value in _header(table).items():
            fh.write(f"# {key}={value}\n")
        fh.write(",".join(column_names(d1, d2)) + "\n")
        np.savetxt(fh, data, fmt=NUMBER_FORMAT, delimiter=",")
    logger.info(f"Wrote {table.N + 1} weights to {path}")
    return path


def load_weight_table(path: Union[str, Path]) -> WeightTable:
    """
    Read a weight table written by save_weight_table.

    Raises:
        WeightFormatError: Missing header keys or inconsistent data
    """
    path = Path(path)
    header: Dict[str, str] = {}
    with open(path) as fh:
        line = fh.readline()
        while line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if not sep:
                raise WeightFormatError(f"{path}: malformed header line {line.strip()!r}")
            header[key.strip()] = value.strip()
            line = fh.readline()
        columns = line.strip().split(",")
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as e:
            raise WeightFormatError(f"{path}: unreadable data ({e})")

    missing = {"kind", "kappa", "N", "R", "eps", "d1", "d2"} - header.keys()
    if missing:
        raise WeightFormatError(f"{path}: header lacks {sorted(missing)}")
    n, d1, d2 = int(header["N"]), int(header["d1"]), int(header["d2"])
    if columns != column_names(d1, d2):
        raise WeightFormatError(f"{path}: column header does not match d1={d1}, d2={d2}")
    if data.shape != (n + 1, 1 + 2 * d1 * d2):
        raise WeightFormatError(f"{path}: expected {n + 1} rows of {1 + 2 * d1 * d2} values, got {data.shape}")
    if not np.array_equal(data[:, 0], np.arange(n + 1)):
        raise WeightFormatError(f"{path}: step column is not 0..{n}")

    weights = (data[:, 1::2] + 1j * data[:, 2::2]).reshape(n + 1, d1, d2)
    common = dict(kappa=float(header["kappa"]), radius=float(header["R"]), eps=float(header["eps"]),
                  kind=header["kind"], symbol_name=header.get("symbol", "symbol"))
    if "tableau" in header:
        return RKWeightTable(weights, tableau=header["tableau"], stages=int(header.get("p", 1)), **common)
    return WeightTable(weights, **common)


def write_history_csv(path: Union[str, Path], times: np.ndarray, values: np.ndarray, prefix: str) -> Path:
    """Rows = time nodes, columns = t then one column per boundary index"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    values = np.asarray(values, dtype=float).reshape(len(times), -1)
    names = ["t"] + [f"{prefix}_{j}" for j in range(values.shape[1])]
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(names) + "\n")
        np.savetxt(fh, np.column_stack([times, values]), fmt=NUMBER_FORMAT, delimiter=",")
    return path


def write_matrix_csv(path: Union[str, Path], matrix: np.ndarray, xs: np.ndarray) -> Path:
    """Field snapshot: header row of x coordinates, one row per grid line"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(NUMBER_FORMAT % x for x in xs) + "\n")
        np.savetxt(fh, np.atleast_2d(matrix), fmt=NUMBER_FORMAT, delimiter=",")
    return path
