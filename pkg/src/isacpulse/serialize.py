"""CSV/JSON emission with reproducibility headers.

CSV layout: comment-prefixed ``# key=value`` metadata lines, one
column-name row, then data rows.  Plot-tool neutral and easy to diff.
Writes are atomic (tmp file + rename) so parallel sweep points never leave
half-written outputs behind.
"""

from __future__ import annotations

import json
import os
from typing import Mapping, Sequence

import numpy as np

from .grid import GridSpec
from .spectrum import DiscreteAcf, SpectrumVector

__all__ = [
    "write_csv",
    "read_csv",
    "write_json",
    "read_json",
    "spectrum_to_dict",
    "spectrum_from_dict",
    "acf_to_dict",
    "acf_from_dict",
]


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv(path: str, columns: Mapping[str, Sequence], meta: Mapping[str, object]) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[k]) for k in names]
    n = arrays[0].shape[0]
    if any(a.shape[0] != n for a in arrays):
        raise ValueError("all CSV columns must have equal length")
    lines = [f"# {k}={_fmt_meta(v)}" for k, v in meta.items()]
    lines.append(",".join(names))
    for i in range(n):
        lines.append(",".join(_fmt_value(a[i]) for a in arrays))
    _atomic_write(path, "\n".join(lines) + "\n")


def _fmt_meta(v: object) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return json.dumps(list(v))
    return str(v)


def _fmt_value(v) -> str:
    if np.issubdtype(np.asarray(v).dtype, np.integer):
        return str(int(v))
    return repr(float(v))


def read_csv(path: str) -> tuple[dict, dict]:
    meta: dict = {}
    rows: list[list[str]] = []
    names: list[str] | None = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val
            elif names is None:
                names = line.split(",")
            else:
                rows.append(line.split(","))
    if names is None:
        raise ValueError(f"{path} has no column header")
    data = {k: np.array([float(r[i]) for r in rows]) for i, k in enumerate(names)}
    return meta, data


def write_json(path: str, payload: Mapping) -> None:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def spectrum_to_dict(s: SpectrumVector) -> dict:
    return {"grid": s.grid.to_dict(), "omega": s.omega.tolist()}


def spectrum_from_dict(d: Mapping) -> SpectrumVector:
    return SpectrumVector(omega=np.asarray(d["omega"], dtype=float), grid=GridSpec.from_dict(d["grid"]))


def acf_to_dict(acf: DiscreteAcf) -> dict:
    return {"grid": acf.grid.to_dict(), "psi": acf.psi.tolist()}


def acf_from_dict(d: Mapping) -> DiscreteAcf:
    return DiscreteAcf(psi=np.asarray(d["psi"], dtype=float), grid=GridSpec.from_dict(d["grid"]))
