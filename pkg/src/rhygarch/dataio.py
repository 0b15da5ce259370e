"""CSV series I/O and JSON helpers for parameter and config files.

CSV schema: header with at least ``return`` and ``realized`` columns
(extras ignored on read); numbers written with 17 significant digits so a
write/read round trip is lossless for doubles.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .exceptions import DataError
from .model import RhygarchParams
from .sim import SeriesPair


def read_series(path) -> SeriesPair:
    """Load an aligned return/realized series from a CSV file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise DataError(f"{path}: empty file") from None
    names = [h.strip() for h in header]
    try:
        i_ret = names.index("return")
        i_rea = names.index("realized")
    except ValueError:
        raise DataError(
            f"{path}: header must contain 'return' and 'realized' columns, "
            f"got {names}") from None

    returns, realized = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) <= max(i_ret, i_rea):
            raise DataError(f"{path}: line {lineno}: too few columns")
        try:
            r = float(row[i_ret])
            x = float(row[i_rea])
        except ValueError as exc:
            raise DataError(f"{path}: line {lineno}: {exc}") from None
        if not np.isfinite(r) or not np.isfinite(x):
            raise DataError(f"{path}: line {lineno}: non-finite value")
        if x <= 0.0:
            raise DataError(
                f"{path}: line {lineno}: realized measure must be positive")
        returns.append(r)
        realized.append(x)
    if not returns:
        raise DataError(f"{path}: no data rows")
    return SeriesPair(returns=np.array(returns), realized=np.array(realized))


def format_series(series: SeriesPair, include_latents: bool = False) -> str:
    """CSV text for a series; latent columns only when present and requested."""
    with_latents = include_latents and series.latent_h is not None
    cols = ["t", "return", "realized"] + (["h", "z", "u"] if with_latents else [])
    lines = [",".join(cols)]
    for t in range(len(series)):
        row = [str(t + 1),
               format(series.returns[t], ".17g"),
               format(series.realized[t], ".17g")]
        if with_latents:
            row += [format(series.latent_h[t], ".17g"),
                    format(series.latent_z[t], ".17g"),
                    format(series.latent_u[t], ".17g")]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_series(series: SeriesPair, path, include_latents: bool = False) -> None:
    Path(path).write_text(format_series(series, include_latents),
                          encoding="utf-8")


def load_json(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON: {exc}") from exc


def load_params(path) -> RhygarchParams:
    """Read a parameter JSON; accepts a fit-result file via its estimates."""
    obj = load_json(path)
    if "estimates" in obj and isinstance(obj["estimates"], dict):
        obj = obj["estimates"]
    try:
        return RhygarchParams.from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{path}: bad parameter object: {exc}") from exc


def dump_json(obj: dict, path=None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
