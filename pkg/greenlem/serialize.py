# -*- coding: utf-8 -*-

"""
File formats.

- map: ``{"numerator": [[re, im], ...], "denominator": [[re, im], ...]}``,
  ascending powers.
- measure: ``{"seed": s, "provenance": {...}, "atoms": [[re, im, w], ...]}``,
  an atom at infinity is ``["inf", "inf", w]``.
- measure CSV: ``re,im,weight`` rows, for plotting.

Reals are written with :func:`repr`, the shortest text that reads back to
the same double.
"""

import csv
import json
import typing as T
from pathlib import Path

import numpy as np

from .algebra import RationalMap
from .exc import MapFormatError
from .measure import DiscreteMeasure, normalise_coords
from .utils import parse_complex

INF_TOKEN = "inf"


def dumps(data: T.Any) -> str:
    return json.dumps(data, indent=2)


def map_from_json(data: T.Dict[str, T.Any]) -> RationalMap:
    if not isinstance(data, dict):
        raise MapFormatError(f"map must be a JSON object, got {type(data).__name__}")
    missing = {"numerator", "denominator"} - set(data)
    if missing:
        raise MapFormatError(f"map is missing {sorted(missing)}")
    for key in ("numerator", "denominator"):
        value = data[key]
        if not isinstance(value, list) or not value:
            raise MapFormatError(f"{key} must be a non-empty list of [re, im] pairs")
        for pair in value:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise MapFormatError(f"{key} entries must be [re, im], got {pair!r}")
            if not all(isinstance(x, (int, float)) for x in pair):
                raise MapFormatError(f"{key} entries must be numbers, got {pair!r}")
    return RationalMap.new(data["numerator"], data["denominator"])


def load_map(path: T.Union[str, Path]) -> RationalMap:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as e:
        raise MapFormatError(f"map file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MapFormatError(f"map file {path} is not valid JSON: {e}") from e
    return map_from_json(data)


def poly_map(text: str) -> RationalMap:
    """
    ``"c0,c1,...,cd"`` to the polynomial ``c0 + c1 z + ... + cd z^d``. Each
    token is a real or a Python complex literal.

    Example: ``poly_map("-1,0,1")`` is ``z^2 - 1``.
    """
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise MapFormatError("--poly needs at least one coefficient")
    return RationalMap.polynomial([parse_complex(t) for t in tokens])


def dump_map(f: RationalMap, path: T.Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps(f.to_json()))
    return path


def measure_to_json(mu: DiscreteMeasure) -> T.Dict[str, T.Any]:
    atoms = []
    for (z0, z1), w in zip(mu.coords, mu.weights):
        if z0 == 0:
            atoms.append([INF_TOKEN, INF_TOKEN, float(w)])
        else:
            atoms.append([float(z1.real), float(z1.imag), float(w)])
    return {"seed": mu.seed, "provenance": mu.provenance, "atoms": atoms}


def measure_from_json(data: T.Dict[str, T.Any]) -> DiscreteMeasure:
    try:
        atoms = data["atoms"]
        seed = int(data.get("seed", 0))
        provenance = dict(data.get("provenance", {}))
    except (KeyError, TypeError, ValueError) as e:
        raise MapFormatError(f"malformed measure: {e}") from e
    if not isinstance(atoms, list) or not atoms:
        raise MapFormatError("measure needs a non-empty atoms list")
    z0s, z1s, weights = [], [], []
    for atom in atoms:
        if not (isinstance(atom, list) and len(atom) == 3):
            raise MapFormatError(f"atoms must be [re, im, weight], got {atom!r}")
        re_, im_, w = atom
        if re_ == INF_TOKEN:
            z0s.append(0j)
            z1s.append(1 + 0j)
        else:
            z0s.append(1 + 0j)
            z1s.append(complex(float(re_), float(im_)))
        weights.append(float(w))
    try:
        return DiscreteMeasure(
            coords=normalise_coords(z0s, z1s),
            weights=np.array(weights),
            seed=seed,
            provenance=provenance,
        )
    except ValueError as e:
        raise MapFormatError(f"invalid measure: {e}") from e


def write_measure(mu: DiscreteMeasure, path: T.Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(measure_to_json(mu)))
    return path


def read_measure(path: T.Union[str, Path]) -> DiscreteMeasure:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as e:
        raise MapFormatError(f"measure file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MapFormatError(f"measure file {path} is not valid JSON: {e}") from e
    return measure_from_json(data)


def write_measure_csv(mu: DiscreteMeasure, path: T.Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["re", "im", "weight"])
        writer.writerows(measure_to_json(mu)["atoms"])
    return path


def write_json(data: T.Any, path: T.Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data))
    return path
