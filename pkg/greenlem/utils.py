# -*- coding: utf-8 -*-

import typing as T
import json
import hashlib

from .exc import MapFormatError


def ensure_exact_one_given(**kwargs: T.Any) -> str:
    """
    Make sure exactly one of the keyword arguments is not None, return its
    name.

    Example::

        >>> ensure_exact_one_given(map_path="z2.json", poly=None)
        'map_path'
    """
    given = [key for key, value in kwargs.items() if value is not None]
    if len(given) != 1:
        raise MapFormatError(
            f"Expected exactly one of {list(kwargs)}, but got {given or 'none'}"
        )
    return given[0]


def parse_complex(text: str) -> complex:
    """
    Parse ``"re,im"``, ``"re"`` or a Python complex literal such as
    ``"0.3j"`` / ``"1-2j"``.
    """
    text = text.strip()
    try:
        if "," in text:
            re_, im_ = text.split(",")
            return complex(float(re_), float(im_))
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise MapFormatError(f"cannot parse complex number from {text!r}") from e


def parse_floats(text: str, n: int) -> T.List[float]:
    """
    Parse exactly ``n`` comma separated reals, e.g. a viewport
    ``"-2,2,-1.5,1.5"``.
    """
    try:
        values = [float(token) for token in text.split(",")]
    except ValueError as e:
        raise MapFormatError(f"cannot parse reals from {text!r}") from e
    if len(values) != n:
        raise MapFormatError(f"expected {n} comma separated reals, got {text!r}")
    return values


def parse_size(text: str) -> T.Tuple[int, int]:
    """
    Example::

        >>> parse_size("512x256")
        (512, 256)
    """
    try:
        width, height = [int(token) for token in text.lower().split("x")]
    except ValueError as e:
        raise MapFormatError(f"size must look like WxH, got {text!r}") from e
    return width, height


def complex_to_pair(z: complex) -> T.List[float]:
    return [float(z.real), float(z.imag)]


def sha256_of_json(data: T.Any) -> str:
    """
    sha256 of the canonical JSON encoding (sorted keys, no whitespace).
    """
    text = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
