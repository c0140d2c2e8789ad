# -*- coding: utf-8 -*-

"""
This module defines the run configuration shared by every CLI subcommand.
"""

import os
import typing as T
import dataclasses
from pathlib import Path

from .exc import ConfigError
from .utils import sha256_of_json

ENV_THREADS = "GREENLEM_THREADS"
DEFAULT_SEED = 20100418


def get_n_threads() -> int:
    """
    Worker thread cap from the ``GREENLEM_THREADS`` environment variable,
    ``0`` or unset means one thread per CPU.
    """
    raw = os.environ.get(ENV_THREADS, "").strip()
    if raw == "":
        n = 0
    else:
        try:
            n = int(raw)
        except ValueError:
            raise ConfigError(f"{ENV_THREADS} must be an integer, got {raw!r}")
    if n < 0:
        raise ConfigError(f"{ENV_THREADS} must be >= 0, got {n}")
    if n == 0:
        n = os.cpu_count() or 1
    return n


@dataclasses.dataclass
class RunConfig:
    """
    Everything needed to reproduce one CLI run bitwise.

    :param subcommand: e.g. ``"green"`` or ``"verify"``
    :param map_source: where the map came from, a file path or ``"poly:..."``
    :param map_data: the map in its JSON wire form (numerator / denominator
        coefficient pairs), ``None`` for subcommands that take no map
    :param params: the subcommand parameters, JSON compatible
    :param seed: 64-bit seed of every random stream of the run
    :param out: primary output file, if any
    """

    subcommand: str = dataclasses.field()
    map_source: T.Optional[str] = dataclasses.field(default=None)
    map_data: T.Optional[T.Dict[str, T.Any]] = dataclasses.field(default=None)
    params: T.Dict[str, T.Any] = dataclasses.field(default_factory=dict)
    seed: int = dataclasses.field(default=DEFAULT_SEED)
    out: T.Optional[Path] = dataclasses.field(default=None)

    @classmethod
    def new(
        cls,
        subcommand: str,
        map_source: T.Optional[str] = None,
        map_data: T.Optional[T.Dict[str, T.Any]] = None,
        params: T.Optional[T.Dict[str, T.Any]] = None,
        seed: T.Optional[int] = None,
        out: T.Optional[T.Union[str, Path]] = None,
    ) -> "RunConfig":
        if seed is None:
            seed = DEFAULT_SEED
        if not (0 <= int(seed) < 2**64):
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed}")
        if out is not None:
            out = Path(out).absolute()
        return cls(
            subcommand=subcommand,
            map_source=map_source,
            map_data=map_data,
            params=dict(params or {}),
            seed=int(seed),
            out=out,
        )

    @property
    def path_sidecar_json(self) -> Path:
        """
        Metadata written next to an image.

        example: ``${out_dir}/basilica.ppm`` -> ``${out_dir}/basilica.json``
        """
        return self.out.with_suffix(".json")

    @property
    def path_csv(self) -> Path:
        """
        example: ``${out_dir}/sample.json`` -> ``${out_dir}/sample.csv``
        """
        return self.out.with_suffix(".csv")

    @property
    def digest(self) -> str:
        """
        sha256 of the canonical JSON of subcommand, map, parameters and seed.
        """
        return sha256_of_json(
            {
                "subcommand": self.subcommand,
                "map": self.map_data,
                "params": self.params,
                "seed": self.seed,
            }
        )

    def record(self, **payload: T.Any) -> T.Dict[str, T.Any]:
        """
        Wrap a result payload with the seed and parameter digest.
        """
        data = dict(payload)
        data["seed"] = self.seed
        data["digest"] = self.digest
        return data
