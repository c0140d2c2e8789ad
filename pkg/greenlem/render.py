# -*- coding: utf-8 -*-

"""
Grayscale raster images of the Green function, the lemniscate of
``|F_0(1, .)|`` and of a discrete measure, written as binary PPM.

Pixel ``(row, col)`` samples the centre of its cell, row 0 at the top. Rows
are computed in blocks that may run on several threads; every pixel is a
pure function of its coordinates, so the bytes never depend on the thread
count.
"""

import math
import typing as T
import dataclasses
from pathlib import Path

import numpy as np

from .algebra import RationalMap
from .exc import MapFormatError
from .green import DEFAULT_TOL, green_affine_many
from .measure import DiscreteMeasure
from .parallel import map_blocks
from .utils import parse_floats, parse_size
from .verify import log_lemniscate_level

INTERIOR_TOL = 1e-6
BAND_EPS = 0.01
ROW_BLOCK = 16
BAND_BASE = 64
BAND_RANGE = 191


@dataclasses.dataclass(frozen=True)
class Viewport:
    """
    The rectangle ``[x_min, x_max] x [y_min, y_max]`` sampled on a
    ``width x height`` pixel grid.
    """

    x_min: float = dataclasses.field()
    x_max: float = dataclasses.field()
    y_min: float = dataclasses.field()
    y_max: float = dataclasses.field()
    width: int = dataclasses.field()
    height: int = dataclasses.field()

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise MapFormatError(
                f"viewport needs x_min < x_max and y_min < y_max, got "
                f"{self.x_min}, {self.x_max}, {self.y_min}, {self.y_max}"
            )
        if self.width < 1 or self.height < 1:
            raise MapFormatError(
                f"image size must be positive, got {self.width}x{self.height}"
            )

    @classmethod
    def parse(cls, viewport: str, size: str) -> "Viewport":
        """
        Example: ``Viewport.parse("-2,2,-1.5,1.5", "400x300")``.
        """
        x_min, x_max, y_min, y_max = parse_floats(viewport, 4)
        width, height = parse_size(size)
        return cls(x_min, x_max, y_min, y_max, width, height)

    def xs(self) -> np.ndarray:
        """
        Real parts of the pixel centres, left to right.
        """
        t = (2 * np.arange(self.width) + 1 - self.width) / (2 * self.width)
        centre = (self.x_min + self.x_max) / 2
        return centre + t * (self.x_max - self.x_min)

    def ys(self) -> np.ndarray:
        """
        Imaginary parts of the pixel centres, top to bottom. A viewport
        symmetric about the real axis gives exactly negated rows.
        """
        t = (2 * np.arange(self.height) + 1 - self.height) / (2 * self.height)
        centre = (self.y_min + self.y_max) / 2
        return centre - t * (self.y_max - self.y_min)

    def grid(self, row_start: int = 0, row_stop: T.Optional[int] = None) -> np.ndarray:
        ys = self.ys()[row_start:row_stop]
        z = np.empty((ys.size, self.width), dtype=np.complex128)
        z.real = self.xs()[None, :]
        z.imag = ys[:, None]
        return z

    def pixel_of(self, zs: np.ndarray) -> T.Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        :return: rows, columns and an in-view mask for affine points
        """
        col = np.floor((zs.real - self.x_min) / (self.x_max - self.x_min) * self.width)
        row = np.floor((self.y_max - zs.imag) / (self.y_max - self.y_min) * self.height)
        inside = (col >= 0) & (col < self.width) & (row >= 0) & (row < self.height)
        return row.astype(np.int64), col.astype(np.int64), inside

    def to_json(self) -> T.Dict[str, T.Any]:
        return dataclasses.asdict(self)


@dataclasses.dataclass
class Image:
    """
    :param pixels: ``(height, width)`` uint8 gray levels
    :param metadata: written to the sidecar JSON
    """

    pixels: np.ndarray = dataclasses.field()
    metadata: T.Dict[str, T.Any] = dataclasses.field(default_factory=dict)

    def to_ppm_bytes(self) -> bytes:
        height, width = self.pixels.shape
        header = f"P6\n{width} {height}\n255\n".encode("ascii")
        rgb = np.repeat(self.pixels[:, :, None], 3, axis=2)
        return header + rgb.astype(np.uint8).tobytes()


def write_ppm(image: Image, path: T.Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(image.to_ppm_bytes())
    return path


def _by_rows(func: T.Callable[[int, int], np.ndarray], vp: Viewport) -> np.ndarray:
    return np.concatenate(map_blocks(func, vp.height, ROW_BLOCK), axis=0)


def render_potential(
    f: RationalMap,
    vp: Viewport,
    tol: float = INTERIOR_TOL,
    green_tol: float = DEFAULT_TOL,
) -> Image:
    """
    Equipotential bands of ``G^F(1, .)``: black where ``G <= tol`` (the
    filled Julia set), elsewhere gray ``64 + floor(191 frac(log G / log d))``.
    """
    log_d = math.log(f.degree)

    def rows(start: int, stop: int) -> np.ndarray:
        g = green_affine_many(f, vp.grid(start, stop), tol=green_tol).value
        out = np.zeros(g.shape, dtype=np.uint8)
        outside = g > tol
        band = np.mod(np.log(g[outside]) / log_d, 1.0)
        out[outside] = BAND_BASE + np.floor(BAND_RANGE * band).astype(np.uint8)
        return out

    pixels = _by_rows(rows, vp)
    return Image(
        pixels=pixels,
        metadata={
            "kind": "potential",
            "viewport": vp.to_json(),
            "tol": tol,
            "green_tol": green_tol,
            "interior_fraction": float(np.mean(pixels == 0)),
        },
    )


def render_lemniscate(
    f: RationalMap,
    vp: Viewport,
    band_eps: float = BAND_EPS,
) -> Image:
    """
    White where ``|log|F_0(1, z)| - log level| < band_eps``. For a
    polynomial ``F_0(1, .)`` is constant, the band is empty or the whole
    plane and the metadata flags the image as degenerate.
    """
    if band_eps <= 0:
        raise ValueError(f"band_eps must be positive, got {band_eps}")
    F = f.lift
    log_level = log_lemniscate_level(f)

    def rows(start: int, stop: int) -> np.ndarray:
        z = vp.grid(start, stop)
        f0, _ = F.evaluate(np.ones_like(z), z)
        with np.errstate(divide="ignore"):
            gap = np.abs(np.log(np.abs(f0)) - log_level)
        return np.where(gap < band_eps, 255, 0).astype(np.uint8)

    pixels = _by_rows(rows, vp)
    return Image(
        pixels=pixels,
        metadata={
            "kind": "lemniscate",
            "viewport": vp.to_json(),
            "band_eps": band_eps,
            "level": math.exp(log_level),
            "degenerate": f.is_polynomial,
        },
    )


def render_measure(mu: DiscreteMeasure, vp: Viewport) -> Image:
    """
    Weighted histogram of the atoms on the pixel grid, log-scaled into
    ``[64, 255]``; empty pixels stay black. Mass outside the viewport
    (including atoms at infinity) is reported in the metadata.
    """
    finite = ~mu.is_infinite
    zs = mu.coords[finite, 1]
    ws = mu.weights[finite]
    row, col, inside = vp.pixel_of(zs)
    hist = np.zeros((vp.height, vp.width), dtype=np.float64)
    np.add.at(hist, (row[inside], col[inside]), ws[inside])
    pixels = np.zeros(hist.shape, dtype=np.uint8)
    filled = hist > 0
    if filled.any():
        logs = np.log(hist[filled])
        low, high = logs.min(), logs.max()
        if high > low:
            scaled = (logs - low) / (high - low)
        else:
            scaled = np.ones_like(logs)
        pixels[filled] = BAND_BASE + np.floor(BAND_RANGE * scaled).astype(np.uint8)
    out_mass = math.fsum(mu.weights[~finite]) + math.fsum(ws[~inside])
    return Image(
        pixels=pixels,
        metadata={
            "kind": "measure",
            "viewport": vp.to_json(),
            "seed": mu.seed,
            "n_atoms": mu.size,
            "out_of_view_mass": out_mass,
            "out_of_view_atoms": int((~finite).sum() + (~inside).sum()),
        },
    )
