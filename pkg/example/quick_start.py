# -*- coding: utf-8 -*-

"""
Green function, resultant, balanced measure and energy of the basilica
``z^2 - 1``, then an equipotential picture of it.
"""

import math
from pathlib import Path

from greenlem import api

_dir_here = Path(__file__).absolute().parent
dir_build = _dir_here.joinpath("build")

f = api.load_map(_dir_here.joinpath("maps", "basilica.json"))
print(f"degree: {f.degree}, polynomial: {f.is_polynomial}")
print(f"|Res F| = {abs(api.resultant(f)):.12g}")

g = api.green_affine(f, 2.0)
print(f"G^F(1, 2) = {g.value:.12f} (+- {g.err_bound:.1e}, {g.steps} steps)")
print(f"G^F(0, 1) = {api.green_at_infinity(f).value:.12f}")

mu = api.balanced_sample(f, depth=12, seed=1)
print(f"sample: {mu.size} atoms, {mu.provenance}")
estimate = api.energy(mu)
print(f"sampled energy {estimate.value:.6f}, closed form {api.energy_formula(f):.6f}")
print(f"e^I = {math.exp(api.energy_formula(f)):.6f}, capacity = {api.brolin_capacity(f):.6f}")

vp = api.Viewport.parse("-2,2,-1.5,1.5", "400x300")
path = api.write_ppm(api.render_potential(f, vp), dir_build.joinpath("basilica.ppm"))
print(f"wrote {path}")
