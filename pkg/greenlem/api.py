# -*- coding: utf-8 -*-

from .exc import GreenlemError
from .exc import DegenerateMapError
from .exc import RootFindingError
from .exc import ExceptionalPointError
from .exc import SampleCapError
from .exc import InfiniteAtomError
from .exc import NotPolynomialError
from .exc import MapFormatError
from .exc import ConfigError
from .context import RunConfig
from .algebra import SpherePoint
from .algebra import RationalMap
from .algebra import HomogeneousLift
from .algebra import wedge
from .algebra import canonical_lift
from .algebra import scale_lift
from .algebra import roots
from .algebra import roots_many
from .algebra import sylvester_matrix
from .algebra import poly_resultant
from .algebra import resultant
from .algebra import apply
from .algebra import preimages
from .algebra import fiber
from .green import GreenValue
from .green import tail_constant
from .green import green
from .green import green_many
from .green import green_affine
from .green import green_affine_many
from .green import green_at_infinity
from .measure import DiscreteMeasure
from .measure import EnergyEstimate
from .measure import pullback
from .measure import pushforward
from .measure import push_function
from .measure import pull_function
from .measure import is_exceptional
from .measure import sample_tree
from .measure import sample_walk
from .measure import sample
from .measure import potential
from .measure import potential_many
from .measure import energy
from .measure import phi_kernel
from .measure import weighted_potential
from .measure import weighted_potential_many
from .measure import v_constant
from .verify import VerificationReport
from .verify import LemniscateStat
from .verify import Discrimination
from .verify import pick_base_point
from .verify import balanced_sample
from .verify import check_decomp
from .verify import check_energy
from .verify import check_pullback
from .verify import check_vconstant
from .verify import check_laplacian
from .verify import check_kernel_pullback
from .verify import check_green_identities
from .verify import check_brolin
from .verify import check_factorization
from .verify import check_resultant_product
from .verify import check_balanced
from .verify import check_lemniscate
from .verify import brolin_capacity
from .verify import energy_formula
from .verify import lemniscate_stat
from .verify import discriminate_polynomial
from .verify import resultant_product
from .verify import run_suite
from .render import Viewport
from .render import Image
from .render import render_potential
from .render import render_lemniscate
from .render import render_measure
from .render import write_ppm
from .serialize import load_map
from .serialize import poly_map
from .serialize import map_from_json
from .serialize import read_measure
from .serialize import write_measure
from .serialize import write_measure_csv
