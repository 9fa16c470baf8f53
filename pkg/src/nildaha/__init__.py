"""Exact kernel for the nil Hecke realization of the quantum Toda lattice.

The package computes, over arbitrary-precision rationals:

* sparse polynomials, Ore-localized fractions, and the degenerate affine
  Hecke smash product with its Demazure generators (``exact_algebra``,
  ``nil_daha``);
* root data, extended affine Weyl groups, and fundamental invariants
  (``root_data``);
* difference operators on the torus, the sandwich embedding into the
  spherical corner, and isogeny bookkeeping (``torus_diffops``);
* weight modules at non-integral infinitesimal characters, block and
  simplicity certificates (``toda_modules``);
* filtration windows, the two-parameter regrading, and windowed Koszul
  exactness certificates (``filtration_kit``);
* slice matrices, centralizer components, and big-cell witnesses for
  SL_n and GL_n at desk scale (``kostant_slice``).

``cli`` exposes the same checks as the ``nildaha`` command.
"""

from .errors import (BadCoefficients, ComponentMissesBigCell, DatumMismatch,
                     DenominatorNotCleared, DenominatorVanishes,
                     DimensionMismatch, InconsistentWindow, IntegralParameter,
                     KernelError, LevelMismatch, NonDivisible, NotDominant,
                     NotExact, NotInvertible, NotSimpleAffineRoot,
                     NotWInvariant, UnsupportedGroup, UnsupportedType,
                     WindowTooSmall, ZeroScalar)
from .exact_algebra import MultiPoly, OreFactor, OreFraction
from .filtration_kit import (GradedFilteredWindow, KoszulComplex,
                             filtration_shift_match, good_filtration_window,
                             kazhdan_regrade, kazhdan_regrade_inverse,
                             koszul_check)
from .kostant_slice import (big_cell_pair, big_cell_test, fiber_vs_big_cell,
                            kostant_normalize, parse_group, principal_triple,
                            slice_point, squarefree_multiplicities,
                            w0_representative)
from .nil_daha import (DahaElt, daha_act_poly, daha_generator, daha_mul,
                       degree_decompose, specialize_hbar, spherical_idempotent,
                       spherical_project, verify_presentation)
from .root_data import (RootDatum, WeylElt, build_root_datum,
                        fundamental_invariants, parse_type)
from .toda_modules import (HCWeightModule, InfChar, classify_parameter,
                           hc_weight_module, kazhdan_degree_bi_invariant,
                           same_block, scalar_of_ore_denominator,
                           simplicity_certificate)
from .torus_diffops import (DtElt, Sublattice, dt_embed_daha, dt_is_invariant,
                            dt_mul, dt_symmetrize, dt_weyl_act, isogeny_filter,
                            ore_move, require_invariant, sandwich_report,
                            shift_poly)

__version__ = "0.1.0"

__all__ = [
    "BadCoefficients", "ComponentMissesBigCell", "DahaElt", "DatumMismatch",
    "DenominatorNotCleared", "DenominatorVanishes", "DimensionMismatch",
    "DtElt", "GradedFilteredWindow", "HCWeightModule", "InconsistentWindow",
    "InfChar", "IntegralParameter", "KernelError", "KoszulComplex",
    "LevelMismatch", "MultiPoly", "NonDivisible", "NotDominant", "NotExact",
    "NotInvertible", "NotSimpleAffineRoot", "NotWInvariant", "OreFactor",
    "OreFraction", "RootDatum", "Sublattice", "UnsupportedGroup",
    "UnsupportedType", "WeylElt", "WindowTooSmall", "ZeroScalar",
    "big_cell_pair", "big_cell_test", "build_root_datum", "classify_parameter",
    "daha_act_poly", "daha_generator", "daha_mul", "degree_decompose",
    "dt_embed_daha", "dt_is_invariant", "dt_mul", "dt_symmetrize",
    "dt_weyl_act", "fiber_vs_big_cell", "filtration_shift_match",
    "fundamental_invariants", "good_filtration_window", "hc_weight_module",
    "isogeny_filter", "kazhdan_degree_bi_invariant", "kazhdan_regrade",
    "kazhdan_regrade_inverse", "kostant_normalize", "koszul_check",
    "ore_move", "parse_group", "parse_type", "principal_triple",
    "require_invariant", "same_block", "sandwich_report",
    "scalar_of_ore_denominator", "shift_poly", "simplicity_certificate",
    "slice_point", "specialize_hbar", "spherical_idempotent",
    "spherical_project", "squarefree_multiplicities", "verify_presentation",
    "w0_representative",
]
