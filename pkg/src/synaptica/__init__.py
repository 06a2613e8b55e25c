"""Computational kernel for synaptic algebras.

Two concrete models (:class:`MatrixModel`, :class:`SetFnModel`), the
construction calculus, the orthomodular projection lattice, spectral
resolution, and a randomized audit of the axioms and theorems.
"""
from .core import (
    DEFAULT_TOL,
    Element,
    ModelMismatchError,
    NotInAlgebraError,
    NotInvertibleError,
    NotMeasurableError,
    NotPositiveError,
    NotProjectionError,
    NotRegularError,
    NotSymmetricError,
    Projection,
    SynapticError,
    SynapticModel,
    Tolerances,
    as_projection,
    carrier,
    close,
    commutes,
    in_bicommutant,
    is_positive,
    jordan_product,
    leq,
    order_unit_norm,
)
from .matrix_model import MatrixModel, eig, random_commuting_family, random_element, random_projection, sqrt_psd
from .setfn_model import FieldOfSets, SetFnModel, boolean_realize, field_generate, simple_fn
from .calculus import (
    absolute,
    corner,
    inverse,
    is_invertible,
    is_regular,
    neg_part,
    polar,
    pos_part,
    pseudo_inverse,
    quadratic_map,
    sasaki_map,
    signum,
)
from .lattice import compatible, join, meet, ortho, orthogonal, sasaki_projection
from .spectral import (
    ascending_approx,
    eigenprojection_at,
    resolution_at,
    riemann_approx,
    simple_decompose,
    spectral_bounds,
    spectral_resolution,
    spectrally_commutes,
    spectrum,
)

__version__ = "0.1.0"
