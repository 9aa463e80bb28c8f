"""Exact shapes, discriminants and census of pure prime-degree fields Q(m^(1/p))."""

from .census import (
    CensusReport,
    RegionSpec,
    TypeFilter,
    count,
    disc_bound_to_radicand_bound,
    enumerate_tuples,
    equidistribution_scan,
    region_lattice_count,
    region_volume_prediction,
)
from .densities import Normalization, delta_q, delta_q_bruteforce, euler_product, predicted_constants
from .determinants import (
    h_minus_analytic,
    jacobian_det,
    maillet_class_number,
    shadow_jacobian_det,
)
from .fields import (
    PureField,
    Ramification,
    SCTuple,
    canonical_tuple,
    discriminant,
    field_from_tuple,
    integral_basis,
    orbit,
    pure_field,
)
from .radical import RadicalMonomial, RadicalSum
from .shapes import ShapeVector, ShapeWindow, gram, measure_window, shape_gram, shape_params

__version__ = "0.1.0"
