"""Leaf functions sleaf_n / cleaf_n and the geometry of the lemniscate of Bernoulli."""

from .geometry import (
    ConstructionFrame,
    LemniscateVariant,
    PlanarPoint,
    construction_frame_diagonal,
    construction_frame_horizontal,
    point_on_curve,
)
from .leaf_core import (
    LeafEval,
    LeafKind,
    arccleaf,
    arcsleaf,
    cleaf,
    leaf_derivative,
    ode_trajectory,
    pi_n,
    sleaf,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate

__version__ = "0.1.0"
