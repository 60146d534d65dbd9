"""Expected volume of the Wiener sausage of a drifted Brownian motion around a ball."""

from .asymptotics import AsymptoticConstant, aleph, aleph_limit, aleph_phi_form, aleph_zero_limit, newtonian_capacity
from .driftless import DriftlessProfile, driftless_volume, sigma, tilde_sigma
from .errors import DomainError, NumericalError
from .laplace import InversionConfig, TransformPoint, driftless_transform, f_mu, invert, transform_L
from .params import ModelParams
from .sausage import CoefficientPair, VolumeResult, coefficients, expected_volume, invert_transform, truncation_bound
from .simulate import McEstimate, PathConfig, estimate_expected_volume, sample_path, sausage_volume_one_path, slope_check

__version__ = "0.1.0"

__all__ = [
    "AsymptoticConstant",
    "CoefficientPair",
    "DomainError",
    "DriftlessProfile",
    "InversionConfig",
    "McEstimate",
    "ModelParams",
    "NumericalError",
    "PathConfig",
    "TransformPoint",
    "VolumeResult",
    "aleph",
    "aleph_limit",
    "aleph_phi_form",
    "aleph_zero_limit",
    "coefficients",
    "driftless_transform",
    "driftless_volume",
    "estimate_expected_volume",
    "expected_volume",
    "f_mu",
    "invert",
    "invert_transform",
    "newtonian_capacity",
    "sample_path",
    "sausage_volume_one_path",
    "sigma",
    "slope_check",
    "tilde_sigma",
    "transform_L",
    "truncation_bound",
]
