"""Exact computations for the affine Yangian of gl(1) in its plane-partition
and free-boson realizations: Y_lambda, 3-Jack polynomials and the
Hurwitz-Kontsevich type partition functions they diagonalize."""

from .kernels import BACKEND
from .scalar import ModelParams, Scalar, h1, h2, h3, parse, psi0, w
from .diagrams import Box, Partition2D, PlanePartition, enumerate_pp, parse_shape
from .polyalg import OperatorFactory, PowerSumPoly, inner
from .symfun import SymFun, build, build_along
from .yangian import norm, psi_pi, transport, verify_relations

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ModelParams", "Scalar", "h1", "h2", "h3", "w", "parse", "psi0",
    "Box", "Partition2D", "PlanePartition", "enumerate_pp", "parse_shape",
    "OperatorFactory", "PowerSumPoly", "inner", "SymFun", "build", "build_along",
    "norm", "psi_pi", "transport", "verify_relations",
]
