"""Exact affine Hecke algebras of GL_r and descriptor-level Bernstein data for GL_N(D)."""

from .coeff import SYMBOLIC, CoeffMode, Rat, RatFunc, parse_mode
from .errors import *  # noqa: F401,F403
from .hecke import HeckeConfig, HeckeElement, TensorElement, basis, gen, mul, relation_check, scalar, unit, zero
from .iso import phi, psi, verify_isomorphism
from .parser import evaluate, parse, pretty

__version__ = "0.1.0"
