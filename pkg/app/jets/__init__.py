from .jet import (
    Jet,
    JetSpace,
    as_jet,
    compose,
    concatenate,
    constant,
    cos,
    det,
    einsum,
    exp,
    get_space,
    inv,
    log,
    polynomial,
    power,
    reciprocal,
    seed,
    sin,
    sqrt,
    stack,
    value_of,
)
from .partials import ScalarField, fd_partial, fd_tolerance, partial

__all__ = [
    "Jet",
    "JetSpace",
    "ScalarField",
    "as_jet",
    "compose",
    "concatenate",
    "constant",
    "cos",
    "det",
    "einsum",
    "exp",
    "fd_partial",
    "fd_tolerance",
    "get_space",
    "inv",
    "log",
    "partial",
    "polynomial",
    "power",
    "reciprocal",
    "seed",
    "sin",
    "sqrt",
    "stack",
    "value_of",
]
