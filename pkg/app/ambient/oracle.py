"""
Commutator oracle for the curvature of an N-linear connection.

The oracle never uses the block formulas. It writes the 2k adapted vector
fields E_A = (δ_a, ∂̇_a) in natural coordinates, assembles the full connection
coefficients Γ^A_BC with ∇_{E_C} E_B = Γ^A_BC E_A, computes the frame brackets
[E_D, E_C] = Ω^F_DC E_F directly from the natural components, and evaluates

    R(E_D, E_C) E_B = ∇_{E_D}∇_{E_C} E_B − ∇_{E_C}∇_{E_D} E_B − ∇_{[E_D, E_C]} E_B.

Each of the six curvature blocks is one (H/V)-slice of the result.
"""

import itertools

import numpy as np

from app.jets import Jet, concatenate, einsum, fd_partial
from app.metric import MetricModel

from .connection import ConnectionField

BLOCKS = ("RH", "PH", "SH", "RV", "PV", "SV")

# (kind of a and b, kind of c, kind of d) for R(E_d, E_c) E_b = Curv^a_bcd E_a
_SLICES = {
    "RH": ("H", "H", "H"),
    "PH": ("H", "H", "V"),
    "SH": ("H", "V", "V"),
    "RV": ("V", "H", "H"),
    "PV": ("V", "H", "V"),
    "SV": ("V", "V", "V"),
}


def adapted_frame(field: ConnectionField) -> Jet:
    """E[A, μ]: natural components of δ_a (rows 0..k-1) and ∂̇_a (rows k..2k-1)."""
    k = field.dim
    N = field.N
    coeffs = np.zeros((2 * k, 2 * k, N.space.size))
    coeffs[np.arange(2 * k), np.arange(2 * k), 0] = 1.0
    coeffs[:k, k:, :] = -N.coeffs.transpose(1, 0, 2)
    return Jet(N.space, coeffs)


def frame_coefficients(field: ConnectionField) -> Jet:
    """Γ[A, B, C] of the connection in the adapted frame."""
    k = field.dim
    space = field.space
    coeffs = np.zeros((2 * k, 2 * k, 2 * k, space.size))
    h, v = slice(0, k), slice(k, 2 * k)
    coeffs[h, h, h] = field.L00.coeffs
    coeffs[h, h, v] = field.C01.coeffs
    coeffs[v, v, h] = field.L10.coeffs
    coeffs[v, v, v] = field.C11.coeffs
    return Jet(space, coeffs)


def frame_brackets(field: ConnectionField, frame: Jet) -> Jet:
    """Ω[F, D, C] with [E_D, E_C] = Ω^F_DC E_F."""
    k = field.dim
    derivative = frame.gradient(field.slots)
    along = einsum("dn,cmn->dcm", frame, derivative)
    natural = along - along.transpose(1, 0, 2)
    horizontal = natural[:, :, :k]
    vertical = natural[:, :, k:] + einsum("dcj,fj->dcf", horizontal, field.N)
    return concatenate([horizontal, vertical], axis=-1).transpose(2, 0, 1)


def commutator_curvature(field: ConnectionField) -> np.ndarray:
    """Curv[A, B, C, D] = component A of R(E_D, E_C) E_B, at the expansion point."""
    frame = adapted_frame(field)
    gamma = frame_coefficients(field)
    omega = frame_brackets(field, frame)
    along = einsum("abcn,dn->abcd", gamma.gradient(field.slots), frame)
    curvature = (
        along
        - along.transpose(0, 1, 3, 2)
        + einsum("fbc,afd->abcd", gamma, gamma)
        - einsum("fbd,afc->abcd", gamma, gamma)
        - einsum("fdc,abf->abcd", omega, gamma)
    )
    return curvature.value


def commutator_curvature_oracle(field: ConnectionField, block: str) -> np.ndarray:
    """
    One curvature block from the commutator oracle, stored [b, a, c, d].

    Only first derivatives of the coefficients enter, so the field is truncated
    to order 2 before the frame algebra.

    Args:
        field: Connection with all four blocks
        block: One of RH, PH, SH, RV, PV, SV
    """
    if block not in _SLICES:
        raise ValueError(f"Unknown curvature block {block!r}, expected one of {BLOCKS}")
    return oracle_blocks(field)[block]


def oracle_blocks(field: ConnectionField) -> dict[str, np.ndarray]:
    field = field.truncate(min(2, field.space.order))
    full = commutator_curvature(field)
    k = field.dim
    ranges = {"H": slice(0, k), "V": slice(k, 2 * k)}
    blocks = {}
    for name, (ab, c, d) in _SLICES.items():
        part = full[ranges[ab], ranges[ab], ranges[c], ranges[d]]
        blocks[name] = part.transpose(1, 0, 2, 3)
    return blocks


def fd_christoffel(model: MetricModel, x) -> np.ndarray:
    """
    Levi-Civita symbols of a Riemannian metric from central differences.

    g_ij(x) is recovered from F² by polarization, ¼(F²(x, e_i + e_j) − F²(x, e_i − e_j)),
    and differentiated with `fd_partial`; no jet arithmetic is involved.

    Returns:
        Γ^a_bc stored [a, b, c]

    Raises:
        ValueError: If F² is not quadratic in y
    """
    if not model.is_riemannian:
        raise ValueError("Polarization recovers g only for Riemannian metrics")
    x = np.asarray(x, dtype=float)
    n = model.n
    basis = np.eye(n)

    def component(i: int, j: int):
        def g_ij(x, y):
            plus = float(model.f2(x, basis[i] + basis[j]))
            minus = float(model.f2(x, basis[i] - basis[j]))
            return 0.25 * (plus - minus)

        return g_ij

    fiber = np.zeros(n)
    g = np.array([[component(i, j)(x, fiber) for j in range(n)] for i in range(n)])
    # dg[i, j, k] = ∂_k g_ij
    dg = np.zeros((n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        multi_index = [0] * (2 * n)
        multi_index[k] = 1
        dg[i, j, k] = fd_partial(component(i, j), x, fiber, multi_index)
    g_inv = np.linalg.inv(g)
    return 0.5 * (
        np.einsum("ad,dcb->abc", g_inv, dg)
        + np.einsum("ad,bdc->abc", g_inv, dg)
        - np.einsum("ad,bcd->abc", g_inv, dg)
    )
