"""
Relative (mixed) covariant derivatives of tensor fields along a submanifold.

An index may belong to the ambient space, to the tangent bundle or to the
normal bundle of the submanifold; each family is corrected with its own
connection: the coupling for ambient indices, the induced tangent connection
for tangent indices and the normal connection for normal indices.
"""

from typing import Sequence

from app.ambient import DOWN, HORIZONTAL, UP, VERTICAL, covariant_terms
from app.errors import VarianceMismatchError
from app.jets import Jet, as_jet

from .geometry import SubmanifoldJets

AMBIENT, TANGENT, NORMAL = "ambient", "tangent", "normal"


def relative_covariant_derivative(
    sub: SubmanifoldJets,
    tensor,
    slots: Sequence[tuple[str, str, str]],
    direction: str,
) -> Jet:
    """
    h- or v-relative covariant derivative, derivative index last.

    Args:
        sub: Submanifold geometry at the point
        tensor: Jet field on (u, v), one axis per index
        slots: Per index, (variance "up"/"down", family "ambient"/"tangent"/"normal",
            kind "H"/"V")
        direction: "h" (along the induced δ_δ) or "v" (along ∂̇_δ)

    Raises:
        VarianceMismatchError: If the declared indices do not fit the tensor
    """
    if direction not in ("h", "v"):
        raise ValueError(f"Direction must be 'h' or 'v', got {direction!r}")
    tensor = as_jet(tensor, sub.space)
    if len(slots) != tensor.ndim:
        raise VarianceMismatchError(
            f"Tensor of rank {tensor.ndim} declared with {len(slots)} indices"
        )

    tangent, normal, coupling = sub.tangent, sub.normal, sub.coupling
    blocks = {
        (AMBIENT, "h", HORIZONTAL): coupling.L00,
        (AMBIENT, "h", VERTICAL): coupling.L10,
        (AMBIENT, "v", HORIZONTAL): coupling.C01,
        (AMBIENT, "v", VERTICAL): coupling.C11,
        (TANGENT, "h", HORIZONTAL): tangent.L00,
        (TANGENT, "h", VERTICAL): tangent.L10,
        (TANGENT, "v", HORIZONTAL): tangent.C01,
        (TANGENT, "v", VERTICAL): tangent.C11,
        (NORMAL, "h", HORIZONTAL): normal.L00,
        (NORMAL, "h", VERTICAL): normal.L10,
        (NORMAL, "v", HORIZONTAL): normal.C01,
        (NORMAL, "v", VERTICAL): normal.C11,
    }
    extents = {AMBIENT: sub.n, TANGENT: sub.m, NORMAL: sub.n - sub.m}

    index_blocks = []
    for axis, (variance, family, kind) in enumerate(slots):
        if variance not in (UP, DOWN) or (family, direction, kind) not in blocks:
            raise VarianceMismatchError(f"Unknown index declaration {(variance, family, kind)}")
        if tensor.shape[axis] != extents[family]:
            raise VarianceMismatchError(
                f"Index {axis} has extent {tensor.shape[axis]}, "
                f"{family} indices need {extents[family]}"
            )
        index_blocks.append((variance, blocks[(family, direction, kind)]))

    base = sub.induced.delta(tensor) if direction == "h" else sub.induced.ydot(tensor)
    terms = covariant_terms(tensor, index_blocks)
    return base if terms is None else base + terms
