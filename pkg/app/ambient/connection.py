"""
N-linear connections as jet fields over a bundle chart.

A ConnectionField bundles a nonlinear connection N and the four coefficient
blocks (L00, L10, C01, C11) of an N-linear connection, all expanded as jets
in the same JetSpace. The space's variables are split into horizontal slots
(base coordinates) and vertical slots (fiber coordinates). The same class
serves the ambient Cartan connection, the intrinsic connection of a
submanifold and the induced tangent connection.

Index storage: L[a, b, c] = L^a_bc, derivative indices appended last,
curvature blocks stored [b, a, c, d].
"""

from typing import NamedTuple, Sequence

from app.errors import VarianceMismatchError
from app.jets import Jet, as_jet, concatenate, einsum

UP, DOWN = "up", "down"
HORIZONTAL, VERTICAL = "H", "V"


class Brackets(NamedTuple):
    """[δ_b, δ_c] = −R^a_bc ∂̇_a and [δ_b, ∂̇_c] = B^a_bc ∂̇_a."""

    R: Jet
    B: Jet


class TorsionBlocks(NamedTuple):
    T00: Jet
    R01: Jet
    P10: Jet
    P11: Jet
    S11: Jet


class CurvatureBlocks(NamedTuple):
    RH: Jet
    PH: Jet
    SH: Jet
    RV: Jet
    PV: Jet
    SV: Jet


def christoffel_forms(inverse, derivative: Jet) -> Jet:
    """
    Γ^a_bc = ½ m^ad (d_b m_dc + d_c m_bd − d_d m_bc).

    Args:
        inverse: Inverse matrix m^ad
        derivative: derivative[b, c, d] = d_d m_bc for any family of derivations
    """
    combined = (
        derivative.transpose(0, 2, 1)
        + derivative.transpose(1, 0, 2)
        - derivative.transpose(2, 0, 1)
    )
    return einsum("ad,dbc->abc", inverse, combined) * 0.5


def contract_last(tensor: Jet, matrix) -> Jet:
    """Contract the last index of `tensor` with the first index of `matrix`."""
    shape = tensor.shape
    flat = tensor.reshape(-1, shape[-1])
    out = einsum("rk,kj->rj", flat, matrix)
    return out.reshape(*shape[:-1], out.shape[-1])


def covariant_terms(tensor: Jet, index_blocks: Sequence[tuple[str, object]]) -> Jet | None:
    """
    Connection corrections of a covariant derivative, one per tensor index.

    Args:
        tensor: Tensor field, shape (*indices)
        index_blocks: Per index, (variance, block) with block[a, b, c] = Γ^a_bc along
            the differentiation direction c

    Returns:
        Sum of +Γ^a_fc T^..f.. for upper and −Γ^f_bc T_..f.. for lower indices,
        derivative index last; None for scalars
    """
    total = None
    for slot, (variance, block) in enumerate(index_blocks):
        moved = tensor.moveaxis(slot, -1)
        rest = moved.shape[:-1]
        flat = moved.reshape(-1, moved.shape[-1])
        if variance == UP:
            term = einsum("rf,afc->rac", flat, block)
        else:
            term = -einsum("rf,fbc->rbc", flat, block)
        term = term.reshape(*rest, term.shape[-2], term.shape[-1]).moveaxis(-2, slot)
        total = term if total is None else total + term
    return total


class ConnectionField:
    """
    Nonlinear connection plus N-linear connection blocks over a chart of a bundle.

    Args:
        dim: Fiber dimension k; N is k×k and every block k×k×k
        horizontal_slots: Jet variables of the base coordinates
        vertical_slots: Jet variables of the fiber coordinates
        N: Nonlinear connection N[a, b] = N^a_b
        L00, L10, C01, C11: Coefficient blocks; may be omitted when only the
            adapted derivatives are needed
    """

    def __init__(
        self,
        dim: int,
        horizontal_slots: Sequence[int],
        vertical_slots: Sequence[int],
        N: Jet,
        L00: Jet | None = None,
        L10: Jet | None = None,
        C01: Jet | None = None,
        C11: Jet | None = None,
    ):
        self.dim = dim
        self.horizontal_slots = tuple(horizontal_slots)
        self.vertical_slots = tuple(vertical_slots)
        if len(self.horizontal_slots) != dim or len(self.vertical_slots) != dim:
            raise ValueError(f"Connection of dimension {dim} needs {dim} slots of each kind")
        self.N = N
        self.L00, self.L10, self.C01, self.C11 = L00, L10, C01, C11

    def __repr__(self):
        return f"<{type(self).__name__}(dim={self.dim}, space={self.N.space!r})>"

    @property
    def space(self):
        return self.N.space

    @property
    def slots(self) -> tuple[int, ...]:
        return self.horizontal_slots + self.vertical_slots

    def with_blocks(self, L00: Jet, L10: Jet, C01: Jet, C11: Jet) -> "ConnectionField":
        return ConnectionField(
            self.dim, self.horizontal_slots, self.vertical_slots, self.N, L00, L10, C01, C11
        )

    def truncate(self, order: int) -> "ConnectionField":
        blocks = [
            None if block is None else block.truncate(order)
            for block in (self.L00, self.L10, self.C01, self.C11)
        ]
        return ConnectionField(
            self.dim, self.horizontal_slots, self.vertical_slots, self.N.truncate(order), *blocks
        )

    def _require_blocks(self) -> None:
        if any(block is None for block in (self.L00, self.L10, self.C01, self.C11)):
            raise ValueError("This operation needs all four connection blocks")

    # adapted derivatives

    def delta(self, f) -> Jet:
        """δ_c f = ∂_c f − N^b_c ∂̇_b f, derivative index last."""
        f = as_jet(f, self.space)
        return f.gradient(self.horizontal_slots) - contract_last(
            f.gradient(self.vertical_slots), self.N
        )

    def ydot(self, f) -> Jet:
        """∂̇_c f, derivative index last."""
        return as_jet(f, self.space).gradient(self.vertical_slots)

    def frame_derivative(self, f) -> Jet:
        """Derivatives along the 2k adapted vector fields (δ_c, then ∂̇_c)."""
        return concatenate([self.delta(f), self.ydot(f)], axis=-1)

    def brackets(self) -> Brackets:
        dN = self.delta(self.N)
        return Brackets(R=dN.transpose(0, 2, 1) - dN, B=self.ydot(self.N))

    def commutators(self, f) -> Brackets:
        """[δ_b, δ_c] f and [δ_b, ∂̇_c] f by repeated differentiation, stored [b, c]."""
        f = as_jet(f, self.space)
        if f.ndim:
            raise ValueError(f"Commutators act on scalar fields, got shape {f.shape}")
        df = self.delta(f)
        ddf = self.delta(df)
        return Brackets(
            R=ddf.transpose(1, 0) - ddf,
            B=self.delta(self.ydot(f)).transpose(1, 0) - self.ydot(df),
        )

    def bracket_action(self, f) -> Brackets:
        """−R^a_bc ∂̇_a f and B^a_bc ∂̇_a f, the right-hand sides of `commutators`."""
        brackets = self.brackets()
        df = self.ydot(f)
        return Brackets(
            R=-einsum("abc,a->bc", brackets.R, df),
            B=einsum("abc,a->bc", brackets.B, df),
        )

    def covariant_derivative(self, tensor, slots: Sequence[tuple[str, str]], direction: str) -> Jet:
        """
        h- or v-covariant derivative of a d-tensor field.

        Args:
            tensor: Coefficient field, one k-dimensional axis per index
            slots: Per index, (variance "up"/"down", kind "H"/"V")
            direction: "h" (along δ_c) or "v" (along ∂̇_c)

        Raises:
            VarianceMismatchError: If the declared indices do not match the tensor
        """
        self._require_blocks()
        tensor = as_jet(tensor, self.space)
        if len(slots) != tensor.ndim:
            raise VarianceMismatchError(
                f"Tensor of rank {tensor.ndim} declared with {len(slots)} indices"
            )
        if any(extent != self.dim for extent in tensor.shape):
            raise VarianceMismatchError(
                f"Tensor shape {tensor.shape} is not over dimension {self.dim}"
            )
        if direction not in ("h", "v"):
            raise ValueError(f"Direction must be 'h' or 'v', got {direction!r}")
        blocks = {
            ("h", HORIZONTAL): self.L00,
            ("h", VERTICAL): self.L10,
            ("v", HORIZONTAL): self.C01,
            ("v", VERTICAL): self.C11,
        }
        index_blocks = []
        for variance, kind in slots:
            if variance not in (UP, DOWN) or kind not in (HORIZONTAL, VERTICAL):
                raise VarianceMismatchError(f"Unknown index declaration {(variance, kind)}")
            index_blocks.append((variance, blocks[(direction, kind)]))
        base = self.delta(tensor) if direction == "h" else self.ydot(tensor)
        terms = covariant_terms(tensor, index_blocks)
        return base if terms is None else base + terms

    # d-tensors

    def torsion(self) -> TorsionBlocks:
        self._require_blocks()
        brackets = self.brackets()
        return TorsionBlocks(
            T00=self.L00 - self.L00.transpose(0, 2, 1),
            R01=-brackets.R,
            P10=self.C01,
            P11=brackets.B - self.L10.transpose(0, 2, 1),
            S11=self.C11 - self.C11.transpose(0, 2, 1),
        )

    def curvature(self) -> CurvatureBlocks:
        torsion = self.torsion()
        return CurvatureBlocks(
            RH=self._r_block(self.L00, self.C01, torsion.R01),
            PH=self._p_block(self.L00, self.C01, torsion.P11, HORIZONTAL),
            SH=self._s_block(self.C01),
            RV=self._r_block(self.L10, self.C11, torsion.R01),
            PV=self._p_block(self.L10, self.C11, torsion.P11, VERTICAL),
            SV=self._s_block(self.C11),
        )

    def _r_block(self, L: Jet, C: Jet, R01: Jet) -> Jet:
        dL = self.delta(L)
        return (
            dL.transpose(1, 0, 2, 3)
            - dL.transpose(1, 0, 3, 2)
            + einsum("fbc,afd->bacd", L, L)
            - einsum("fbd,afc->bacd", L, L)
            + einsum("abf,fcd->bacd", C, R01)
        )

    def _p_block(self, L: Jet, C: Jet, P11: Jet, kind: str) -> Jet:
        # C^a_bd|c with a, b of the block's kind and d vertical
        slots = [(UP, kind), (DOWN, kind), (DOWN, VERTICAL)]
        Ch = self.covariant_derivative(C, slots, "h")
        return (
            self.ydot(L).transpose(1, 0, 2, 3)
            - Ch.transpose(1, 0, 3, 2)
            + einsum("abf,fcd->bacd", C, P11)
        )

    def _s_block(self, C: Jet) -> Jet:
        dC = self.ydot(C)
        return (
            dC.transpose(1, 0, 2, 3)
            - dC.transpose(1, 0, 3, 2)
            + einsum("fbc,afd->bacd", C, C)
            - einsum("fbd,afc->bacd", C, C)
        )

    def metricity(self, g, h) -> dict[str, tuple[Jet, Jet]]:
        """
        Both sides of the four metricity identities.

        Returns:
            Mapping from block name to (derivative of the metric, connection terms)
        """
        self._require_blocks()
        return metricity_pairs(self, (self.L00, self.L10, self.C01, self.C11), g, h)


def metricity_pairs(
    field: ConnectionField, blocks: Sequence[Jet], g, h
) -> dict[str, tuple[Jet, Jet]]:
    """
    Metricity of coefficient blocks under the adapted derivatives of `field`.

    The blocks may act on a bundle other than the tangent one (the normal
    bundle of a submanifold); only their last index is a derivative index.

    Args:
        field: Supplies δ and ∂̇
        blocks: (L00, L10, C01, C11)
        g: Horizontal metric of the bundle
        h: Vertical metric of the bundle
    """
    L00, L10, C01, C11 = blocks
    pairs = {
        "h_g": (field.delta(g), L00, g),
        "v_g": (field.ydot(g), C01, g),
        "h_h": (field.delta(h), L10, h),
        "v_h": (field.ydot(h), C11, h),
    }
    return {
        name: (lhs, einsum("fac,fb->abc", block, metric) + einsum("fbc,af->abc", block, metric))
        for name, (lhs, block, metric) in pairs.items()
    }
