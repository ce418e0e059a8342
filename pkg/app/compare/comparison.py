"""
Intrinsic versus induced tangent geometry of a submanifold at one point.

SubmanifoldComparison holds one SubmanifoldJets expansion and the intrinsic
Cartan geometry of F̌ expanded in the same jet space, so that the intrinsic
nonlinear connection N̊ and the induced one Ň are fields on the same (u, v)
variables. Every deformation object is computed in two ways where a closed
form exists: directly from its definition (the oracle path) and from the
printed closed form (the literal path). Literal readings of formulas with
undefined symbols are documented next to the method that evaluates them.

Index storage follows the ambient module: L[a, b, c] = L^a_bc, derivative
index last, curvature blocks [b, a, c, d].
"""

import logging
from functools import cached_property
from typing import NamedTuple

import numpy as np

from app.ambient import AmbientJets, ConnectionField, CurvatureBlocks
from app.ambient.oracle import frame_coefficients
from app.jets import Jet, concatenate, constant, einsum
from app.metric import MetricModel
from app.submanifold import Immersion, SubmanifoldJets

from .intrinsic import IntrinsicModel

logger = logging.getLogger("ENGINE")

CURVATURE_DIFFERENCES = {"RH": "h00", "RV": "v01", "PH": "v10", "PV": "v11"}


class Deltas(NamedTuple):
    """Differences of the horizontal blocks, L̊00 − L00 and L̊10 − L10."""

    H00: np.ndarray
    V10: np.ndarray


class DeformationBlocks(NamedTuple):
    """Deformation tensor of (intrinsic, induced tangent) in the intrinsic adapted frame."""

    H00: np.ndarray
    V00: np.ndarray
    H10: np.ndarray
    V10: np.ndarray


class SubmanifoldComparison:
    """
    Intrinsic and induced tangent connections of `immersion` in `model` at (u, v).

    Args:
        model: Ambient metric
        immersion: Immersion into the ambient chart
        u: Submanifold point
        v: Fiber point
        order: Jet order; defaults to ENGINE_JET_ORDER

    Raises:
        DomainError: If either geometry is singular at the point
    """

    def __init__(self, model: MetricModel, immersion: Immersion, u, v, order: int | None = None):
        self.sub = SubmanifoldJets(model, immersion, u, v, order=order)
        self.intrinsic_model = IntrinsicModel(model, immersion)
        self.m = self.sub.m
        logger.debug(f"Comparing intrinsic and induced geometry at u={self.sub.u}, v={self.sub.v}")

    def __repr__(self):
        return f"<{type(self).__name__}(sub={self.sub!r})>"

    @cached_property
    def intrinsic(self) -> AmbientJets:
        return AmbientJets(self.intrinsic_model, self.sub.u, self.sub.v, order=self.sub.order)

    @property
    def tangent(self) -> ConnectionField:
        return self.sub.tangent

    # nonlinear connections

    @cached_property
    def D(self) -> Jet:
        """D = N̊ − Ň."""
        return self.intrinsic.nonlinear - self.sub.induced_nonlinear

    @cached_property
    def D101(self) -> Jet:
        """∂̇_γ D^α_β stored [α, β, γ]."""
        return self.sub.induced.ydot(self.D)

    @cached_property
    def D100(self) -> Jet:
        """Correction of the horizontal bracket torsion, R̊01 = Ř01 + D100."""
        dD = self.sub.induced.delta(self.D)
        yN = self.sub.induced.ydot(self.intrinsic.nonlinear)
        return (
            dD
            - dD.transpose(0, 2, 1)
            + einsum("db,agd->abg", self.D, yN)
            - einsum("dg,abd->abg", self.D, yN)
        )

    def adapted_basis_sides(self, f) -> tuple[np.ndarray, np.ndarray]:
        """δ̊_α f and δ_α f − D^β_α ∂̇_β f for a scalar field f on (u, v)."""
        induced = self.sub.induced
        lhs = self.intrinsic.adapted.delta(f)
        rhs = induced.delta(f) - einsum("ba,b->a", self.D, induced.ydot(f))
        return lhs.value, rhs.value

    def bracket_differences(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        """
        (closed form, oracle) for the R01 and B differences, both intrinsic − induced.

        R01 = −R, so the R01 oracle is R(induced) − R(intrinsic).
        """
        intrinsic = self.intrinsic.adapted.brackets()
        induced = self.sub.induced.brackets()
        return {
            "r": (self.D100.value, (induced.R - intrinsic.R).value),
            "b": (self.D101.value, (intrinsic.B - induced.B).value),
        }

    @cached_property
    def connection_difference_literal(self) -> np.ndarray:
        """
        The printed closed form of D, g_ᾱ^α_β K^ᾱ_β v^β, read as
        g^αε C_ᾱεβ K^ᾱ_γ v^γ with C_ᾱεβ the normal Cartan tensor.
        """
        sub = self.sub
        return einsum(
            "xe,keb,kg,g->xb", sub.induced_inverse.value, self._normal_cartan, sub.K.value, sub.v
        )

    @cached_property
    def _normal_cartan(self) -> np.ndarray:
        """∂̇_d g_bc B^d_ᾱ B^b_β B^c_γ stored [ᾱ, β, γ]."""
        sub = self.sub
        return einsum(
            "bca,ak,bi,cj->kij", sub.g_dy.value, sub.B_bar.value, sub.B.value, sub.B.value
        )

    # metrical connections

    @cached_property
    def deltas(self) -> Deltas:
        connection = self.intrinsic.connection
        return Deltas(
            H00=(connection.L00 - self.tangent.L00).value,
            V10=(connection.L10 - self.tangent.L10).value,
        )

    def c_blocks(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        connection = self.intrinsic.connection
        return {
            "c01": (connection.C01.value, self.tangent.C01.value),
            "c11": (connection.C11.value, self.tangent.C11.value),
        }

    @cached_property
    def _literal_inputs(self) -> dict[str, np.ndarray]:
        sub = self.sub
        induced = sub.induced
        return {
            "gi": sub.induced_metric.value,
            "ginv": sub.induced_inverse.value,
            "dgi": induced.ydot(sub.induced_metric).value,
            "g": sub.g.value,
            "g_inv": sub.g_inv.value,
            "g_dy": sub.g_dy.value,
            "B": sub.B.value,
            "B2": sub.B2.value,
            "Bbar": sub.B_bar.value,
            "Bdual": sub.B_dual.value,
            "dBdual": induced.ydot(sub.B_dual).value,
            "K": sub.K.value,
            "transport": sub.transport.value,
            "D": self.D.value,
            "D101": self.D101.value,
            "s": float(sub.lift_factor.value),
            "ds": sub.lift_factor_dy.value,
        }

    def delta_h00_literal(self) -> np.ndarray:
        """
        Printed closed form of L̊00 − L00.

        The derivation written δ_1ε in the second bracket is read as ∂̇_ε.
        """
        x = self._literal_inputs
        ginv, K, D, dgi = x["ginv"], x["K"], x["D"], x["dgi"]
        cartan = self._normal_cartan
        raised = einsum("ae,keg->kag", ginv, cartan)
        K_up = einsum("ke,ea->ka", K, ginv)
        first = 0.5 * (einsum("kag,kb->abg", raised, K) - einsum("kbg,ka->abg", cartan, K_up))
        bracket = (
            einsum("dge,eb->dbg", dgi, D)
            + einsum("dbe,eg->dbg", dgi, D)
            - einsum("bge,ed->dbg", dgi, D)
        )
        return first - 0.5 * einsum("ad,dbg->abg", ginv, bracket)

    def delta_v10_literal(self) -> np.ndarray:
        """Printed closed form of L̊10 − L10."""
        return self.delta_v10_lift_terms() + self.delta_10_literal()

    def delta_v10_lift_terms(self) -> np.ndarray:
        """
        The two bracketed terms of the printed L̊10 − L10 carrying the 1/2h prefactor.

        The scalar h is read as the lift factor p²/‖y‖².
        """
        x = self._literal_inputs
        ginv, gi, D, dgi, s = x["ginv"], x["gi"], x["D"], x["dgi"], x["s"]
        w = einsum("bk,ks,b->s", x["Bbar"], x["K"], x["ds"])
        first = -(
            einsum("as,s,bg->abg", ginv, w, gi) - einsum("as,b,sg->abg", ginv, w, gi)
        ) / (2 * s)
        bracket = (
            einsum("bge,es->sbg", dgi, D)
            - einsum("sge,eb->sbg", dgi, D)
            - einsum("bse,eg->sbg", dgi, D)
        )
        second = einsum("as,sbg->abg", ginv, bracket) / (2 * s)
        return first + second

    def delta_10_literal(self) -> np.ndarray:
        """
        Printed closed form of the frame part of L̊10 − L10.

        In the g_bd B^b_β B^a_δγ term the free index d is read as a.
        """
        x = self._literal_inputs
        ginv, gi, Bdual, dBdual = x["ginv"], x["gi"], x["Bdual"], x["dBdual"]
        B, B2, transport, D, D101 = x["B"], x["B2"], x["transport"], x["D"], x["D101"]
        terms = (
            0.5 * einsum("xaP,aQ->xPQ", dBdual, transport)
            - 0.5 * einsum("xa,aPQ->xPQ", Bdual, B2)
            - 0.5
            * einsum(
                "af,xa,bP,dk,bfd,kQ->xPQ", x["g_inv"], Bdual, B, x["Bbar"], x["g_dy"], x["K"]
            )
            - 0.5 * einsum("xd,sa,aQd,sP->xPQ", ginv, Bdual, B2, gi)
            - 0.5 * einsum("xd,sP,saQ,ad->xPQ", ginv, gi, dBdual, transport)
            + einsum("xd,ba,bP,adQ->xPQ", ginv, x["g"], B, B2)
            + 0.5 * D101.transpose(0, 2, 1)
        )
        bracket = einsum("xd,eQ,Pde->xPQ", ginv, D, x["dgi"]) + einsum(
            "xd,sQd,sP->xPQ", ginv, D101, gi
        )
        return terms - 0.5 * bracket

    # deformation tensor

    @cached_property
    def deformation(self) -> DeformationBlocks:
        """
        Deformation tensor from both connections applied to the intrinsic adapted frame.

        The frame (δ̊_α, ∂̇_α) is written in the induced adapted frame (δ_α, ∂̇_α)
        with the matrix P; the induced tangent connection is transformed into
        it and subtracted from the intrinsic coefficients.
        """
        m = self.m
        space = self.sub.space
        identity, zero = constant(space, np.eye(m)), constant(space, np.zeros((m, m)))
        DT = self.D.transpose(1, 0)
        top = concatenate([identity, -DT], axis=1)
        P = concatenate([top, concatenate([zero, identity], axis=1)])
        P_inv = np.eye(2 * m)
        P_inv[:m, m:] = DT.value

        dP = self.tangent.frame_derivative(P).value
        P = P.value
        along = einsum("cq,baq->bac", P, dP)
        tangent = frame_coefficients(self.tangent).value
        intrinsic = frame_coefficients(self.intrinsic.connection).value
        moved = along.transpose(1, 0, 2) + einsum("bf,cq,afq->abc", P, P, tangent)
        full = intrinsic - einsum("abc,ax->xbc", moved, P_inv)
        h, v = slice(0, m), slice(m, 2 * m)
        return DeformationBlocks(
            H00=full[h, h, h], V00=full[v, h, h], H10=full[h, v, h], V10=full[v, v, h]
        )

    def deformation_printed(self) -> DeformationBlocks:
        """Printed components of the deformation tensor, evaluated on the oracle deltas."""
        D = self.D
        induced, tangent = self.sub.induced, self.tangent
        deltas = self.deltas
        C01, C11 = tangent.C01.value, tangent.C11.value
        H00 = deltas.H00 + einsum("pg,abp->abg", D.value, C01)
        V00 = (
            einsum("ebg,ae->abg", H00, D.value)
            + induced.delta(D).value
            + einsum("pb,apg->abg", D.value, tangent.L10.value)
            - einsum("eg,abe->abg", D.value, induced.ydot(D).value)
            - einsum("eg,pb,ape->abg", D.value, D.value, C11)
            - einsum("ae,ebg->abg", D.value, tangent.L00.value + deltas.H00)
        )
        V10 = deltas.V10 + einsum("pg,abp->abg", D.value, C11)
        return DeformationBlocks(H00=H00, V00=V00, H10=np.zeros_like(H00), V10=V10)

    def deformation_v10_literal(self) -> np.ndarray:
        """V10 component as printed, with C01 in place of C11."""
        return self.deltas.V10 + einsum("pg,abp->abg", self.D.value, self.tangent.C01.value)

    # torsion

    def torsion_pairs(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        intrinsic = self.intrinsic.connection.torsion()
        tangent = self.tangent.torsion()
        zero = np.zeros((self.m,) * 3)
        P11 = tangent.P11.value + self.D101.value - self.deltas.V10.transpose(0, 2, 1)
        return {
            "t00_intrinsic": (intrinsic.T00.value, zero),
            "s11_intrinsic": (intrinsic.S11.value, zero),
            "s11_tangent": (tangent.S11.value, zero),
            "p10": (intrinsic.P10.value, tangent.P10.value),
            "r01": (intrinsic.R01.value, tangent.R01.value + self.D100.value),
            "p11": (intrinsic.P11.value, P11),
        }

    def tangent_t00(self) -> np.ndarray:
        return self.tangent.torsion().T00.value

    def p11_literal(self) -> np.ndarray:
        tangent = self.tangent.torsion()
        literal = self.delta_v10_literal()
        return tangent.P11.value + self.D101.value - literal.transpose(0, 2, 1)

    # curvature

    @cached_property
    def curvatures(self) -> dict[str, CurvatureBlocks]:
        """Intrinsic and induced tangent curvature blocks from coefficients truncated to order 2."""
        intrinsic = self.intrinsic.connection.truncate(2)
        tangent = self.tangent.truncate(2)
        adapted = ConnectionField(
            self.m,
            tangent.horizontal_slots,
            tangent.vertical_slots,
            intrinsic.N,
            tangent.L00,
            tangent.L10,
            tangent.C01,
            tangent.C11,
        )
        return {
            "intrinsic": intrinsic.curvature(),
            "tangent": tangent.curvature(),
            "intrinsic_adapted": adapted.curvature(),
        }

    def curvature_differences(self) -> dict[str, np.ndarray]:
        """
        Printed closed forms of intrinsic − tangent curvature, on the oracle deltas.

        The deltas enter as jets of L̊ − L with the derivatives of the induced
        adapted frame. In the C01 D100 term of the horizontal block the doubled
        lower index is read as the pair of differentiation indices.
        """
        tangent = self.tangent.truncate(2)
        intrinsic = self.intrinsic.connection.truncate(2)
        D = self.D.truncate(2)
        D100, D101 = self.D100.value, self.D101.value
        delta, ydot = tangent.delta, tangent.ydot
        delta_h = intrinsic.L00 - tangent.L00
        delta_v = intrinsic.L10 - tangent.L10

        L, C = tangent.L00, tangent.C01
        dH, yH, yL = delta(delta_h), ydot(delta_h), ydot(L)
        h00 = (
            dH.transpose(1, 0, 2, 3)
            - dH.transpose(1, 0, 3, 2)
            - einsum("abce,ed->bacd", yL + yH, D)
            + einsum("abde,ec->bacd", yL + yH, D)
            + einsum("sbc,asd->bacd", L, delta_h)
            + einsum("sbc,asd->bacd", delta_h, L)
            - einsum("sbd,asc->bacd", L, delta_h)
            - einsum("sbd,asc->bacd", delta_h, L)
            + einsum("abs,scd->bacd", C.value, D100)
        )

        L, C = tangent.L10, tangent.C11
        dV, yV, yL = delta(delta_v), ydot(delta_v), ydot(L)
        v01 = (
            einsum("abde,ec->bacd", yL, D)
            - einsum("abce,ed->bacd", yL, D)
            + 0.5 * (dV.transpose(1, 0, 2, 3) - dV.transpose(1, 0, 3, 2))
            + 0.5 * (einsum("abde,ec->bacd", yV, D) - einsum("abce,ed->bacd", yV, D))
            + 0.5 * (einsum("ebc,aed->bacd", L, delta_v) - einsum("ebd,aec->bacd", L, delta_v))
            + 0.5 * (einsum("ebc,aed->bacd", delta_v, L) - einsum("ebd,aec->bacd", delta_v, L))
            + 0.25
            * (
                einsum("aed,ebc->bacd", delta_v, delta_v)
                - einsum("aec,ebd->bacd", delta_v, delta_v)
            )
            + einsum("abs,scd->bacd", C, delta_v)
        )

        C = tangent.C01
        v10 = (
            -einsum("aec,ebd->bacd", delta_h, C)
            + einsum("ebc,aed->bacd", delta_h, C)
            + einsum("abe,ecd->bacd", C.value, D101)
            + yH.transpose(1, 0, 2, 3)
            + einsum("sc,abds->bacd", D, ydot(C))
        )

        C = tangent.C11
        mixed = einsum("abe,edc->bacd", C, delta_v) - einsum("abe,ecd->bacd", C, delta_v)
        v11 = yV.transpose(1, 0, 2, 3) * 0.5 - (
            einsum("aec,ebd->bacd", delta_v, C) - einsum("aed,ebc->bacd", C, delta_v) - mixed
        ) * 0.5

        return {"h00": h00.value, "v01": v01.value, "v10": v10.value, "v11": v11.value}
