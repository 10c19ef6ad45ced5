"""Pointwise differential-operator values driving the membership inequalities.

Everything here is a function of z, f''/f' and Sf (plus the class parameters
alpha and p), so every operator is invariant under affine post-composition
f -> c f + d. Operators take an OperatorPoint, which pairs the sample z with
the function's jet there; degenerate samples (vanishing denominators inside
the 1e-12 floor) raise SampleExclusionError subclasses so scanning layers can
drop and count them.

The pole-at-origin families need two limit conventions, both resolved here:
phi3 at z=0 is taken as a radial limit (4 directions at |z|=1e-4, required to
agree within 1e-6), and a_p at p=0 is |phi3(0)|.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import catalog
from .errors import (
    CriticalPointError,
    IndeterminateSampleError,
    PhiUndefinedError,
    PoleProximityError,
)
from .jets import DEGENERACY_FLOOR, Jet3, schwarzian

_FLOOR = DEGENERACY_FLOOR


@dataclass(frozen=True, slots=True)
class OperatorPoint:
    """A sample z inside the disk together with the function's jet at z."""

    z: complex
    jet: Jet3

    def __post_init__(self):
        if abs(self.z) >= 1.0:
            raise ValueError(f"sample {self.z!r} is not inside the unit disk")
        if self.jet.base_point != self.z:
            raise ValueError("jet was taken at a different point")
        if abs(self.jet.v1) < _FLOOR:
            raise CriticalPointError(f"f'({self.z!r}) vanishes")

    @staticmethod
    def at(spec: catalog.FamilySpec, z: complex) -> "OperatorPoint":
        z = complex(z)
        return OperatorPoint(z, spec.eval_jet(z))

    @property
    def pre_schwarzian(self) -> complex:
        return self.jet.v2 / self.jet.v1


def a_f(pt: OperatorPoint) -> complex:
    """A_f(z) = ((1-|z|^2) f''/f' - 2 conj(z))/2; |A_f| >= 1 marks concavity."""
    z = pt.z
    return 0.5 * ((1.0 - abs(z) ** 2) * pt.pre_schwarzian - 2.0 * z.conjugate())


def phi_of(pt: OperatorPoint) -> complex:
    """phi(z) = z + 2 f'/f''; a disk self-map for concave f."""
    if abs(pt.jet.v2) < _FLOOR:
        raise PhiUndefinedError(f"f''({pt.z!r}) vanishes; phi is undefined")
    return pt.z + 2.0 * pt.jet.v1 / pt.jet.v2


def schwarzian_norm(pt: OperatorPoint) -> float:
    """|Sf(z)| (1-|z|^2)^2, the invariant Schwarzian magnitude."""
    return abs(schwarzian(pt.jet)) * (1.0 - abs(pt.z) ** 2) ** 2


def convexity_functional(pt: OperatorPoint) -> float:
    """|Sf|(1-|z|^2)^2 + 2|(w - conj z)/(1 - z w)|^2 with w = P/(2 + zP).

    At most 2 exactly for convex maps; used as a cross-check against the
    concavity tests, which sit on the opposite side of the dichotomy.
    """
    z, p = pt.z, pt.pre_schwarzian
    den = 2.0 + z * p
    if abs(den) < _FLOOR:
        raise PhiUndefinedError(f"2 + z f''/f' vanishes at {z!r}")
    w = p / den
    den2 = 1.0 - z * w
    if abs(den2) < _FLOOR:
        raise PhiUndefinedError(f"1 - z varphi vanishes at {z!r}")
    return schwarzian_norm(pt) + 2.0 * abs((w - z.conjugate()) / den2) ** 2


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (1.0 < alpha <= 2.0):
        raise ValueError(f"alpha must lie in (1, 2], got {alpha!r}")
    return alpha


def co_alpha_lhs(pt: OperatorPoint, alpha: float) -> float:
    """Re{(alpha+1)/2 * (1+z)/(1-z) - 1 - z f''/f'}; positive for members."""
    alpha = _check_alpha(alpha)
    z = pt.z
    val = 0.5 * (alpha + 1.0) * (1.0 + z) / (1.0 - z) - 1.0 - z * pt.pre_schwarzian
    return val.real


def co_alpha_E(pt: OperatorPoint, alpha: float) -> complex:
    """E(z) = ((alpha+1)/(1-z) - f''/f')/(alpha-1), the Schwarz transform."""
    alpha = _check_alpha(alpha)
    z = pt.z
    return ((alpha + 1.0) / (1.0 - z) - pt.pre_schwarzian) / (alpha - 1.0)


def q_term(p: float, z: complex) -> complex:
    """q(z) = 2p/(z-p) - 2pz/(1-pz); identically 0 when p = 0."""
    p = float(p)
    if not (0.0 <= p < 1.0):
        raise ValueError(f"p must lie in [0, 1), got {p!r}")
    if p == 0.0:
        return 0j
    z = complex(z)
    if abs(z - p) < _FLOOR:
        raise PoleProximityError(f"q has its pole at {p!r}")
    den = 1.0 - p * z
    if abs(den) < _FLOOR:
        raise PoleProximityError(f"1 - pz vanishes at {z!r}")
    return 2.0 * p / (z - p) - 2.0 * p * z / den


def m_operator(pt: OperatorPoint, p: float) -> complex:
    """M(z) = 1 + z f''/f' + q(z); Re M < 0 characterizes pole-p members."""
    return 1.0 + pt.z * pt.pre_schwarzian + q_term(p, pt.z)


def varphi_p(pt: OperatorPoint, p: float) -> complex:
    """The interior-pole Schwarz factor phi_p(z) (equals omega(z)/z).

    phi_p = [(z-p)P + 2 - 2p(z-p)/(1-pz)] / [z(z-p)P + 2p - 2pz(z-p)/(1-pz)]
    with P = f''/f'; |phi_p| <= 1 on the disk for pole-p members.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    z, P = pt.z, pt.pre_schwarzian
    den0 = 1.0 - p * z
    if abs(den0) < _FLOOR:
        raise PoleProximityError(f"1 - pz vanishes at {z!r}")
    w = (z - p) / den0
    num = (z - p) * P + 2.0 - 2.0 * p * w
    den = z * (z - p) * P + 2.0 * p - 2.0 * p * z * w
    if abs(den) < _FLOOR:
        raise IndeterminateSampleError(f"sample indeterminate: phi_p at {z!r}")
    return num / den


def thm3_phis(pt: OperatorPoint) -> tuple[complex, complex]:
    """(phi3, Phi) with phi3 = (z f'' + 2f')/(z^3 f'') and
    Phi = (conj z - z phi3)/(1 - z^2 phi3).

    Undefined at z=0; pole-at-origin callers use thm3_phi3_origin instead.
    """
    z = pt.z
    v1, v2 = pt.jet.v1, pt.jet.v2
    if abs(v2) < _FLOOR:
        raise PhiUndefinedError(f"f''({z!r}) vanishes; phi3 is undefined")
    den = z ** 3 * v2
    if abs(den) < _FLOOR:
        raise IndeterminateSampleError(
            f"sample indeterminate: phi3 denominator z^3 f'' ~ 0 at {z!r}"
        )
    phi3 = (z * v2 + 2.0 * v1) / den
    den2 = 1.0 - z * z * phi3
    if abs(den2) < _FLOOR:
        raise PhiUndefinedError(f"1 - z^2 phi3 vanishes at {z!r}")
    big_phi = (z.conjugate() - z * phi3) / den2
    return phi3, big_phi


_LIMIT_RADIUS = 1e-4
_LIMIT_DIRS = (1.0 + 0j, 1j, -1.0 + 0j, -1j)
_LIMIT_AGREE = 1e-6


def thm3_phi3_origin(spec: catalog.FamilySpec) -> complex:
    """Radial-limit value of phi3 at z=0 (a removable singularity for the
    pole-at-origin families): 4 directions at |z|=1e-4 must agree to 1e-6."""
    vals = []
    for d in _LIMIT_DIRS:
        z = _LIMIT_RADIUS * d
        vals.append(thm3_phis(OperatorPoint(z, spec.eval_jet(z)))[0])
    mean = sum(vals) / len(vals)
    scale = max(1.0, abs(mean))
    if max(abs(v - mean) for v in vals) > _LIMIT_AGREE * scale:
        raise IndeterminateSampleError(
            "sample indeterminate: phi3 radial limits at 0 disagree"
        )
    return mean


def a_p_of(spec: catalog.FamilySpec, p: float) -> float:
    """The Schwarz constant a_p = |phi_p(0)|, computed exactly from the jet
    at the origin; for p = 0 it degenerates to |phi3(0)|."""
    p = float(p)
    if not (0.0 <= p < 1.0):
        raise ValueError(f"p must lie in [0, 1), got {p!r}")
    if p == 0.0:
        return abs(thm3_phi3_origin(spec))
    return abs(varphi_p(OperatorPoint.at(spec, 0j), p))
