"""Third-order Taylor jets over the complex numbers.

A `Jet3` carries the value and first three derivatives of an analytic
function at one base point. Sums, products, quotients and the elementary
functions exp/log/pow propagate derivatives exactly (Leibniz, quotient and
third-order chain rules), so nothing downstream ever finite-differences.
Third order is deliberately the ceiling: the Schwarzian derivative consumes
f''' and no consumer needs more.

Branch policy: `log` (and `pow`, which is exp(c*log(.))) uses the principal
branch with the cut on (-inf, 0]. An operand whose value lies within 1e-12
of the cut raises `BranchCutError`, so callers discard the sample instead of
silently jumping branches.

Jets are immutable; every operation returns a new jet. Binary operations
require both operands to sit at the same base point (exact complex equality)
and raise `BasePointMismatchError` otherwise. Plain numbers are lifted to
constant jets automatically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from numbers import Complex as _Number

from .errors import (
    BasePointMismatchError,
    BranchCutError,
    CriticalPointError,
    JetDivisionError,
    NonFiniteJetError,
)

# |value| below this counts as a zero denominator / branch-point hit.
DEGENERACY_FLOOR = 1e-12


def _isfinite(w: complex) -> bool:
    return cmath.isfinite(w)


@dataclass(frozen=True, slots=True)
class Jet3:
    """Value and first three derivatives of an analytic map at `base_point`."""

    base_point: complex
    v0: complex
    v1: complex
    v2: complex
    v3: complex

    def __post_init__(self):
        for name in ("base_point", "v0", "v1", "v2", "v3"):
            w = getattr(self, name)
            if not _isfinite(complex(w)):
                raise NonFiniteJetError(f"jet field {name} is not finite: {w!r}")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def variable(z: complex) -> "Jet3":
        """Jet of the identity map at z."""
        return Jet3(complex(z), complex(z), 1.0 + 0j, 0j, 0j)

    @staticmethod
    def constant(z: complex, c: complex) -> "Jet3":
        """Jet of the constant map c at z."""
        return Jet3(complex(z), complex(c), 0j, 0j, 0j)

    # -- helpers -------------------------------------------------------------

    def _lift(self, other) -> "Jet3":
        if isinstance(other, Jet3):
            if other.base_point != self.base_point:
                raise BasePointMismatchError(
                    f"base points differ: {self.base_point!r} vs {other.base_point!r}"
                )
            return other
        if isinstance(other, _Number):
            return Jet3.constant(self.base_point, complex(other))
        return NotImplemented  # type: ignore[return-value]

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet3(self.base_point, self.v0 + o.v0, self.v1 + o.v1,
                    self.v2 + o.v2, self.v3 + o.v3)

    __radd__ = __add__

    def __neg__(self) -> "Jet3":
        return Jet3(self.base_point, -self.v0, -self.v1, -self.v2, -self.v3)

    def __sub__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet3(self.base_point, self.v0 - o.v0, self.v1 - o.v1,
                    self.v2 - o.v2, self.v3 - o.v3)

    def __rsub__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self, o
        return Jet3(
            a.base_point,
            a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3 * a.v2 * b.v1 + 3 * a.v1 * b.v2 + a.v0 * b.v3,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet3":
        """Jet of 1/f. Quotient rule to third order."""
        if abs(self.v0) < DEGENERACY_FLOOR:
            raise JetDivisionError(
                f"reciprocal of a jet with |value| = {abs(self.v0):.3e} at "
                f"{self.base_point!r}"
            )
        w = 1.0 / self.v0
        w2 = w * w
        r1 = -self.v1 * w2
        r2 = (2 * self.v1 * self.v1 * w - self.v2) * w2
        r3 = (-self.v3 + (6 * self.v1 * self.v2 - 6 * self.v1 ** 3 * w) * w) * w2
        return Jet3(self.base_point, w, r1, r2, r3)

    def __truediv__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other) -> "Jet3":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.reciprocal()

    # -- elementary functions --------------------------------------------------

    def _compose(self, g0: complex, g1: complex, g2: complex, g3: complex) -> "Jet3":
        # Chain rule / Faa di Bruno at order 3 for g o f with g-derivatives
        # taken at f(base_point).
        f1, f2, f3 = self.v1, self.v2, self.v3
        return Jet3(
            self.base_point,
            g0,
            g1 * f1,
            g1 * f2 + g2 * f1 * f1,
            g1 * f3 + 3 * g2 * f1 * f2 + g3 * f1 ** 3,
        )

    def log(self) -> "Jet3":
        w = self.v0
        if abs(w) < DEGENERACY_FLOOR or (w.real <= 0.0 and abs(w.imag) <= 1e-12):
            raise BranchCutError(
                f"log operand {w!r} lies within 1e-12 of the cut (-inf, 0]"
            )
        iw = 1.0 / w
        return self._compose(cmath.log(w), iw, -iw * iw, 2 * iw ** 3)

    def exp(self) -> "Jet3":
        e = cmath.exp(self.v0)
        return self._compose(e, e, e, e)

    def pow(self, exponent: complex) -> "Jet3":
        """Principal-branch power, computed as exp(exponent * log(self))."""
        return (self.log() * exponent).exp()

    def __pow__(self, exponent) -> "Jet3":
        if isinstance(exponent, _Number):
            return self.pow(complex(exponent))
        return NotImplemented


def pre_schwarzian(jet: Jet3) -> complex:
    """f''/f' at the jet's base point."""
    if jet.v1 == 0:
        raise CriticalPointError(f"f'({jet.base_point!r}) = 0")
    out = jet.v2 / jet.v1
    if not _isfinite(out):
        raise NonFiniteJetError("pre-Schwarzian overflowed")
    return out


def schwarzian(jet: Jet3) -> complex:
    """Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 at the base point.

    Vanishes exactly on Moebius maps and is invariant under Moebius
    post-composition, which downstream code exploits to evaluate it across
    simple poles via jets of 1/f.
    """
    if jet.v1 == 0:
        raise CriticalPointError(f"f'({jet.base_point!r}) = 0")
    q = jet.v2 / jet.v1
    out = jet.v3 / jet.v1 - 1.5 * q * q
    if not _isfinite(out):
        raise NonFiniteJetError("Schwarzian overflowed")
    return out
