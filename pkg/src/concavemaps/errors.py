"""Error taxonomy shared across the package.

Two tiers matter to callers. `SampleExclusionError` and its children mean
"this particular sample cannot be evaluated"; grid scans and curve sampling
catch them, count the sample as excluded, and move on. Everything else
(`BasePointMismatchError`, `NonFiniteJetError`, `SpecParseError`,
`EmptyScanError`) signals a caller bug or unusable input and propagates.
"""

from __future__ import annotations


class SampleExclusionError(ValueError):
    """Evaluation is undefined or degenerate at this sample; skip and count it."""


class JetDivisionError(SampleExclusionError):
    """Division by a jet whose value is within the degeneracy floor of zero."""


class BranchCutError(SampleExclusionError):
    """log/pow operand within 1e-12 of the principal branch cut (-inf, 0]."""


class PoleProximityError(SampleExclusionError):
    """Evaluation point collides with a pole of the function."""


class CriticalPointError(SampleExclusionError):
    """f'(z) = 0: derivative ratios are undefined at this sample."""


class PhiUndefinedError(SampleExclusionError):
    """f''(z) = 0: the half-plane/Koebe-type phi transform is undefined."""


class IndeterminateSampleError(SampleExclusionError):
    """A transform denominator is degenerate or a removable limit failed to settle."""


class BasePointMismatchError(ValueError):
    """Binary jet operation on jets anchored at different base points."""


class NonFiniteJetError(ValueError):
    """A jet operation produced a non-finite component (overflow or NaN)."""


class SpecParseError(ValueError):
    """Malformed function-spec string; carries the offending position."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EmptyScanError(RuntimeError):
    """Every sample of a scan was excluded; no margin statistics exist."""
