"""
adsharvest Error Hierarchy
==========================
Exceptions raised on purpose by the library.

Every evaluator raises one of these; outer surfaces (sweep engine, CLI)
turn them into status rows instead of letting them escape.
"""

from typing import Optional


class HarvestError(Exception):
    """Base class for all adsharvest errors."""


class InvalidParameter(HarvestError, ValueError):
    """A precondition on an input parameter was violated."""


class NonConvergence(HarvestError):
    """
    A quadrature rule or window series did not reach its tolerance.

    Args:
        message: Human-readable description
        where: The failing sub-term (e.g. "P_D^+ segment 3")
        estimate: Last error estimate reached before giving up
    """

    def __init__(self, message: str, where: str = "", estimate: Optional[float] = None):
        super().__init__(message)
        self.where = where
        self.estimate = estimate

    def __str__(self) -> str:
        text = super().__str__()
        if self.where:
            text = f"{text} [{self.where}]"
        if self.estimate is not None:
            text = f"{text} (error estimate {self.estimate:.3e})"
        return text

    def located(self, where: str) -> "NonConvergence":
        """Return a copy tagged with the enclosing sub-term."""
        inner = f"{where}: {self.where}" if self.where else where
        return NonConvergence(Exception.__str__(self), where=inner, estimate=self.estimate)


class PoleOnBoundary(HarvestError):
    """A principal-value window could not be built around a pole."""


class DegenerateConfiguration(HarvestError):
    """The detector configuration is coincident and the result diverges."""


class ExtrapolationUnstable(HarvestError):
    """The regulated sequence does not converge as the regulator shrinks."""
