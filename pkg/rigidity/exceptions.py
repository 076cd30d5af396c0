"""
Exception hierarchy shared by the rigidity and finitefield apps.

The certify app maps these onto stable exit codes.
"""


class RigidityLabError(Exception):
    """Base class for every error raised by the lab."""


class ShapeError(RigidityLabError, ValueError):
    """Raised when a parameter tuple violates a structural constraint."""


class InternalError(RigidityLabError):
    """Raised when a derived quantity contradicts its own definition."""


class ResourceError(RigidityLabError):
    """Raised when an enumeration would exceed the configured cap."""


class BudgetError(ResourceError):
    """Raised when a finite-field point enumeration would exceed the cap."""


class GradingError(RigidityLabError, ValueError):
    """Raised when a graded component is not homogeneous of its declared degree."""
