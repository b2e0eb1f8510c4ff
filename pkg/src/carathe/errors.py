"""Exception types shared across the package."""
from .geomkernel.config import InputError

__all__ = ["InputError", "ResourceError", "NoSelectionError", "NoPartitionError"]


class ResourceError(RuntimeError):
    """A materialization would exceed the configured face-count cap."""


class NoSelectionError(RuntimeError):
    """No face J of the constraint complex has 0 in conv A(J)."""


class NoPartitionError(RuntimeError):
    """No admissible labeling has a common point."""
