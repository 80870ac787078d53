"""Exception types raised across the package."""


class NotACycle(ValueError):
    """Edge set is not a single Hamiltonian cycle on the expected vertices."""


class ZeroProbability(ValueError):
    """A projection kept no amplitude."""


class CapacityExceeded(RuntimeError):
    """The requested build would exceed the live-term budget or label width."""
