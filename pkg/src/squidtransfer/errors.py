"""Exception hierarchy shared by every module."""


class SquidTransferError(Exception):
    pass


class DomainError(SquidTransferError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OutOfRangeError(SquidTransferError, IndexError):
    """An index exceeds the stored truncation."""


class IntegrityError(SquidTransferError, ValueError):
    """A density matrix or coefficient set violates its invariants."""


class TruncationError(SquidTransferError, RuntimeError):
    """Amplitude leaked onto the photon cutoff level during evolution."""

    def __init__(self, magnitude, n_cut):
        self.magnitude = magnitude
        self.n_cut = n_cut
        super().__init__(
            f"amplitude {magnitude:.3e} reached the cutoff level n_cut={n_cut}"
        )


class ValidationError(SquidTransferError, ValueError):
    """A sweep or run configuration is malformed."""
