"""Exception types shared across the package.

Everything user-facing derives from DomainError so the CLI can map bad
physics/parameter states to a clean nonzero exit, distinct from usage errors.
"""


class DomainError(ValueError):
    """A request that is well-formed but outside the supported domain."""


class SizeGuardError(DomainError):
    """Lattice too large for an exhaustive 2^N operation (N > 24) or too small."""


class ContractViolation(DomainError):
    """Mismatched widths/axes or other inconsistent argument combinations."""


class DegenerateScalingError(DomainError):
    """Coefficient-magnitude average is not positive; no usable angle window."""


class DegenerateInputError(DomainError):
    """Input collapses to nothing usable (e.g. all mass clipped away)."""
