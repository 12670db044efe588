"""Exception types shared across the package."""


class QTurboError(Exception):
    """Base class for all package errors."""


class ValidationError(QTurboError):
    """Malformed or inconsistent input: bad dimensions, a matrix that is not
    symplectic, a seed file that does not parse, a permutation that is not a
    permutation."""


class ResourceBudgetError(QTurboError):
    """An enumeration would exceed the configured budget (memory states,
    state-diagram edges, search attempts). Raised instead of silently
    truncating."""


class CatastrophicSeedError(ValidationError):
    """A distance spectrum was requested for a catastrophic encoder, whose
    counts diverge. Carries one offending cycle as a diagnostic."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle


class SisoFailure(QTurboError):
    """A SISO message became identically zero: the syndrome is inconsistent
    with the support of the priors. Carries the pass name and the first
    offending slice index (1-based)."""

    def __init__(self, stage, slice_index):
        super().__init__(
            f"zero message in {stage} pass at slice {slice_index}: "
            "syndrome inconsistent with prior support"
        )
        self.stage = stage
        self.slice_index = slice_index
