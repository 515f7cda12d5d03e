"""Exception hierarchy used across the package."""


class PhaselessError(Exception):
    """Base class for all package errors."""


class GridMismatch(PhaselessError, ValueError):
    """Two signals that must share a grid do not."""


class UnsupportedWindow(PhaselessError, ValueError):
    pass


class AsymmetricGrid(PhaselessError, ValueError):
    """Reflection requested on a grid that is not symmetric about 0."""


class OrderOverflow(PhaselessError, ValueError):
    pass


class TruncationBudgetExceeded(PhaselessError):
    """The signal is not well represented in the truncated Hermite basis."""

    def __init__(self, tail_energy, budget):
        self.tail_energy = tail_energy
        self.budget = budget
        super().__init__(
            f"Hermite tail energy {tail_energy:.3e} exceeds budget {budget:.3e}"
        )


class GridMultipleViolation(PhaselessError, ValueError):
    """A shift is not an integer multiple of the grid step and no
    off-grid evaluation route is available."""


class NonRealWindow(PhaselessError, ValueError):
    pass


class InvalidCoefficients(PhaselessError, ValueError):
    pass


class DegenerateInput(PhaselessError, ValueError):
    pass


class NotEmbeddable(PhaselessError, ValueError):
    pass


class ConfigError(PhaselessError, ValueError):
    """Malformed or invalid run configuration."""
