"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergenceError(ArithmeticError):
    """A quantity diverges (non-integrable singularity, infinite constant,
    or a supremum that grows without saturating).

    Raised instead of returning a number so callers can record a divergence
    report rather than propagate garbage.
    """


class UnsupportedConfigurationError(ValueError):
    """A computation needs an input the caller did not supply (for example a
    bound curve with no computable default)."""


class ConfigError(ValueError):
    """Invalid sweep configuration.  Carries the full list of validation
    errors, not just the first one."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
