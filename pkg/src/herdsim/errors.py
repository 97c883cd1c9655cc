"""Exception types shared across the package."""


class HerdsimError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(HerdsimError):
    """A parameter value is unusable (wrong sign, bad ordering, non-finite)."""


class SchemaError(HerdsimError):
    """A scenario document does not match the expected structure."""


class SolverError(HerdsimError):
    """A numerical solver failed to converge or bracket a root."""


class DomainError(HerdsimError):
    """An operation was evaluated at a geometrically degenerate point."""


class InfeasibleHeadingError(HerdsimError):
    """The arc repulsion is too weak to cancel the obstacle resultant."""


class IntegrityError(HerdsimError):
    """The simulation state became non-finite; carries a state dump."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}
