"""Exception and warning types shared across the package."""


class CrooksLabError(Exception):
    """Base class for all domain errors raised by this package."""


class NotHermitian(CrooksLabError):
    """Input matrix fails the Hermiticity check at the active tolerance."""


class NoConvergence(CrooksLabError):
    """The underlying eigensolver failed to converge."""


class UnknownFactor(CrooksLabError):
    """A factor name is not part of the given Hilbert space."""


class DimensionMismatch(CrooksLabError):
    """Matrix dimension does not match the Hilbert space it is used with."""


class InvalidParameter(CrooksLabError):
    """A builder or evolution parameter is out of its allowed range."""


class ProfileNotFlat(CrooksLabError):
    """Lattice energy profile is not constant on the initial/final plateaus."""


class RegionLeak(CrooksLabError):
    """State carries more probability mass outside its declared region than allowed."""

    def __init__(self, message: str, leak: float = float("nan")):
        super().__init__(message)
        self.leak = leak


class NotEigenstate(CrooksLabError):
    """A machine energy eigenstate was requested where none exists."""


class DegenerateSupport(CrooksLabError):
    """Boltzmann-weighted overlap underflowed to zero; the state only
    populates energies far above the thermal scale."""


class VacuousRatio(CrooksLabError):
    """Both sides of a probability ratio are below the vacuousness floor;
    the equality carries no content there."""


class IndexOutOfLadder(CrooksLabError):
    """A rung offset points outside the machine ladder."""


class PreconditionViolated(CrooksLabError):
    """One or more premises of a check failed; `failures` lists them."""

    def __init__(self, failures: list[str]):
        super().__init__("preconditions violated: " + "; ".join(failures))
        self.failures = list(failures)


class ConfigParse(CrooksLabError):
    """Scenario file is not syntactically valid."""


class SchemaViolation(CrooksLabError):
    """Scenario file contains an unknown or ill-typed key."""

    def __init__(self, message: str, key: str = ""):
        super().__init__(message)
        self.key = key


class ScenarioError(CrooksLabError):
    """Domain error while executing a scenario, annotated with its name."""

    def __init__(self, scenario: str, cause: Exception):
        super().__init__(f"scenario {scenario!r}: {cause}")
        self.scenario = scenario
        self.cause = cause


class NoDegeneracyWarning(UserWarning):
    """Every energy eigenspace is one-dimensional: an energy-conserving
    unitary is necessarily diagonal and induces no transitions."""
