"""Exception hierarchy shared by the solver modules."""


class GMPError(Exception):
    """Base class for all solver errors."""


class DomainError(GMPError, ValueError):
    """An argument lies outside the domain of a function."""


class MalformedLabelError(GMPError, ValueError):
    """A spectroscopic label could not be parsed or is inconsistent."""


class DegenerateDegreeError(GMPError, ValueError):
    """Leading polynomial coefficient is zero."""


class NoBoundStateError(GMPError):
    """No admissible bound state exists for the requested quantum numbers."""


class UnphysicalSolutionError(GMPError):
    """A candidate solution violates a bound-state constraint."""


class SingularityError(GMPError):
    """A component reconstruction would divide by zero."""


class AmbiguityError(GMPError):
    """More than one admissible root was found."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class ConvergenceError(GMPError):
    """An iterative solver failed to converge."""

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)
