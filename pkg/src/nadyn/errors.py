"""Exception taxonomy shared by all nadyn modules."""


class NadynError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class ParseError(NadynError):
    """Syntax error in an expression, with source position."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LevelCapExceeded(NadynError):
    """A base change would push the uniformizer level past the cap."""


class NeedsBaseChange(NadynError):
    """An operation needs a finer uniformizer than the current level allows."""

    def __init__(self, minimum_level):
        self.minimum_level = minimum_level
        super().__init__(f"base change to level {minimum_level} required")


class BothFormsZero(NadynError):
    """GCD of two identically zero homogeneous forms is undefined."""


class AmbiguousClass(NadynError):
    """A factor class straddles parts of different depth; refine it first."""


class OutOfRange(NadynError):
    """Path parameter outside [0, rho(from, to)]."""


class SamePoint(NadynError):
    """A direction toward the base point itself is undefined."""


class DegenerateMap(NadynError):
    """Coefficient pair has zero resultant (common factor or degree drop)."""


class IterationCapExceeded(NadynError):
    """d^n would exceed the configured iteration cap."""


class IrrationalDirection(NadynError):
    """Measured slopes are only defined along rational direction classes."""


class PiecewiseBoundaryUnresolved(NadynError):
    """Difference quotients failed to stabilise within the halving cap."""


class BreakpointUnresolved(NadynError):
    """A piecewise breakpoint could not be snapped to a bounded rational."""


class NeedsExtension(NadynError):
    """Descent direction is an irrational class; not resolved over Q."""


class TotallyInvariantPoint(NadynError):
    """The point is totally invariant, so no nontrivial sequence exists."""


class CoefficientPole(NadynError):
    """A coefficient of the family has a pole at the requested parameter."""


class IllConditioned(NadynError):
    """Specialised map is numerically degenerate at the requested parameter."""


class RootFindingFailed(NadynError):
    """Simultaneous root iteration did not converge."""

    def __init__(self, level, target):
        self.level = level
        self.target = target
        super().__init__(f"root finding failed at pullback level {level} for target {target!r}")


class TargetsOverlap(NadynError):
    """Atom targets are not separated at the requested scale."""
