class ShadowingError(Exception):
    """
    Base class of all errors raised by centralshadow.
    """
    def __init__(self, message):
        super(ShadowingError, self).__init__(message)


class InvalidInput(ShadowingError):
    """
    Input values violate the preconditions of an operation.
    """


class ConfigError(InvalidInput):
    """
    Experiment configuration could not be parsed (unknown keys, bad values).
    """


class InvalidSystem(ShadowingError):
    """
    The matrix (or base matrix) does not define a torus diffeomorphism of the
    supported kind.
    """


class NotPartiallyHyperbolic(ShadowingError):
    """
    The spectrum does not split into contracting, central and expanding parts
    with the required rate ordering.
    """


class ChartDomainExceeded(ShadowingError):
    """
    A chart was evaluated outside of its radius.
    """


class NotOnLeaf(ShadowingError):
    """
    Points that should share a leaf are transversally apart.
    """
    def __init__(self, message, residual=float('nan')):
        super(NotOnLeaf, self).__init__(message)
        self.residual = residual


class TooFarApart(ShadowingError):
    """
    Leaf intersection requested for points farther apart than the local
    product structure allows.
    """


class DegenerateFrame(ShadowingError):
    """
    The splitting frame is too ill-conditioned to solve against.
    """


class ConstantsInfeasible(ShadowingError):
    """
    No admissible constants exist for the given hyperbolicity data.
    """


class CorrectionBoundViolation(ShadowingError):
    """
    A correction left the ball of radius L*d.
    """


class StepTooLarge(ShadowingError):
    """
    The pseudotrajectory error d exceeds the admissible d0.
    """
    def __init__(self, d, d0):
        super(StepTooLarge, self).__init__(
            'pseudotrajectory error d={:.6g} exceeds admissible '
            'd0={:.6g}'.format(d, d0))
        self.d = d
        self.d0 = d0
