"""Exception hierarchy shared by all modules."""


class PointLaplaceError(Exception):
    """Base class for every error raised by this package."""


class Singular(PointLaplaceError, ArithmeticError):
    """A 2x2 matrix is numerically non-invertible."""


class NonOrthonormalInput(PointLaplaceError, ValueError):
    pass


class RankDeficient(PointLaplaceError, ValueError):
    """``rank (A B) < 2``; no equivalence representative exists."""


class IdenticallySingular(PointLaplaceError):
    """``det(A + ikB)`` vanishes for every k (irregular boundary conditions)."""


class AtPole(PointLaplaceError, ArithmeticError):
    """The requested k is a zero of ``det(A + ikB)``."""


class LowerHalfPlane(PointLaplaceError, ValueError):
    """The resolvent kernel needs ``Im k > 0``."""


class NotAnEigenparameter(PointLaplaceError, ValueError):
    pass


class NotMSectorial(PointLaplaceError, ValueError):
    pass


class TruncationTooShort(PointLaplaceError, ValueError):
    """``exp(-Im k * x_max)`` is not negligible."""


class ResolutionError(PointLaplaceError, ValueError):
    """Panels are too wide for the oscillation scale ``1/|k|``."""


class WrongClass(PointLaplaceError, ValueError):
    pass


class NotAGenerator(PointLaplaceError):
    pass


class ContourTooClose(PointLaplaceError, ValueError):
    pass


class HypothesisViolated(PointLaplaceError, ValueError):
    pass


class MeshTooCoarse(PointLaplaceError, ValueError):
    pass


class ConvergenceFailure(PointLaplaceError, RuntimeError):
    pass


class SpectralCollision(PointLaplaceError, ArithmeticError):
    pass
