"""Exception types raised across the package."""


class SingularEvaluation(ArithmeticError):
    """An observable was evaluated on (or too close to) a singular locus of its chart."""


class DivisionAtPole(SingularEvaluation):
    """The kappa-tangent was requested where the kappa-cosine vanishes."""


class ChartDegenerate(SingularEvaluation):
    """The polar chart is degenerate at the requested point."""


class IndexOrder(ValueError):
    """Generator indices must satisfy 0 <= mu < nu <= N."""


class IndexRange(ValueError):
    """An integral family index lies outside its admissible range."""


class BetaNotZero(ValueError):
    """A generalized Kepler-Coulomb system requires its own beta to vanish."""


class SingularityApproach(RuntimeError):
    """A trajectory came within the guard distance of a chart singularity.

    The partially integrated trajectory is kept on ``.trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class NewtonDivergence(RuntimeError):
    """The implicit midpoint solver failed to converge."""
