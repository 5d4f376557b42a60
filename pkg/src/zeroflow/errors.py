"""Exception hierarchy shared by all zeroflow modules."""


class ZeroflowError(Exception):
    """Base class for all errors raised by this package."""


class Collision(ZeroflowError):
    """Two zeros (or tracked labels) are closer than the separation tolerance."""


class Degenerate(ZeroflowError):
    """A configuration is degenerate (e.g. coincident cluster centers)."""


class StructureMismatch(ZeroflowError):
    """Coefficients do not admit the declared multiplicity signature."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InconsistentYdot(ZeroflowError):
    """A prescribed coefficient-velocity vector violates the linear constraints."""


class SingularMinor(ZeroflowError):
    """The complementary minor of the constraint matrix is numerically singular."""


class ModulusSingular(ZeroflowError):
    """The elliptic-modulus recursion failed to converge."""


class RepeatedRoot(ZeroflowError):
    """A partial-fraction or product formula requires pairwise-distinct roots."""


class ContinuationStall(ZeroflowError):
    """Path continuation stalled (likely a branch point or pole on the path)."""

    def __init__(self, message, t_reached=None):
        super().__init__(message)
        self.t_reached = t_reached


class NonConvergent(ZeroflowError):
    """Adaptive quadrature exhausted its refinement budget."""


# Solver-level alias: quadrature failures propagate under this name.
QuadratureFailure = NonConvergent


class BlowUp(ZeroflowError):
    """A movable singularity was reached before the requested time."""

    def __init__(self, message, t_blowup=None):
        super().__init__(message)
        self.t_blowup = t_blowup


class NoConsistentBranch(ZeroflowError):
    """No branch of the elliptic parameter fit reproduces the initial data."""


class SingularPoint(ZeroflowError):
    """A model right-hand side was evaluated on its singular set."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class SingularTransform(ZeroflowError):
    """A linear reshuffle matrix is singular."""


class NotReducible(ZeroflowError):
    """A plane quadratic system violates the common-zero solvability condition."""


class DegenerateForms(ZeroflowError):
    """The two quadratic forms are proportional; the reduction is not unique."""


class RecoveryBranchLoss(ZeroflowError):
    """Continuity tracking of recovered zeros became ambiguous."""


class NoRealizableRoot(ZeroflowError):
    """No elimination root reproduces the prescribed coefficients."""


class StepCollapse(ZeroflowError):
    """The adaptive integrator's step size collapsed (singularity approach)."""

    def __init__(self, message, t_reached=None):
        super().__init__(message)
        self.t_reached = t_reached
