"""Exception and warning types shared across the workbench."""


class TactilebenchError(Exception):
    """Base class for all workbench errors."""


class JointLimitError(TactilebenchError):
    """A joint angle is outside its configured limits."""


class WorkspaceLimitError(TactilebenchError):
    """A requested end-effector pose is outside the reachable workspace."""


class EmptyOverlapError(TactilebenchError):
    """Sensor streams share no overlapping time range."""


class TooShortError(TactilebenchError):
    """Not enough aligned samples to build a single window."""


class ShapeMismatchError(TactilebenchError):
    """Input shape does not match the network specification."""


class NaNLossError(TactilebenchError):
    """Training loss became NaN or infinite."""


class SingularMatrixError(TactilebenchError):
    """Normal equations are singular (rank-deficient with zero ridge penalty)."""


class ZeroTargetVarianceError(TactilebenchError):
    """Regression targets have zero variance; R^2 and EXP are undefined."""


class SessionClosedError(TactilebenchError):
    """Teleoperation step requested while no recording session is open."""


class ConfigError(TactilebenchError):
    """Run configuration failed schema validation."""


class EnvFailureError(TactilebenchError):
    """An environment raised during an experiment run."""


class ArtifactHashError(TactilebenchError):
    """A persisted artifact's embedded config hash does not match."""


class GimbalLockWarning(UserWarning):
    """Pitch at +/-90 deg; roll/yaw split resolved by convention (roll=0)."""


class ZeroVarianceWarning(UserWarning):
    """A feature had zero variance on the training subset; sigma treated as 1."""


class ActionClampedWarning(UserWarning):
    """An out-of-range action was clamped to the action space."""


class DegenerateDemosWarning(UserWarning):
    """Demonstration set contains a single action class."""
