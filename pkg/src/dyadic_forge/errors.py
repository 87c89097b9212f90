"""Exception taxonomy shared by the library and the CLI exit-code contract."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain (CLI exit 2)."""


class PropertyViolation(AssertionError):
    """A verified mathematical property failed; indicates a bug (CLI exit 3)."""


class ResourceError(RuntimeError):
    """A guard tripped before an unreasonably large computation (CLI exit 2)."""


class CalibrationMissing(RuntimeError):
    """A command needs a calibration file that is absent (CLI exit 4)."""
