"""Error types raised by the solver, scheme and harness."""


class RiemannToolkitError(Exception):
    """Base class for every error raised by this package."""


class DensityDomainError(RiemannToolkitError, ValueError):
    """Density outside the admissible domain (0, 1/a)."""


class ParameterError(RiemannToolkitError, ValueError):
    """Invalid EOS constants, grid or scheme settings."""


class NoRootError(RiemannToolkitError, RuntimeError):
    """No density attains the requested pressure."""


class DeltaShockRegimeError(NoRootError):
    """Pressure range exhausted for A = 0; only the a, A -> 0 limit exists."""


class DegenerateWaveError(RiemannToolkitError, ValueError):
    """Wave speed requested across equal densities."""


class PreconditionError(RiemannToolkitError, ValueError):
    """Operation called on data outside the region it is defined for."""


class MaxStepsExceededError(RiemannToolkitError, RuntimeError):
    """Time stepping did not reach t_end within max_steps."""


class BlowUpError(RiemannToolkitError, RuntimeError):
    """An updated cell left the admissible domain."""

    def __init__(self, cell: int, time: float, rho: float, v: float):
        self.cell: int = cell
        self.time: float = time
        super().__init__(
            f"scheme left the admissible domain at cell {cell}, t={time:.6g} "
            f"(rho={rho!r}, v={v!r})"
        )


class ConfigParseError(RiemannToolkitError, ValueError):
    """Malformed configuration text."""

    def __init__(self, line: int, message: str):
        self.line: int = line
        super().__init__(f"line {line}: {message}")


class ConfigValidationError(RiemannToolkitError, ValueError):
    """Configuration value that fails validation."""

    def __init__(self, field: str, message: str):
        self.field: str = field
        super().__init__(f"{field}: {message}")


class OutputError(RiemannToolkitError, OSError):
    """Writing an output file failed."""

    def __init__(self, path: str, reason: str):
        self.path: str = path
        super().__init__(f"cannot write {path}: {reason}")
