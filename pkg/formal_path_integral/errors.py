class PathIntegralError(Exception):
    """Base class for every computation error raised by the package.

    Args:
        message (str): human readable description.
        module (str): name of the module the error originates from.
    """

    module = "formal_path_integral"

    def __init__(self, message, module=None):
        super().__init__(message)
        self.message = message
        if module is not None:
            self.module = module

    def __str__(self):
        return f"[{self.module}] {self.message}"


# ---------------------- expr ---------------------- #

class ExpressionSyntaxError(PathIntegralError, ValueError):
    module = "expr"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(PathIntegralError, ValueError):
    module = "expr"


class DimensionMismatchError(PathIntegralError, ValueError):
    module = "expr"


class JetDomainError(PathIntegralError, ArithmeticError):
    module = "expr"


class SingularMatrixError(PathIntegralError, ArithmeticError):
    module = "expr"


class NotPositiveDefiniteError(PathIntegralError, ValueError):
    pass


# ---------------------- graphs ---------------------- #

class LimitExceededError(PathIntegralError, ValueError):
    module = "graphs"


# ---------------------- stphase ---------------------- #

class GradientNotZeroError(PathIntegralError, ValueError):
    module = "stphase"


# ---------------------- classical / green ---------------------- #

class ConvergenceError(PathIntegralError, RuntimeError):
    pass


class FocalTrajectoryError(PathIntegralError, ValueError):
    module = "classical"


class DegeneratePathError(PathIntegralError, ValueError):
    module = "classical"


class InternalInconsistencyError(PathIntegralError, RuntimeError):
    pass


class DomainError(PathIntegralError, ValueError):
    pass


# ---------------------- amplitude / harness ---------------------- #

class DivergentInputError(PathIntegralError, ValueError):
    module = "harness"


class PreconditionError(PathIntegralError, ValueError):
    pass


class ConfigValidationError(PathIntegralError, ValueError):
    """Raised when a run configuration cannot be parsed or validated.

    Args:
        messages (dict): ``{"section.key": [message, ...]}``.
        lines (dict): ``{"section.key": line number}`` for keys present in the file.
    """

    module = "harness"

    def __init__(self, messages, lines=None):
        self.messages = messages
        self.lines = lines or {}
        parts = []
        for key in sorted(messages):
            where = f" (line {self.lines[key]})" if key in self.lines else ""
            parts.append(f"{key}{where}: {'; '.join(str(m) for m in messages[key])}")
        super().__init__("invalid configuration: " + " | ".join(parts))
