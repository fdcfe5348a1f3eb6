import typing as tp


class ScaleVarError(Exception):
    """Base class of all errors raised by scalevar."""

    def to_dict(self) -> dict[str, tp.Any]:
        """Machine-readable form used by the command-line reports."""
        fields = {k: v for k, v in vars(self).items() if not k.startswith("_")}
        return {**fields, "type": type(self).__name__, "message": str(self)}


class EvaluationRangeError(ScaleVarError):
    def __init__(self, abscissa: float, domain: tuple[float, float]):
        self.abscissa = float(abscissa)
        self.domain = (float(domain[0]), float(domain[1]))

    def __str__(self) -> str:
        lo, hi = self.domain
        return f"cannot evaluate at x={self.abscissa!r}, outside of [{lo!r}, {hi!r}]"


class InsufficientDomainError(ScaleVarError):
    def __init__(self, required: tuple[float, float], available: tuple[float, float]):
        self.required = (float(required[0]), float(required[1]))
        self.available = (float(available[0]), float(available[1]))

    def __str__(self) -> str:
        return (
            f"curve is defined on [{self.available[0]!r}, {self.available[1]!r}], "
            f"but [{self.required[0]!r}, {self.required[1]!r}] is needed"
        )


class UnsupportedOrderError(ScaleVarError):
    def __init__(self, order: int, available: int):
        self.order = order
        self.available = available

    def __str__(self) -> str:
        return (
            f"derivative of order {self.order} requested, but only orders "
            f"up to {self.available} are available"
        )


class ExprSyntaxError(ScaleVarError):
    def __init__(self, message: str, position: int):
        self.message = message
        self.position = position

    def __str__(self) -> str:
        return f"{self.message} (at position {self.position})"


class UndeclaredVariableError(ScaleVarError):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position

    def __str__(self) -> str:
        return f"undeclared variable '{self.name}' (at position {self.position})"


class ExprEvaluationError(ScaleVarError):
    def __init__(self, message: str):
        self.message = message

    def __str__(self) -> str:
        return self.message


class AdmissibilityError(ScaleVarError):
    def __init__(self, beta: float, required: float):
        self.beta = beta
        self.required = required

    def __str__(self) -> str:
        return (
            f"variation has Hölder class beta={self.beta!r}, "
            f"but beta >= {self.required!r} is required"
        )


class ConditionViolationError(ScaleVarError):
    def __init__(self, message: str):
        self.message = message

    def __str__(self) -> str:
        return self.message


class NonConvergenceError(ScaleVarError):
    def __init__(self, message: str, trace: list[tuple[complex, complex]]):
        self.message = message
        self.trace = trace

    def __str__(self) -> str:
        return f"{self.message} after {len(self.trace)} evaluations"

    def to_dict(self) -> dict[str, tp.Any]:
        rtn = super().to_dict()
        rtn["trace"] = [
            {"xi": [z.real, z.imag], "value": [g.real, g.imag]} for z, g in self.trace
        ]
        return rtn


class HolderEstimationError(ScaleVarError):
    def __init__(self, message: str):
        self.message = message

    def __str__(self) -> str:
        return self.message


class ProblemSpecError(ScaleVarError):
    def __init__(
        self,
        message: str,
        field: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ):
        self.message = message
        self.field = field
        self.line = line
        self.column = column

    def __str__(self) -> str:
        where = ""
        if self.line is not None:
            where = f" (line {self.line}, column {self.column})"
        elif self.field is not None:
            where = f" (field '{self.field}')"
        return f"{self.message}{where}"
