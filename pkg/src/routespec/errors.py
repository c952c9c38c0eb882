"""Exception types raised by routespec."""


class RouteSpecError(Exception):
    """Base class for all routespec errors."""

    #: machine-readable error kind, used by the CLI error object
    kind = "error"


class ParseError(RouteSpecError):
    """Malformed input text. ``line`` is 1-based when known."""

    kind = "parse"

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(RouteSpecError):
    """The network violates one or more structural invariants."""

    kind = "validation"

    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class CycleError(ValidationError):
    kind = "cycle"

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cycle detected: " + " -> ".join(map(str, self.cycle)),
                         [f"cycle {self.cycle}"])


class PathBudgetExceeded(RouteSpecError):
    kind = "path_budget"

    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(f"network has {count} simple paths, budget is {budget}")


class DimensionError(RouteSpecError, ValueError):
    kind = "dimension"


class NumericalError(RouteSpecError):
    kind = "numerical"
