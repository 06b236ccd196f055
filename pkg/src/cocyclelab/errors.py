"""Exception hierarchy shared by every module."""


class CocycleError(Exception):
    """Base class for all library errors."""


class InvalidMatrix(CocycleError, ValueError):
    pass


class RankError(CocycleError, ValueError):
    pass


class ZeroMatrixError(CocycleError, ValueError):
    pass


class DomainError(CocycleError, ValueError):
    pass


class PrimitivityError(CocycleError, ValueError):
    pass


class SpecError(CocycleError, ValueError):
    """Raised when a computation is requested on a spec that failed validation."""

    def __init__(self, report):
        self.report = report
        names = ", ".join(f"{c.name} ({c.detail})" for c in report.failures)
        super().__init__(f"invalid cocycle spec: {names}")


class BlockCapExceeded(CocycleError, RuntimeError):
    pass


class BudgetExceeded(CocycleError, RuntimeError):
    pass


class DegenerateVariance(CocycleError, ValueError):
    pass
