"""Exception hierarchy; every error carries a stable string ``code``."""


class DetlabError(Exception):
    code = "ERROR"

    def __init__(self, message="", **info):
        super().__init__(message or self.code)
        self.info = info


class NonDivisibleError(DetlabError, ArithmeticError):
    code = "NON_DIVISIBLE"


class SizeLimitError(DetlabError):
    code = "SIZE_LIMIT"


class MatrixIndexError(DetlabError, IndexError):
    code = "INDEX_OUT_OF_RANGE"


class NotEvenError(DetlabError, ValueError):
    code = "NOT_EVEN"


class BadSpecError(DetlabError, ValueError):
    code = "BAD_SPEC"


class PoleError(DetlabError, ZeroDivisionError):
    code = "POLE"


class GammaPoleError(PoleError):
    code = "GAMMA_POLE"


class BudgetExceededError(DetlabError):
    code = "BUDGET_EXCEEDED"


class DegenerateKernelError(DetlabError):
    code = "DEGENERATE_KERNEL"


class InsufficientDataError(DetlabError):
    code = "INSUFFICIENT_DATA"


class ConfigError(DetlabError, ValueError):
    code = "CONFIG_INVALID"


class CheckFailed(DetlabError, AssertionError):
    """Raised by :meth:`CheckResult.raise_for_status`; ``code`` is per instance."""

    def __init__(self, code, message="", **info):
        super().__init__(message or code, **info)
        self.code = code
