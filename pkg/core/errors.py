# Exception hierarchy for the numerical core


class FourierLaplaceError(Exception):
    """Base class for all errors raised by the numerical core"""


class ParameterError(FourierLaplaceError, ValueError):
    """Invalid parameters (alpha <= 1, angle outside a sector, bad preconditions)"""


class SeriesError(FourierLaplaceError, ValueError):
    """Violated precondition of a truncated power series operation"""


class QuadratureError(FourierLaplaceError):
    """Adaptive quadrature did not reach the requested tolerance"""

    def __init__(self, message: str, value: complex = complex("nan"), abs_err: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.abs_err = abs_err


class OverflowGuardError(FourierLaplaceError):
    """The integrand envelope exceeds the representable range; use the asymptotics instead"""

    def __init__(self, message: str, log_envelope: float = float("inf")):
        super().__init__(message)
        self.log_envelope = log_envelope


class BranchError(FourierLaplaceError):
    """No square-root branch satisfies the branch rule"""


class GammaOverflowWarning(RuntimeWarning):
    """Gamma value too large for a double; an infinite value was returned"""


# Exceptions that count as numeric failures (exit code 3, HTTP 422)
NUMERIC_FAILURES = (QuadratureError, OverflowGuardError, BranchError)
