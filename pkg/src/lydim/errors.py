"""Exception hierarchy shared by every module."""


class LydimError(Exception):
    pass


class HorizonError(LydimError, IndexError):
    """An operation needed a symbol beyond the known prefix of a sequence."""


class PayloadExhaustedError(HorizonError):
    pass


class BudgetExceededError(LydimError, MemoryError):
    pass


class DomainError(LydimError, ValueError):
    pass


class AdmissibilityError(LydimError, ValueError):
    pass


class ConvergenceError(LydimError, ArithmeticError):
    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class ConsistencyError(LydimError, ArithmeticError):
    pass


class InfeasibleCoveringError(LydimError, ValueError):
    def __init__(self, row, min_lambda):
        super().__init__(
            f"row {row}: branch image cannot cover the required hull; "
            f"minimum feasible lambda is {float(min_lambda):.12g}"
        )
        self.row = row
        self.min_lambda = min_lambda


class SeparationError(LydimError, ValueError):
    def __init__(self, i, j, gap):
        super().__init__(f"pieces V{i} and V{j} are not positively separated (gap {float(gap):.12g})")
        self.pair = (i, j)
        self.gap = gap


class EscapeError(LydimError, ValueError):
    def __init__(self, step, point):
        super().__init__(f"orbit left the union of pieces at step {step} (point {point})")
        self.step = step
        self.point = point


class FitError(LydimError, ValueError):
    pass
