"""Exception hierarchy shared by all modules."""


class WitnessError(Exception):
    """Base class for every error raised by this package."""


class OutOfBound(WitnessError):
    def __init__(self, point, bound):
        self.point = tuple(point)
        self.bound = bound
        super().__init__(f"point {self.point} exceeds evaluation bound {bound}")


class DimensionMismatch(WitnessError):
    pass


class DimensionTooSmall(WitnessError):
    pass


class NegativeShiftTarget(WitnessError):
    pass


class WindowTooSmall(WitnessError):
    pass


class EmptyResult(WitnessError):
    pass


class DefinableInput(WitnessError):
    """Raised when a witness is requested for a relation known to be definable."""


class SpecError(WitnessError):
    """Malformed relation spec file."""


class UnboundVariable(WitnessError):
    pass


class ArityError(WitnessError):
    pass


class FormulaSyntaxError(WitnessError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")
