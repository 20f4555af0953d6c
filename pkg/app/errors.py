from typing import Optional


class SchurSynthError(Exception):
    """Base class for every error raised by the package"""


class LabelError(SchurSynthError):
    """A Schur label, partition or weight violates one of its constraints"""

    def __init__(self, message: str, constraint: Optional[str] = None) -> None:
        self.constraint = constraint
        super().__init__(f"{constraint}: {message}" if constraint else message)


class LabelParseError(LabelError):
    """A label string does not follow the label grammar"""


class ExactArithmeticError(SchurSynthError, ArithmeticError):
    """An exact value cannot be represented in the requested form"""


class CircuitError(SchurSynthError):
    """Malformed register table, gate or circuit document"""


class SimulationError(SchurSynthError):
    """A gate cannot be applied to the current simulator state"""


class DirtyAncillaError(SimulationError):
    """Registers outside the extracted set are not in a single basis state"""


class OracleError(SchurSynthError):
    """The matrix oracle could not isolate a unique reference state"""
