"""Exception hierarchy shared by every dpk3 module."""


class Dpk3Error(Exception):
    """Base class for all errors raised by dpk3."""


class DimensionError(Dpk3Error, ValueError):
    """Two classes live in Picard lattices of different rank."""


class InvalidDegreeError(Dpk3Error, ValueError):
    """Degree (or number of blown-up points) outside the supported range."""


class DomainError(Dpk3Error, ValueError):
    """Argument does not satisfy the operation's precondition."""


class ClassParseError(Dpk3Error, ValueError):
    """Malformed divisor-class text.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class OrbitOverflowError(Dpk3Error, RuntimeError):
    """Orbit exceeded its safety cap."""


class InvariantError(Dpk3Error, ValueError):
    """Inputs violate a structural constraint (parity, admissible pair, ...)."""


class PatternError(Dpk3Error, ValueError):
    """Branch-curve intersection pattern is not a valid fiber pattern."""


class NoEllipticFibrationError(Dpk3Error, ValueError):
    """The K3 surface over the degree 9 base carries no elliptic fibration."""
