"""
Exception hierarchy for the quandle workbench
Every failure carries a witness so reports can show exactly where a check broke
"""
from typing import Any, Dict, Optional


class QuandleError(Exception):
    """Base class; `witness` pinpoints the offending elements, levels or cells"""

    def __init__(self, message: str, witness: Any = None, **details):
        super().__init__(message)
        self.witness = witness
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': type(self).__name__,
            'message': str(self),
            'witness': jsonable(self.witness),
            **{k: jsonable(v) for k, v in self.details.items()},
        }


def jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


# ============================================================================
# INPUT ERRORS
# ============================================================================
class MalformedTable(QuandleError, ValueError):
    pass


class FormatError(QuandleError, ValueError):
    pass


class SizeBound(QuandleError):
    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: size {size} exceeds bound {bound}", witness=size,
                         what=what, bound=bound)


class IndexOutOfRange(QuandleError, IndexError):
    pass


class DegreeMismatch(QuandleError, ValueError):
    pass


class NotPrime(QuandleError, ValueError):
    pass


# ============================================================================
# ALGEBRAIC FAILURES
# ============================================================================
class AxiomViolation(QuandleError):
    def __init__(self, axiom: str, witness: tuple):
        super().__init__(f"axiom {axiom} fails at {witness}", witness=witness, axiom=axiom)
        self.axiom = axiom


class NotAbelian(QuandleError):
    pass


class NotKei(QuandleError):
    pass


class OrderBoundExceeded(QuandleError):
    pass


class NotSubgroup(QuandleError):
    pass


class NotConnected(QuandleError):
    pass


class InvalidSpec(QuandleError):
    pass


class InvariantFailure(QuandleError):
    """A computed structure contradicts a proven property; never expected on valid input"""


class NotSurjective(QuandleError):
    def __init__(self, message: str, witness: Any = None, level: Optional[int] = None):
        super().__init__(message, witness=witness, level=level)
        self.level = level


class NotHom(QuandleError):
    def __init__(self, message: str, witness: Any = None, level: Optional[int] = None):
        super().__init__(message, witness=witness, level=level)
        self.level = level


class WellDefinednessFailure(QuandleError):
    pass


# ============================================================================
# TOWER FAILURES
# ============================================================================
class TowerMismatch(QuandleError):
    pass


class IncoherentElement(QuandleError):
    pass


class IncompatibleChain(QuandleError):
    pass


class EquivarianceFailure(QuandleError):
    pass


# ============================================================================
# AUGMENTATION FAILURES
# ============================================================================
class ActionFailure(QuandleError):
    pass


class AQ1Failure(QuandleError):
    pass


class AQ2Failure(QuandleError):
    pass


class OperationMismatch(QuandleError):
    pass
