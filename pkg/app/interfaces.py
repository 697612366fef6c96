from abc import ABC, abstractmethod
from typing import Any, Iterator


class FieldInterface(ABC):
    """Exact scalar arithmetic.

    Values are native Python numbers (ints for prime fields, Fractions for the
    rationals); arithmetic uses the ordinary operators followed by `reduce`.
    """

    zero: Any
    one: Any

    @abstractmethod
    def reduce(self, value: Any) -> Any:
        """Bring a value into canonical form"""
        pass

    @abstractmethod
    def inv(self, value: Any) -> Any:
        """Multiplicative inverse of a nonzero value"""
        pass

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """Convert an int, Fraction or string into a field value"""
        pass

    @abstractmethod
    def is_finite(self) -> bool:
        pass

    @abstractmethod
    def elements(self) -> Iterator[Any]:
        """Iterate all elements (finite fields only)"""
        pass

    @abstractmethod
    def characteristic(self) -> int:
        pass

    def is_zero(self, value: Any) -> bool:
        return value == 0

    def format(self, value: Any) -> str:
        return str(value)
