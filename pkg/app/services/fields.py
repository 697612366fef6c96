from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

from app.exceptions import UsageError
from app.interfaces import FieldInterface


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField(FieldInterface):
    """The field F_p; values are ints in [0, p)."""
    p: int
    zero: int = 0
    one: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def reduce(self, value: Any) -> int:
        return value % self.p

    def inv(self, value: Any) -> int:
        if value % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(value, -1, self.p)

    def coerce(self, value: Any) -> int:
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            return (value.numerator * self.inv(value.denominator)) % self.p
        return int(value) % self.p

    def is_finite(self) -> bool:
        return True

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def characteristic(self) -> int:
        return self.p

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RationalField(FieldInterface):
    """The rationals, values are Fractions."""
    zero: Fraction = Fraction(0)
    one: Fraction = Fraction(1)

    @property
    def name(self) -> str:
        return "Q"

    def reduce(self, value: Any) -> Fraction:
        return value if isinstance(value, Fraction) else Fraction(value)

    def inv(self, value: Any) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(value)

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def is_finite(self) -> bool:
        return False

    def elements(self) -> Iterator[Fraction]:
        raise ValueError("the rationals cannot be enumerated")

    def characteristic(self) -> int:
        return 0

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


QQ = RationalField()


def field_from_spec(spec: str) -> FieldInterface:
    """Parse `Q`, `F101` or `Fp 101`."""
    text = spec.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp"):
        rest = text[2:].strip()
    elif text.startswith("F"):
        rest = text[1:].strip()
    else:
        raise UsageError(f"unknown field {spec!r}")
    if not rest.isdigit():
        raise UsageError(f"unknown field {spec!r}")
    return prime_field(int(rest))
