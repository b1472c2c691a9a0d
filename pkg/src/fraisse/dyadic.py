"""Exact arithmetic in the ring of dyadic rationals Z[1/2]."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational


class NonDyadicError(ArithmeticError):
    pass


def _two_adic(m: int) -> int:
    return (m & -m).bit_length() - 1


class Dyadic:
    """Value ``mantissa * 2**exponent`` with an odd mantissa (or zero, exponent 0)."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        mantissa = int(mantissa)
        exponent = int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            k = _two_adic(mantissa)
            if k:
                mantissa >>= k
                exponent += k
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            return cls(int(value))
        if isinstance(value, Integral):
            return cls(int(value))
        if isinstance(value, (Rational, float, str)):
            frac = Fraction(value)
            den = frac.denominator
            if den & (den - 1):
                raise NonDyadicError(f"{value!r} is not dyadic")
            return cls(frac.numerator, -(den.bit_length() - 1))
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    # conversions
    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __int__(self) -> int:
        if self.exponent < 0:
            raise ValueError(f"{self} is not an integer")
        return self.mantissa << self.exponent

    def __float__(self) -> float:
        return float(self.to_fraction())

    def to_json(self) -> dict:
        return {"m": str(self.mantissa), "e": self.exponent}

    @classmethod
    def from_json(cls, obj) -> "Dyadic":
        if isinstance(obj, dict):
            return cls(int(obj["m"]), int(obj["e"]))
        return cls.coerce(obj)

    def __str__(self) -> str:
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        return f"{self.mantissa}/{1 << -self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    # predicates
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def is_signed_power_of_two(self) -> bool:
        return self.mantissa in (1, -1)

    def __bool__(self) -> bool:
        return self.mantissa != 0

    # ring operations
    def __neg__(self):
        return Dyadic(-self.mantissa, self.exponent)

    def __pos__(self):
        return self

    def __abs__(self):
        return Dyadic(abs(self.mantissa), self.exponent)

    def __add__(self, other):
        try:
            other = Dyadic.coerce(other)
        except (TypeError, NonDyadicError):
            return NotImplemented
        if not self.mantissa:
            return other
        if not other.mantissa:
            return self
        e = min(self.exponent, other.exponent)
        m = (self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e))
        return Dyadic(m, e)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Dyadic.coerce(other)
        except (TypeError, NonDyadicError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Dyadic.coerce(other)
        except (TypeError, NonDyadicError):
            return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.mantissa not in (1, -1):
                raise NonDyadicError(f"{self} is not invertible in Z[1/2]")
            return Dyadic(self.mantissa ** (-k), self.exponent * k)
        return Dyadic(self.mantissa ** k, self.exponent * k)

    def half(self) -> "Dyadic":
        return Dyadic(self.mantissa, self.exponent - 1)

    def __truediv__(self, other):
        other = Dyadic.coerce(other)
        if other.mantissa not in (1, -1):
            raise NonDyadicError(f"division by {other} leaves Z[1/2]")
        return Dyadic(self.mantissa * other.mantissa, self.exponent - other.exponent)

    # comparison
    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        if isinstance(other, (Integral, Rational)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        if self.exponent >= 0:
            return hash(self.mantissa << self.exponent)
        return hash(self.to_fraction())

    def __lt__(self, other):
        return self.to_fraction() < Dyadic.coerce(other).to_fraction()

    def __le__(self, other):
        return self.to_fraction() <= Dyadic.coerce(other).to_fraction()

    def __gt__(self, other):
        return self.to_fraction() > Dyadic.coerce(other).to_fraction()

    def __ge__(self, other):
        return self.to_fraction() >= Dyadic.coerce(other).to_fraction()


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, -1)
