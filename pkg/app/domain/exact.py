"""Exact arithmetic for Clebsch-Gordan amplitudes.

Every coefficient the engines produce is a signed square root of a
non-negative rational. Sums of such values (amplitudes that collect
several histories) are kept as a combination of distinct square-free
radicals with rational coefficients, which is a canonical form.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple, Union

from sympy import factorint

from app.errors import ExactArithmeticError

Rational = Union[int, Fraction]


@lru_cache(maxsize=8192)
def squarefree_split(value: int) -> Tuple[int, int]:
    """Split a positive integer into (f, s) with value == f * f * s and s square-free"""
    if value <= 0:
        raise ExactArithmeticError(f"square-free split needs a positive integer, got {value}")
    factor, free = 1, 1
    for prime, exponent in factorint(value).items():
        factor *= int(prime) ** (int(exponent) // 2)
        if int(exponent) % 2:
            free *= int(prime)
    return factor, free


class SqrtRational:
    """sign * sqrt(radicand) with a non-negative rational radicand"""

    __slots__ = ("sign", "radicand")

    def __init__(self, sign: int, radicand: Rational = 0) -> None:
        radicand = Fraction(radicand)
        if sign not in (-1, 0, 1):
            raise ExactArithmeticError(f"sign must be -1, 0 or 1, got {sign}")
        if radicand < 0:
            raise ExactArithmeticError(f"negative radicand {radicand}")
        if sign == 0 or radicand == 0:
            sign, radicand = 0, Fraction(0)
        self.sign: int = sign
        self.radicand: Fraction = radicand

    @classmethod
    def zero(cls) -> "SqrtRational":
        return cls(0)

    @classmethod
    def one(cls) -> "SqrtRational":
        return cls(1, 1)

    @classmethod
    def sqrt(cls, radicand: Rational, sign: int = 1) -> "SqrtRational":
        """Square root of a rational; a negative radicand is an error"""
        return cls(sign, radicand)

    @classmethod
    def from_rational(cls, value: Rational) -> "SqrtRational":
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, value * value)

    def is_zero(self) -> bool:
        return self.sign == 0

    def square(self) -> Fraction:
        return self.radicand

    def abs(self) -> "SqrtRational":
        return SqrtRational(abs(self.sign), self.radicand)

    def __mul__(self, other: Any) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return SqrtRational(self.sign * other.sign, self.radicand * other.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by an exact zero")
        return SqrtRational(self.sign * other.sign, self.radicand / other.radicand)

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.sign, self.radicand)

    def __add__(self, other: Any) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return (RadicalSum.of(self) + RadicalSum.of(other)).as_sqrt_rational()

    __radd__ = __add__

    def __sub__(self, other: Any) -> "SqrtRational":
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return self + (-other)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.sqrt(self.radicand.numerator) / math.sqrt(self.radicand.denominator)

    def __bool__(self) -> bool:
        return self.sign != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SqrtRational.from_rational(other)
        if isinstance(other, RadicalSum):
            return RadicalSum.of(self) == other
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return self.sign == other.sign and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((self.sign, self.radicand))

    def __repr__(self) -> str:
        return f"SqrtRational({self.sign}, {self.radicand})"

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        root = _format_root(self.radicand)
        return f"{prefix}{root}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sign": self.sign,
            "num": self.radicand.numerator,
            "den": self.radicand.denominator,
            "value": float(self),
        }


def _format_root(radicand: Fraction) -> str:
    num, den = radicand.numerator, radicand.denominator
    if math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den:
        return str(Fraction(math.isqrt(num), math.isqrt(den)))
    return f"√({radicand})" if den != 1 else f"√{num}"


class RadicalSum:
    """Finite sum of rational multiples of distinct square-free square roots"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None) -> None:
        clean: Dict[int, Fraction] = {}
        for free, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[int(free)] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "RadicalSum":
        return cls()

    @classmethod
    def of(cls, value: Union["SqrtRational", "RadicalSum", Rational]) -> "RadicalSum":
        """Lift an exact scalar into radical-sum form"""
        if isinstance(value, RadicalSum):
            return value
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            return cls({1: value}) if value else cls()
        if value.is_zero():
            return cls()
        # sqrt(p/q) == sqrt(p*q) / q
        num, den = value.radicand.numerator, value.radicand.denominator
        factor, free = squarefree_split(num * den)
        return cls({free: Fraction(value.sign * factor, den)})

    def terms(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: Any) -> "RadicalSum":
        if isinstance(other, (int, Fraction, SqrtRational)):
            other = RadicalSum.of(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        merged = dict(self._terms)
        for free, coeff in other._terms.items():
            merged[free] = merged.get(free, Fraction(0)) + coeff
        return RadicalSum(merged)

    __radd__ = __add__

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({free: -coeff for free, coeff in self._terms.items()})

    def __sub__(self, other: Any) -> "RadicalSum":
        if isinstance(other, (int, Fraction, SqrtRational)):
            other = RadicalSum.of(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Any) -> "RadicalSum":
        if isinstance(other, (int, Fraction, SqrtRational)):
            other = RadicalSum.of(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        product: Dict[int, Fraction] = {}
        for free_a, coeff_a in self._terms.items():
            for free_b, coeff_b in other._terms.items():
                shared = math.gcd(free_a, free_b)
                free = (free_a // shared) * (free_b // shared)
                product[free] = product.get(free, Fraction(0)) + coeff_a * coeff_b * shared
        return RadicalSum(product)

    __rmul__ = __mul__

    def as_rational(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {1}:
            raise ExactArithmeticError(f"{self} is not rational")
        return self._terms[1]

    def as_sqrt_rational(self) -> SqrtRational:
        """Collapse to a single signed root; sums of unlike radicals raise"""
        if not self._terms:
            return SqrtRational.zero()
        if len(self._terms) > 1:
            raise ExactArithmeticError(f"{self} is not a single square root")
        ((free, coeff),) = self._terms.items()
        return SqrtRational(1 if coeff > 0 else -1, coeff * coeff * free)

    def square(self) -> "RadicalSum":
        return self * self

    def __float__(self) -> float:
        return math.fsum(float(coeff) * math.sqrt(free) for free, coeff in self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, SqrtRational)):
            other = RadicalSum.of(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"RadicalSum({dict(self.terms())})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for free, coeff in self.terms():
            parts.append(str(coeff) if free == 1 else f"{coeff}·√{free}")
        return " + ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        """Report form; a single root is reported as sign and radicand"""
        try:
            single = self.as_sqrt_rational()
        except ExactArithmeticError:
            return {
                "terms": [{"radical": free, "coeff": str(coeff)} for free, coeff in self.terms()],
                "value": float(self),
            }
        return single.to_dict()


Exact = Union[SqrtRational, RadicalSum]
