import math
from fractions import Fraction
from typing import Any, Dict, ItemsView, Iterator, KeysView, Mapping, Optional, Union

from app.domain.exact import RadicalSum, SqrtRational
from app.errors import ExactArithmeticError

Amplitude = Union[RadicalSum, float]

FLOAT_TOLERANCE = 1e-12


def _to_amplitude(value: Union[Amplitude, SqrtRational]) -> Amplitude:
    if isinstance(value, SqrtRational):
        return RadicalSum.of(value)
    return value


class AmplitudeMap:
    """Computational-basis qudit strings mapped to amplitudes.

    Keys list the final single-particle value first, followed by the value
    each later particle was given, in particle order. Exact maps hold
    RadicalSum amplitudes; float maps hold floats.
    """

    def __init__(self, d: int, n: int, amplitudes: Optional[Mapping[str, Union[Amplitude, SqrtRational]]] = None):
        self.d = d
        self.n = n
        self._amplitudes: Dict[str, Amplitude] = {}
        for key, value in (amplitudes or {}).items():
            self.add(key, value)

    def add(self, key: str, value: Union[Amplitude, SqrtRational]) -> None:
        if len(key) != self.n or any(int(digit) >= self.d for digit in key):
            raise ValueError(f"key '{key}' is not a {self.n}-digit base-{self.d} string")
        amplitude = _to_amplitude(value)
        if key in self._amplitudes:
            amplitude = self._amplitudes[key] + amplitude  # type: ignore[operator]
        if _is_zero(amplitude):
            self._amplitudes.pop(key, None)
        else:
            self._amplitudes[key] = amplitude

    @property
    def exact(self) -> bool:
        return all(isinstance(value, RadicalSum) for value in self._amplitudes.values())

    def __getitem__(self, key: str) -> Amplitude:
        return self._amplitudes[key]

    def get(self, key: str) -> Amplitude:
        return self._amplitudes.get(key, RadicalSum.zero() if self.exact else 0.0)

    def __contains__(self, key: object) -> bool:
        return key in self._amplitudes

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._amplitudes))

    def __len__(self) -> int:
        return len(self._amplitudes)

    def keys(self) -> KeysView[str]:
        return self._amplitudes.keys()

    def items(self) -> ItemsView[str, Amplitude]:
        return self._amplitudes.items()

    def sqrt_rational(self, key: str) -> SqrtRational:
        value = self._amplitudes.get(key)
        if value is None:
            return SqrtRational.zero()
        if not isinstance(value, RadicalSum):
            raise ExactArithmeticError(f"amplitude of '{key}' is a float")
        return value.as_sqrt_rational()

    def to_floats(self) -> Dict[str, float]:
        return {key: float(value) for key, value in self._amplitudes.items()}

    def norm_squared(self) -> Union[Fraction, float]:
        if self.exact:
            total = RadicalSum.zero()
            for value in self._amplitudes.values():
                total = total + value * value  # type: ignore[operator]
            return total.as_rational()
        return math.fsum(float(value) ** 2 for value in self._amplitudes.values())

    def inner(self, other: "AmplitudeMap") -> Union[RadicalSum, float]:
        """Real inner product; exact when both maps are exact"""
        shared = set(self._amplitudes) & set(other._amplitudes)
        if self.exact and other.exact:
            total = RadicalSum.zero()
            for key in shared:
                total = total + self._amplitudes[key] * other._amplitudes[key]  # type: ignore[operator]
            return total
        return math.fsum(float(self._amplitudes[key]) * float(other._amplitudes[key]) for key in shared)

    def max_difference(self, other: "AmplitudeMap", sign: int = 1) -> float:
        keys = set(self._amplitudes) | set(other._amplitudes)
        mine, theirs = self.to_floats(), other.to_floats()
        return max((abs(mine.get(key, 0.0) - sign * theirs.get(key, 0.0)) for key in keys), default=0.0)

    def scaled(self, factor: int) -> "AmplitudeMap":
        return AmplitudeMap(self.d, self.n, {key: value * factor for key, value in self._amplitudes.items()})

    def equals_up_to_sign(self, other: "AmplitudeMap") -> bool:
        return self == other or self == other.scaled(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmplitudeMap):
            return NotImplemented
        return self.d == other.d and self.n == other.n and self._amplitudes == other._amplitudes

    def __repr__(self) -> str:
        body = ", ".join(f"{key}: {self._amplitudes[key]}" for key in self)
        return f"AmplitudeMap(d={self.d}, n={self.n}, {{{body}}})"

    def to_dict(self) -> Dict[str, Any]:
        entries = []
        for key in self:
            value = self._amplitudes[key]
            entry: Dict[str, Any] = {"key": key}
            if isinstance(value, RadicalSum):
                entry.update(value.to_dict())
            else:
                entry["value"] = value
            entries.append(entry)
        return {"d": self.d, "n": self.n, "exact": self.exact, "amplitudes": entries}


def _is_zero(value: Amplitude) -> bool:
    if isinstance(value, RadicalSum):
        return value.is_zero()
    return value == 0.0
