"""Gate tallies of synthesized circuits and the closed forms they are checked against."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional

from app.circuits.gates import CCNOT, CNOT, CRY, DATA_ROT, NOT, Circuit, Gate
from app.circuits.synthesis import binary_width, build_usch_inv, ternary_digits
from app.domain.schur_label import group_dimension
from app.errors import CircuitError

ARITHMETIC_TYPES = (NOT, CNOT, CCNOT)
COUNTED_TYPES = (NOT, CNOT, CCNOT, CRY)


@dataclass
class ResourceCount:
    """Compute-path, uncompute and overflow-flag tallies per gate type, rotations per formula"""

    compute: Counter = field(default_factory=Counter)
    uncompute: Counter = field(default_factory=Counter)
    overflow: Counter = field(default_factory=Counter)
    rotations: Counter = field(default_factory=Counter)
    bits: int = 0

    def add(self, gate: Gate) -> None:
        if gate.type == DATA_ROT:
            self.rotations[gate.formula_id] += 1
        elif gate.uncompute:
            self.uncompute[gate.type] += 1
        elif gate.overflow:
            self.overflow[gate.type] += 1
        else:
            self.compute[gate.type] += 1

    @property
    def data_rotations(self) -> int:
        return sum(self.rotations.values())

    def arithmetic(self) -> Dict[str, int]:
        return {gate_type: self.compute[gate_type] for gate_type in ARITHMETIC_TYPES}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "compute": {gate_type: self.compute[gate_type] for gate_type in COUNTED_TYPES},
            "uncompute": {gate_type: self.uncompute[gate_type] for gate_type in COUNTED_TYPES},
            "overflow": {gate_type: self.overflow[gate_type] for gate_type in COUNTED_TYPES},
            "rotations": dict(sorted(self.rotations.items())),
            "data_rotations": self.data_rotations,
            "bits": self.bits,
        }


def count_gates(gates: Iterable[Gate], bits: int = 0) -> ResourceCount:
    count = ResourceCount(bits=bits)
    for gate in gates:
        count.add(gate)
    return count


def count_resources(circuit: Circuit) -> ResourceCount:
    return count_gates(circuit.gates, circuit.width)


def ceil_log(n: int, base: int) -> int:
    """Smallest L with base**L >= n"""
    exponent = 0
    while base**exponent < n:
        exponent += 1
    return exponent


@dataclass(frozen=True)
class ResourcePrediction:
    group: str
    n: int
    # published closed forms with the logarithm rounded up
    formula: Dict[str, int]
    # exact counts of the synthesized layout
    derived: ResourceCount

    def to_dict(self) -> Dict[str, Any]:
        return {"group": self.group, "n": self.n, "formula": self.formula, "derived": self.derived.to_dict()}


def _su2_prediction(n: int) -> ResourcePrediction:
    steps = n - 1
    log_n = ceil_log(n, 2)
    formula = {NOT: 0, CNOT: steps * (4 * log_n + 6), CCNOT: steps * 4 * log_n}

    w = binary_width(n)
    derived = ResourceCount(bits=3 * w + steps + 1 + w)
    derived.compute.update({CNOT: steps * (4 * w + 2), CCNOT: steps * 4 * (w - 1)})
    derived.uncompute.update({CCNOT: steps * 4 * (w - 1)})
    # four ripples per block, one final-carry gate each
    derived.overflow.update({CCNOT: steps * 4})
    derived.rotations.update({"su2_cg_angle": steps})
    return ResourcePrediction("su2", n, formula, derived)


def _su3_prediction(n: int) -> ResourcePrediction:
    steps = n - 1
    log_n = ceil_log(n, 3)
    formula = {
        NOT: steps * (34 + 24 * log_n),
        CNOT: steps * (56 + 36 * log_n),
        CCNOT: steps * (50 + 36 * log_n),
    }

    rows, pairs = ternary_digits(n), ternary_digits(2 * n)
    derived = ResourceCount(bits=2 * (3 * rows + 3 * pairs + steps) + 2 + max(rows, pairs))
    # per block plus the single cleanup that clears kl and lm
    derived.compute.update(
        {
            NOT: steps * (6 * rows + 22 * pairs) + 4 * pairs,
            CNOT: steps * (9 * rows + 33 * pairs + 4) + 6 * pairs + 4,
            CCNOT: steps * (9 * rows + 33 * pairs + 2) + 6 * pairs,
        }
    )
    derived.uncompute.update(
        {
            CNOT: steps * 12 * (pairs - 1),
            CCNOT: steps * (3 * (rows - 1) + 11 * (pairs - 1)) + 2 * (pairs - 1),
        }
    )
    derived.rotations.update({"su3_isoscalar": steps, "su3_isospin": steps})
    return ResourcePrediction("su3", n, formula, derived)


def predicted_resources(group: str, n: int) -> ResourcePrediction:
    if n < 2:
        raise CircuitError(f"resource formulas need n >= 2, got {n}")
    if group_dimension(group) == 2:
        return _su2_prediction(n)
    return _su3_prediction(n)


@dataclass(frozen=True)
class ResourceComparison:
    measured: ResourceCount
    prediction: ResourcePrediction

    def ratios(self) -> Dict[str, Optional[float]]:
        """measured / formula for each arithmetic gate type"""
        ratios: Dict[str, Optional[float]] = {}
        for gate_type in ARITHMETIC_TYPES:
            expected = self.prediction.formula[gate_type]
            ratios[gate_type] = self.measured.compute[gate_type] / expected if expected else None
        return ratios

    def within_factor(self, factor: float = 2.0) -> bool:
        return all(ratio is None or 1 / factor <= ratio <= factor for ratio in self.ratios().values())

    def matches_derived(self) -> bool:
        derived = self.prediction.derived
        return (
            +self.measured.compute == +derived.compute
            and +self.measured.uncompute == +derived.uncompute
            and +self.measured.overflow == +derived.overflow
            and +self.measured.rotations == +derived.rotations
            and self.measured.bits == derived.bits
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.prediction.group,
            "n": self.prediction.n,
            "measured": self.measured.to_dict(),
            "predicted": self.prediction.to_dict(),
            "ratios": self.ratios(),
            "within_factor_2": self.within_factor(),
            "matches_derived": self.matches_derived(),
        }


def compare_resources(group: str, n: int) -> ResourceComparison:
    circuit = build_usch_inv(group, n)
    return ResourceComparison(count_resources(circuit), predicted_resources(group, n))
