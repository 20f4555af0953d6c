import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from threading import RLock
from typing import Any, Dict, List, Optional, Tuple

from app.circuits.gates import Circuit
from app.circuits.synthesis import SynthesisPlan, build_usch_inv
from app.config import Config
from app.domain.amplitude_map import FLOAT_TOLERANCE, AmplitudeMap
from app.domain.schur_label import SchurLabel, enumerate_labels, group_dimension
from app.errors import LabelError, SchurSynthError
from app.oracle.oracle import MAX_ORACLE_DIMENSION, fidelity, oracle_state
from app.services.su2_engine import decompose_su2
from app.services.su3_engine import decompose_su3
from app.simulation.simulator import check_clean, extract, run

logger = logging.getLogger("schur_synth")

FIDELITY_THRESHOLD = 1 - 1e-10


def decompose(label: SchurLabel) -> AmplitudeMap:
    if label.d == 2:
        return decompose_su2(label)
    return decompose_su3(label)


def final_rows(group: str) -> Dict[str, int]:
    """Diagram registers once the cascade reached a single box"""
    if group_dimension(group) == 2:
        return {"lam1": 1, "lam2": 0}
    return {"lam1": 1, "lam2": 0, "lam3": 0}


@dataclass
class LabelResult:
    label: str
    n: int
    passed: bool
    message: str
    fidelity: Optional[float] = None
    max_difference: Optional[float] = None
    circuit_clean: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "n": self.n,
            "passed": self.passed,
            "message": self.message,
            "fidelity": self.fidelity,
            "max_difference": self.max_difference,
            "circuit_clean": self.circuit_clean,
        }


@dataclass
class SweepReport:
    group: str
    max_n: int
    mode: str
    results: List[LabelResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[LabelResult]:
        return [result for result in self.results if not result.passed]

    def counts_by_n(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for result in self.results:
            counts[result.n] = counts.get(result.n, 0) + 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "max_n": self.max_n,
            "mode": self.mode,
            "passed": self.passed,
            "total": len(self.results),
            "failed": len(self.failures),
            "labels_per_n": {str(n): count for n, count in sorted(self.counts_by_n().items())},
            "elapsed": round(self.elapsed, 3),
            "results": [result.to_dict() for result in self.results],
        }


class VerificationService:
    """Cross-checks engine, circuit simulation and matrix oracle label by label"""

    # Singleton instance
    _instance: Optional["VerificationService"] = None
    _lock = RLock()

    @classmethod
    def get_instance(cls, config: Optional[Config] = None) -> "VerificationService":
        with cls._lock:
            if cls._instance is None:
                cls._instance = cls(config or Config.get_instance())
            return cls._instance

    def __init__(self, config: Config) -> None:
        self.config = config
        self._circuits: Dict[Tuple[str, int], Circuit] = {}
        self._circuit_lock = RLock()

    def circuit_for(self, group: str, n: int) -> Circuit:
        key = (group, n)
        with self._circuit_lock:
            circuit = self._circuits.get(key)
            if circuit is None:
                circuit = build_usch_inv(group, n)
                self._circuits[key] = circuit
            return circuit

    def simulate(self, label: SchurLabel, mode: Optional[str] = None) -> Tuple[AmplitudeMap, bool, str]:
        """Circuit output of a label plus the ancilla and diagram-register checks"""
        circuit = self.circuit_for(label.group, label.n)
        plan = SynthesisPlan.for_group(label.group, label.n)
        state = run(circuit, plan.assignment(label), mode or self.config.simulation_mode)
        clean, message = check_clean(state)
        for name, value in final_rows(label.group).items():
            values = state.values_of(name)
            if values != {value}:
                clean, message = False, f"{name} ends at {sorted(values)} instead of {value}"
        return extract(state, plan.output_registers()), clean, message

    def check_label(self, label: SchurLabel, mode: Optional[str] = None) -> LabelResult:
        result = LabelResult(str(label), label.n, False, "")
        try:
            engine = decompose(label)
            norm = float(engine.norm_squared())
            if abs(norm - 1) > FLOAT_TOLERANCE:
                result.message = f"engine state has norm^2 {norm}"
                return result

            if label.d**label.n <= MAX_ORACLE_DIMENSION:
                result.fidelity = fidelity(engine, oracle_state(label, self.config.oracle_tolerance))
                if result.fidelity < FIDELITY_THRESHOLD:
                    result.message = f"oracle fidelity {result.fidelity:.12f} below threshold"
                    return result

            if label.n >= 2:
                simulated, clean, message = self.simulate(label, mode)
                result.circuit_clean = clean
                result.max_difference = simulated.max_difference(engine)
                if not clean:
                    result.message = message
                    return result
                if result.max_difference > FLOAT_TOLERANCE:
                    result.message = f"circuit output differs from the engine by {result.max_difference:.3e}"
                    return result
        except SchurSynthError as e:
            result.message = str(e)
            return result

        result.passed = True
        result.message = "ok"
        return result

    def verify(self, group: str, max_n: int, mode: Optional[str] = None) -> SweepReport:
        """Check every label with 1..max_n particles"""
        d = group_dimension(group)
        if max_n < 1:
            raise LabelError(f"max_n must be positive, got {max_n}", "particle_count")
        mode = mode or self.config.simulation_mode
        labels = [label for n in range(1, max_n + 1) for label in enumerate_labels(n, d)]
        report = SweepReport(group, max_n, mode)

        started = time.monotonic()
        # build circuits up front so workers only read the cache
        for n in range(2, max_n + 1):
            self.circuit_for(group, n)
        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            report.results = list(executor.map(lambda label: self.check_label(label, mode), labels))
        report.elapsed = time.monotonic() - started

        if report.passed:
            logger.info(f"Verified {len(labels)} {group} labels up to n={max_n} in {report.elapsed:.2f}s")
        else:
            for failure in report.failures:
                logger.error(f"Verification failed for {failure.label}: {failure.message}")
        return report
