import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from jinja2 import Environment, PackageLoader, StrictUndefined

from app.circuits.gates import Circuit
from app.circuits.resources import ResourceComparison, count_resources
from app.domain.amplitude_map import AmplitudeMap
from app.domain.exact import RadicalSum
from app.domain.schur_label import SchurLabel, quark_string
from app.services.isoscalars import IsoscalarEntry
from app.services.verification import SweepReport

_environment: Optional[Environment] = None


def environment() -> Environment:
    global _environment
    if _environment is None:
        _environment = Environment(
            loader=PackageLoader("app", "reports/templates"),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
    return _environment


@dataclass
class RunReport:
    """Result of one command, rendered as JSON or as text"""

    command: str
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    passed: bool = True
    elapsed: float = 0.0
    timestamp: float = field(default_factory=time.time)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "timestamp": self.timestamp,
        }

    def render(self) -> str:
        return environment().get_template(f"{self.command}.txt.j2").render(report=self)


def amplitude_rows(amplitudes: AmplitudeMap) -> List[Dict[str, Any]]:
    rows = []
    for key, value in amplitudes.items():
        row: Dict[str, Any] = {"key": key, "exact": str(value), "value": float(value)}
        if amplitudes.d == 3:
            row["quarks"] = quark_string(key)
        if isinstance(value, RadicalSum):
            row.update({name: entry for name, entry in value.to_dict().items() if name != "value"})
        rows.append(row)
    return rows


class ReportFactory:
    """Factory for creating command reports"""

    @staticmethod
    def create_amplitude_report(
        command: str, label: SchurLabel, amplitudes: AmplitudeMap, elapsed: float = 0.0, **inputs: Any
    ) -> RunReport:
        """Create a report of the qudit superposition of one label"""
        return RunReport(
            command,
            {"label": str(label), **inputs},
            {
                "group": label.group,
                "n": label.n,
                "exact": amplitudes.exact,
                "norm_squared": float(amplitudes.norm_squared()),
                "amplitudes": amplitude_rows(amplitudes),
            },
            elapsed=elapsed,
        )

    @staticmethod
    def create_circuit_report(circuit: Circuit, out_path: str, elapsed: float = 0.0) -> RunReport:
        """Create a report of a synthesized circuit written to disk"""
        return RunReport(
            "synthesize",
            {"group": circuit.group, "n": circuit.n, "out": out_path},
            {
                "width": circuit.width,
                "gates": len(circuit.gates),
                "registers": [register.to_dict() for register in circuit.registers],
                "resources": count_resources(circuit).to_dict(),
            },
            elapsed=elapsed,
        )

    @staticmethod
    def create_sweep_report(sweep: SweepReport) -> RunReport:
        """Create a verification sweep report"""
        outputs = sweep.to_dict()
        outputs["failures"] = [result.to_dict() for result in sweep.failures]
        return RunReport(
            "verify",
            {"group": sweep.group, "max_n": sweep.max_n, "mode": sweep.mode},
            outputs,
            passed=sweep.passed,
            elapsed=sweep.elapsed,
        )

    @staticmethod
    def create_resource_report(comparison: ResourceComparison, elapsed: float = 0.0) -> RunReport:
        """Create a measured against predicted gate count report"""
        return RunReport(
            "resources",
            {"group": comparison.prediction.group, "n": comparison.prediction.n},
            comparison.to_dict(),
            passed=comparison.within_factor() and comparison.matches_derived(),
            elapsed=elapsed,
        )

    @staticmethod
    def create_isoscalar_report(P1: int, Q1: int, entries: List[IsoscalarEntry], elapsed: float = 0.0) -> RunReport:
        """Create a table of every isoscalar factor of a parent irrep"""
        rows = []
        for entry in entries:
            row = entry.to_dict()
            row["exact"] = str(entry.value)
            rows.append(row)
        return RunReport(
            "isoscalar-table",
            {"P1": P1, "Q1": Q1},
            {"entries": rows, "count": len(rows)},
            passed=all(entry.closed_form_matches for entry in entries),
            elapsed=elapsed,
        )
