import json

from app.circuits.resources import compare_resources
from app.circuits.synthesis import build_usch_inv
from app.domain.schur_label import parse_label
from app.reports.report_factory import ReportFactory, RunReport, amplitude_rows
from app.services.isoscalars import isoscalar_table
from app.services.su2_engine import decompose_su2
from app.services.su3_engine import decompose_su3
from app.services.verification import LabelResult, SweepReport


class TestAmplitudeReport:
    def test_render_su2(self) -> None:
        """Test the text form of a qubit superposition"""
        label = parse_label("su2:(1,1);0;0")
        report = ReportFactory.create_amplitude_report("decompose", label, decompose_su2(label))
        text = report.render()
        assert "SU2 n=2 label su2:(1,1);0;0" in text
        assert "|10>" in text and "|01>" in text
        assert "norm^2 = 1.000000000000 (exact)" in text

    def test_rows_carry_quarks(self) -> None:
        """Test that SU(3) rows name their quarks"""
        label = parse_label("su3:(1,1,1);0,0,0;1,0")
        rows = amplitude_rows(decompose_su3(label))
        assert {row["quarks"] for row in rows} == {"uds", "usd", "dus", "dsu", "sud", "sdu"}
        assert all(row["den"] == 6 for row in rows)

    def test_render_simulate(self) -> None:
        """Test that the simulate header names circuit file and mode"""
        label = parse_label("su2:(2,1);1;1,0")
        report = ReportFactory.create_amplitude_report(
            "simulate", label, decompose_su2(label), circuit="c.json", mode="float"
        )
        assert report.render().startswith("circuit c.json (float mode)\n")

    def test_json_serializable(self) -> None:
        """Test that reports survive json.dumps"""
        label = parse_label("su3:(2,1,0);2,0,1;2,1")
        report = ReportFactory.create_amplitude_report("decompose", label, decompose_su3(label), 0.25)
        data = json.loads(json.dumps(report.to_dict()))
        assert data["elapsed"] == 0.25
        assert data["outputs"]["n"] == 3


class TestOtherReports:
    def test_circuit_report(self) -> None:
        """Test the summary of a written circuit"""
        circuit = build_usch_inv("su2", 3)
        report = ReportFactory.create_circuit_report(circuit, "out.json")
        assert report.outputs["gates"] == len(circuit.gates)
        text = report.render()
        assert "written to out.json" in text
        assert "su2_cg_angle=2" in text

    def test_sweep_report(self) -> None:
        """Test pass and fail rendering of a sweep"""
        sweep = SweepReport("su2", 2, "exact", [LabelResult("su2:(1,1);0;0", 2, True, "ok")])
        assert "PASS" in ReportFactory.create_sweep_report(sweep).render()

        sweep.results.append(LabelResult("su2:(2);1;1", 2, False, "fidelity 0.5"))
        report = ReportFactory.create_sweep_report(sweep)
        assert not report.passed
        text = report.render()
        assert "FAIL" in text
        assert "1/2 labels passed" in text
        assert "FAILED su2:(2);1;1: fidelity 0.5" in text

    def test_resource_report(self) -> None:
        """Test the gate count table"""
        report = ReportFactory.create_resource_report(compare_resources("su2", 4))
        assert report.passed
        text = report.render()
        assert "SU2 resources for n=4: PASS" in text
        assert "CNOT" in text and "42" in text

    def test_isoscalar_report(self) -> None:
        """Test the isoscalar table rendering"""
        entries = isoscalar_table(1, 0)
        report = ReportFactory.create_isoscalar_report(1, 0, entries)
        assert report.passed
        assert report.outputs["count"] == len(entries)
        text = report.render()
        assert text.startswith(f"Isoscalar factors of (1,0) x quark: {len(entries)} entries")
        assert "MISMATCH" not in text

    def test_run_report_defaults(self) -> None:
        """Test the report envelope"""
        report = RunReport("decompose", {}, {})
        data = report.to_dict()
        assert data["passed"] is True
        assert data["timestamp"] > 0
