"""Command line entry point: `schursynth <command>`.

Every command prints a report, as text or as JSON with --format json.
Exit codes: 0 pass, 1 failed check, 2 usage or label error.
"""

import json
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import click

from app import create_app
from app.circuits.gates import Circuit
from app.circuits.resources import compare_resources
from app.circuits.synthesis import SynthesisPlan, build_usch_inv
from app.config import SIMULATION_MODES, Config
from app.domain.schur_label import parse_label
from app.errors import CircuitError, LabelError, SchurSynthError
from app.logging_setup import configure_global_logging
from app.reports.report_factory import ReportFactory, RunReport
from app.services.isoscalars import isoscalar_table
from app.services.verification import VerificationService, decompose
from app.simulation.simulator import simulate_label

logger = logging.getLogger("schur_synth")

FORMATS = ("text", "json")

format_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True, help="Report format."
)
mode_option = click.option(
    "--mode",
    type=click.Choice(SIMULATION_MODES),
    default=None,
    help="Amplitude arithmetic, defaults to SCHUR_SYNTH_MODE.",
)


@contextmanager
def usage_errors() -> Iterator[None]:
    """Label and circuit-file problems exit with 2, other domain failures with 1"""
    try:
        yield
    except (LabelError, CircuitError) as e:
        raise click.UsageError(str(e)) from e
    except SchurSynthError as e:
        raise click.ClickException(str(e)) from e


def pick(option: Optional[str], argument: Optional[str], name: str) -> str:
    if option is not None and argument is not None and option != argument:
        raise click.UsageError(f"{name} given twice with different values: {option!r} and {argument!r}")
    value = option if option is not None else argument
    if value is None:
        raise click.UsageError(f"missing {name}")
    return value


def pick_int(option: Optional[int], argument: Optional[int], name: str) -> int:
    if option is not None and argument is not None and option != argument:
        raise click.UsageError(f"{name} given twice with different values: {option} and {argument}")
    value = option if option is not None else argument
    if value is None:
        raise click.UsageError(f"missing {name}")
    return value


def emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        click.echo(report.render(), nl=False)
    if not report.passed:
        click.get_current_context().exit(1)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Overrides LOG_LEVEL.",
)
def cli(log_level: Optional[str]) -> None:
    """Inverse Schur transform synthesis for SU(2) and SU(3)."""
    configure_global_logging(log_level)


@cli.command("decompose")
@click.argument("label_arg", metavar="[LABEL]", required=False)
@click.option("--label", "label_opt", help="Schur label such as 'su2:(2,1);1;1,0'.")
@format_option
def decompose_command(label_arg: Optional[str], label_opt: Optional[str], fmt: str) -> None:
    """Exact qudit superposition of a Schur label."""
    text = pick(label_opt, label_arg, "label")
    started = time.monotonic()
    with usage_errors():
        label = parse_label(text)
        amplitudes = decompose(label)
    emit(ReportFactory.create_amplitude_report("decompose", label, amplitudes, time.monotonic() - started), fmt)


@cli.command("synthesize")
@click.argument("group_arg", metavar="[GROUP]", required=False)
@click.argument("n_arg", metavar="[N]", type=int, required=False)
@click.option("--group", "group_opt", type=click.Choice(["su2", "su3"]))
@click.option("--n", "n_opt", type=int)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Circuit JSON destination.")
@format_option
def synthesize_command(
    group_arg: Optional[str],
    n_arg: Optional[int],
    group_opt: Optional[str],
    n_opt: Optional[int],
    out_path: Optional[str],
    fmt: str,
) -> None:
    """Write the inverse Schur circuit of n particles as JSON."""
    group = pick(group_opt, group_arg, "group")
    n = pick_int(n_opt, n_arg, "n")
    destination = Path(out_path or f"usch_inv_{group}_n{n}.json")
    started = time.monotonic()
    with usage_errors():
        circuit = build_usch_inv(group, n)
    destination.write_text(circuit.to_json(indent=2))
    logger.info(f"Wrote {len(circuit.gates)} gates to {destination}")
    emit(ReportFactory.create_circuit_report(circuit, str(destination), time.monotonic() - started), fmt)


@cli.command("simulate")
@click.argument("circuit_arg", metavar="[CIRCUIT]", required=False)
@click.argument("label_arg", metavar="[LABEL]", required=False)
@click.option("--circuit", "circuit_opt", help="Circuit JSON written by synthesize.")
@click.option("--label", "label_opt", help="Schur label to load into the circuit.")
@mode_option
@format_option
def simulate_command(
    circuit_arg: Optional[str],
    label_arg: Optional[str],
    circuit_opt: Optional[str],
    label_opt: Optional[str],
    mode: Optional[str],
    fmt: str,
) -> None:
    """Run a circuit file on the register state of a label."""
    path = Path(pick(circuit_opt, circuit_arg, "circuit"))
    text = pick(label_opt, label_arg, "label")
    if not path.is_file():
        raise click.UsageError(f"circuit file {path} does not exist")
    mode = mode or Config.get_instance().simulation_mode
    started = time.monotonic()
    with usage_errors():
        circuit = Circuit.from_json(path.read_text())
        label = parse_label(text)
        plan = SynthesisPlan.for_group(circuit.group, circuit.n)
        amplitudes = simulate_label(circuit, plan.assignment(label), plan.output_registers(), mode)
    report = ReportFactory.create_amplitude_report(
        "simulate", label, amplitudes, time.monotonic() - started, circuit=str(path), mode=mode
    )
    emit(report, fmt)


@cli.command("verify")
@click.argument("group_arg", metavar="[GROUP]", required=False)
@click.argument("max_n_arg", metavar="[MAX_N]", type=int, required=False)
@click.option("--group", "group_opt", type=click.Choice(["su2", "su3"]))
@click.option("--max-n", "max_n_opt", type=int)
@mode_option
@format_option
def verify_command(
    group_arg: Optional[str],
    max_n_arg: Optional[int],
    group_opt: Optional[str],
    max_n_opt: Optional[int],
    mode: Optional[str],
    fmt: str,
) -> None:
    """Check engine, circuit and oracle against each other for every label up to max-n."""
    group = pick(group_opt, group_arg, "group")
    max_n = pick_int(max_n_opt, max_n_arg, "max-n")
    with usage_errors():
        sweep = VerificationService.get_instance().verify(group, max_n, mode)
    emit(ReportFactory.create_sweep_report(sweep), fmt)


@cli.command("resources")
@click.argument("group_arg", metavar="[GROUP]", required=False)
@click.argument("n_arg", metavar="[N]", type=int, required=False)
@click.option("--group", "group_opt", type=click.Choice(["su2", "su3"]))
@click.option("--n", "n_opt", type=int)
@format_option
def resources_command(
    group_arg: Optional[str], n_arg: Optional[int], group_opt: Optional[str], n_opt: Optional[int], fmt: str
) -> None:
    """Measured gate counts against the closed forms."""
    group = pick(group_opt, group_arg, "group")
    n = pick_int(n_opt, n_arg, "n")
    started = time.monotonic()
    with usage_errors():
        comparison = compare_resources(group, n)
    emit(ReportFactory.create_resource_report(comparison, time.monotonic() - started), fmt)


@cli.command("isoscalar-table")
@click.argument("p1", type=int)
@click.argument("q1", type=int)
@format_option
def isoscalar_table_command(p1: int, q1: int, fmt: str) -> None:
    """Every isoscalar factor of (P1,Q1) x quark."""
    started = time.monotonic()
    with usage_errors():
        entries = isoscalar_table(p1, q1)
    emit(ReportFactory.create_isoscalar_report(p1, q1, entries, time.monotonic() - started), fmt)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True, type=int)
def serve_command(host: str, port: int) -> None:
    """Run the JSON API locally."""
    create_app().run(host=host, port=port)


def main() -> None:
    cli(prog_name="schursynth")


if __name__ == "__main__":
    main()
