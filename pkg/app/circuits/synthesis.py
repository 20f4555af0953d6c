"""Reversible circuits for the inverse Schur transform.

One block undoes one Clebsch-Gordan coupling: it removes the box chosen by a
path entry from the diagram registers, shifts the weight registers into the
parent frame and rotates the path entry into the output qudit. The full
circuit cascades n-1 blocks, consuming p_{n-1} first.

SU(2) registers hold (lam1, lam2, q). SU(3) registers hold the rows of the
diagram and the pair sums (k+l, l+m, k+m) of the weight.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from app.circuits.arithmetic import (
    binary_add_qubit,
    binary_sub_qubit,
    ternary_register_add_bit,
    ternary_register_sub_bit,
)
from app.circuits.gates import DATA_ROT, QUBITS, Circuit, Gate, Register, RegisterFile, ccx_gate, cx_gate
from app.domain.repr_state import ReprStateSU2, ReprStateSU3
from app.domain.schur_label import SchurLabel, group_dimension
from app.errors import CircuitError, LabelError

logger = logging.getLogger("schur_synth")

SU2_DATA = ("lam1", "lam2", "q")
SU3_ROWS = ("lam1", "lam2", "lam3")
SU3_PAIRS = ("kl", "lm", "km")


def binary_width(max_value: int) -> int:
    """Qubits needed to hold 0..max_value"""
    return max(1, max_value.bit_length())


def ternary_digits(max_value: int) -> int:
    """Padded qutrits needed to hold 0..max_value"""
    digits = 1
    while 3**digits <= max_value:
        digits += 1
    return digits


def path_name(index: int) -> str:
    return f"p{index}"


@dataclass(frozen=True)
class SynthesisPlan:
    """Register layout of the inverse Schur circuit for n particles"""

    group: str
    n: int
    registers: Tuple[Register, ...]

    @classmethod
    def su2(cls, n: int) -> "SynthesisPlan":
        _check_particle_count(n)
        width = binary_width(n)
        table = RegisterFile()
        for name in SU2_DATA:
            table.add(name, QUBITS, width)
        for index in range(1, n):
            table.add(path_name(index), QUBITS, 1, "path")
        table.add("anc", QUBITS, 1, "ancilla")
        table.add("carry", QUBITS, width, "carry")
        return cls("su2", n, tuple(table.registers()))

    @classmethod
    def su3(cls, n: int) -> "SynthesisPlan":
        _check_particle_count(n)
        row_digits = ternary_digits(n)
        pair_digits = ternary_digits(2 * n)
        table = RegisterFile()
        for name in SU3_ROWS:
            table.add_qutrits(name, row_digits)
        for name in SU3_PAIRS:
            table.add_qutrits(name, pair_digits)
        for index in range(1, n):
            table.add_qutrits(path_name(index), 1, "path")
        table.add("z", QUBITS, 1, "ancilla")
        table.add("y", QUBITS, 1, "ancilla")
        table.add("carry", QUBITS, max(row_digits, pair_digits), "carry")
        return cls("su3", n, tuple(table.registers()))

    @classmethod
    def for_group(cls, group: str, n: int) -> "SynthesisPlan":
        if group_dimension(group) == 2:
            return cls.su2(n)
        return cls.su3(n)

    def register(self, name: str) -> Register:
        for register in self.registers:
            if register.name == name:
                return register
        raise CircuitError(f"plan has no register {name}")

    def path_register(self, index: int) -> Register:
        if not 1 <= index < self.n:
            raise CircuitError(f"path index {index} outside 1..{self.n - 1}")
        return self.register(path_name(index))

    def carry_bits(self) -> List[int]:
        for register in self.registers:
            if register.role == "carry":
                return register.bits()
        return []

    def consumed_path(self, step_index: int) -> Register:
        """Path register consumed by block step_index (1-based)"""
        if not 1 <= step_index < self.n:
            raise CircuitError(f"step {step_index} outside 1..{self.n - 1}")
        return self.path_register(self.n - step_index)

    def output_registers(self) -> List[str]:
        """Registers read out as the qudit string, final particle value first"""
        first = "q" if self.group == "su2" else "km"
        return [first] + [path_name(index) for index in range(1, self.n)]

    def assignment(self, label: SchurLabel) -> Dict[str, int]:
        """Register values that encode a Schur label"""
        if label.group != self.group:
            raise LabelError(f"{self.group} circuit cannot take the {label.group} label {label}", "group")
        if label.n != self.n:
            raise LabelError(f"label {label} has n={label.n}, circuit expects {self.n}", "particle_count")
        rows = label.partition.rows
        values: Dict[str, int] = {}
        if isinstance(label.weight, ReprStateSU2):
            values.update(lam1=rows[0], lam2=rows[1], q=label.weight.q)
        elif isinstance(label.weight, ReprStateSU3):
            values.update(zip(SU3_ROWS, rows))
            values.update(zip(SU3_PAIRS, label.weight.padded()))
        for index, entry in enumerate(label.path, start=1):
            values[path_name(index)] = entry
        return values

    def circuit(self, gates: List[Gate]) -> Circuit:
        return Circuit(self.group, self.n, self.registers, tuple(gates))


def _check_particle_count(n: int) -> None:
    if n < 2:
        raise CircuitError(f"an inverse Schur circuit needs n >= 2, got {n}")


def build_ucg_inv_su2(plan: SynthesisPlan, step_index: int) -> List[Gate]:
    """One SU(2) block: ancilla load, three arithmetic updates, ancilla reset, rotation, q update"""
    if plan.group != "su2":
        raise CircuitError(f"build_ucg_inv_su2 needs an su2 plan, got {plan.group}")
    p = plan.consumed_path(step_index).bit(0)
    anc = plan.register("anc").bit(0)
    carries = plan.carry_bits()
    lam1, lam2, q = (plan.register(name) for name in SU2_DATA)

    gates = [cx_gate(p, anc, polarity=0)]
    gates += binary_sub_qubit(lam2, anc, carries)
    gates += binary_sub_qubit(lam1, p, carries)
    gates += binary_add_qubit(q, anc, carries)
    gates.append(cx_gate(p, anc, polarity=0))
    gates.append(Gate(DATA_ROT, (p,), formula_id="su2_cg_angle", operands=SU2_DATA))
    gates += binary_sub_qubit(q, p, carries)
    return gates


def build_usch_inv_su2(n: int) -> Circuit:
    plan = SynthesisPlan.su2(n)
    gates: List[Gate] = []
    for step in range(1, n):
        gates += build_ucg_inv_su2(plan, step)
    circuit = plan.circuit(gates)
    logger.info(f"Synthesized su2 inverse Schur circuit for n={n}: {circuit.width} bits, {len(gates)} gates")
    return circuit


def build_ucg_inv_su3(plan: SynthesisPlan, step_index: int) -> List[Gate]:
    """One SU(3) block.

    The first stage removes the box and moves the pair sums into the parent
    frame, the isoscalar rotation turns the path entry into a channel
    (sigma=2, rho=1, strange=0), the second stage lowers k or l for the
    chosen channel and the isospin rotation turns the channel into the
    output quark (u=2, d=1, s=0), which finally lowers m for a u quark.
    """
    if plan.group != "su3":
        raise CircuitError(f"build_ucg_inv_su3 needs an su3 plan, got {plan.group}")
    b1, b2 = plan.consumed_path(step_index).digit_bits(0)
    z = plan.register("z").bit(0)
    y = plan.register("y").bit(0)
    carries = plan.carry_bits()
    lam1, lam2, lam3 = (plan.register(name) for name in SU3_ROWS)
    kl, lm, km = (plan.register(name) for name in SU3_PAIRS)

    def add(register: Register, bit: int) -> List[Gate]:
        return ternary_register_add_bit(register, bit, carries)

    def sub(register: Register, bit: int) -> List[Gate]:
        return ternary_register_sub_bit(register, bit, carries)

    # z = [p == 0]
    gates = [ccx_gate(b1, b2, z, (0, 0))]
    gates += sub(lam1, b1) + sub(lam2, b2) + sub(lam3, z)
    for register in (kl, lm, km):
        gates += add(register, z) + add(register, z)
    gates.append(ccx_gate(b1, b2, z, (0, 0)))
    gates.append(Gate(DATA_ROT, (b1, b2), formula_id="su3_isoscalar", operands=SU3_ROWS + SU3_PAIRS))

    # y = [channel is sigma or rho]
    gates += [cx_gate(b1, y), cx_gate(b2, y)]
    gates += sub(kl, y) + sub(km, b1) + sub(lm, b2)
    gates += [cx_gate(b1, y), cx_gate(b2, y)]
    gates.append(Gate(DATA_ROT, (b1, b2), formula_id="su3_isospin", operands=SU3_PAIRS))
    gates += sub(lm, b1) + sub(km, b1)
    return gates


def build_su3_cleanup(plan: SynthesisPlan) -> List[Gate]:
    """Clear kl and lm once the single remaining quark sits in km.

    u, d and s leave the pair sums (1,1,2), (1,0,1) and (0,0,0).
    """
    carries = plan.carry_bits()
    kl, lm, km = (plan.register(name) for name in SU3_PAIRS)
    c1, c2 = km.digit_bits(0)
    y = plan.register("y").bit(0)
    gates = ternary_register_sub_bit(lm, c1, carries)
    gates += [cx_gate(c1, y), cx_gate(c2, y)]
    gates += ternary_register_sub_bit(kl, y, carries)
    gates += [cx_gate(c1, y), cx_gate(c2, y)]
    return gates


def build_usch_inv_su3(n: int) -> Circuit:
    plan = SynthesisPlan.su3(n)
    gates: List[Gate] = []
    for step in range(1, n):
        gates += build_ucg_inv_su3(plan, step)
    gates += build_su3_cleanup(plan)
    circuit = plan.circuit(gates)
    logger.info(f"Synthesized su3 inverse Schur circuit for n={n}: {circuit.width} bits, {len(gates)} gates")
    return circuit


def build_usch_inv(group: str, n: int) -> Circuit:
    if group_dimension(group) == 2:
        return build_usch_inv_su2(n)
    return build_usch_inv_su3(n)
