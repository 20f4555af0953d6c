"""Sparse state-vector simulator for inverse Schur circuits.

A state maps full basis keys (bit i of the key is circuit bit i) to
amplitudes. Exact mode keeps RadicalSum amplitudes, float mode keeps
floats. Permutation gates move amplitudes between keys; rotations split
them. DATA_ROT gates read their operand registers in every branch and
evaluate the rotation named by their formula id.
"""

import logging
import math
from typing import Callable, Dict, List, Mapping, Sequence, Set, Tuple, Union

from app.circuits.gates import (
    CCNOT,
    CNOT,
    CRY,
    DATA_ROT,
    NOT,
    Circuit,
    Gate,
    Register,
    decode_value,
    encode_value,
)
from app.domain.amplitude_map import AmplitudeMap
from app.domain.exact import RadicalSum, SqrtRational
from app.domain.repr_state import klm_from_padded
from app.domain.schur_label import group_dimension
from app.errors import CircuitError, DirtyAncillaError, LabelError, SimulationError
from app.services.isoscalars import CHANNELS
from app.services.su2_engine import rotation_row, ucg_inv_angle_primed
from app.services.su3_engine import isoscalar_rotation, isospin_coupling

logger = logging.getLogger("schur_synth")

EXACT, FLOAT = "exact", "float"
MODES = (EXACT, FLOAT)

# float amplitudes below this are treated as cancelled
FLOAT_CUTOFF = 1e-14

CHANNEL_DIGITS = {"sigma": 2, "rho": 1, "strange": 0}

Amplitude = Union[RadicalSum, float]
RotationRow = Dict[int, SqrtRational]


class SimState:
    """Amplitudes over the basis keys of one circuit"""

    def __init__(self, circuit: Circuit, amplitudes: Dict[int, Amplitude], mode: str = EXACT) -> None:
        if mode not in MODES:
            raise SimulationError(f"unknown amplitude mode {mode!r}, expected exact or float")
        self.circuit = circuit
        self.amplitudes = amplitudes
        self.mode = mode

    def support(self) -> List[int]:
        return sorted(self.amplitudes)

    def norm_squared(self) -> Union[RadicalSum, float]:
        if self.mode == FLOAT:
            return math.fsum(float(value) ** 2 for value in self.amplitudes.values())
        total = RadicalSum.zero()
        for value in self.amplitudes.values():
            total = total + value * value  # type: ignore[operator]
        return total

    def values_of(self, name: str) -> Set[int]:
        """Every value a register takes across the support"""
        register = self.circuit.register(name)
        return {_decode(register, key) for key in self.amplitudes}

    def bitstring(self, key: int) -> str:
        return "".join(str((key >> bit) & 1) for bit in range(self.circuit.width))


def _decode(register: Register, key: int) -> int:
    try:
        return decode_value(register, key)
    except CircuitError as e:
        raise SimulationError(str(e)) from e


def _lift(value: SqrtRational, mode: str) -> Amplitude:
    if mode == FLOAT:
        return float(value)
    return RadicalSum.of(value)


def _accumulate(amplitudes: Dict[int, Amplitude], key: int, value: Amplitude) -> None:
    if key in amplitudes:
        value = amplitudes[key] + value  # type: ignore[operator]
    if isinstance(value, RadicalSum) and value.is_zero():
        amplitudes.pop(key, None)
    elif isinstance(value, float) and abs(value) <= FLOAT_CUTOFF:
        amplitudes.pop(key, None)
    else:
        amplitudes[key] = value


def init_state(circuit: Circuit, assignment: Union[Mapping[str, int], str], mode: str = EXACT) -> SimState:
    """Basis state with amplitude 1 from register values or a raw bit string (bit 0 first)"""
    if isinstance(assignment, str):
        key = _key_from_bits(circuit, assignment)
    else:
        key = _key_from_values(circuit, assignment)
    for register in circuit.registers:
        value = _decode(register, key)
        if register.role in ("ancilla", "carry") and value:
            raise SimulationError(f"{register.role} register {register.name} must start at 0, got {value}")
    one: Amplitude = 1.0 if mode == FLOAT else RadicalSum.of(1)
    return SimState(circuit, {key: one}, mode)


def _key_from_bits(circuit: Circuit, bits: str) -> int:
    if len(bits) != circuit.width:
        raise SimulationError(f"bit string has {len(bits)} bits, circuit has {circuit.width}")
    if set(bits) - {"0", "1"}:
        raise SimulationError(f"bit string '{bits}' may only hold 0 and 1")
    return sum(1 << index for index, bit in enumerate(bits) if bit == "1")


def _key_from_values(circuit: Circuit, values: Mapping[str, int]) -> int:
    key = 0
    for name, value in values.items():
        try:
            register = circuit.register(name)
            bits = encode_value(register, value)
        except CircuitError as e:
            raise SimulationError(str(e)) from e
        for bit, bit_value in bits.items():
            key |= bit_value << bit
    return key


def _controls_hold(gate: Gate, key: int) -> bool:
    return all(((key >> control.bit) & 1) == control.polarity for control in gate.controls)


def _target_value(gate: Gate, key: int) -> int:
    if len(gate.targets) == 1:
        return (key >> gate.targets[0]) & 1
    if len(gate.targets) == 2:
        high, low = (key >> gate.targets[0]) & 1, (key >> gate.targets[1]) & 1
        if high and low:
            raise SimulationError(f"{gate.formula_id} target holds the invalid qutrit pattern 11")
        return 2 * high + low
    raise SimulationError(f"{gate.type} gate with {len(gate.targets)} targets is not supported")


def _with_target(gate: Gate, key: int, value: int) -> int:
    for bit in gate.targets:
        key &= ~(1 << bit)
    if len(gate.targets) == 1:
        return key | (value << gate.targets[0])
    return key | ((value >> 1) << gate.targets[0]) | ((value & 1) << gate.targets[1])


def su2_cg_angle(values: Sequence[int], target: int) -> RotationRow:
    """Rotation of the consumed bit from the parent diagram and the shifted q"""
    lam1, lam2, q = values
    if lam2 < 0 or lam1 < lam2 or not 0 <= q <= lam1 - lam2 + 1:
        raise SimulationError(f"(lam1, lam2, q)=({lam1},{lam2},{q}) is not a parent-frame SU(2) branch")
    return rotation_row(ucg_inv_angle_primed(lam1, lam2, q), target)


def _klm(kl: int, lm: int, km: int) -> Tuple[int, int, int]:
    try:
        return klm_from_padded(kl, lm, km)
    except LabelError as e:
        raise SimulationError(str(e)) from e


def su3_isoscalar(values: Sequence[int], target: int) -> RotationRow:
    """Path entry to channel, with the isoscalar factors of the parent-frame state"""
    lam1, lam2, lam3, kl, lm, km = values
    if lam3 < 0 or lam2 < lam3 or lam1 < lam2:
        raise SimulationError(f"rows ({lam1},{lam2},{lam3}) are not a diagram")
    k2, l2, m2 = _klm(kl, lm, km)
    if not 0 <= l2 <= m2 <= k2:
        raise SimulationError(f"({k2},{l2},{m2}) is not an ordered parent-frame state")
    matrix = isoscalar_rotation(lam1 - lam2, lam2 - lam3, k2, l2)
    row = {
        CHANNEL_DIGITS[channel]: value
        for channel, value in zip(CHANNELS, matrix.row(f"p={target}"))
        if not value.is_zero()
    }
    if not row:
        raise SimulationError(f"path entry {target} couples ({k2},{l2},{m2}) of rows ({lam1},{lam2},{lam3}) nowhere")
    return row


def su3_isospin(values: Sequence[int], target: int) -> RotationRow:
    """Channel to quark, with the SU(2) coupling of the parent isospin"""
    if target == CHANNEL_DIGITS["strange"]:
        return {0: SqrtRational.one()}
    k, l, mu = _klm(*values)  # noqa: E741
    channel = "sigma" if target == CHANNEL_DIGITS["sigma"] else "rho"
    k2, l2 = (k + 1, l) if channel == "sigma" else (k, l + 1)
    try:
        coupling = isospin_coupling(channel, k2, l2, mu)
    except LabelError as e:
        raise SimulationError(f"{channel} branch at ({k},{l}) with m={mu}: {e}") from e
    row = {quark: value for quark, value in coupling.items() if not value.is_zero()}
    if not row:
        raise SimulationError(f"{channel} branch at ({k},{l}) with m={mu} has no isospin coupling")
    return row


ROTATION_FORMULAS: Dict[str, Callable[[Sequence[int], int], RotationRow]] = {
    "su2_cg_angle": su2_cg_angle,
    "su3_isoscalar": su3_isoscalar,
    "su3_isospin": su3_isospin,
}


def _cry_row(gate: Gate, value: int) -> RotationRow:
    cos_squared = gate.cos_squared if gate.cos_squared is not None else 1
    cos = SqrtRational.sqrt(cos_squared)
    sin = SqrtRational.sqrt(1 - cos_squared)
    if value == 0:
        return {0: cos, 1: sin}
    return {0: -sin, 1: cos}


def apply_gate(state: SimState, gate: Gate) -> SimState:
    result: Dict[int, Amplitude] = {}
    if gate.type in (NOT, CNOT, CCNOT):
        flip = 1 << gate.targets[0]
        for key, amplitude in state.amplitudes.items():
            result[key ^ flip if _controls_hold(gate, key) else key] = amplitude
        return SimState(state.circuit, result, state.mode)
    if gate.type not in (CRY, DATA_ROT):
        raise SimulationError(f"cannot simulate gate type {gate.type}")

    operands = [state.circuit.register(name) for name in gate.operands]
    for key, amplitude in state.amplitudes.items():
        if not _controls_hold(gate, key):
            _accumulate(result, key, amplitude)
            continue
        value = _target_value(gate, key)
        if gate.type == CRY:
            row = _cry_row(gate, value)
        else:
            formula = ROTATION_FORMULAS[gate.formula_id or ""]
            try:
                row = formula([_decode(register, key) for register in operands], value)
            except SimulationError as e:
                raise SimulationError(f"{gate.formula_id} failed on branch {state.bitstring(key)}: {e}") from e
        for new_value, coeff in row.items():
            _accumulate(result, _with_target(gate, key, new_value), amplitude * _lift(coeff, state.mode))
    return SimState(state.circuit, result, state.mode)


def run(circuit: Circuit, assignment: Union[Mapping[str, int], str], mode: str = EXACT) -> SimState:
    state = init_state(circuit, assignment, mode)
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    logger.debug(
        f"Simulated {len(circuit.gates)} gates of {circuit.group} n={circuit.n}: {len(state.amplitudes)} keys"
    )
    return state


def extract(state: SimState, registers: Sequence[str]) -> AmplitudeMap:
    """Amplitude map over the named registers, one qudit per register.

    Every other bit has to hold the same value on the whole support.
    """
    circuit = state.circuit
    d = group_dimension(circuit.group)
    selected = [circuit.register(name) for name in registers]
    mask = 0
    for register in selected:
        for bit in register.bits():
            mask |= 1 << bit
    rest = {key & ~mask for key in state.amplitudes}
    if len(rest) > 1:
        raise DirtyAncillaError(
            f"{len(rest)} distinct values outside {', '.join(registers)}; ancillas or data registers are entangled"
        )

    result = AmplitudeMap(d, len(selected))
    for key, amplitude in state.amplitudes.items():
        digits = []
        for register in selected:
            value = _decode(register, key)
            if value >= d:
                raise SimulationError(f"register {register.name} holds {value}, not a base-{d} digit")
            digits.append(str(value))
        result.add("".join(digits), amplitude)
    return result


def check_clean(state: SimState) -> Tuple[bool, str]:
    """Ancilla and carry registers are 0 on every branch"""
    dirty = []
    for register in state.circuit.registers_with_role("ancilla", "carry"):
        values = state.values_of(register.name)
        if values != {0}:
            dirty.append(f"{register.name}={sorted(values)}")
    if dirty:
        return False, f"dirty registers: {', '.join(dirty)}"
    return True, "all ancilla and carry registers are clean"


def simulate_label(
    circuit: Circuit, assignment: Mapping[str, int], outputs: Sequence[str], mode: str = EXACT
) -> AmplitudeMap:
    """Run a circuit and read out the output registers, checking ancillas on the way"""
    state = run(circuit, assignment, mode)
    clean, message = check_clean(state)
    if not clean:
        raise DirtyAncillaError(message)
    return extract(state, outputs)
