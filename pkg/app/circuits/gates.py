"""Reversible gates over named qubit and padded-qutrit registers.

Bits are numbered globally in register order; inside a register bit 0 is
the least significant. A padded qutrit digit i occupies bits (2i, 2i+1)
holding (b1, b2) with value 2*b1 + b2, so 0 -> 00, 1 -> 01, 2 -> 10.
"""

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from app.errors import CircuitError

QUBITS = "qubits"
QUTRITS = "qutrits"
REGISTER_KINDS = (QUBITS, QUTRITS)
REGISTER_ROLES = ("data", "path", "ancilla", "carry")

NOT, CNOT, CCNOT, CRY, DATA_ROT = "NOT", "CNOT", "CCNOT", "CRY", "DATA_ROT"
GATE_TYPES = (NOT, CNOT, CCNOT, CRY, DATA_ROT)
FORMULA_IDS = ("su2_cg_angle", "su3_isoscalar", "su3_isospin")


@dataclass(frozen=True)
class Register:
    name: str
    kind: str
    width: int
    role: str = "data"
    offset: int = 0

    def __post_init__(self) -> None:
        if self.kind not in REGISTER_KINDS:
            raise CircuitError(f"register {self.name}: unknown kind {self.kind!r}")
        if self.role not in REGISTER_ROLES:
            raise CircuitError(f"register {self.name}: unknown role {self.role!r}")
        if self.width < 1 or (self.kind == QUTRITS and self.width % 2):
            raise CircuitError(f"register {self.name}: width {self.width} does not fit kind {self.kind}")

    @property
    def digits(self) -> int:
        return self.width // 2 if self.kind == QUTRITS else self.width

    @property
    def capacity(self) -> int:
        """Number of representable values"""
        return 3**self.digits if self.kind == QUTRITS else 2**self.width

    def bit(self, index: int) -> int:
        if not 0 <= index < self.width:
            raise CircuitError(f"bit {index} outside register {self.name} of width {self.width}")
        return self.offset + index

    def bits(self) -> List[int]:
        return list(range(self.offset, self.offset + self.width))

    def digit_bits(self, digit: int) -> Tuple[int, int]:
        """(b1, b2) of a padded qutrit digit"""
        if self.kind != QUTRITS:
            raise CircuitError(f"register {self.name} holds qubits, not qutrits")
        return self.bit(2 * digit), self.bit(2 * digit + 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "kind": self.kind, "width": self.width, "role": self.role}


@dataclass(frozen=True)
class Control:
    bit: int
    polarity: int = 1

    def to_dict(self) -> Dict[str, int]:
        return {"bit": self.bit, "polarity": self.polarity}


@dataclass(frozen=True)
class Gate:
    type: str
    targets: Tuple[int, ...]
    controls: Tuple[Control, ...] = ()
    formula_id: Optional[str] = None
    operands: Tuple[str, ...] = ()
    # cos^2 of the rotation angle of a static CRY
    cos_squared: Optional[Fraction] = None
    uncompute: bool = False
    # writes the final carry of a ripple; left set on overflow
    overflow: bool = False

    def __post_init__(self) -> None:
        if self.type not in GATE_TYPES:
            raise CircuitError(f"unknown gate type {self.type!r}")
        expected_controls = {NOT: 0, CNOT: 1, CCNOT: 2}.get(self.type)
        if expected_controls is not None and len(self.controls) != expected_controls:
            raise CircuitError(f"{self.type} needs {expected_controls} controls, got {len(self.controls)}")
        if self.type != DATA_ROT and len(self.targets) != 1:
            raise CircuitError(f"{self.type} acts on exactly one target bit")
        control_bits = {control.bit for control in self.controls}
        if len(control_bits) != len(self.controls) or control_bits & set(self.targets):
            raise CircuitError(f"{self.type} gate has overlapping control and target bits")
        if any(control.polarity not in (0, 1) for control in self.controls):
            raise CircuitError("control polarity must be 0 or 1")
        if self.type == DATA_ROT and self.formula_id not in FORMULA_IDS:
            raise CircuitError(f"unknown rotation formula {self.formula_id!r}")
        if self.type == CRY and (self.cos_squared is None or not 0 <= self.cos_squared <= 1):
            raise CircuitError("a CRY gate needs cos^2(theta) in [0, 1]")
        if self.uncompute and self.overflow:
            raise CircuitError("a gate cannot be both uncompute and overflow")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "type": self.type,
            "targets": list(self.targets),
            "controls": [control.to_dict() for control in self.controls],
        }
        if self.formula_id is not None:
            data["formula_id"] = self.formula_id
            data["operands"] = list(self.operands)
        if self.cos_squared is not None:
            data["theta_num"] = self.cos_squared.numerator
            data["theta_den"] = self.cos_squared.denominator
        if self.uncompute:
            data["uncompute"] = True
        if self.overflow:
            data["overflow"] = True
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Gate":
        try:
            cos_squared = None
            if "theta_num" in data:
                cos_squared = Fraction(int(data["theta_num"]), int(data["theta_den"]))
            return cls(
                type=data["type"],
                targets=tuple(int(bit) for bit in data["targets"]),
                controls=tuple(Control(int(c["bit"]), int(c.get("polarity", 1))) for c in data.get("controls", [])),
                formula_id=data.get("formula_id"),
                operands=tuple(data.get("operands", [])),
                cos_squared=cos_squared,
                uncompute=bool(data.get("uncompute", False)),
                overflow=bool(data.get("overflow", False)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CircuitError(f"malformed gate {data}: {e}") from e


def x_gate(target: int, uncompute: bool = False) -> Gate:
    return Gate(NOT, (target,), uncompute=uncompute)


def cx_gate(control: int, target: int, polarity: int = 1, uncompute: bool = False) -> Gate:
    return Gate(CNOT, (target,), (Control(control, polarity),), uncompute=uncompute)


def ccx_gate(
    first: int,
    second: int,
    target: int,
    polarities: Tuple[int, int] = (1, 1),
    uncompute: bool = False,
    overflow: bool = False,
) -> Gate:
    controls = (Control(first, polarities[0]), Control(second, polarities[1]))
    return Gate(CCNOT, (target,), controls, uncompute=uncompute, overflow=overflow)


class RegisterFile:
    """Ordered register table that hands out bit offsets"""

    def __init__(self) -> None:
        self._registers: Dict[str, Register] = {}
        self._width = 0

    def add(self, name: str, kind: str, width: int, role: str = "data") -> Register:
        if name in self._registers:
            raise CircuitError(f"register {name} declared twice")
        register = Register(name, kind, width, role, self._width)
        self._registers[name] = register
        self._width += width
        return register

    def add_qutrits(self, name: str, digits: int, role: str = "data") -> Register:
        return self.add(name, QUTRITS, 2 * digits, role)

    def __getitem__(self, name: str) -> Register:
        try:
            return self._registers[name]
        except KeyError:
            raise CircuitError(f"unknown register {name}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._registers

    def registers(self) -> List[Register]:
        return list(self._registers.values())

    @property
    def width(self) -> int:
        return self._width


@dataclass(frozen=True)
class Circuit:
    group: str
    n: int
    registers: Tuple[Register, ...]
    gates: Tuple[Gate, ...] = field(default=())

    def __post_init__(self) -> None:
        names = [register.name for register in self.registers]
        if len(set(names)) != len(names):
            raise CircuitError("register names must be unique")
        offset = 0
        for register in self.registers:
            if register.offset != offset:
                raise CircuitError(f"register {register.name} starts at bit {register.offset}, expected {offset}")
            offset += register.width
        for index, gate in enumerate(self.gates):
            self._check_gate(index, gate)

    def _check_gate(self, index: int, gate: Gate) -> None:
        bits = list(gate.targets) + [control.bit for control in gate.controls]
        if any(not 0 <= bit < self.width for bit in bits):
            raise CircuitError(f"gate {index} ({gate.type}) addresses a bit outside 0..{self.width - 1}")
        if gate.type == DATA_ROT:
            unknown = [name for name in gate.operands if name not in self.register_names]
            if unknown:
                raise CircuitError(f"gate {index} reads undeclared registers {unknown}")

    @property
    def width(self) -> int:
        return sum(register.width for register in self.registers)

    @property
    def register_names(self) -> List[str]:
        return [register.name for register in self.registers]

    def register(self, name: str) -> Register:
        for register in self.registers:
            if register.name == name:
                return register
        raise CircuitError(f"unknown register {name}")

    def registers_with_role(self, *roles: str) -> List[Register]:
        return [register for register in self.registers if register.role in roles]

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "n": self.n,
            "registers": [register.to_dict() for register in self.registers],
            "gates": [gate.to_dict() for gate in self.gates],
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Circuit":
        try:
            table = RegisterFile()
            for entry in data["registers"]:
                table.add(entry["name"], entry["kind"], int(entry["width"]), entry.get("role", "data"))
            gates = [Gate.from_dict(entry) for entry in data["gates"]]
            return cls(str(data["group"]), int(data["n"]), tuple(table.registers()), tuple(gates))
        except (KeyError, TypeError, ValueError) as e:
            raise CircuitError(f"malformed circuit document: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise CircuitError(f"circuit file is not valid JSON: {e}") from e
        return cls.from_dict(data)


def encode_value(register: Register, value: int) -> Dict[int, int]:
    """Bit assignment of an integer held in a register"""
    if not 0 <= value < register.capacity:
        raise CircuitError(f"value {value} does not fit register {register.name}")
    bits: Dict[int, int] = {}
    if register.kind == QUBITS:
        for index in range(register.width):
            bits[register.bit(index)] = (value >> index) & 1
        return bits
    for digit in range(register.digits):
        value, trit = divmod(value, 3)
        b1, b2 = register.digit_bits(digit)
        bits[b1], bits[b2] = trit >> 1, trit & 1
    return bits


def decode_value(register: Register, key: int) -> int:
    """Integer held by a register inside a full basis key; padding 11 is rejected"""
    if register.kind == QUBITS:
        return (key >> register.offset) & ((1 << register.width) - 1)
    value = 0
    for digit in reversed(range(register.digits)):
        b1, b2 = register.digit_bits(digit)
        high, low = (key >> b1) & 1, (key >> b2) & 1
        if high and low:
            raise CircuitError(f"register {register.name} digit {digit} holds the invalid pattern 11")
        value = 3 * value + 2 * high + low
    return value
