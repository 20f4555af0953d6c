from typing import Dict, Iterable, List

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.circuits.arithmetic import (
    binary_add_qubit,
    binary_sub_qubit,
    ternary_add_qubit,
    ternary_add_uncompute,
    ternary_register_add,
    ternary_register_add_bit,
    ternary_register_sub,
    ternary_register_sub_bit,
    ternary_sub_qubit,
    ternary_sub_uncompute,
)
from app.circuits.gates import (
    CCNOT,
    CNOT,
    NOT,
    QUBITS,
    QUTRITS,
    Circuit,
    Gate,
    Register,
    RegisterFile,
    decode_value,
    encode_value,
)
from app.circuits.resources import count_gates
from app.errors import CircuitError
from app.simulation.simulator import check_clean, run


def run_classical(gates: Iterable[Gate], key: int) -> int:
    for gate in gates:
        if all(((key >> control.bit) & 1) == control.polarity for control in gate.controls):
            key ^= 1 << gate.targets[0]
    return key


def load(values: Dict[Register, int]) -> int:
    key = 0
    for register, value in values.items():
        for bit, bit_value in encode_value(register, value).items():
            key |= bit_value << bit
    return key


def bit_range(start: int, count: int) -> List[int]:
    return list(range(start, start + count))


class TestBinaryRipple:
    @pytest.mark.parametrize("width", [1, 2, 3, 4])
    def test_add_truth_table(self, width: int) -> None:
        """Test register + bit against integer addition for every input"""
        register = Register("x", QUBITS, width)
        addend = width
        carries = bit_range(width + 1, width)
        gates = binary_add_qubit(register, addend, carries)
        for value in range(2**width):
            for a in (0, 1):
                out = run_classical(gates, load({register: value}) | (a << addend))
                assert decode_value(register, out) == (value + a) % 2**width
                assert (out >> addend) & 1 == a
                assert all((out >> bit) & 1 == 0 for bit in carries[:-1])
                assert (out >> carries[-1]) & 1 == int(value + a >= 2**width)

    @pytest.mark.parametrize("width", [1, 2, 3, 4])
    def test_sub_truth_table(self, width: int) -> None:
        """Test register - bit against integer subtraction for every input"""
        register = Register("x", QUBITS, width)
        subtrahend = width
        carries = bit_range(width + 1, width)
        gates = binary_sub_qubit(register, subtrahend, carries)
        for value in range(2**width):
            for a in (0, 1):
                out = run_classical(gates, load({register: value}) | (a << subtrahend))
                assert decode_value(register, out) == (value - a) % 2**width
                assert all((out >> bit) & 1 == 0 for bit in carries[:-1])
                assert (out >> carries[-1]) & 1 == int(value - a < 0)

    def test_add_overflow_is_dirty(self) -> None:
        """Test that 7 + 1 on three bits wraps to 0 and leaves the carry register set"""
        table = RegisterFile()
        x = table.add("x", QUBITS, 3)
        a = table.add("a", QUBITS, 1)
        carry = table.add("carry", QUBITS, 3, "carry")
        gates = binary_add_qubit(x, a.bit(0), carry.bits())
        circuit = Circuit("su2", 2, tuple(table.registers()), tuple(gates))

        state = run(circuit, {"x": 7, "a": 1})
        assert state.values_of("x") == {0}
        assert state.values_of("carry") == {0b100}
        clean, message = check_clean(state)
        assert not clean
        assert "carry=[4]" in message

        assert check_clean(run(circuit, {"x": 6, "a": 1}))[0]

    def test_sub_underflow_is_dirty(self) -> None:
        """Test that 0 - 1 on three bits wraps to 7 and leaves the borrow set"""
        table = RegisterFile()
        x = table.add("x", QUBITS, 3)
        a = table.add("a", QUBITS, 1)
        carry = table.add("carry", QUBITS, 3, "carry")
        gates = binary_sub_qubit(x, a.bit(0), carry.bits())
        circuit = Circuit("su2", 2, tuple(table.registers()), tuple(gates))

        state = run(circuit, {"x": 0, "a": 1})
        assert state.values_of("x") == {7}
        assert not check_clean(state)[0]

        assert check_clean(run(circuit, {"x": 1, "a": 1}))[0]
        assert check_clean(run(circuit, {"x": 0, "a": 0}))[0]

    def test_examples(self) -> None:
        """Test 011 + 1 = 100 and 100 - 1 = 011"""
        register = Register("x", QUBITS, 3)
        add = binary_add_qubit(register, 3, [4, 5, 6])
        sub = binary_sub_qubit(register, 3, [4, 5, 6])
        assert decode_value(register, run_classical(add, 0b1011)) == 0b100
        assert decode_value(register, run_classical(sub, 0b1100)) == 0b011

    def test_gate_counts(self) -> None:
        """Test w CNOT and w-1 CCNOT on the compute path, plus one overflow gate"""
        register = Register("x", QUBITS, 3)
        counts = count_gates(binary_add_qubit(register, 3, [4, 5, 6]))
        assert counts.arithmetic() == {NOT: 0, CNOT: 3, CCNOT: 2}
        assert counts.uncompute[CCNOT] == 2
        assert counts.overflow == {CCNOT: 1}

    def test_overflow_gate_polarity(self) -> None:
        """Test that the borrow gate fires on a zero register bit"""
        register = Register("x", QUBITS, 2)
        (add_flag,) = [gate for gate in binary_add_qubit(register, 2, [3, 4]) if gate.overflow]
        (sub_flag,) = [gate for gate in binary_sub_qubit(register, 2, [3, 4]) if gate.overflow]
        assert add_flag.targets == sub_flag.targets == (4,)
        assert [control.polarity for control in add_flag.controls] == [1, 1]
        assert [control.polarity for control in sub_flag.controls] == [1, 0]

    def test_not_enough_carries(self) -> None:
        """Test that a short carry list is rejected"""
        with pytest.raises(CircuitError):
            binary_add_qubit(Register("x", QUBITS, 3), 3, [4, 5])

    def test_addend_inside_register(self) -> None:
        """Test that the addend may not be a register bit"""
        with pytest.raises(CircuitError):
            binary_sub_qubit(Register("x", QUBITS, 3), 1, [4, 5, 6])

    @given(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=1))
    def test_round_trip(self, value: int, a: int) -> None:
        """Test that adding then subtracting a bit is the identity"""
        register = Register("x", QUBITS, 3)
        gates = binary_add_qubit(register, 3, [4, 5, 6]) + binary_sub_qubit(register, 3, [4, 5, 6])
        key = load({register: value}) | (a << 3)
        assert run_classical(gates, key) == key


class TestTernaryUnits:
    def test_add_truth_table(self) -> None:
        """Test qutrit + bit: digit (t + a) mod 3 and carry on overflow"""
        register = Register("t", QUTRITS, 2)
        digit = register.digit_bits(0)
        gates = ternary_add_qubit(digit, 2, 3)
        for value in range(3):
            for a in (0, 1):
                out = run_classical(gates, load({register: value}) | (a << 2))
                assert decode_value(register, out) == (value + a) % 3
                assert (out >> 3) & 1 == int(value == 2 and a == 1)
                cleaned = run_classical(ternary_add_uncompute(digit, 2, 3), out)
                assert (cleaned >> 3) & 1 == 0
                assert decode_value(register, cleaned) == (value + a) % 3

    def test_sub_truth_table(self) -> None:
        """Test qutrit - bit: digit (t - a) mod 3 and borrow below zero"""
        register = Register("t", QUTRITS, 2)
        digit = register.digit_bits(0)
        gates = ternary_sub_qubit(digit, 2, 3)
        for value in range(3):
            for a in (0, 1):
                out = run_classical(gates, load({register: value}) | (a << 2))
                assert decode_value(register, out) == (value - a) % 3
                assert (out >> 3) & 1 == int(value == 0 and a == 1)
                cleaned = run_classical(ternary_sub_uncompute(digit, 2, 3), out)
                assert (cleaned >> 3) & 1 == 0

    def test_unit_counts(self) -> None:
        """Test 2 NOT, 3 CNOT and 3 CCNOT per qutrit unit"""
        expected = {NOT: 2, CNOT: 3, CCNOT: 3}
        assert count_gates(ternary_add_qubit((0, 1), 2, 3)).arithmetic() == expected
        assert count_gates(ternary_sub_qubit((0, 1), 2, 3)).arithmetic() == expected


class TestTernaryRegister:
    @pytest.mark.parametrize("digits", [1, 2, 3])
    def test_add_bit(self, digits: int) -> None:
        """Test base-3 register + bit for every result that fits"""
        register = Register("t", QUTRITS, 2 * digits)
        addend = register.width
        carries = bit_range(addend + 1, digits)
        gates = ternary_register_add_bit(register, addend, carries)
        for value in range(3**digits):
            for a in (0, 1):
                if value + a >= 3**digits:
                    continue
                out = run_classical(gates, load({register: value}) | (a << addend))
                assert decode_value(register, out) == value + a
                assert all((out >> bit) & 1 == 0 for bit in carries)

    @pytest.mark.parametrize("digits", [1, 2, 3])
    def test_sub_bit(self, digits: int) -> None:
        """Test base-3 register - bit for every result that stays non-negative"""
        register = Register("t", QUTRITS, 2 * digits)
        subtrahend = register.width
        carries = bit_range(subtrahend + 1, digits)
        gates = ternary_register_sub_bit(register, subtrahend, carries)
        for value in range(3**digits):
            for a in (0, 1):
                if value - a < 0:
                    continue
                out = run_classical(gates, load({register: value}) | (a << subtrahend))
                assert decode_value(register, out) == value - a
                assert all((out >> bit) & 1 == 0 for bit in carries)

    @pytest.mark.parametrize("digits", [1, 2])
    def test_add_and_sub_qutrit(self, digits: int) -> None:
        """Test register +- padded qutrit against base-3 arithmetic"""
        register = Register("t", QUTRITS, 2 * digits)
        addend = Register("a", QUTRITS, 2, offset=register.width)
        carries = bit_range(addend.offset + 2, digits)
        add = ternary_register_add(register, addend.digit_bits(0), carries)
        sub = ternary_register_sub(register, addend.digit_bits(0), carries)
        for value in range(3**digits):
            for t in range(3):
                key = load({register: value, addend: t})
                if value + t < 3**digits:
                    out = run_classical(add, key)
                    assert decode_value(register, out) == value + t
                    assert decode_value(addend, out) == t
                    assert all((out >> bit) & 1 == 0 for bit in carries)
                    assert run_classical(sub, out) == key
                if value - t >= 0:
                    assert decode_value(register, run_classical(sub, key)) == value - t

    def test_five_plus_two(self) -> None:
        """Test 12 (base 3) + 2 = 21 (base 3)"""
        register = Register("t", QUTRITS, 4)
        addend = Register("a", QUTRITS, 2, offset=4)
        gates = ternary_register_add(register, addend.digit_bits(0), [6, 7])
        out = run_classical(gates, load({register: 5, addend: 2}))
        assert decode_value(register, out) == 7

    def test_not_enough_carries(self) -> None:
        """Test that every digit needs its own carry bit"""
        with pytest.raises(CircuitError):
            ternary_register_add_bit(Register("t", QUTRITS, 4), 4, [5])
