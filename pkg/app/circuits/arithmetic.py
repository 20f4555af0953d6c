"""Ripple adders and subtractors that add or remove one bit.

Binary constructors act on qubit registers, ternary ones on padded qutrit
registers. Every constructor leaves its carry bits clean; the gates that
clean them are flagged as uncompute gates so resource counts can report
the compute path on its own. Binary ripples also write their final carry
(or borrow) into one extra carry bit that is never cleared: it stays 0
unless the register wrapped around, so a dirty carry register exposes
overflow.
"""

from typing import List, Sequence, Tuple

from app.circuits.gates import Gate, Register, ccx_gate, cx_gate, x_gate
from app.errors import CircuitError


def _check_carries(carries: Sequence[int], needed: int, register: Register) -> None:
    if len(carries) < needed:
        raise CircuitError(f"{register.name} needs {needed} carry bits, got {len(carries)}")
    if set(carries[:needed]) & set(register.bits()):
        raise CircuitError(f"carry bits overlap register {register.name}")


def _binary_ripple(register: Register, bit: int, carries: Sequence[int], polarity: int) -> List[Gate]:
    width = register.width
    _check_carries(carries, width, register)
    if bit in register.bits():
        raise CircuitError(f"addend bit {bit} lies inside register {register.name}")
    x = register.bits()

    def previous(i: int) -> int:
        return bit if i == 0 else carries[i - 1]

    gates = [ccx_gate(previous(i), x[i], carries[i], (1, polarity)) for i in range(width - 1)]
    gates.append(ccx_gate(previous(width - 1), x[width - 1], carries[width - 1], (1, polarity), overflow=True))
    for i in range(width - 1, 0, -1):
        gates.append(cx_gate(carries[i - 1], x[i]))
        gates.append(ccx_gate(previous(i - 1), x[i - 1], carries[i - 1], (1, polarity), uncompute=True))
    gates.append(cx_gate(bit, x[0]))
    return gates


def binary_add_qubit(register: Register, addend_bit: int, carries: Sequence[int]) -> List[Gate]:
    """register += addend_bit (mod 2**width) with width carry bits, the last one flagging overflow"""
    return _binary_ripple(register, addend_bit, carries, polarity=1)


def binary_sub_qubit(register: Register, subtrahend_bit: int, carries: Sequence[int]) -> List[Gate]:
    """register -= subtrahend_bit (mod 2**width); borrows run through zero bits, the last one flags underflow"""
    return _binary_ripple(register, subtrahend_bit, carries, polarity=0)


def ternary_add_qubit(digit: Tuple[int, int], addend: int, carry: int) -> List[Gate]:
    """One padded qutrit plus one bit; carry ends as b1 * addend of the input digit"""
    b1, b2 = digit
    return [
        cx_gate(b2, b1),
        ccx_gate(addend, b1, carry),
        cx_gate(b2, b1),
        cx_gate(carry, b1),
        ccx_gate(addend, b2, carry),
        x_gate(carry),
        ccx_gate(addend, carry, b2),
        x_gate(carry),
    ]


def ternary_add_uncompute(digit: Tuple[int, int], addend: int, carry: int) -> List[Gate]:
    """Clear the carry of ternary_add_qubit: it is set exactly when the new digit is 0"""
    b1, b2 = digit
    return [
        cx_gate(b1, b2, uncompute=True),
        ccx_gate(addend, b2, carry, (1, 0), uncompute=True),
        cx_gate(b1, b2, uncompute=True),
    ]


def ternary_sub_qubit(digit: Tuple[int, int], subtrahend: int, borrow: int) -> List[Gate]:
    """One padded qutrit minus one bit; borrow ends as subtrahend * [digit was 0]"""
    b1, b2 = digit
    return [
        cx_gate(b1, b2),
        x_gate(b2),
        ccx_gate(subtrahend, b2, borrow),
        x_gate(b2),
        ccx_gate(subtrahend, borrow, b1),
        cx_gate(b1, b2),
        cx_gate(subtrahend, b2),
        ccx_gate(subtrahend, b2, b1),
    ]


def ternary_sub_uncompute(digit: Tuple[int, int], subtrahend: int, borrow: int) -> List[Gate]:
    """Clear the borrow of ternary_sub_qubit: it is set exactly when the new digit is 2"""
    b1, _ = digit
    return [ccx_gate(subtrahend, b1, borrow, uncompute=True)]


def _ternary_ripple(register: Register, bit: int, carries: Sequence[int], subtract: bool) -> List[Gate]:
    digits = register.digits
    _check_carries(carries, digits, register)
    if bit in register.bits():
        raise CircuitError(f"addend bit {bit} lies inside register {register.name}")
    unit = ternary_sub_qubit if subtract else ternary_add_qubit
    cleanup = ternary_sub_uncompute if subtract else ternary_add_uncompute

    def previous(i: int) -> int:
        return bit if i == 0 else carries[i - 1]

    gates: List[Gate] = []
    for i in range(digits):
        gates.extend(unit(register.digit_bits(i), previous(i), carries[i]))
    # the top carry stays clear as long as the result fits
    for i in range(digits - 2, -1, -1):
        gates.extend(cleanup(register.digit_bits(i), previous(i), carries[i]))
    return gates


def ternary_register_add_bit(register: Register, bit: int, carries: Sequence[int]) -> List[Gate]:
    """register += bit over base-3 digits, one carry bit per digit"""
    return _ternary_ripple(register, bit, carries, subtract=False)


def ternary_register_sub_bit(register: Register, bit: int, carries: Sequence[int]) -> List[Gate]:
    return _ternary_ripple(register, bit, carries, subtract=True)


def ternary_register_add(register: Register, addend: Tuple[int, int], carries: Sequence[int]) -> List[Gate]:
    """register += a padded qutrit (b1, b2), i.e. b2 once and b1 twice"""
    b1, b2 = addend
    gates = ternary_register_add_bit(register, b2, carries)
    for _ in range(2):
        gates.extend(ternary_register_add_bit(register, b1, carries))
    return gates


def ternary_register_sub(register: Register, subtrahend: Tuple[int, int], carries: Sequence[int]) -> List[Gate]:
    b1, b2 = subtrahend
    gates = ternary_register_sub_bit(register, b2, carries)
    for _ in range(2):
        gates.extend(ternary_register_sub_bit(register, b1, carries))
    return gates
