"""Brute-force reference states from explicit generator matrices.

The oracle never touches a Clebsch-Gordan formula. It follows the path of a
label through (C^d)^n: after adjoining each particle it keeps the joint
Casimir eigenspace of the child irrep, and at the end it picks the weight
vector by its diagonal quantum numbers. Results are defined up to a global
phase, so comparisons go through fidelity.

Single-particle matrices are written in digit order, which reverses the
usual basis: digit 1 is spin up for SU(2), digit 2 is u for SU(3).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from app.config import Config
from app.domain.amplitude_map import AmplitudeMap
from app.domain.partition import Partition, single_box
from app.domain.repr_state import ReprStateSU2, ReprStateSU3, su3_dimension
from app.domain.schur_label import SchurLabel
from app.errors import OracleError

logger = logging.getLogger("schur_synth")

MAX_ORACLE_DIMENSION = 729


def _pauli() -> np.ndarray:
    return np.array(
        [
            [[0, 1], [1, 0]],
            [[0, -1j], [1j, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=complex,
    )


def _gell_mann() -> np.ndarray:
    matrices = np.zeros((8, 3, 3), dtype=complex)
    matrices[0][0, 1] = matrices[0][1, 0] = 1
    matrices[1][0, 1], matrices[1][1, 0] = -1j, 1j
    matrices[2][0, 0], matrices[2][1, 1] = 1, -1
    matrices[3][0, 2] = matrices[3][2, 0] = 1
    matrices[4][0, 2], matrices[4][2, 0] = -1j, 1j
    matrices[5][1, 2] = matrices[5][2, 1] = 1
    matrices[6][1, 2], matrices[6][2, 1] = -1j, 1j
    matrices[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return matrices


@lru_cache(maxsize=None)
def single_site_generators(d: int) -> np.ndarray:
    """Half Pauli or half Gell-Mann matrices in digit order"""
    if d == 2:
        matrices = _pauli()
    elif d == 3:
        matrices = _gell_mann()
    else:
        raise OracleError(f"generators exist for d=2 and d=3 only, got d={d}")
    return np.ascontiguousarray(matrices[:, ::-1, ::-1] / 2)


@lru_cache(maxsize=None)
def structure_constants() -> Tuple[np.ndarray, np.ndarray]:
    """(f_abc, d_abc) of SU(3) from traces of the Gell-Mann matrices"""
    lam = _gell_mann()
    f = np.zeros((8, 8, 8))
    sym = np.zeros((8, 8, 8))
    for a in range(8):
        for b in range(8):
            for c in range(8):
                commutator = lam[b] @ lam[c] - lam[c] @ lam[b]
                anticommutator = lam[b] @ lam[c] + lam[c] @ lam[b]
                f[a, b, c] = np.real(-0.25j * np.trace(lam[a] @ commutator))
                sym[a, b, c] = np.real(0.25 * np.trace(lam[a] @ anticommutator))
    f[np.abs(f) < 1e-12] = 0.0
    sym[np.abs(sym) < 1e-12] = 0.0
    return f, sym


@lru_cache(maxsize=16)
def site_sum_generators(d: int, n: int) -> np.ndarray:
    """Generators of the n-particle space: sums of single-site generators"""
    if d**n > MAX_ORACLE_DIMENSION:
        raise OracleError(f"{d}^{n} = {d**n} exceeds the oracle limit of {MAX_ORACLE_DIMENSION}")
    single = single_site_generators(d)
    total = single.copy()
    for size in range(1, n):
        identity_left = np.eye(d**size)
        total = np.array(
            [np.kron(generator, np.eye(d)) + np.kron(identity_left, site) for generator, site in zip(total, single)]
        )
    return total


def quadratic_casimir(generators: np.ndarray) -> np.ndarray:
    return np.asarray(sum(generator @ generator for generator in generators))


def cubic_casimir(generators: np.ndarray) -> np.ndarray:
    _, sym = structure_constants()
    result = np.zeros_like(generators[0])
    for a, b, c in zip(*np.nonzero(sym)):
        result = result + sym[a, b, c] * (generators[a] @ generators[b] @ generators[c])
    return result


def casimir_f(P: int, Q: int) -> Fraction:
    return Fraction(P * P + P * Q + Q * Q, 3) + P + Q


def casimir_h(P: int, Q: int) -> Fraction:
    return Fraction((P - Q) * (2 * P + Q + 3) * (P + 2 * Q + 3), 18)


def spin_casimir(two_j: int) -> Fraction:
    return Fraction(two_j * (two_j + 2), 4)


@dataclass(frozen=True)
class OperatorSet:
    """Named operators on (C^d)^n"""

    d: int
    n: int
    generators: np.ndarray
    operators: Dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.operators[name]
        except KeyError:
            raise OracleError(f"no operator {name!r} for d={self.d}") from None

    def names(self) -> List[str]:
        return sorted(self.operators)


def build_generators(d: int, n: int) -> OperatorSet:
    generators = site_sum_generators(d, n)
    if d == 2:
        jx, jy, jz = generators
        operators = {"Jx": jx, "Jy": jy, "Jz": jz, "J+": jx + 1j * jy, "J-": jx - 1j * jy}
        operators["J2"] = quadratic_casimir(generators)
    else:
        x = generators
        operators = {f"X{index + 1}": generator for index, generator in enumerate(x)}
        operators.update(
            {
                "T+": x[0] + 1j * x[1],
                "T-": x[0] - 1j * x[1],
                "V+": x[3] + 1j * x[4],
                "V-": x[3] - 1j * x[4],
                "U+": x[5] + 1j * x[6],
                "U-": x[5] - 1j * x[6],
                "T3": x[2],
                "Y": 2 / np.sqrt(3) * x[7],
                "T2": x[0] @ x[0] + x[1] @ x[1] + x[2] @ x[2],
                "F": quadratic_casimir(x),
                "H": cubic_casimir(x),
            }
        )
    return OperatorSet(d, n, generators, operators)


def _eigenspace(operator: np.ndarray, value: float, tolerance: float, what: str) -> np.ndarray:
    """Orthonormal eigenvectors of a hermitian matrix for one eigenvalue"""
    hermitian = (operator + operator.conj().T) / 2
    eigenvalues, eigenvectors = scipy.linalg.eigh(hermitian)
    selected = eigenvectors[:, np.abs(eigenvalues - value) <= tolerance]
    if selected.shape[1] == 0:
        raise OracleError(f"no eigenvector of {what} with eigenvalue {value:.6g}")
    return scipy.linalg.orth(selected)


def _compress(basis: np.ndarray, generators: np.ndarray) -> np.ndarray:
    adjoint = basis.conj().T
    return np.array([adjoint @ generator @ basis for generator in generators])


def _irrep_targets(partition: Partition) -> List[Tuple[str, float]]:
    if partition.d == 2:
        return [("J2", float(spin_casimir(partition.two_j)))]
    return [("F", float(casimir_f(partition.P, partition.Q))), ("H", float(casimir_h(partition.P, partition.Q)))]


def _irrep_dimension(partition: Partition) -> int:
    if partition.d == 2:
        return partition.two_j + 1
    return su3_dimension(partition.P, partition.Q)


def _casimir(name: str, compressed: np.ndarray) -> np.ndarray:
    if name == "H":
        return cubic_casimir(compressed)
    return quadratic_casimir(compressed)


def _weight_steps(label: SchurLabel) -> List[Tuple[str, float]]:
    weight = label.weight
    if isinstance(weight, ReprStateSU2):
        return [("Jz", weight.two_m / 2)]
    if isinstance(weight, ReprStateSU3):
        two_t, two_t3, three_y = weight.tty()
        return [("Y", three_y / 3), ("T2", two_t * (two_t + 2) / 4), ("T3", two_t3 / 2)]
    raise OracleError(f"unsupported weight {weight!r}")


def _weight_operator(name: str, compressed: np.ndarray) -> np.ndarray:
    if name == "Jz":
        return compressed[2]
    if name == "Y":
        return np.asarray(2 / np.sqrt(3) * compressed[7])
    if name == "T2":
        return np.asarray(sum(compressed[a] @ compressed[a] for a in range(3)))
    return compressed[2]


def oracle_state(label: SchurLabel, tolerance: Optional[float] = None) -> np.ndarray:
    """Dense reference vector of a label, phase fixed so the largest entry is positive"""
    if tolerance is None:
        tolerance = Config.get_instance().oracle_tolerance
    d = label.d
    if d**label.n > MAX_ORACLE_DIMENSION:
        raise OracleError(f"label {label} needs a {d**label.n}-dimensional space, limit is {MAX_ORACLE_DIMENSION}")

    partition = single_box(d)
    basis = np.eye(d, dtype=complex)
    for size, entry in enumerate(label.path, start=2):
        partition = partition.add_box(entry)
        basis = np.kron(basis, np.eye(d))
        generators = site_sum_generators(d, size)
        for name, value in _irrep_targets(partition):
            casimir = _casimir(name, _compress(basis, generators))
            basis = basis @ _eigenspace(casimir, value, tolerance, f"{name} on {size} particles")
        if basis.shape[1] != _irrep_dimension(partition):
            raise OracleError(
                f"carrier space of {partition} has dimension {basis.shape[1]}, expected {_irrep_dimension(partition)}"
            )

    generators = site_sum_generators(d, label.n)
    for name, value in _weight_steps(label):
        operator = _weight_operator(name, _compress(basis, generators))
        basis = basis @ _eigenspace(operator, value, tolerance, name)
    if basis.shape[1] != 1:
        raise OracleError(f"weight of {label} leaves a {basis.shape[1]}-dimensional space")

    vector = basis[:, 0]
    anchor = vector[np.argmax(np.abs(vector))]
    vector = vector * (abs(anchor) / anchor)
    logger.debug(f"Oracle state for {label} built in dimension {vector.shape[0]}")
    return vector


def dense_vector(amplitudes: AmplitudeMap) -> np.ndarray:
    """Amplitude map as a vector indexed by int(key, d)"""
    vector = np.zeros(amplitudes.d**amplitudes.n, dtype=complex)
    for key, value in amplitudes.to_floats().items():
        vector[int(key, amplitudes.d)] = value
    return vector


def fidelity(engine_map: AmplitudeMap, oracle_vec: np.ndarray) -> float:
    """|<oracle|engine>|, 1 when the states agree up to a global phase"""
    vector = dense_vector(engine_map)
    if vector.shape != oracle_vec.shape:
        raise OracleError(f"engine map has dimension {vector.shape[0]}, oracle vector {oracle_vec.shape[0]}")
    return float(min(1.0, abs(np.vdot(oracle_vec, vector))))


def expectation(operator: np.ndarray, vector: np.ndarray) -> float:
    return float(np.real(np.vdot(vector, operator @ vector)))
