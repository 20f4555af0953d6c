"""SU(2) Clebsch-Gordan machinery and the arithmetic inverse Schur transform for qubits."""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from app.domain.amplitude_map import AmplitudeMap
from app.domain.exact import SqrtRational
from app.domain.repr_state import ReprStateSU2
from app.domain.schur_label import SchurLabel
from app.errors import LabelError

logger = logging.getLogger("schur_synth")


def _check_parity(two_j: int, two_m: int) -> None:
    if two_j < 0:
        raise LabelError(f"2j={two_j} is negative", "spin")
    if (two_j - two_m) % 2:
        raise LabelError(f"2j={two_j} and 2m={two_m} have different parity", "parity")
    if abs(two_m) > two_j:
        raise LabelError(f"|2m|={abs(two_m)} exceeds 2j={two_j}", "weight_bounds")


def ladder_coeff(two_j: int, two_m: int, direction: str) -> SqrtRational:
    """Matrix element of J+ or J- on |j,m>: sqrt((j-+m)(j+-m+1))"""
    _check_parity(two_j, two_m)
    if direction == "+":
        radicand = Fraction((two_j - two_m) * (two_j + two_m + 2), 4)
    elif direction == "-":
        radicand = Fraction((two_j + two_m) * (two_j - two_m + 2), 4)
    else:
        raise ValueError(f"direction must be '+' or '-', got {direction!r}")
    return SqrtRational.sqrt(radicand)


def ladder_apply_su2(state: ReprStateSU2, direction: str) -> List[Tuple[ReprStateSU2, SqrtRational]]:
    coeff = ladder_coeff(state.two_j, state.two_m, direction)
    if coeff.is_zero():
        return []
    step = 1 if direction == "+" else -1
    return [(ReprStateSU2(state.two_j, state.q + step), coeff)]


def clebsch_series(two_j1: int, two_j2: int) -> List[int]:
    """Doubled spins in j1 x j2, each with multiplicity one"""
    if two_j1 < 0 or two_j2 < 0:
        raise LabelError("spins must be non-negative", "spin")
    return list(range(abs(two_j1 - two_j2), two_j1 + two_j2 + 1, 2))


def weight_degeneracy(two_j1: int, two_j2: int, two_m: int) -> int:
    """Number of product states |m1>|m2> with m1 + m2 = m"""
    count = 0
    for two_m1 in range(-two_j1, two_j1 + 1, 2):
        two_m2 = two_m - two_m1
        if abs(two_m2) <= two_j2 and (two_m2 - two_j2) % 2 == 0:
            count += 1
    return count


def degeneracy_count(two_j1: int, two_j2: int, two_j: int) -> int:
    """Multiplicity of spin j in j1 x j2 from the weight degeneracies g(j) - g(j+1)"""
    return weight_degeneracy(two_j1, two_j2, two_j) - weight_degeneracy(two_j1, two_j2, two_j + 2)


def path_spin_multiset(n: int) -> Counter:
    """How many n-qubit coupling paths end at each doubled spin"""
    if n < 1:
        raise LabelError(f"n must be positive, got {n}", "particle_count")
    multiset: Counter = Counter({1: 1})
    for _ in range(n - 1):
        grown: Counter = Counter()
        for two_j, count in multiset.items():
            for child in range(max(two_j - 1, 0), two_j + 2):
                multiplicity = degeneracy_count(two_j, 1, child)
                if multiplicity > 0:
                    grown[child] += count * multiplicity
        multiset = grown
    return multiset


def jplus_half_coeffs(two_j: int, two_m_child: int, upper: bool) -> Tuple[SqrtRational, SqrtRational]:
    """Coefficients of |j,m-1/2>|up> and |j,m+1/2>|down> in the child |j +- 1/2, m>"""
    two_child = two_j + 1 if upper else two_j - 1
    if two_child < 0:
        raise LabelError(f"no lower multiplet below 2j={two_j}", "weight_bounds")
    _check_parity(two_child, two_m_child)
    denominator = 2 * (two_j + 1)
    alpha = SqrtRational.sqrt(Fraction(two_j + two_m_child + 1, denominator))
    beta = SqrtRational.sqrt(Fraction(two_j - two_m_child + 1, denominator))
    if upper:
        return alpha, beta
    return -beta, alpha


def ucg_inv_angle(lam1: int, lam2: int, q: int, p: int) -> SqrtRational:
    """cos(theta) of the step consuming p from the labels (lam1, lam2, q) it acts on"""
    if p not in (0, 1):
        raise LabelError(f"path bit must be 0 or 1, got {p}", "path_entry")
    numerator = q + (1 - p)
    denominator = (lam1 - lam2) + 2 * (1 - p)
    if denominator <= 0:
        raise LabelError(f"rotation denominator {denominator} for ({lam1},{lam2}) is not positive", "rotation_angle")
    if not 0 <= numerator <= denominator:
        raise LabelError(f"q={q} is out of range for ({lam1},{lam2}) and p={p}", "rotation_angle")
    return SqrtRational.sqrt(Fraction(numerator, denominator))


def ucg_inv_angle_primed(lam1_parent: int, lam2_parent: int, q_shifted: int) -> SqrtRational:
    """The same angle written with the parent diagram and the shifted q"""
    denominator = lam1_parent - lam2_parent + 1
    if denominator <= 0:
        raise LabelError(f"rotation denominator {denominator} is not positive", "rotation_angle")
    return SqrtRational.sqrt(Fraction(q_shifted, denominator))


def rotation_row(cos_theta: SqrtRational, p: int) -> Dict[int, SqrtRational]:
    """Amplitudes given to the output bit p' when the consumed bit is p"""
    sin_theta = SqrtRational.sqrt(1 - cos_theta.square())
    if p == 1:
        return {1: cos_theta, 0: sin_theta}
    return {1: -sin_theta, 0: cos_theta}


@dataclass(frozen=True)
class SU2Term:
    """Partially decomposed state: diagram and q still to expand, output bits already fixed"""

    lam1: int
    lam2: int
    q: int
    path: Tuple[int, ...]
    outputs: Tuple[int, ...]
    amplitude: SqrtRational

    @classmethod
    def from_label(cls, label: SchurLabel) -> "SU2Term":
        if not isinstance(label.weight, ReprStateSU2):
            raise LabelError("an SU(2) decomposition needs an SU(2) label", "group")
        lam1, lam2 = label.partition.rows
        return cls(lam1, lam2, label.weight.q, label.path, (), SqrtRational.one())

    @property
    def key(self) -> str:
        return str(self.q) + "".join(str(bit) for bit in self.outputs)


def apply_ucg_inv(term: SU2Term) -> List[SU2Term]:
    """Consume the last path bit, splitting the term into at most two"""
    if not term.path:
        raise LabelError("no path entries left to consume", "path_length")
    p = term.path[-1]
    cos_theta = ucg_inv_angle(term.lam1, term.lam2, term.q, p)
    lam1 = term.lam1 - p
    lam2 = term.lam2 - (1 - p)
    if lam2 < 0 or lam1 < lam2:
        raise LabelError(f"removing a box with p={p} from ({term.lam1},{term.lam2}) is illegal", "box_removal")
    q_shifted = term.q + 1 - p

    branches = []
    for output, coeff in rotation_row(cos_theta, p).items():
        if coeff.is_zero():
            continue
        q = q_shifted - output
        if not 0 <= q <= lam1 - lam2:
            raise LabelError(f"branch p'={output} leaves q={q} outside 0..{lam1 - lam2}", "weight_bounds")
        branches.append(
            SU2Term(lam1, lam2, q, term.path[:-1], (output,) + term.outputs, term.amplitude * coeff)
        )
    return branches


def decompose_su2(label: SchurLabel) -> AmplitudeMap:
    """Expand an SU(2) Schur state into n-bit computational basis strings"""
    terms = [SU2Term.from_label(label)]
    for step in range(label.n - 1):
        terms = [branch for term in terms for branch in apply_ucg_inv(term)]
        logger.debug(f"su2 step {step + 1}/{label.n - 1} for {label}: {len(terms)} terms")

    amplitudes = AmplitudeMap(2, label.n)
    for term in terms:
        if (term.lam1, term.lam2) != (1, 0):
            raise LabelError(f"cascade ended at ({term.lam1},{term.lam2}) instead of (1,0)", "replay_path")
        amplitudes.add(term.key, term.amplitude)
    return amplitudes
