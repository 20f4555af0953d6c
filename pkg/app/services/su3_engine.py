"""SU(3) ladder operators and the arithmetic inverse Schur transform for qutrits.

One inverse Clebsch-Gordan step removes the box selected by the last path
entry and splits the term in two stages: the isoscalar factors pick a
channel (sigma, rho or strange) and the SU(2) coupling of the isospin then
decides between a u and a d quark. Quark digits are u=2, d=1, s=0.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from app.domain.amplitude_map import AmplitudeMap
from app.domain.exact import RadicalSum, SqrtRational
from app.domain.partition import Partition
from app.domain.repr_state import ReprStateSU3, su3_state_is_valid
from app.domain.schur_label import SchurLabel
from app.errors import LabelError
from app.services.isoscalars import CHANNELS, channel_factors, child_irrep, frame_shift, zeroed_ratio
from app.services.su2_engine import jplus_half_coeffs

logger = logging.getLogger("schur_synth")

LADDER_OPERATORS = ("T+", "T-", "U+", "U-", "V+", "V-")

U_QUARK, D_QUARK, S_QUARK = 2, 1, 0

# (channel, output quark) columns of the combined step matrix
BRANCHES: Tuple[Tuple[str, int], ...] = (
    ("sigma", U_QUARK),
    ("sigma", D_QUARK),
    ("rho", U_QUARK),
    ("rho", D_QUARK),
    ("strange", S_QUARK),
)

_LadderTerm = Tuple[int, Tuple[int, int, int], List[int], List[int]]


def _ladder_terms(op: str, P: int, Q: int, k: int, l: int, m: int) -> List[_LadderTerm]:  # noqa: E741
    """(sign, target, numerator factors, denominator factors) of each term of op"""
    up_k = [k + 2, k - Q + 1, P + Q - k]
    up_l = [l + 1, Q - l, P + Q - l + 1]
    down_k = [k + 1, k - Q, P + Q - k + 1]
    down_l = [l, Q - l + 1, P + Q - l + 2]
    if op == "T+":
        return [(1, (k, l, m + 1), [k - m, m - l + 1], [])]
    if op == "T-":
        return [(1, (k, l, m - 1), [k - m + 1, m - l], [])]
    if op == "V+":
        return [
            (1, (k + 1, l, m + 1), up_k + [m - l + 1], [k - l + 1, k - l + 2]),
            (1, (k, l + 1, m + 1), up_l + [k - m], [k - l, k - l + 1]),
        ]
    if op == "V-":
        return [
            (1, (k - 1, l, m - 1), down_k + [m - l], [k - l, k - l + 1]),
            (1, (k, l - 1, m - 1), down_l + [k - m + 1], [k - l + 1, k - l + 2]),
        ]
    if op == "U+":
        return [
            (1, (k + 1, l, m), up_k + [k - m + 1], [k - l + 1, k - l + 2]),
            (-1, (k, l + 1, m), up_l + [m - l], [k - l, k - l + 1]),
        ]
    if op == "U-":
        return [
            (1, (k - 1, l, m), down_k + [k - m], [k - l, k - l + 1]),
            (-1, (k, l - 1, m), down_l + [m - l + 1], [k - l + 1, k - l + 2]),
        ]
    raise ValueError(f"unknown ladder operator {op!r}, expected one of {', '.join(LADDER_OPERATORS)}")


def ladder_apply(op: str, state: ReprStateSU3) -> List[Tuple[ReprStateSU3, SqrtRational]]:
    """Action of T+-, U+- or V+- on a state; terms leaving the irrep are dropped"""
    result = []
    for sign, target, numerator, denominator in _ladder_terms(op, state.P, state.Q, state.k, state.l, state.m):
        if not su3_state_is_valid(state.P, state.Q, *target):
            continue
        coeff = SqrtRational.sqrt(zeroed_ratio(numerator, denominator), sign)
        if not coeff.is_zero():
            result.append((ReprStateSU3(state.P, state.Q, *target), coeff))
    return result


@dataclass(frozen=True)
class RotationMatrix:
    """Exact matrix with labelled rows and columns"""

    name: str
    row_labels: Tuple[str, ...]
    column_labels: Tuple[str, ...]
    entries: Tuple[Tuple[SqrtRational, ...], ...]

    def entry(self, row: str, column: str) -> SqrtRational:
        return self.entries[self.row_labels.index(row)][self.column_labels.index(column)]

    def row(self, row: str) -> Tuple[SqrtRational, ...]:
        return self.entries[self.row_labels.index(row)]

    def __matmul__(self, other: "RotationMatrix") -> "RotationMatrix":
        if self.column_labels != other.row_labels:
            raise ValueError(f"cannot multiply {self.name} by {other.name}: inner labels differ")
        entries = []
        for row in self.entries:
            product = []
            for column in range(len(other.column_labels)):
                total = RadicalSum.zero()
                for inner, value in enumerate(row):
                    total = total + value * other.entries[inner][column]
                product.append(total.as_sqrt_rational())
            entries.append(tuple(product))
        return RotationMatrix(
            f"{self.name}*{other.name}", self.row_labels, other.column_labels, tuple(entries)
        )

    def rows_orthonormal(self) -> bool:
        """Non-zero rows have unit norm and are pairwise orthogonal"""
        rows = [row for row in self.entries if any(not value.is_zero() for value in row)]
        for i, first in enumerate(rows):
            for j, second in enumerate(rows[i:], start=i):
                total = RadicalSum.zero()
                for a, b in zip(first, second):
                    total = total + a * b
                if total != (1 if i == j else 0):
                    return False
        return True

    def to_floats(self) -> List[List[float]]:
        return [[float(value) for value in row] for row in self.entries]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "rows": list(self.row_labels),
            "columns": list(self.column_labels),
            "entries": [[value.to_dict() for value in row] for row in self.entries],
        }


def _branch_label(channel: str, quark: int) -> str:
    return f"{channel}:{'uds'[2 - quark]}"


@dataclass(frozen=True)
class StepRotation:
    isoscalar: RotationMatrix
    isospin: RotationMatrix
    combined: RotationMatrix

    def factorizes(self) -> bool:
        """The combined matrix equals the isoscalar part times the isospin part"""
        return (self.isoscalar @ self.isospin).entries == self.combined.entries

    def to_dict(self) -> Dict[str, Any]:
        return {
            "isoscalar": self.isoscalar.to_dict(),
            "isospin": self.isospin.to_dict(),
            "combined": self.combined.to_dict(),
        }


def isoscalar_rotation(P1: int, Q1: int, k2: int, l2: int) -> RotationMatrix:
    """R(F): rows are the path entries 2, 1, 0, columns the channels.

    (k2, l2) is the isospin-top state read in the parent's frame; each row
    shifts it back into its own child.
    """
    rows = []
    for p in (2, 1, 0):
        delta = frame_shift(p)
        child = child_irrep(P1, Q1, p)
        k, l = k2 - delta, l2 - delta  # noqa: E741
        if child is None or not su3_state_is_valid(child[0], child[1], k, l, k):
            rows.append((SqrtRational.zero(),) * len(CHANNELS))
            continue
        factors = channel_factors(P1, Q1, p, k, l)
        rows.append(tuple(factors.get(channel) for channel in CHANNELS))
    return RotationMatrix("isoscalar", ("p=2", "p=1", "p=0"), CHANNELS, tuple(rows))


def isospin_coupling(channel: str, k2: int, l2: int, m2: int) -> Dict[int, SqrtRational]:
    """SU(2) amplitudes of the u and d quark for a sigma or rho channel.

    sigma couples the parent isospin T - 1/2 upwards, rho couples T + 1/2
    downwards; the strange channel leaves isospin alone.
    """
    if channel == "strange":
        return {S_QUARK: SqrtRational.one()}
    two_m = 2 * m2 - k2 - l2
    if channel == "sigma":
        if k2 == l2:
            return {U_QUARK: SqrtRational.zero(), D_QUARK: SqrtRational.zero()}
        up, down = jplus_half_coeffs(k2 - l2 - 1, two_m, True)
    elif channel == "rho":
        up, down = jplus_half_coeffs(k2 - l2 + 1, two_m, False)
    else:
        raise ValueError(f"unknown channel {channel!r}")
    return {U_QUARK: up, D_QUARK: down}


def isospin_rotation(k2: int, l2: int, m2: int) -> RotationMatrix:
    """R(theta): rows are channels, columns the five (channel, quark) branches"""
    rows = []
    for channel in CHANNELS:
        coupling = isospin_coupling(channel, k2, l2, m2)
        rows.append(
            tuple(
                coupling.get(quark, SqrtRational.zero()) if branch == channel else SqrtRational.zero()
                for branch, quark in BRANCHES
            )
        )
    columns = tuple(_branch_label(channel, quark) for channel, quark in BRANCHES)
    return RotationMatrix("isospin", CHANNELS, columns, tuple(rows))


def rotation_matrices(P1: int, Q1: int, k2: int, l2: int, m2: int) -> StepRotation:
    """R(F), R(theta) and R(theta, F) for one step from the parent (P1, Q1).

    (k2, l2, m2) is the child state in the parent's frame: one higher in k,
    l and m than the child's own labels when the removed box sat in the
    third row.
    """
    if not 0 <= l2 <= m2 <= k2:
        raise LabelError(f"({k2},{l2},{m2}) is not an ordered parent-frame state", "weight_bounds")
    isoscalar = isoscalar_rotation(P1, Q1, k2, l2)
    isospin = isospin_rotation(k2, l2, m2)
    combined = []
    for row in isoscalar.entries:
        entries = []
        for (channel, quark) in BRANCHES:
            factor = row[CHANNELS.index(channel)]
            entries.append(factor * isospin.entry(channel, _branch_label(channel, quark)))
        combined.append(tuple(entries))
    return StepRotation(
        isoscalar,
        isospin,
        RotationMatrix("combined", isoscalar.row_labels, isospin.column_labels, tuple(combined)),
    )


@dataclass(frozen=True)
class SU3Term:
    """Partially decomposed qutrit state; outputs already fixed are kept in particle order"""

    rows: Tuple[int, int, int]
    k: int
    l: int  # noqa: E741
    m: int
    path: Tuple[int, ...]
    outputs: Tuple[int, ...]
    amplitude: RadicalSum

    @classmethod
    def from_label(cls, label: SchurLabel) -> "SU3Term":
        if not isinstance(label.weight, ReprStateSU3):
            raise LabelError("an SU(3) decomposition needs an SU(3) label", "group")
        rows = label.partition.rows
        weight = label.weight
        return cls(
            (rows[0], rows[1], rows[2]), weight.k, weight.l, weight.m, label.path, (), RadicalSum.of(1)
        )

    @property
    def partition(self) -> Partition:
        return Partition(self.rows, 3)

    @property
    def state(self) -> ReprStateSU3:
        partition = self.partition
        return ReprStateSU3(partition.P, partition.Q, self.k, self.l, self.m)

    @property
    def merge_key(self) -> Tuple[Any, ...]:
        return self.rows, self.k, self.l, self.m, self.path, self.outputs

    @property
    def key(self) -> str:
        # the single remaining quark has (k, l, m) = (1,0,1), (1,0,0) or (0,0,0)
        return str(self.k + self.m) + "".join(str(quark) for quark in self.outputs)


def _parent_klm(channel: str, quark: int, k2: int, l2: int, m2: int) -> Tuple[int, int, int]:
    m = m2 - 1 if quark == U_QUARK else m2
    if channel == "sigma":
        return k2 - 1, l2, m
    if channel == "rho":
        return k2, l2 - 1, m
    return k2, l2, m


def apply_ucg_inv_su3(term: SU3Term) -> List[SU3Term]:
    """Consume the last path entry, splitting the term into at most five branches"""
    if not term.path:
        raise LabelError("no path entries left to consume", "path_length")
    p = term.path[-1]
    state = term.state
    parent = term.partition.remove_box(p)
    delta = frame_shift(p)
    k2, l2, m2 = state.k + delta, state.l + delta, state.m + delta

    factors = channel_factors(parent.P, parent.Q, p, state.k, state.l)
    if factors.norm_squared() == 0:
        raise LabelError(f"no channel couples {state} to the parent {parent}", "malformed_term")

    branches = []
    for channel in CHANNELS:
        factor = factors.get(channel)
        if factor.is_zero():
            continue
        for quark, coupling in isospin_coupling(channel, k2, l2, m2).items():
            coeff = factor * coupling
            if coeff.is_zero():
                continue
            k, l, m = _parent_klm(channel, quark, k2, l2, m2)  # noqa: E741
            if not su3_state_is_valid(parent.P, parent.Q, k, l, m):
                raise LabelError(
                    f"{channel} branch to ({k},{l},{m}) leaves the parent {parent}", "weight_bounds"
                )
            branches.append(
                SU3Term(
                    (parent.rows[0], parent.rows[1], parent.rows[2]),
                    k,
                    l,
                    m,
                    term.path[:-1],
                    (quark,) + term.outputs,
                    term.amplitude * coeff,
                )
            )
    return branches


def merge_terms(terms: Sequence[SU3Term]) -> List[SU3Term]:
    """Add up terms that reached the same state with the same outputs"""
    merged: Dict[Tuple[Any, ...], SU3Term] = {}
    for term in terms:
        existing = merged.get(term.merge_key)
        if existing is None:
            merged[term.merge_key] = term
            continue
        amplitude = existing.amplitude + term.amplitude
        merged[term.merge_key] = SU3Term(
            term.rows, term.k, term.l, term.m, term.path, term.outputs, amplitude
        )
    return [term for term in merged.values() if not term.amplitude.is_zero()]


def decompose_su3(label: SchurLabel) -> AmplitudeMap:
    """Expand an SU(3) Schur state into n-digit quark strings (u=2, d=1, s=0)"""
    terms = [SU3Term.from_label(label)]
    for step in range(label.n - 1):
        terms = merge_terms([branch for term in terms for branch in apply_ucg_inv_su3(term)])
        logger.debug(f"su3 step {step + 1}/{label.n - 1} for {label}: {len(terms)} terms")

    amplitudes = AmplitudeMap(3, label.n)
    for term in terms:
        if term.rows != (1, 0, 0):
            raise LabelError(f"cascade ended at {term.rows} instead of (1,0,0)", "replay_path")
        amplitudes.add(term.key, term.amplitude)
    return amplitudes


def step_rotation_for(term: SU3Term) -> StepRotation:
    """Rotation matrices of the step that would consume the term's last path entry"""
    if not term.path:
        raise LabelError("no path entries left to consume", "path_length")
    p = term.path[-1]
    parent = term.partition.remove_box(p)
    delta = frame_shift(p)
    return rotation_matrices(parent.P, parent.Q, term.k + delta, term.l + delta, term.m + delta)


def quark_counts(key: str) -> Tuple[int, int, int]:
    return key.count(str(U_QUARK)), key.count(str(D_QUARK)), key.count(str(S_QUARK))

