import re
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Tuple, Union

from app.domain.partition import Partition, enumerate_partitions, enumerate_paths, replay_path
from app.domain.repr_state import ReprStateSU2, ReprStateSU3, enumerate_states
from app.errors import LabelError, LabelParseError

Weight = Union[ReprStateSU2, ReprStateSU3]

GROUP_DIMENSIONS = {"su2": 2, "su3": 3}
QUARK_LETTERS = {2: "u", 1: "d", 0: "s"}

_LABEL_PATTERN = re.compile(r"^(su2|su3):\(([0-9,\s]+)\);([0-9,\s]+);([0-9,\s]*)$")


def group_name(d: int) -> str:
    for name, dimension in GROUP_DIMENSIONS.items():
        if dimension == d:
            return name
    raise LabelError(f"group dimension must be 2 or 3, got {d}", "group")


def group_dimension(group: str) -> int:
    try:
        return GROUP_DIMENSIONS[group.lower()]
    except KeyError:
        raise LabelError(f"unknown group '{group}', expected su2 or su3", "group") from None


@dataclass(frozen=True)
class SchurLabel:
    """Target eigenstate: diagram, weight inside its irrep and the box-addition path"""

    partition: Partition
    weight: Weight
    path: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", tuple(self.path))
        d = self.partition.d
        if len(self.path) != self.partition.n - 1:
            raise LabelError(
                f"path has {len(self.path)} entries, expected n-1={self.partition.n - 1}", "path_length"
            )
        final = replay_path(self.path, d)[-1]
        if final != self.partition:
            raise LabelError(f"path ends at {final}, not at {self.partition}", "replay_path")
        if d == 2:
            if not isinstance(self.weight, ReprStateSU2) or self.weight.two_j != self.partition.two_j:
                raise LabelError(f"weight {self.weight} does not belong to 2j={self.partition.two_j}", "weight_irrep")
        else:
            if (
                not isinstance(self.weight, ReprStateSU3)
                or self.weight.P != self.partition.P
                or self.weight.Q != self.partition.Q
            ):
                raise LabelError(
                    f"weight {self.weight} does not belong to (P,Q)=({self.partition.P},{self.partition.Q})",
                    "weight_irrep",
                )

    @property
    def d(self) -> int:
        return self.partition.d

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def group(self) -> str:
        return group_name(self.d)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": format_label(self),
            "group": self.group,
            "partition": self.partition.to_dict(),
            "weight": self.weight.to_dict(),
            "path": list(self.path),
        }

    def __str__(self) -> str:
        return format_label(self)


def su2_label(rows: Tuple[int, ...], q: int, path: Tuple[int, ...]) -> SchurLabel:
    partition = Partition.of(rows, 2)
    return SchurLabel(partition, ReprStateSU2(partition.two_j, q), path)


def su3_label(rows: Tuple[int, ...], klm: Tuple[int, int, int], path: Tuple[int, ...]) -> SchurLabel:
    partition = Partition.of(rows, 3)
    k, l, m = klm  # noqa: E741
    return SchurLabel(partition, ReprStateSU3(partition.P, partition.Q, k, l, m), path)


def _int_list(text: str, field: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise LabelParseError(f"'{text}' is not a comma separated integer list", field) from None


def parse_label(text: str) -> SchurLabel:
    """Parse `su2:(l1,l2);q;p1,...` or `su3:(l1,l2,l3);k,l,m;p1,...`"""
    match = _LABEL_PATTERN.match(text.strip().lower())
    if not match:
        raise LabelParseError(f"'{text}' does not match group:(rows);weight;path", "label_grammar")
    group, rows_text, weight_text, path_text = match.groups()
    rows = tuple(_int_list(rows_text, "partition"))
    weight = _int_list(weight_text, "weight")
    path = tuple(_int_list(path_text, "path"))
    if group == "su2":
        if len(weight) != 1:
            raise LabelParseError("an su2 weight is the single integer q", "weight")
        return su2_label(rows, weight[0], path)
    if len(weight) != 3:
        raise LabelParseError("an su3 weight is the triple k,l,m", "weight")
    return su3_label(rows, (weight[0], weight[1], weight[2]), path)


def format_label(label: SchurLabel) -> str:
    rows = ",".join(str(row) for row in label.partition.rows)
    if isinstance(label.weight, ReprStateSU2):
        weight = str(label.weight.q)
    else:
        weight = f"{label.weight.k},{label.weight.l},{label.weight.m}"
    path = ",".join(str(entry) for entry in label.path)
    return f"{label.group}:({rows});{weight};{path}"


def quark_content(label: SchurLabel) -> Tuple[int, int, int]:
    """Numbers of u, d and s quarks in every basis string of an SU(3) label"""
    if not isinstance(label.weight, ReprStateSU3):
        raise LabelError("quark content is only defined for SU(3) labels", "group")
    lam3 = label.partition.rows[2]
    n_u = label.weight.m + lam3
    n_d = label.weight.k + label.weight.l - label.weight.m + lam3
    n_s = label.n - n_u - n_d
    if min(n_u, n_d, n_s) < 0:
        raise LabelError(f"label {label} has negative quark content", "quark_content")
    return n_u, n_d, n_s


def weights_of(partition: Partition) -> List[Weight]:
    if partition.d == 2:
        return [ReprStateSU2(partition.two_j, q) for q in range(partition.two_j, -1, -1)]
    return list(enumerate_states(partition.P, partition.Q))


def enumerate_labels(n: int, d: int) -> List[SchurLabel]:
    """Every Schur label of n particles; there are d**n of them"""
    labels = []
    for partition in enumerate_partitions(n, d):
        for path, weight in product(enumerate_paths(partition), weights_of(partition)):
            labels.append(SchurLabel(partition, weight, path))
    return labels


def quark_string(key: str) -> str:
    return "".join(QUARK_LETTERS[int(digit)] for digit in key)
