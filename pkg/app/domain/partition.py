import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from app.errors import LabelError

SUPPORTED_DIMENSIONS = (2, 3)


def validate_partition(rows: Sequence[int], d: int) -> bool:
    """True iff rows are non-negative, weakly decreasing and at most d long"""
    if len(rows) > d:
        return False
    if any(row < 0 for row in rows):
        return False
    return all(rows[i] >= rows[i + 1] for i in range(len(rows) - 1))


@dataclass(frozen=True)
class Partition:
    """Young diagram with at most d rows, always padded to exactly d rows"""

    rows: Tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.d not in SUPPORTED_DIMENSIONS:
            raise LabelError(f"group dimension must be 2 or 3, got {self.d}", "partition")
        trimmed = list(self.rows)
        while len(trimmed) > self.d and trimmed[-1] == 0:
            trimmed.pop()
        if not validate_partition(trimmed, self.d):
            raise LabelError(f"rows {list(self.rows)} are not a partition with at most {self.d} rows", "partition")
        object.__setattr__(self, "rows", tuple(trimmed) + (0,) * (self.d - len(trimmed)))

    @classmethod
    def of(cls, rows: Iterable[int], d: int) -> "Partition":
        return cls(tuple(rows), d)

    @property
    def n(self) -> int:
        return sum(self.rows)

    @property
    def P(self) -> int:
        return self.rows[0] - self.rows[1]

    @property
    def Q(self) -> int:
        if self.d != 3:
            raise LabelError("Q is only defined for SU(3) diagrams", "partition")
        return self.rows[1] - self.rows[2]

    @property
    def two_j(self) -> int:
        if self.d != 2:
            raise LabelError("2j is only defined for SU(2) diagrams", "partition")
        return self.rows[0] - self.rows[1]

    def add_box(self, path_entry: int) -> "Partition":
        """Add one box in the row selected by a path entry (d-1 selects the first row)"""
        row = row_of_entry(path_entry, self.d)
        rows = list(self.rows)
        if row > 0 and rows[row] + 1 > rows[row - 1]:
            raise LabelError(f"cannot add a box to row {row + 1} of {list(self.rows)}", "box_addition")
        rows[row] += 1
        return Partition(tuple(rows), self.d)

    def remove_box(self, path_entry: int) -> "Partition":
        row = row_of_entry(path_entry, self.d)
        rows = list(self.rows)
        if rows[row] == 0 or (row + 1 < self.d and rows[row] - 1 < rows[row + 1]):
            raise LabelError(f"row {row + 1} of {list(self.rows)} has no removable box", "box_removal")
        rows[row] -= 1
        return Partition(tuple(rows), self.d)

    def reduced(self) -> Tuple[int, ...]:
        """Rows with every full column of d boxes stripped"""
        full = self.rows[-1]
        return tuple(row - full for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": list(self.rows), "d": self.d}

    def __str__(self) -> str:
        return "(" + ",".join(str(row) for row in self.rows) + ")"


def row_of_entry(path_entry: int, d: int) -> int:
    if path_entry not in range(d):
        raise LabelError(f"path entry {path_entry} outside 0..{d - 1}", "path_entry")
    return d - 1 - path_entry


def single_box(d: int) -> Partition:
    return Partition((1,), d)


def replay_path(path: Sequence[int], d: int) -> List[Partition]:
    """Partitions after each box addition, starting from one box"""
    current = single_box(d)
    history = [current]
    for step, entry in enumerate(path, start=1):
        try:
            current = current.add_box(entry)
        except LabelError as e:
            raise LabelError(f"step {step}: {e}", "replay_path") from e
        history.append(current)
    return history


def hook_lengths(partition: Partition) -> List[int]:
    rows = [row for row in partition.rows if row > 0]
    columns = [sum(1 for row in rows if row > c) for c in range(rows[0])] if rows else []
    return [(rows[r] - c - 1) + (columns[c] - r - 1) + 1 for r in range(len(rows)) for c in range(rows[r])]


def hook_dimension_sn(partition: Partition) -> int:
    """Dimension of the S_n irrep: n! over the product of hook lengths"""
    if partition.n == 0:
        raise LabelError("empty diagram has no S_n irrep", "partition")
    return math.factorial(partition.n) // math.prod(hook_lengths(partition))


def enumerate_partitions(n: int, d: int) -> List[Partition]:
    """All partitions of n with at most d rows, first row descending"""

    def build(remaining: int, cap: int, rows_left: int) -> List[Tuple[int, ...]]:
        if remaining == 0:
            return [()]
        if rows_left == 0:
            return []
        found = []
        for first in range(min(cap, remaining), 0, -1):
            for rest in build(remaining - first, first, rows_left - 1):
                found.append((first,) + rest)
        return found

    return [Partition(rows, d) for rows in build(n, n, d)]


@lru_cache(maxsize=1024)
def _paths_to(rows: Tuple[int, ...], d: int) -> Tuple[Tuple[int, ...], ...]:
    partition = Partition(rows, d)
    if partition.n == 1:
        return ((),)
    found = []
    for entry in reversed(range(d)):
        try:
            parent = partition.remove_box(entry)
        except LabelError:
            continue
        if parent.n == 0:
            continue
        for prefix in _paths_to(parent.rows, d):
            found.append(prefix + (entry,))
    return tuple(found)


def enumerate_paths(partition: Partition) -> List[Tuple[int, ...]]:
    """Every legal path (standard Young tableau) ending at the partition"""
    return list(_paths_to(partition.rows, partition.d))
