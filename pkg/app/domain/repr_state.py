"""Integer quantum numbers of SU(2) and SU(3) irrep eigenstates.

SU(2) states are (2j, q) with q = j + m. SU(3) states of the irrep (P, Q)
are (k, l, m) with Q <= k <= P+Q, 0 <= l <= Q and l <= m <= k; the
conventional (T, T3, Y) only appear doubled or tripled so everything stays
integral.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from app.errors import LabelError


@dataclass(frozen=True)
class ReprStateSU2:
    two_j: int
    q: int

    def __post_init__(self) -> None:
        if self.two_j < 0 or not 0 <= self.q <= self.two_j:
            raise LabelError(f"q={self.q} outside 0..{self.two_j}", "weight_bounds")

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.q) - self.j

    @property
    def two_m(self) -> int:
        return 2 * self.q - self.two_j

    def to_dict(self) -> Dict[str, Any]:
        return {"two_j": self.two_j, "q": self.q, "j": str(self.j), "m": str(self.m)}


def su3_state_is_valid(P: int, Q: int, k: int, l: int, m: int) -> bool:  # noqa: E741
    return P >= 0 and Q >= 0 and Q <= k <= P + Q and 0 <= l <= Q and l <= m <= k


def klm_from_padded(kl: int, lm: int, km: int) -> Tuple[int, int, int]:
    """Invert the pair sums (k+l, l+m, k+m) without checking irrep bounds"""
    twice_k = kl + km - lm
    if twice_k % 2:
        raise LabelError(f"pair sums ({kl},{lm},{km}) do not decode to integers", "weight_bounds")
    k = twice_k // 2
    return k, kl - k, km - k


@dataclass(frozen=True)
class ReprStateSU3:
    P: int
    Q: int
    k: int
    l: int  # noqa: E741
    m: int

    def __post_init__(self) -> None:
        if not su3_state_is_valid(self.P, self.Q, self.k, self.l, self.m):
            raise LabelError(
                f"(k,l,m)=({self.k},{self.l},{self.m}) is not a state of (P,Q)=({self.P},{self.Q})",
                "weight_bounds",
            )

    @classmethod
    def from_padded(cls, P: int, Q: int, kl: int, lm: int, km: int) -> "ReprStateSU3":
        """Build from the pair sums (k+l, l+m, k+m)"""
        return cls(P, Q, *klm_from_padded(kl, lm, km))

    def padded(self) -> Tuple[int, int, int]:
        return self.k + self.l, self.l + self.m, self.k + self.m

    def is_isospin_top(self) -> bool:
        return self.k == self.m

    def is_highest_weight(self) -> bool:
        return self.k == self.m == self.P + self.Q and self.l == 0

    def tty(self) -> Tuple[int, int, int]:
        return tty_from_klm(self.P, self.Q, self.k, self.l, self.m)

    def conventional(self) -> Tuple[Fraction, Fraction, Fraction]:
        """(T, T3, Y) as rationals for display"""
        two_t, two_t3, three_y = self.tty()
        return Fraction(two_t, 2), Fraction(two_t3, 2), Fraction(three_y, 3)

    def to_dict(self) -> Dict[str, Any]:
        t, t3, y = self.conventional()
        return {
            "P": self.P,
            "Q": self.Q,
            "k": self.k,
            "l": self.l,
            "m": self.m,
            "padded": list(self.padded()),
            "T": str(t),
            "T3": str(t3),
            "Y": str(y),
        }


def su3_dimension(P: int, Q: int) -> int:
    return (P + 1) * (Q + 1) * (P + Q + 2) // 2


def enumerate_states(P: int, Q: int) -> List[ReprStateSU3]:
    """All (k,l,m) of the irrep; k descending, l ascending, m descending"""
    return [
        ReprStateSU3(P, Q, k, l, m)
        for k in range(P + Q, Q - 1, -1)
        for l in range(0, Q + 1)  # noqa: E741
        for m in range(k, l - 1, -1)
    ]


def tty_from_klm(P: int, Q: int, k: int, l: int, m: int) -> Tuple[int, int, int]:  # noqa: E741
    """(2T, 2T3, 3Y) of a state"""
    if not su3_state_is_valid(P, Q, k, l, m):
        raise LabelError(f"({k},{l},{m}) is not a state of ({P},{Q})", "weight_bounds")
    return k - l, 2 * m - k - l, 3 * (k + l) - 2 * (P + 2 * Q)


def klm_from_tty(P: int, Q: int, two_T: int, two_T3: int, three_Y: int) -> ReprStateSU3:
    pair_sum, rest = divmod(three_Y + 2 * (P + 2 * Q), 3)
    if rest or (pair_sum + two_T) % 2 or (two_T3 + pair_sum) % 2:
        raise LabelError(f"(2T,2T3,3Y)=({two_T},{two_T3},{three_Y}) is not a state of ({P},{Q})", "weight_bounds")
    k = (pair_sum + two_T) // 2
    l = (pair_sum - two_T) // 2  # noqa: E741
    m = (two_T3 + pair_sum) // 2
    if not su3_state_is_valid(P, Q, k, l, m):
        raise LabelError(f"(2T,2T3,3Y)=({two_T},{two_T3},{three_Y}) is not a state of ({P},{Q})", "weight_bounds")
    return ReprStateSU3(P, Q, k, l, m)
