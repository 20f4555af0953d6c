"""SU(3) isoscalar factors for coupling one quark to an irrep (P1, Q1).

A child irrep is reached by adding a box to row 1, 2 or 3 of the parent
diagram (path entry p = 2, 1, 0). Inside the child, every isospin-top
state (k, l) couples to at most three parent states:

    sigma    parent (k-1, l) plus a u or d quark
    rho      parent (k, l-1) plus a u or d quark
    strange  parent (k, l) plus an s quark

with k and l read one higher on the parent side when p = 0, because the
third row of the child then holds a box. Values follow the de Swart
convention: the highest-weight seed is +1, the highest-weight factors come
from the two annihilation conditions, and the lower states are reached
with the k- and l-ladders. The rho channel is fixed by normalisation.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from threading import RLock
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.domain.exact import RadicalSum, SqrtRational
from app.domain.partition import row_of_entry
from app.domain.repr_state import su3_state_is_valid
from app.errors import ExactArithmeticError, LabelError

logger = logging.getLogger("schur_synth")

CHANNELS = ("sigma", "rho", "strange")
QUARKS = ("u", "s")


def child_irrep(P1: int, Q1: int, p: int) -> Optional[Tuple[int, int]]:
    """(P, Q) after adding a box selected by p, or None if that row cannot grow"""
    if p == 2:
        return P1 + 1, Q1
    if p == 1:
        return (P1 - 1, Q1 + 1) if P1 >= 1 else None
    if p == 0:
        return (P1, Q1 - 1) if Q1 >= 1 else None
    raise LabelError(f"path entry {p} outside 0..2", "path_entry")


def child_entry(P1: int, Q1: int, P: int, Q: int) -> int:
    for p in (2, 1, 0):
        if child_irrep(P1, Q1, p) == (P, Q):
            return p
    raise LabelError(f"({P},{Q}) is not reached from ({P1},{Q1}) by one quark", "child_irrep")


def frame_shift(p: int) -> int:
    return 1 if p == 0 else 0


def parent_state(channel: str, k: int, l: int, p: int) -> Tuple[int, int]:  # noqa: E741
    delta = frame_shift(p)
    if channel == "sigma":
        return k + delta - 1, l + delta
    if channel == "rho":
        return k + delta, l + delta - 1
    if channel == "strange":
        return k + delta, l + delta
    raise ValueError(f"unknown channel {channel!r}")


def _top_state_is_valid(P: int, Q: int, k: int, l: int) -> bool:  # noqa: E741
    return su3_state_is_valid(P, Q, k, l, k)


def zeroed_ratio(numerator: Sequence[int], denominator: Sequence[int]) -> Fraction:
    """Product ratio with the zeroing rule: a negative factor or a vanishing denominator gives 0"""
    if any(factor < 0 for factor in numerator) or any(factor <= 0 for factor in denominator):
        return Fraction(0)
    return Fraction(math.prod(numerator), math.prod(denominator))


def _factorial_ratio(numerator: Sequence[int], denominator: Sequence[int]) -> Fraction:
    if min(list(numerator) + list(denominator)) < 0:
        return Fraction(0)
    return Fraction(
        math.prod(math.factorial(a) for a in numerator),
        math.prod(math.factorial(b) for b in denominator),
    )


@dataclass(frozen=True)
class LadderCoeffs:
    """U and V ladder matrix elements on an isospin-top state (k = m)"""

    u1p: SqrtRational
    u2p: SqrtRational
    u1m: SqrtRational
    u2m: SqrtRational
    v1p: SqrtRational
    v2p: SqrtRational
    v1m: SqrtRational
    v2m: SqrtRational

    @classmethod
    def at(cls, P: int, Q: int, k: int, l: int) -> "LadderCoeffs":  # noqa: E741
        root = SqrtRational.sqrt
        return cls(
            u1p=root(zeroed_ratio([k + 2, k - Q + 1, P + Q - k], [k - l + 2, k - l + 1])),
            u2p=root(zeroed_ratio([l + 1, Q - l, P + Q - l + 1], [k - l + 1])),
            u1m=SqrtRational.zero(),
            u2m=root(zeroed_ratio([l, Q - l + 1, P + Q - l + 2], [k - l + 2])),
            v1p=root(zeroed_ratio([k + 2, k - Q + 1, P + Q - k], [k - l + 2])),
            v2p=SqrtRational.zero(),
            v1m=root(zeroed_ratio([k + 1, k - Q, P + Q - k + 1], [k - l + 1])),
            v2m=root(zeroed_ratio([l, Q - l + 1, P + Q - l + 2], [k - l + 2, k - l + 1])),
        )


def b_coeff(P: int, Q: int, s: int) -> SqrtRational:
    return SqrtRational.sqrt(_factorial_ratio([P - s], [P, s]))


def d_coeff(P1: int, Q1: int, k1: int, l1: int, s: int) -> SqrtRational:
    return SqrtRational.sqrt(
        _factorial_ratio(
            [k1 + s + 1, k1 + s - Q1, P1 + Q1 - k1, k1 - l1 + 1],
            [k1 + 1, k1 - Q1, P1 + Q1 - k1 - s, k1 - l1 + s + 1],
        )
    )


def a_coeff(P: int, Q: int, k: int, l: int) -> SqrtRational:  # noqa: E741
    radicand = _factorial_ratio([Q - l, P + Q - l + 1, k + 1], [l, Q, P + Q + 1, k + 1 - l])
    return SqrtRational.sqrt(radicand, -1 if l % 2 else 1)


def c_coeff(P1: int, Q1: int, k1: int, l1: int, l: int) -> SqrtRational:  # noqa: E741
    radicand = _factorial_ratio(
        [l1, Q1 - l1 + l, P1 + Q1 - l1 + l + 1, k1 - l1 + 1],
        [l1 - l, Q1 - l1, P1 + Q1 - l1 + 1, k1 - l1 + l + 1],
    )
    return SqrtRational.sqrt(radicand, -1 if l % 2 else 1)


@dataclass(frozen=True)
class ChannelFactors:
    """Isoscalar factors of one child state, one per parent channel"""

    sigma: SqrtRational
    rho: SqrtRational
    strange: SqrtRational

    @classmethod
    def zero(cls) -> "ChannelFactors":
        return cls(SqrtRational.zero(), SqrtRational.zero(), SqrtRational.zero())

    def get(self, channel: str) -> SqrtRational:
        value: SqrtRational = getattr(self, channel)
        return value

    def norm_squared(self) -> Fraction:
        return self.sigma.square() + self.rho.square() + self.strange.square()

    def to_dict(self) -> Dict[str, Any]:
        return {channel: self.get(channel).to_dict() for channel in CHANNELS}


def hws_isoscalars(P1: int, Q1: int, k1: int, l1: int) -> ChannelFactors:
    """Factors of a child highest-weight state, addressed by its anchor (k1, l1) on the parent side.

    The anchor is (P+Q, 0) shifted by the frame of the child; the child type
    follows from k1 - l1 - (P1 + Q1) being 1, 0 or -1.
    """
    offset = k1 - l1 - (P1 + Q1)
    if offset == 1 and l1 == 0:
        return ChannelFactors(SqrtRational.one(), SqrtRational.zero(), SqrtRational.zero())
    p = {0: 1, -1: 0}.get(offset)
    if p is None or child_irrep(P1, Q1, p) is None or l1 != frame_shift(p):
        return ChannelFactors.zero()

    lower = LadderCoeffs.at(P1, Q1, k1 - 1, l1 - 1)
    upper = LadderCoeffs.at(P1, Q1, k1, l1)
    rho_weight = lower.u2p.square() * (k1 - l1 + 2)
    cross = RadicalSum.of(upper.v1m * lower.u1p) + upper.v2m * lower.u2p
    cross_squared = cross.square().as_rational()
    norm = rho_weight + lower.u1p.square() + cross_squared
    if norm == 0:
        raise ExactArithmeticError(f"highest-weight normalisation vanishes for ({P1},{Q1}) anchor ({k1},{l1})")
    return ChannelFactors(
        sigma=SqrtRational.sqrt(lower.u1p.square() / norm, -1),
        rho=SqrtRational.sqrt(rho_weight / norm),
        strange=SqrtRational.sqrt(cross_squared / norm),
    )


_cache: Dict[Tuple[int, int, int, int, int], ChannelFactors] = {}
_cache_lock = RLock()


def clear_isoscalar_cache() -> None:
    with _cache_lock:
        _cache.clear()


def channel_factors(P1: int, Q1: int, p: int, k: int, l: int) -> ChannelFactors:  # noqa: E741
    """Isoscalar factors of the child state (k, l) reached from (P1, Q1) with path entry p"""
    key = (P1, Q1, p, k, l)
    with _cache_lock:
        cached = _cache.get(key)
    if cached is not None:
        return cached
    factors = _compute_channel_factors(P1, Q1, p, k, l)
    with _cache_lock:
        _cache.setdefault(key, factors)
    return factors


def _compute_channel_factors(P1: int, Q1: int, p: int, k: int, l: int) -> ChannelFactors:  # noqa: E741
    child = child_irrep(P1, Q1, p)
    if child is None or not _top_state_is_valid(child[0], child[1], k, l):
        return ChannelFactors.zero()
    P, Q = child
    delta = frame_shift(p)
    top = hws_isoscalars(P1, Q1, P + Q + delta, delta)
    if (k, l) == (P + Q, 0):
        return top

    def valid_parent(channel: str) -> bool:
        return _top_state_is_valid(P1, Q1, *parent_state(channel, k, l, p))

    s = P + Q - k
    common = a_coeff(P, Q, k, l) * b_coeff(P, Q, s)

    sigma = SqrtRational.zero()
    if valid_parent("sigma"):
        sigma = c_coeff(P1, Q1, k + delta - 1, l + delta, l) * common * d_coeff(P1, Q1, k + delta - 1, delta, s)
        sigma = sigma * top.sigma

    strange = SqrtRational.zero()
    if valid_parent("strange"):
        ladder = RadicalSum.of(d_coeff(P1, Q1, k + delta, delta, s) * top.strange)
        if s > 0:
            ladder = ladder + d_coeff(P1, Q1, k + delta, delta, s - 1) * top.sigma * s
        strange = c_coeff(P1, Q1, k + delta, l + delta, l) * common * ladder.as_sqrt_rational()

    rho = SqrtRational.zero()
    if valid_parent("rho"):
        remainder = 1 - sigma.square() - strange.square()
        if remainder < 0:
            raise ExactArithmeticError(
                f"isoscalar factors of ({P},{Q}) state ({k},{l}) from ({P1},{Q1}) exceed unit norm"
            )
        rho = SqrtRational.sqrt(remainder, 1 if p == 0 else -1)
    return ChannelFactors(sigma, rho, strange)


@dataclass(frozen=True)
class IsoscalarQuery:
    """Parent state (k1, l1) of (P1, Q1), added quark, child state (k, l) of (P, Q)"""

    P1: int
    Q1: int
    k1: int
    l1: int
    quark: str
    P: int
    Q: int
    k: int
    l: int  # noqa: E741


def isoscalar(query: IsoscalarQuery) -> SqrtRational:
    """One isoscalar factor; any query that couples no valid states gives 0"""
    if query.quark not in QUARKS:
        raise LabelError(f"quark must be u-type or s-type, got {query.quark!r}", "quark")
    try:
        p = child_entry(query.P1, query.Q1, query.P, query.Q)
    except LabelError:
        return SqrtRational.zero()
    channels = ("strange",) if query.quark == "s" else ("sigma", "rho")
    for channel in channels:
        if parent_state(channel, query.k, query.l, p) == (query.k1, query.l1):
            return channel_factors(query.P1, query.Q1, p, query.k, query.l).get(channel)
    return SqrtRational.zero()


def closed_form_squared(P1: int, Q1: int, p: int, k: int, l: int, channel: str) -> Fraction:  # noqa: E741
    """Squared isoscalar factor from Gelfand-Tsetlin pattern differences"""
    child = child_irrep(P1, Q1, p)
    parent = parent_state(channel, k, l, p)
    if child is None or not _top_state_is_valid(child[0], child[1], k, l):
        return Fraction(0)
    if not _top_state_is_valid(P1, Q1, *parent):
        return Fraction(0)
    row = row_of_entry(p, 3)
    h = [top - index for index, top in enumerate((P1 + Q1, Q1, 0), start=1)]
    g = [middle - index for index, middle in enumerate(parent, start=1)]

    value = Fraction(1)
    if channel == "strange":
        for g_r in g:
            value *= g_r - h[row] - 1
        for r in range(3):
            if r != row:
                value /= h[r] - h[row]
        return value

    grown = 0 if channel == "sigma" else 1
    for r in range(2):
        if r != grown:
            value *= Fraction(h[row] - g[r] + 1, g[grown] - g[r] + 1)
    for r in range(3):
        if r != row:
            value *= Fraction(g[grown] - h[r], h[row] - h[r])
    return value


@dataclass(frozen=True)
class IsoscalarEntry:
    p: int
    P: int
    Q: int
    k: int
    l: int  # noqa: E741
    channel: str
    k1: int
    l1: int
    value: SqrtRational
    closed_form_matches: bool

    @property
    def quark(self) -> str:
        return "s" if self.channel == "strange" else "u"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "child": {"P": self.P, "Q": self.Q, "k": self.k, "l": self.l},
            "channel": self.channel,
            "quark": self.quark,
            "parent": {"k": self.k1, "l": self.l1},
            "value": self.value.to_dict(),
            "closed_form_matches": self.closed_form_matches,
        }


def isoscalar_table(P1: int, Q1: int) -> List[IsoscalarEntry]:
    """Every non-zero isoscalar factor of (P1, Q1) x quark, with its closed-form cross-check"""
    if P1 < 0 or Q1 < 0:
        raise LabelError(f"({P1},{Q1}) is not an irrep", "partition")
    entries = []
    for p in (2, 1, 0):
        child = child_irrep(P1, Q1, p)
        if child is None:
            continue
        P, Q = child
        for k in range(P + Q, Q - 1, -1):
            for l in range(Q + 1):  # noqa: E741
                factors = channel_factors(P1, Q1, p, k, l)
                for channel in CHANNELS:
                    value = factors.get(channel)
                    if value.is_zero():
                        continue
                    k1, l1 = parent_state(channel, k, l, p)
                    matches = value.square() == closed_form_squared(P1, Q1, p, k, l, channel)
                    entries.append(IsoscalarEntry(p, P, Q, k, l, channel, k1, l1, value, matches))
    mismatches = sum(1 for entry in entries if not entry.closed_form_matches)
    if mismatches:
        logger.error(f"isoscalar table of ({P1},{Q1}): {mismatches} factors disagree with the closed form")
    else:
        logger.info(f"isoscalar table of ({P1},{Q1}): {len(entries)} factors")
    return entries
