"""Tipping points and the integer-offset outcome sequence.

For any form g the outcome of g + n is eventually R as the integer n grows
and eventually L as n falls, which makes the following minimal offsets
well defined:

* rtp(g): least n >= 0 with outcome(g + n) = R,
* ltp(g): least n >= 0 with outcome(g + (-n)) = L,
* ntp(g): least n >= 0 with outcome(g + n) = N or outcome(g + (-n)) = N.

All three are bounded by rank(g) + 1, so a linear scan decides them; a
scan running past that bound indicates an engine bug, not a property of
the game.  For P-free members of well-behaved sets the whole sequence
outcome(g + k) splits into three contiguous blocks L..L N..N R..R whose
boundaries are determined by outcome(g) and the tipping points;
``contiguity_check`` verifies this over the window where the sequence is
not yet forced constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .forms import FormId, Interner
from .outcomes import Outcome, sum_outcome_with_integer


class TippingPointSearchError(RuntimeError):
    """No tipping point within rank+1: impossible for a sound evaluator."""


@dataclass(frozen=True)
class TippingPoints:
    ltp: int
    ntp: int
    rtp: int


@dataclass(frozen=True)
class OutcomeSequence:
    lo: int
    hi: int
    outcomes: List[Outcome]

    def at(self, k: int) -> Outcome:
        return self.outcomes[k - self.lo]


@dataclass(frozen=True)
class ContiguityVerdict:
    three_components: bool
    violation_k: Optional[int] = None


def tipping_points(it: Interner, g: FormId) -> TippingPoints:
    """(ltp, ntp, rtp) of g, by linear scan of k = 0, 1, ..., rank+1."""
    memo = it.memo("tp")
    val = memo.get(g)
    if val is not None:
        return val
    bound = it.rank(g) + 1
    rtp = ltp = ntp = None
    for k in range(bound + 1):
        pos = sum_outcome_with_integer(it, g, k)
        neg = sum_outcome_with_integer(it, g, -k) if k else pos
        if rtp is None and pos is Outcome.R:
            rtp = k
        if ltp is None and neg is Outcome.L:
            ltp = k
        if ntp is None and (pos is Outcome.N or neg is Outcome.N):
            ntp = k
        if rtp is not None and ltp is not None and ntp is not None:
            break
    if rtp is None or ltp is None or ntp is None:
        raise TippingPointSearchError(
            f"no tipping point for form {g} within rank+1 = {bound}"
        )
    val = TippingPoints(ltp=ltp, ntp=ntp, rtp=rtp)
    memo[g] = val
    return val


def outcome_sequence(it: Interner, g: FormId, lo: int, hi: int) -> OutcomeSequence:
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    return OutcomeSequence(
        lo, hi, [sum_outcome_with_integer(it, g, k) for k in range(lo, hi + 1)]
    )


def expected_outcome(o_g: Outcome, tp: TippingPoints, k: int) -> Outcome:
    """The three-block case table: what outcome(g + k) must be, given outcome(g)."""
    if o_g is Outcome.L:
        if k < tp.ntp:
            return Outcome.L
        return Outcome.N if k < tp.rtp else Outcome.R
    if o_g is Outcome.N:
        if k <= -tp.ltp:
            return Outcome.L
        return Outcome.N if k < tp.rtp else Outcome.R
    if o_g is Outcome.R:
        if k <= -tp.ltp:
            return Outcome.L
        return Outcome.N if k <= -tp.ntp else Outcome.R
    raise ValueError("no contiguity pattern is asserted for outcome P")


def contiguity_check(it: Interner, g: FormId) -> ContiguityVerdict:
    """Scan k in [-rank-1, rank+1] against the case table.

    Outside the window the outcome is constant L/R (the existence bound),
    so the window decides the whole infinite sequence.
    """
    o_g = sum_outcome_with_integer(it, g, 0)
    if o_g is Outcome.P:
        return ContiguityVerdict(False, violation_k=0)
    tp = tipping_points(it, g)
    bound = it.rank(g) + 1
    # outward from 0 so the violation nearest the origin is the one reported
    for a in range(bound + 1):
        for k in ((a, -a) if a else (0,)):
            if sum_outcome_with_integer(it, g, k) is not expected_outcome(o_g, tp, k):
                return ContiguityVerdict(False, violation_k=k)
    return ContiguityVerdict(True)
