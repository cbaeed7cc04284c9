"""Comparison and invertibility modulo the blocking universe.

g >= h modulo a universe means outcome(g + x) >= outcome(h + x) for every
x in the universe.  That infinite quantification is decided recursively by
the universal comparison test, whose four clauses are:

1. every Right option of g is matched by a Right option of h or answered
   by a Left response dominating h (maintenance);
2. every Left option of h is matched by a Left option of g or answered by
   a Right response dominated by g (maintenance);
3. if h is a Left end then g is Left strong (proviso);
4. if g is a Right end then h is Right strong (proviso).

"Left strong" for the blocking universe has its own recursive test: g is a
Left end, or g has a Left option gL won by Left with Right to move such
that gL and all of its Right options are again Left strong.  "Left-win
option" is read as outcome_right(gL) = Left -- the reading under which the
recursion certifies an actual winning strategy on g + x for Left ends x.

The exact tests are implemented for the blocking universe only.  For
arbitrary game sets, ``empirical_geq`` refutes comparisons over a finite
pool (sound for any superset of the pool, never a proof).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .forms import FormId, Interner, ZERO
from .outcomes import (
    LEFT,
    RIGHT,
    Outcome,
    outcome,
    outcome_geq,
    outcome_left,
    outcome_right,
    strictly_p_free,
    sum_outcome,
)
from .universes import AugmentedFormError, is_blocking


class NotInUniverseError(ValueError):
    """Invertibility asked of a form outside the blocking universe."""


@dataclass(frozen=True)
class FailedClause:
    """Root-level reason a comparison failed: clause name plus culprit option."""

    clause: str
    g: FormId
    h: FormId
    option: Optional[FormId] = None


@dataclass(frozen=True)
class CompareVerdict:
    geq: bool
    trace: Optional[FailedClause] = None


@dataclass(frozen=True)
class Distinguisher:
    """Witness x refuting g >= h: outcome(g+x) is not >= outcome(h+x)."""

    x: FormId
    o_gx: Outcome
    o_hx: Outcome


def _reject_augmented(it: Interner, g: FormId) -> None:
    if it.is_augmented(g):
        raise AugmentedFormError("comparison is defined on ordinary forms only")


def left_b_strong(it: Interner, g: FormId) -> bool:
    """Left wins moving first on g + x for every Left end x of the blocking universe."""
    _reject_augmented(it, g)
    return _left_strong(it, g)


def right_b_strong(it: Interner, g: FormId) -> bool:
    _reject_augmented(it, g)
    return _right_strong(it, g)


def _left_strong(it: Interner, g: FormId) -> bool:
    memo = it.memo("left_strong")
    val = memo.get(g)
    if val is None:
        val = not it.left(g) or any(
            outcome_right(it, gl) == LEFT
            and _left_strong(it, gl)
            and all(_left_strong(it, glr) for glr in it.right(gl))
            for gl in it.left(g)
        )
        memo[g] = val
    return val


def _right_strong(it: Interner, g: FormId) -> bool:
    memo = it.memo("right_strong")
    val = memo.get(g)
    if val is None:
        val = not it.right(g) or any(
            outcome_left(it, gr) == RIGHT
            and _right_strong(it, gr)
            and all(_right_strong(it, grl) for grl in it.left(gr))
            for gr in it.right(g)
        )
        memo[g] = val
    return val


def geq_b(it: Interner, g: FormId, h: FormId) -> bool:
    """g >= h modulo the blocking universe (exact)."""
    _reject_augmented(it, g)
    _reject_augmented(it, h)
    return _geq(it, g, h)


def _geq(it: Interner, g: FormId, h: FormId) -> bool:
    # memo on the ordered pair; every recursive call strictly lowers
    # rank(g) + rank(h), so the recursion is well founded
    memo = it.memo("geq_b")
    key = (g, h)
    val = memo.get(key)
    if val is None:
        val = _geq_clauses(it, g, h) is None
        memo[key] = val
    return val


def _geq_clauses(it: Interner, g: FormId, h: FormId) -> Optional[FailedClause]:
    """None when g >= h; otherwise the first failing clause at this level."""
    if not it.left(h) and not _left_strong(it, g):
        return FailedClause("proviso-left-end", g, h)
    if not it.right(g) and not _right_strong(it, h):
        return FailedClause("proviso-right-end", g, h)
    for gr in it.right(g):
        if any(_geq(it, gr, hr) for hr in it.right(h)):
            continue
        if any(_geq(it, grl, h) for grl in it.left(gr)):
            continue
        return FailedClause("maintenance-right", g, h, option=gr)
    for hl in it.left(h):
        if any(_geq(it, gl, hl) for gl in it.left(g)):
            continue
        if any(_geq(it, g, hlr) for hlr in it.right(hl)):
            continue
        return FailedClause("maintenance-left", g, h, option=hl)
    return None


def compare_b(it: Interner, g: FormId, h: FormId) -> CompareVerdict:
    """geq_b plus, on failure, the root clause that refused it."""
    if geq_b(it, g, h):
        return CompareVerdict(True)
    return CompareVerdict(False, trace=_geq_clauses(it, g, h))


def equiv_b(it: Interner, g: FormId, h: FormId) -> bool:
    return geq_b(it, g, h) and geq_b(it, h, g)


def invertible_b(it: Interner, g: FormId) -> bool:
    """Whether g has an inverse modulo the blocking universe.

    Tests g + conjugate(g) == 0; by the conjugate property of universes the
    conjugate is the only possible inverse, so this decides invertibility.
    """
    if not is_blocking(it, g):
        raise NotInUniverseError("invertibility is decided for blocking forms only")
    return equiv_b(it, it.sum(g, it.conjugate(g)), ZERO)


def empirical_geq(
    it: Interner, g: FormId, h: FormId, pool: Iterable[FormId]
) -> Optional[Distinguisher]:
    """Check outcome(g+x) >= outcome(h+x) for every x in the pool.

    Returns None when consistent.  A refutation is sound for any game set
    containing x; consistency proves nothing beyond the pool.
    """
    for x in pool:
        o_gx = sum_outcome(it, (g, x))
        o_hx = sum_outcome(it, (h, x))
        if not outcome_geq(o_gx, o_hx):
            return Distinguisher(x=x, o_gx=o_gx, o_hx=o_hx)
    return None


def pfree_modulo_b_bounded(
    it: Interner, g: FormId, max_birthday: int = 3, max_width: int = 2
) -> Optional[FormId]:
    """Bounded search for a strictly P-free blocking form equivalent to g.

    Returns the first witness in enumeration order, or None ("unknown"):
    this is a semi-decision, absence of a witness within the bounds proves
    nothing.  g itself must be blocking.
    """
    from .enumeration import pfree_blocking_catalog

    if not is_blocking(it, g):
        raise NotInUniverseError("the search is defined within the blocking universe")
    if strictly_p_free(it, g):
        return g
    o_g = outcome(it, g)
    from .tipping import tipping_points

    tp_g = tipping_points(it, g)
    quick_pool = [it.integer(n) for n in range(-3, 4)] + [it.make((ZERO,), (ZERO,))]
    for h in pfree_blocking_catalog(it, max_birthday, max_width):
        # outcome and tipping points are invariant under equivalence
        # (x = 0 and the integers are all blocking), so mismatches are
        # sound skips that cannot change which candidate wins first
        if outcome(it, h) is not o_g or tipping_points(it, h) != tp_g:
            continue
        if empirical_geq(it, g, h, quick_pool) or empirical_geq(it, h, g, quick_pool):
            continue
        if equiv_b(it, g, h):
            return h
    return None
