"""Misere outcome evaluation.

Under the misere convention a player who cannot move *wins*.  A side
tombstone means that player is defined to win moving first from there, no
move is ever played "onto" a tombstone.  So Left moving first wins g iff

* g has no Left options (Left cannot move and wins), or
* g carries a Left tombstone, or
* some Left option gL is won by Left with Right to move.

Outcomes pair-code the two first-player winners: (Left, Left) -> L,
(Left, Right) -> N, (Right, Left) -> P, (Right, Right) -> R, with the
partial order L > N > R and L > P > R (N, P incomparable).

Two independent evaluation routes are provided on purpose:

* the memoized route (``outcome``/``sum_outcome``), keyed by interned ids,
  which everything fast is built on; and
* ``naive_outcome``/``naive_sum_outcome``, a deliberately memo-free
  tree-walking oracle used by the test suites to cross-check the first.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Tuple

from .forms import FormId, Interner

LEFT = 0
RIGHT = 1


class Outcome(Enum):
    L = "L"
    N = "N"
    P = "P"
    R = "R"

    def __str__(self) -> str:
        return self.value


_BY_WINNERS = {
    (LEFT, LEFT): Outcome.L,
    (LEFT, RIGHT): Outcome.N,
    (RIGHT, LEFT): Outcome.P,
    (RIGHT, RIGHT): Outcome.R,
}

# outcome_geq(a, b): L on top, R on bottom, N and P incomparable
_GEQ = {
    (a, b): (a is b)
    or a is Outcome.L
    or b is Outcome.R
    for a in Outcome
    for b in Outcome
}


def outcome_geq(a: Outcome, b: Outcome) -> bool:
    """Partial order on outcomes: L > {N, P} > R, N and P incomparable."""
    return _GEQ[(a, b)]


def outcome_leq(a: Outcome, b: Outcome) -> bool:
    return _GEQ[(b, a)]


def outcome_left(it: Interner, g: FormId) -> int:
    """Winner (LEFT or RIGHT) of g when Left moves first.  Memoized."""
    memo = it.memo("oL")
    val = memo.get(g)
    if val is None:
        val = _winner(it, g, LEFT, memo, it.memo("oR"))
    return val


def outcome_right(it: Interner, g: FormId) -> int:
    """Winner of g when Right moves first."""
    memo = it.memo("oR")
    val = memo.get(g)
    if val is None:
        val = _winner(it, g, RIGHT, it.memo("oL"), memo)
    return val


def _winner(it: Interner, g: FormId, mover: int, memo_l: dict, memo_r: dict) -> int:
    # iterative on an explicit stack: sums can nest deeper than small ranks
    stack = [(g, mover)]
    while stack:
        h, side = stack[-1]
        memo = memo_l if side == LEFT else memo_r
        if h in memo:
            stack.pop()
            continue
        opts = it.left(h) if side == LEFT else it.right(h)
        tomb = it.left_tombstone(h) if side == LEFT else it.right_tombstone(h)
        if not opts or tomb:
            memo[h] = side  # mover cannot move (misere win) or wins by tombstone
            stack.pop()
            continue
        reply = memo_r if side == LEFT else memo_l
        other = RIGHT - side
        pending = False
        won = False
        for o in opts:
            w = reply.get(o)
            if w is None:
                stack.append((o, other))
                pending = True
            elif w == side:
                won = True
                break
        if won:
            memo[h] = side
            stack.pop()
        elif not pending:
            memo[h] = other
            stack.pop()
    return (memo_l if mover == LEFT else memo_r)[g]


def outcome(it: Interner, g: FormId) -> Outcome:
    return _BY_WINNERS[(outcome_left(it, g), outcome_right(it, g))]


def strictly_p_free(it: Interner, g: FormId) -> bool:
    """True iff no subposition of g (including g) has outcome P."""
    memo = it.memo("pfree")
    val = memo.get(g)
    if val is None:
        val = outcome(it, g) is not Outcome.P and all(
            strictly_p_free(it, o) for o in it.left(g) + it.right(g)
        )
        memo[g] = val
    return val


# -- sums evaluated componentwise -------------------------------------------
#
# outcome(sum_all(S)) can be computed without interning the sum: a move in
# a sum is a move in one component, the sum is Left end-like iff every
# component is, and it carries a Left tombstone iff additionally some
# component does.  The memo is keyed by the sorted component tuple, so
# commutativity is free.  The table is cleared when it outgrows its cap;
# results never depend on cache state.
#
# Ordinary (tombstone-free) two-component sums are by far the hottest case
# in the searches, so they get a dedicated recursion with packed int keys.

_SUM_MEMO_CAP = 2_000_000


def _sum_key(components: Iterable[FormId]) -> Tuple[FormId, ...]:
    return tuple(sorted(c for c in components if c != 0))


def _pair_fns(it: Interner):
    """Left/right winner closures for ordinary pairs, cached per arena."""
    holder = it.memo("pair_eval")
    fns = holder.get("fns")
    if fns is not None:
        return fns
    pl_memo: dict = {}
    pr_memo: dict = {}
    left_of = it._left
    right_of = it._right

    def pl(g: int, h: int) -> int:
        if g > h:
            g, h = h, g
        k = (g << 32) | h
        v = pl_memo.get(k)
        if v is None:
            lg = left_of[g]
            lh = left_of[h]
            if not lg and not lh:
                v = LEFT
            else:
                v = RIGHT
                for x in lg:
                    if pr(x, h) == LEFT:
                        v = LEFT
                        break
                if v == RIGHT:
                    for x in lh:
                        if pr(g, x) == LEFT:
                            v = LEFT
                            break
            pl_memo[k] = v
        return v

    def pr(g: int, h: int) -> int:
        if g > h:
            g, h = h, g
        k = (g << 32) | h
        v = pr_memo.get(k)
        if v is None:
            rg = right_of[g]
            rh = right_of[h]
            if not rg and not rh:
                v = RIGHT
            else:
                v = LEFT
                for x in rg:
                    if pl(x, h) == RIGHT:
                        v = RIGHT
                        break
                if v == LEFT:
                    for x in rh:
                        if pl(g, x) == RIGHT:
                            v = RIGHT
                            break
            pr_memo[k] = v
        return v

    def trim() -> None:
        if len(pl_memo) > _SUM_MEMO_CAP:
            pl_memo.clear()
            pr_memo.clear()

    fns = (pl, pr, trim)
    holder["fns"] = fns
    return fns


def sum_outcome_left(it: Interner, components: Iterable[FormId]) -> int:
    key = _sum_key(components)
    if len(key) == 2 and not (it.is_augmented(key[0]) or it.is_augmented(key[1])):
        pl, _, trim = _pair_fns(it)
        trim()
        return pl(key[0], key[1])
    return _sum_winner(it, key, LEFT)


def sum_outcome_right(it: Interner, components: Iterable[FormId]) -> int:
    key = _sum_key(components)
    if len(key) == 2 and not (it.is_augmented(key[0]) or it.is_augmented(key[1])):
        _, pr, trim = _pair_fns(it)
        trim()
        return pr(key[0], key[1])
    return _sum_winner(it, key, RIGHT)


def sum_outcome(it: Interner, components: Iterable[FormId]) -> Outcome:
    """Outcome of the disjunctive sum of the given interned forms."""
    key = _sum_key(components)
    if len(key) == 2 and not (it.is_augmented(key[0]) or it.is_augmented(key[1])):
        pl, pr, trim = _pair_fns(it)
        trim()
        g, h = key
        return _BY_WINNERS[(pl(g, h), pr(g, h))]
    return _BY_WINNERS[(_sum_winner(it, key, LEFT), _sum_winner(it, key, RIGHT))]


def sum_outcome_with_integer(it: Interner, g: FormId, n: int) -> Outcome:
    """outcome(g + n) without interning the sum."""
    return sum_outcome(it, (g, it.integer(n)))


def _sum_winner(it: Interner, key: Tuple[FormId, ...], mover: int) -> int:
    if len(key) == 0:
        return mover
    if len(key) == 1:
        return outcome_left(it, key[0]) if mover == LEFT else outcome_right(it, key[0])
    memo_l = it.memo("sumL")
    memo_r = it.memo("sumR")
    if len(memo_l) > _SUM_MEMO_CAP:
        memo_l.clear()
        memo_r.clear()
    stack = [(key, mover)]
    left_of = it.left
    right_of = it.right
    while stack:
        pos, side = stack[-1]
        memo = memo_l if side == LEFT else memo_r
        if pos in memo:
            stack.pop()
            continue
        if side == LEFT:
            opts_of, tomb_of, end_like = left_of, it.left_tombstone, it.is_left_end_like
        else:
            opts_of, tomb_of, end_like = right_of, it.right_tombstone, it.is_right_end_like
        if all(not opts_of(c) for c in pos):
            memo[pos] = side  # no move anywhere: misere win for the mover
            stack.pop()
            continue
        if all(end_like(c) for c in pos) and any(tomb_of(c) for c in pos):
            memo[pos] = side  # the sum carries the mover's tombstone
            stack.pop()
            continue
        reply = memo_r if side == LEFT else memo_l
        other = RIGHT - side
        pending = False
        won = False
        for i, c in enumerate(pos):
            rest = pos[:i] + pos[i + 1:]
            for o in opts_of(c):
                nxt = tuple(sorted(rest + (o,))) if o else rest
                if len(nxt) == 1:
                    w = outcome_left(it, nxt[0]) if other == LEFT else outcome_right(it, nxt[0])
                elif not nxt:
                    w = other
                elif len(nxt) == 2 and not (
                    it.is_augmented(nxt[0]) or it.is_augmented(nxt[1])
                ):
                    pl, pr, _ = _pair_fns(it)
                    w = pl(*nxt) if other == LEFT else pr(*nxt)
                else:
                    w = reply.get(nxt)
                    if w is None:
                        stack.append((nxt, other))
                        pending = True
                        continue
                if w == side:
                    won = True
                    break
            if won:
                break
        if won:
            memo[pos] = side
            stack.pop()
        elif not pending:
            memo[pos] = other
            stack.pop()
    return (memo_l if mover == LEFT else memo_r)[key]


# -- independent oracle ------------------------------------------------------


def naive_outcome(it: Interner, g: FormId) -> Outcome:
    """Memo-free recursive evaluation; exponential, for cross-checks only."""
    return _BY_WINNERS[(_naive_wins(it, (g,), LEFT), _naive_wins(it, (g,), RIGHT))]


def naive_sum_outcome(it: Interner, components: Iterable[FormId]) -> Outcome:
    pos = tuple(components)
    return _BY_WINNERS[(_naive_wins(it, pos, LEFT), _naive_wins(it, pos, RIGHT))]


def _naive_wins(it: Interner, pos: Tuple[FormId, ...], side: int) -> int:
    if side == LEFT:
        opts_of, tomb_of, end_like = it.left, it.left_tombstone, it.is_left_end_like
    else:
        opts_of, tomb_of, end_like = it.right, it.right_tombstone, it.is_right_end_like
    if all(not opts_of(c) for c in pos):
        return side
    if all(end_like(c) for c in pos) and any(tomb_of(c) for c in pos):
        return side
    other = RIGHT - side
    for i, c in enumerate(pos):
        for o in opts_of(c):
            if _naive_wins(it, pos[:i] + (o,) + pos[i + 1:], other) == side:
                return side
    return other
