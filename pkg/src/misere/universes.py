"""Membership predicates for the dicot, dead-ending and blocking universes.

The universes are defined on ordinary forms only; any input whose
subposition graph carries a tombstone is rejected.  All predicates are
hereditary (membership implies membership of every subposition) and
memoized by form id.

A Left end x is *blocked* when every Right option of x is a blocked Left
end or can be answered by Left with a blocked Left end; a form is
*blocking* when every end among its subpositions is blocked.
"""

from __future__ import annotations

from .forms import FormId, Interner


class AugmentedFormError(ValueError):
    """Universe membership asked of a tombstone-bearing form."""


UNIVERSE_TAGS = ("m", "d", "e", "b")


def _reject_augmented(it: Interner, g: FormId) -> None:
    if it.is_augmented(g):
        raise AugmentedFormError("universes are defined on ordinary (tombstone-free) forms")


def is_dicot(it: Interner, g: FormId) -> bool:
    """Every subposition has options for both players or for neither."""
    _reject_augmented(it, g)
    return _dicot(it, g)


def _dicot(it: Interner, g: FormId) -> bool:
    memo = it.memo("dicot")
    val = memo.get(g)
    if val is None:
        left, right = it.left(g), it.right(g)
        val = bool(left) == bool(right) and all(_dicot(it, o) for o in left + right)
        memo[g] = val
    return val


def is_dead_ending(it: Interner, g: FormId) -> bool:
    """A player with no moves never moves again in any subposition."""
    _reject_augmented(it, g)
    return _dead_ending(it, g)


def _dead_ending(it: Interner, g: FormId) -> bool:
    memo = it.memo("dead_ending")
    val = memo.get(g)
    if val is None:
        val = all(_dead_ending(it, o) for o in it.left(g) + it.right(g))
        if val and it.is_left_end(g):
            val = _all_left_ends(it, g)
        if val and it.is_right_end(g):
            val = _all_right_ends(it, g)
        memo[g] = val
    return val


def _all_left_ends(it: Interner, g: FormId) -> bool:
    memo = it.memo("all_left_ends")
    val = memo.get(g)
    if val is None:
        val = it.is_left_end(g) and all(_all_left_ends(it, o) for o in it.right(g))
        memo[g] = val
    return val


def _all_right_ends(it: Interner, g: FormId) -> bool:
    memo = it.memo("all_right_ends")
    val = memo.get(g)
    if val is None:
        val = it.is_right_end(g) and all(_all_right_ends(it, o) for o in it.left(g))
        memo[g] = val
    return val


def is_blocked_left_end(it: Interner, g: FormId) -> bool:
    """Blocked-end test; false immediately if g is not a Left end."""
    _reject_augmented(it, g)
    return _blocked_left(it, g)


def is_blocked_right_end(it: Interner, g: FormId) -> bool:
    _reject_augmented(it, g)
    return _blocked_right(it, g)


def _blocked_left(it: Interner, g: FormId) -> bool:
    memo = it.memo("blocked_left")
    val = memo.get(g)
    if val is None:
        if it.left(g):
            val = False
        else:
            val = all(
                _blocked_left(it, r) or any(_blocked_left(it, rl) for rl in it.left(r))
                for r in it.right(g)
            )
        memo[g] = val
    return val


def _blocked_right(it: Interner, g: FormId) -> bool:
    memo = it.memo("blocked_right")
    val = memo.get(g)
    if val is None:
        if it.right(g):
            val = False
        else:
            val = all(
                _blocked_right(it, l) or any(_blocked_right(it, lr) for lr in it.right(l))
                for l in it.left(g)
            )
        memo[g] = val
    return val


def is_blocking(it: Interner, g: FormId) -> bool:
    """Every end subposition is blocked."""
    _reject_augmented(it, g)
    return _blocking(it, g)


def _blocking(it: Interner, g: FormId) -> bool:
    memo = it.memo("blocking")
    val = memo.get(g)
    if val is None:
        val = all(_blocking(it, o) for o in it.left(g) + it.right(g))
        if val and it.is_left_end(g):
            val = _blocked_left(it, g)
        if val and it.is_right_end(g):
            val = _blocked_right(it, g)
        memo[g] = val
    return val


def in_universe(it: Interner, tag: str, g: FormId) -> bool:
    """Membership under a one-letter universe tag: m, d, e or b."""
    tag = tag.lower()
    if tag == "m":
        _reject_augmented(it, g)
        return True
    if tag == "d":
        return is_dicot(it, g)
    if tag == "e":
        return is_dead_ending(it, g)
    if tag == "b":
        return is_blocking(it, g)
    raise ValueError(f"unknown universe {tag!r}; expected one of {UNIVERSE_TAGS}")
