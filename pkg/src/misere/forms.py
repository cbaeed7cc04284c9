"""Canonical interned representation of (augmented) misere game forms.

A form is a pair of finite sets of simpler forms (the Left and Right
options) plus two boolean tombstone flags.  Forms are hash-consed into a
single :class:`Interner`: structurally equal forms always receive the same
integer id, so identity tests, memo tables and set operations throughout
the engine work on plain ints.

The option graph is acyclic by construction (every option must already be
interned), and id 0 is always the zero form ``{|}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

FormId = int

ZERO: FormId = 0

DEFAULT_INTEGER_LIMIT = 64


class FormError(ValueError):
    """Base class for form construction errors."""


class UnknownFormError(FormError):
    """An option referenced a FormId that was never interned."""


class IntegerLimitError(FormError):
    """integer(n) was asked for |n| beyond the configured limit."""


@dataclass(frozen=True)
class Form:
    """Immutable view of one interned node.

    ``left``/``right`` are duplicate-free tuples of FormIds in ascending id
    order (the canonical order used for printing and hashing).
    """

    id: FormId
    left: Tuple[FormId, ...]
    right: Tuple[FormId, ...]
    left_tombstone: bool
    right_tombstone: bool
    rank: int


_LT = 1  # flag bit: left tombstone
_RT = 2  # flag bit: right tombstone


class Interner:
    """Arena of canonical forms plus the memo tables built over them.

    All structural operations (construction, conjugation, disjunctive sum,
    subposition closure) live here.  Higher-level modules (outcomes,
    tipping, universes, comparison) keep their own memo tables inside the
    same instance via :meth:`memo`, so caches can never be polluted by ids
    from a different arena.

    Forms are immutable once interned; an Interner is safe to share
    read-only across forked workers.
    """

    def __init__(self, integer_limit: int = DEFAULT_INTEGER_LIMIT):
        self.integer_limit = integer_limit
        # parallel per-id storage; hot loops index these directly
        self._left: list = []
        self._right: list = []
        self._flags: list = []
        self._rank: list = []
        self._index: Dict[tuple, FormId] = {}
        self._conj: Dict[FormId, FormId] = {}
        self._sum: Dict[Tuple[FormId, FormId], FormId] = {}
        self._sub: Dict[FormId, FrozenSet[FormId]] = {}
        self._int_value: Dict[FormId, Optional[int]] = {}
        self._integers: Dict[int, FormId] = {}
        self._memos: Dict[str, dict] = {}
        self.make((), ())  # id 0: the zero form

    def __len__(self) -> int:
        return len(self._rank)

    def memo(self, name: str) -> dict:
        """Shared per-arena cache registry for the other engine modules."""
        table = self._memos.get(name)
        if table is None:
            table = self._memos[name] = {}
        return table

    # -- construction -----------------------------------------------------

    def make(
        self,
        left: Iterable[FormId],
        right: Iterable[FormId],
        left_tombstone: bool = False,
        right_tombstone: bool = False,
    ) -> FormId:
        """Intern the form with the given options; idempotent.

        Duplicate options collapse; option order is irrelevant.  Raises
        UnknownFormError if an option id was never interned.
        """
        lt = tuple(sorted(set(left)))
        rt = tuple(sorted(set(right)))
        flags = (_LT if left_tombstone else 0) | (_RT if right_tombstone else 0)
        key = (lt, rt, flags)
        existing = self._index.get(key)
        if existing is not None:
            return existing
        n = len(self._rank)
        for opt in lt + rt:
            if not 0 <= opt < n:
                raise UnknownFormError(f"option id {opt} is not an interned form")
        rank = 0
        for opt in lt + rt:
            r = self._rank[opt] + 1
            if r > rank:
                rank = r
        self._index[key] = n
        self._left.append(lt)
        self._right.append(rt)
        self._flags.append(flags)
        self._rank.append(rank)
        return n

    def form(self, g: FormId) -> Form:
        self._check(g)
        flags = self._flags[g]
        return Form(g, self._left[g], self._right[g], bool(flags & _LT), bool(flags & _RT), self._rank[g])

    def _check(self, g: FormId) -> None:
        if not isinstance(g, int) or not 0 <= g < len(self._rank):
            raise UnknownFormError(f"{g!r} is not an interned form id")

    # -- cheap accessors ----------------------------------------------------

    def left(self, g: FormId) -> Tuple[FormId, ...]:
        return self._left[g]

    def right(self, g: FormId) -> Tuple[FormId, ...]:
        return self._right[g]

    def left_tombstone(self, g: FormId) -> bool:
        return bool(self._flags[g] & _LT)

    def right_tombstone(self, g: FormId) -> bool:
        return bool(self._flags[g] & _RT)

    def rank(self, g: FormId) -> int:
        """Height of the game tree (formal birthday); tombstones contribute 0."""
        return self._rank[g]

    def is_left_end(self, g: FormId) -> bool:
        return not self._left[g]

    def is_right_end(self, g: FormId) -> bool:
        return not self._right[g]

    def is_left_end_like(self, g: FormId) -> bool:
        """Left end, or carries a Left tombstone."""
        return not self._left[g] or bool(self._flags[g] & _LT)

    def is_right_end_like(self, g: FormId) -> bool:
        return not self._right[g] or bool(self._flags[g] & _RT)

    def is_augmented(self, g: FormId) -> bool:
        """True if any subposition carries a tombstone."""
        memo = self.memo("augmented")
        val = memo.get(g)
        if val is None:
            val = bool(self._flags[g]) or any(
                self.is_augmented(o) for o in self._left[g] + self._right[g]
            )
            memo[g] = val
        return val

    # -- integers -----------------------------------------------------------

    def integer(self, n: int) -> FormId:
        """The game integer n: 0 is the zero form, n>0 is {n-1 | }, n<0 the conjugate."""
        g = self._integers.get(n)
        if g is not None:
            return g
        if abs(n) > self.integer_limit:
            raise IntegerLimitError(f"|{n}| exceeds integer limit {self.integer_limit}")
        if n == 0:
            g = ZERO
        elif n > 0:
            g = self.make((self.integer(n - 1),), ())
        else:
            g = self.conjugate(self.integer(-n))
        self._integers[n] = g
        return g

    def int_value(self, g: FormId) -> Optional[int]:
        """n if g is (isomorphic to) the game integer n, else None."""
        val = self._int_value.get(g, _MISSING)
        if val is not _MISSING:
            return val
        left, right, flags = self._left[g], self._right[g], self._flags[g]
        val = None
        if not flags:
            if not left and not right:
                val = 0
            elif not right and len(left) == 1:
                inner = self.int_value(left[0])
                if inner is not None and inner >= 0:
                    val = inner + 1
            elif not left and len(right) == 1:
                inner = self.int_value(right[0])
                if inner is not None and inner <= 0:
                    val = inner - 1
        self._int_value[g] = val
        return val

    # -- structural operations ----------------------------------------------

    def conjugate(self, g: FormId) -> FormId:
        """Swap the roles of Left and Right, recursively.  An involution."""
        self._check(g)
        memo = self._conj
        val = memo.get(g)
        if val is not None:
            return val
        flags = self._flags[g]
        val = self.make(
            tuple(self.conjugate(o) for o in self._right[g]),
            tuple(self.conjugate(o) for o in self._left[g]),
            bool(flags & _RT),
            bool(flags & _LT),
        )
        memo[g] = val
        memo[val] = g
        return val

    def sum(self, g: FormId, h: FormId) -> FormId:
        """Disjunctive sum, interned.

        A move in g+h is a move in one summand.  The sum carries a Left
        tombstone only when both summands are Left end-like and at least
        one of them has a Left tombstone: this is the degenerate case where
        the option sets alone would misreport end-likeness, and it keeps
        the law "g+h is Left end-like iff g and h both are".
        """
        self._check(g)
        self._check(h)
        if g > h:
            g, h = h, g
        key = (g, h)
        memo = self._sum
        val = memo.get(key)
        if val is not None:
            return val
        if g == ZERO:
            memo[key] = h
            return h
        left = {self.sum(gl, h) for gl in self._left[g]}
        left.update(self.sum(g, hl) for hl in self._left[h])
        right = {self.sum(gr, h) for gr in self._right[g]}
        right.update(self.sum(g, hr) for hr in self._right[h])
        lt = (
            self.is_left_end_like(g)
            and self.is_left_end_like(h)
            and bool((self._flags[g] | self._flags[h]) & _LT)
        )
        rt = (
            self.is_right_end_like(g)
            and self.is_right_end_like(h)
            and bool((self._flags[g] | self._flags[h]) & _RT)
        )
        val = self.make(left, right, lt, rt)
        memo[key] = val
        return val

    def sum_all(self, ids: Iterable[FormId]) -> FormId:
        total = ZERO
        for g in ids:
            total = self.sum(total, g)
        return total

    def add_integer(self, g: FormId, n: int) -> FormId:
        return self.sum(g, self.integer(n))

    def subpositions(self, g: FormId) -> FrozenSet[FormId]:
        """Reflexive-transitive closure of the option relation (includes g)."""
        self._check(g)
        memo = self._sub
        val = memo.get(g)
        if val is not None:
            return val
        acc = {g}
        for o in self._left[g] + self._right[g]:
            acc.update(self.subpositions(o))
        val = frozenset(acc)
        memo[g] = val
        return val

    def proper_subpositions(self, g: FormId) -> FrozenSet[FormId]:
        return self.subpositions(g) - {g}

    def all_ids(self) -> range:
        return range(len(self._rank))


class _Missing:
    pass


_MISSING = _Missing()
