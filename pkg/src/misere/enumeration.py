"""Exhaustive width-bounded enumeration of forms by birthday.

Level 0 is the zero form; level k+1 consists of every canonical pair of
option subsets (at most ``max_width`` per side) drawn from lower levels,
with at least one option of rank exactly k.  Width bounding is mandatory
beyond birthday 2: the unbounded level-3 space is doubly exponential, and
even at width 2 the full level-3 space has ~5.4e7 forms, so searches that
only need hereditary populations (P-free, universe members) restrict the
option pools during construction instead of filtering afterwards.  For a
hereditary predicate the two routes provably enumerate the same set, which
the test suite spot-checks at small bounds.

Counterexample searches and catalog exports declare their bounds in the
returned report; nothing here claims anything beyond them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .forms import FormId, Interner, ZERO
from .notation import print_form
from .outcomes import Outcome, outcome, strictly_p_free, sum_outcome
from .universes import is_blocking, is_dead_ending, is_dicot

DEFAULT_MAX_FORMS = 2_000_000

HEREDITARY_FILTERS = ("p_free", "in_b", "in_e", "in_d")
POST_FILTERS = ("left_end", "right_end", "end")  # plus outcome=<l|n|p|r>


class ResourceLimitError(RuntimeError):
    def __init__(self, limit: int, partial_count: int):
        super().__init__(
            f"enumeration exceeded the resource limit of {limit} forms "
            f"(partial count: {partial_count})"
        )
        self.limit = limit
        self.partial_count = partial_count


@dataclass(frozen=True)
class EnumSpec:
    max_birthday: int = 3
    max_width: int = 2
    filters: Tuple[str, ...] = ()
    allow_tombstones: bool = False
    max_forms: int = DEFAULT_MAX_FORMS


def _hereditary_keep(it: Interner, names: Sequence[str]) -> Optional[Callable[[FormId], bool]]:
    preds = []
    for name in names:
        if name == "p_free":
            preds.append(lambda g: strictly_p_free(it, g))
        elif name == "in_b":
            preds.append(lambda g: is_blocking(it, g))
        elif name == "in_e":
            preds.append(lambda g: is_dead_ending(it, g))
        elif name == "in_d":
            preds.append(lambda g: is_dicot(it, g))
    if not preds:
        return None
    return lambda g: all(p(g) for p in preds)


def _post_filter(it: Interner, name: str) -> Callable[[FormId], bool]:
    if name == "left_end":
        return lambda g: it.is_left_end(g)
    if name == "right_end":
        return lambda g: it.is_right_end(g)
    if name == "end":
        return lambda g: it.is_left_end(g) or it.is_right_end(g)
    if name.startswith("outcome="):
        want = Outcome(name.split("=", 1)[1].upper())
        return lambda g: outcome(it, g) is want
    raise ValueError(f"unknown filter {name!r}")


def _levels(
    it: Interner,
    max_birthday: int,
    max_width: int,
    keep: Optional[Callable[[FormId], bool]],
    max_forms: int,
) -> List[FormId]:
    """By-level canonical construction over a keep-restricted pool."""
    pool: List[FormId] = [ZERO]
    if keep is not None and not keep(ZERO):
        return []
    rank_of = it.rank
    for level in range(1, max_birthday + 1):
        prev = level - 1
        sides = []
        for size in range(0, max_width + 1):
            for combo in combinations(pool, size):
                mx = max((rank_of(o) for o in combo), default=-1)
                sides.append((combo, mx))
        new: List[FormId] = []
        for left, lmax in sides:
            for right, rmax in sides:
                if lmax != prev and rmax != prev:
                    continue
                g = it.make(left, right)
                if keep is None or keep(g):
                    new.append(g)
                    if len(pool) + len(new) > max_forms:
                        raise ResourceLimitError(max_forms, len(pool) + len(new))
        pool.extend(new)
    return pool


def enumerate_forms(it: Interner, spec: EnumSpec) -> List[FormId]:
    """Deterministic duplicate-free enumeration within the given bounds.

    Hereditary filters (p_free, in_b, in_e, in_d) restrict construction;
    the remaining filters apply post hoc.  Output is sorted by canonical
    id.  Tombstone variants (opt in) add, for each ordinary enumerated
    form, the two forms with a single Left or Right tombstone at the root;
    they are meant for outcome testing and cannot be combined with
    universe filters.
    """
    hereditary = [f for f in spec.filters if f in HEREDITARY_FILTERS]
    post = [f for f in spec.filters if f not in HEREDITARY_FILTERS]
    if spec.allow_tombstones and any(f.startswith("in_") for f in spec.filters):
        raise ValueError("universe filters reject tombstone-bearing forms")
    keep = _hereditary_keep(it, hereditary)
    out = _levels(it, spec.max_birthday, spec.max_width, keep, spec.max_forms)
    if spec.allow_tombstones:
        variants = []
        for g in out:
            f = it.form(g)
            variants.append(it.make(f.left, f.right, True, False))
            variants.append(it.make(f.left, f.right, False, True))
        out = out + variants
        if len(out) > spec.max_forms:
            raise ResourceLimitError(spec.max_forms, len(out))
        if "p_free" in hereditary:
            out = [g for g in out if strictly_p_free(it, g)]
    for name in post:
        pred = _post_filter(it, name)
        out = [g for g in out if pred(g)]
    return sorted(set(out))


def pfree_catalog(it: Interner, max_birthday: int, max_width: int) -> List[FormId]:
    """All strictly P-free forms within the bounds, in canonical order."""
    memo = it.memo("pfree_catalog")
    key = (max_birthday, max_width)
    if key not in memo:
        memo[key] = _levels(
            it, max_birthday, max_width, lambda g: strictly_p_free(it, g), DEFAULT_MAX_FORMS
        )
    return memo[key]


def pfree_blocking_catalog(it: Interner, max_birthday: int, max_width: int) -> List[FormId]:
    """All strictly P-free blocking forms within the bounds."""
    memo = it.memo("pfb_catalog")
    key = (max_birthday, max_width)
    if key not in memo:
        memo[key] = _levels(
            it,
            max_birthday,
            max_width,
            lambda g: strictly_p_free(it, g) and is_blocking(it, g),
            DEFAULT_MAX_FORMS,
        )
    return memo[key]


def blocking_catalog(it: Interner, max_birthday: int, max_width: int) -> List[FormId]:
    memo = it.memo("blocking_catalog")
    key = (max_birthday, max_width)
    if key not in memo:
        memo[key] = _levels(
            it, max_birthday, max_width, lambda g: is_blocking(it, g), DEFAULT_MAX_FORMS
        )
    return memo[key]


# -- counterexample search ---------------------------------------------------


@dataclass
class CounterexampleReport:
    """P-free pairs within the bounds whose sum has outcome P.

    ``complete`` records whether the declared component bound covers every
    split of the total: a component of rank 0 is the zero form and can
    never participate (outcome(g + 0) = outcome(g) != P for P-free g), so
    the search is exhaustive for the total bound iff max_component_birthday
    >= max_total_birthday - 1.
    """

    max_total_birthday: int
    max_width: int
    max_component_birthday: int
    pairs: List[Tuple[FormId, FormId]] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def complete(self) -> bool:
        return self.max_component_birthday >= self.max_total_birthday - 1


def counterexample_search_pfree_sum(
    it: Interner,
    max_total_birthday: int,
    max_width: int,
    max_component_birthday: Optional[int] = None,
) -> CounterexampleReport:
    """Search for strictly P-free g, h with outcome(g + h) = P.

    Pairs are quantified over all of M (no universe filter), reported up
    to (g, h)/(h, g) symmetry, with rank(g) + rank(h) <= the total bound.
    Components are enumerated up to ``max_component_birthday`` (default:
    min(total - 1, 3); the rank-4 width-2 space is out of desk reach, so
    totals above 4 are declared incomplete rather than silently truncated).
    """
    if max_component_birthday is None:
        max_component_birthday = min(max_total_birthday - 1, 3)
    report = CounterexampleReport(
        max_total_birthday=max_total_birthday,
        max_width=max_width,
        max_component_birthday=max_component_birthday,
    )
    cap = min(max_component_birthday, max_total_birthday - 1)
    if cap < 1:
        return report
    catalog = pfree_catalog(it, cap, max_width)
    by_rank: Dict[int, List[FormId]] = {}
    for g in catalog:
        by_rank.setdefault(it.rank(g), []).append(g)
    found = []
    checked = 0
    for ra in range(1, cap + 1):
        for rb in range(ra, cap + 1):
            if ra + rb > max_total_birthday:
                break
            ga_list = by_rank.get(ra, ())
            gb_list = by_rank.get(rb, ())
            for i, g in enumerate(ga_list):
                partners = gb_list[i:] if rb == ra else gb_list
                for h in partners:
                    checked += 1
                    if sum_outcome(it, (g, h)) is Outcome.P:
                        found.append((g, h) if g <= h else (h, g))
    report.pairs = sorted(set(found))
    report.pairs_checked = checked
    return report


# -- catalog export -----------------------------------------------------------


def catalog_record(it: Interner, g: FormId) -> dict:
    """One machine-readable record: notation, rank, outcome, flags, tipping points."""
    from .tipping import tipping_points

    augmented = it.is_augmented(g)
    tp = tipping_points(it, g)
    record = {
        "form": print_form(it, g),
        "rank": it.rank(g),
        "outcome": str(outcome(it, g)),
        "p_free": strictly_p_free(it, g),
        "dicot": None if augmented else is_dicot(it, g),
        "dead_ending": None if augmented else is_dead_ending(it, g),
        "blocking": None if augmented else is_blocking(it, g),
        "ltp": tp.ltp,
        "ntp": tp.ntp,
        "rtp": tp.rtp,
    }
    return record


def catalog_line(it: Interner, g: FormId) -> str:
    """Line format: form rank=N o=X pfree=0/1 D=./0/1 E=... B=... ltp=N ntp=N rtp=N."""
    r = catalog_record(it, g)

    def flag(v):
        return "." if v is None else ("1" if v else "0")

    return (
        f"{r['form']}\trank={r['rank']}\to={r['outcome']}\t"
        f"pfree={'1' if r['p_free'] else '0'}\t"
        f"D={flag(r['dicot'])}\tE={flag(r['dead_ending'])}\tB={flag(r['blocking'])}\t"
        f"ltp={r['ltp']}\tntp={r['ntp']}\trtp={r['rtp']}"
    )
