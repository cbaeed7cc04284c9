"""HTTP service wrapping the engine.

One arena lives for the lifetime of the app, so a long-running server
keeps its interner and memo tables warm across requests; the CLI is a thin
client of these endpoints.  Requests are serialized with a lock: the
engine is CPU-bound and its memo tables are per-arena.
"""

from __future__ import annotations

import threading
import time
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .forms import Interner, IntegerLimitError, UnknownFormError
from .notation import ParseError, parse, print_form
from .outcomes import outcome, strictly_p_free
from .tipping import tipping_points
from .universes import AugmentedFormError, in_universe
from .comparison import (
    NotInUniverseError,
    compare_b,
    empirical_geq,
    invertible_b,
    left_b_strong,
    pfree_modulo_b_bounded,
    right_b_strong,
)
from .enumeration import (
    EnumSpec,
    ResourceLimitError,
    blocking_catalog,
    catalog_line,
    catalog_record,
    counterexample_search_pfree_sum,
    enumerate_forms,
)
from .verifier import PopulationSpec, SUITE_NAMES, run_suites


class ExprRequest(BaseModel):
    expr: str


class FormInfo(BaseModel):
    expr: str
    form: str
    rank: int
    augmented: bool


class OutcomeResponse(BaseModel):
    form: str
    outcome: str


class TippingResponse(BaseModel):
    form: str
    ltp: int
    ntp: int
    rtp: int


class PfreeRequest(BaseModel):
    expr: str
    modulo_b: bool = False
    max_birthday: int = 3
    max_width: int = 2


class PfreeResponse(BaseModel):
    form: str
    strictly_p_free: bool
    modulo_b_witness: Optional[str] = None
    modulo_b_searched: bool = False


class MemberRequest(BaseModel):
    expr: str
    universe: str = "b"


class MemberResponse(BaseModel):
    form: str
    universe: str
    member: bool


class StrongResponse(BaseModel):
    form: str
    left_b_strong: bool
    right_b_strong: bool


class CmpRequest(BaseModel):
    g: str
    h: str
    universe: str = "b"
    max_birthday: int = 3
    max_width: int = 1


class CmpResponse(BaseModel):
    g: str
    h: str
    universe: str
    method: str  # "exact" for b, "empirical" otherwise
    geq: bool
    leq: bool
    equivalent: bool
    geq_failed_clause: Optional[dict] = None
    distinguisher: Optional[dict] = None
    pool_size: Optional[int] = None


class InvertibleResponse(BaseModel):
    form: str
    invertible: bool
    inverse: Optional[str] = None


class EnumerateRequest(BaseModel):
    max_birthday: int = 3
    max_width: int = 2
    filters: List[str] = Field(default_factory=list)
    allow_tombstones: bool = False
    max_forms: int = 2_000_000


class EnumerateResponse(BaseModel):
    count: int
    bounds: dict
    records: List[dict]
    lines: List[str]


class SearchRequest(BaseModel):
    max_total_birthday: int = 5
    max_width: int = 2
    max_component_birthday: Optional[int] = None


class VerifyRequest(BaseModel):
    suites: List[str] = Field(default_factory=lambda: ["all"])
    max_birthday: int = 3
    max_width: int = 2
    unary_cap: int = 20_000
    pair_form_cap: int = 350
    invert_cap: int = 1_500
    seed: int = 20090
    inject: List[str] = Field(default_factory=list)
    jobs: int = 1


def create_app() -> FastAPI:
    app = FastAPI(title="misere engine", version="0.1.0")
    it = Interner()
    lock = threading.Lock()
    app.state.interner = it

    def guarded(fn):
        with lock:
            try:
                return fn()
            except ParseError as e:
                raise HTTPException(400, {"error": "parse", "message": e.message, "position": e.position})
            except (AugmentedFormError, NotInUniverseError, UnknownFormError, IntegerLimitError) as e:
                raise HTTPException(400, {"error": "domain", "message": str(e)})
            except ResourceLimitError as e:
                raise HTTPException(400, {"error": "resource_limit", "message": str(e), "partial_count": e.partial_count})
            except ValueError as e:
                raise HTTPException(400, {"error": "value", "message": str(e)})

    @app.get("/health")
    def health():
        return {"status": "ok", "forms_interned": len(it)}

    @app.post("/parse", response_model=FormInfo)
    def parse_expr(req: ExprRequest):
        def go():
            g = parse(it, req.expr)
            return FormInfo(
                expr=req.expr, form=print_form(it, g), rank=it.rank(g), augmented=it.is_augmented(g)
            )

        return guarded(go)

    @app.post("/outcome", response_model=OutcomeResponse)
    def outcome_ep(req: ExprRequest):
        def go():
            g = parse(it, req.expr)
            return OutcomeResponse(form=print_form(it, g), outcome=str(outcome(it, g)))

        return guarded(go)

    @app.post("/tp", response_model=TippingResponse)
    def tp_ep(req: ExprRequest):
        def go():
            g = parse(it, req.expr)
            tp = tipping_points(it, g)
            return TippingResponse(form=print_form(it, g), ltp=tp.ltp, ntp=tp.ntp, rtp=tp.rtp)

        return guarded(go)

    @app.post("/pfree", response_model=PfreeResponse)
    def pfree_ep(req: PfreeRequest):
        def go():
            g = parse(it, req.expr)
            strict = strictly_p_free(it, g)
            witness = None
            if req.modulo_b:
                w = pfree_modulo_b_bounded(it, g, req.max_birthday, req.max_width)
                witness = None if w is None else print_form(it, w)
            return PfreeResponse(
                form=print_form(it, g),
                strictly_p_free=strict,
                modulo_b_witness=witness,
                modulo_b_searched=req.modulo_b,
            )

        return guarded(go)

    @app.post("/member", response_model=MemberResponse)
    def member_ep(req: MemberRequest):
        def go():
            g = parse(it, req.expr)
            return MemberResponse(
                form=print_form(it, g),
                universe=req.universe.lower(),
                member=in_universe(it, req.universe, g),
            )

        return guarded(go)

    @app.post("/strong", response_model=StrongResponse)
    def strong_ep(req: ExprRequest):
        def go():
            g = parse(it, req.expr)
            return StrongResponse(
                form=print_form(it, g),
                left_b_strong=left_b_strong(it, g),
                right_b_strong=right_b_strong(it, g),
            )

        return guarded(go)

    @app.post("/cmp", response_model=CmpResponse)
    def cmp_ep(req: CmpRequest):
        def go():
            g = parse(it, req.g)
            h = parse(it, req.h)
            uni = req.universe.lower()
            if uni == "b":
                fwd = compare_b(it, g, h)
                bwd = compare_b(it, h, g)
                dist = None
                if not fwd.geq:
                    pool = blocking_catalog(it, min(req.max_birthday, 3), req.max_width)
                    d = empirical_geq(it, g, h, pool)
                    if d is not None:
                        dist = {
                            "x": print_form(it, d.x),
                            "o_gx": str(d.o_gx),
                            "o_hx": str(d.o_hx),
                        }
                trace = None
                if fwd.trace is not None:
                    trace = {
                        "clause": fwd.trace.clause,
                        "at": [print_form(it, fwd.trace.g), print_form(it, fwd.trace.h)],
                        "option": None
                        if fwd.trace.option is None
                        else print_form(it, fwd.trace.option),
                    }
                return CmpResponse(
                    g=print_form(it, g),
                    h=print_form(it, h),
                    universe="b",
                    method="exact",
                    geq=fwd.geq,
                    leq=bwd.geq,
                    equivalent=fwd.geq and bwd.geq,
                    geq_failed_clause=trace,
                    distinguisher=dist,
                )
            # other universes: refutation-only over an enumerated pool
            pool = enumerate_forms(
                it,
                EnumSpec(
                    max_birthday=min(req.max_birthday, 3),
                    max_width=req.max_width,
                    filters=(f"in_{uni}",) if uni != "m" else (),
                ),
            )
            fwd_d = empirical_geq(it, g, h, pool)
            bwd_d = empirical_geq(it, h, g, pool)
            dist = None
            first = fwd_d or bwd_d
            if first is not None:
                dist = {
                    "x": print_form(it, first.x),
                    "o_gx": str(first.o_gx),
                    "o_hx": str(first.o_hx),
                }
            return CmpResponse(
                g=print_form(it, g),
                h=print_form(it, h),
                universe=uni,
                method="empirical",
                geq=fwd_d is None,
                leq=bwd_d is None,
                equivalent=fwd_d is None and bwd_d is None,
                distinguisher=dist,
                pool_size=len(pool),
            )

        return guarded(go)

    @app.post("/invertible", response_model=InvertibleResponse)
    def invertible_ep(req: ExprRequest):
        def go():
            g = parse(it, req.expr)
            inv = invertible_b(it, g)
            return InvertibleResponse(
                form=print_form(it, g),
                invertible=inv,
                inverse=print_form(it, it.conjugate(g)) if inv else None,
            )

        return guarded(go)

    @app.post("/enumerate", response_model=EnumerateResponse)
    def enumerate_ep(req: EnumerateRequest):
        def go():
            spec = EnumSpec(
                max_birthday=req.max_birthday,
                max_width=req.max_width,
                filters=tuple(req.filters),
                allow_tombstones=req.allow_tombstones,
                max_forms=req.max_forms,
            )
            ids = enumerate_forms(it, spec)
            return EnumerateResponse(
                count=len(ids),
                bounds={
                    "max_birthday": req.max_birthday,
                    "max_width": req.max_width,
                    "filters": req.filters,
                    "allow_tombstones": req.allow_tombstones,
                },
                records=[catalog_record(it, g) for g in ids],
                lines=[catalog_line(it, g) for g in ids],
            )

        return guarded(go)

    @app.post("/search/counterexamples")
    def search_ep(req: SearchRequest):
        def go():
            rep = counterexample_search_pfree_sum(
                it, req.max_total_birthday, req.max_width, req.max_component_birthday
            )
            return {
                "bounds": {
                    "max_total_birthday": rep.max_total_birthday,
                    "max_width": rep.max_width,
                    "max_component_birthday": rep.max_component_birthday,
                },
                "complete": rep.complete,
                "pairs_checked": rep.pairs_checked,
                "count": len(rep.pairs),
                "pairs": [
                    [print_form(it, g), print_form(it, h)] for g, h in rep.pairs
                ],
            }

        return guarded(go)

    @app.post("/verify")
    def verify_ep(req: VerifyRequest):
        def go():
            names = list(req.suites)
            if "all" in names:
                names = list(SUITE_NAMES)
            bad = [n for n in names if n not in SUITE_NAMES]
            if bad:
                raise ValueError(f"unknown suites {bad}; choose from {list(SUITE_NAMES)} or 'all'")
            spec = PopulationSpec(
                max_birthday=req.max_birthday,
                max_width=req.max_width,
                unary_cap=req.unary_cap,
                pair_form_cap=req.pair_form_cap,
                invert_cap=req.invert_cap,
                seed=req.seed,
                inject=tuple(req.inject),
            )
            t0 = time.monotonic()
            reports = run_suites(it, names, spec=spec, jobs=req.jobs)
            return {
                "passed": all(r.passed for r in reports),
                "elapsed_seconds": round(time.monotonic() - t0, 3),
                "reports": [r.to_dict() for r in reports],
            }

        return guarded(go)

    return app
