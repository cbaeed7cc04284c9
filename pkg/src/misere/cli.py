"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the app
in-process (no socket) and speaks to it through the test transport, and
with ``--server URL`` it talks to a running instance instead, sharing that
server's warm caches.

Exit status: 0 on success / pass, 1 on a property failure or refuted
comparison, 2 on usage, parse or resource errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

USAGE_ERROR = 2
FAILURE = 1

SUITE_CHOICES = (
    "outcome_stable",
    "pfree_plus_integer",
    "tipping_contiguity",
    "table_techs",
    "table_11_14",
    "property_x",
    "final_piece",
    "pfree_closure",
    "invertibility",
    "b_lemmas",
    "all",
)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("MISERE_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--universe", choices=("m", "d", "e", "b"), default="b")
    common.add_argument("--max-birthday", type=int, default=3, metavar="N")
    common.add_argument("--max-width", type=int, default=2, metavar="W")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--jobs", type=int, default=None, metavar="N",
                        help="worker count (default: MISERE_JOBS or 1)")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--server", metavar="URL", help="talk to a running service instead of in-process")

    p = argparse.ArgumentParser(prog="misere", description="misere game engine")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("outcome", parents=[common], help="misere outcome of an expression")
    sp.add_argument("expr")
    sp = sub.add_parser("tp", parents=[common], help="tipping points ltp/ntp/rtp")
    sp.add_argument("expr")
    sp = sub.add_parser("pfree", parents=[common], help="strict P-freeness (and bounded modulo-B search)")
    sp.add_argument("expr")
    sp.add_argument("--modulo-b", action="store_true",
                    help="also search for an equivalent strictly P-free blocking form")
    sp = sub.add_parser("member", parents=[common], help="universe membership")
    sp.add_argument("expr")
    sp = sub.add_parser("strong", parents=[common], help="Left/Right strength modulo B")
    sp.add_argument("expr")
    sp = sub.add_parser("cmp", parents=[common], help="compare two expressions")
    sp.add_argument("g")
    sp.add_argument("h")
    sp = sub.add_parser("invertible", parents=[common], help="invertibility modulo B")
    sp.add_argument("expr")
    sp = sub.add_parser("enumerate", parents=[common], help="catalog of forms within bounds")
    sp.add_argument("--filter", action="append", default=[], metavar="NAME",
                    help="p_free, in_b, in_e, in_d, outcome=<l|n|p|r>, left_end, right_end, end")
    sp.add_argument("--allow-tombstones", action="store_true")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=SUITE_CHOICES)
    sp.add_argument("--inject", action="append", default=[], metavar="EXPR",
                    help="append this expression to the checked population (negative controls)")
    sp.add_argument("--unary-cap", type=int, default=20000)
    sp.add_argument("--pair-cap", type=int, default=350)
    sp.add_argument("--invert-cap", type=int, default=1500)
    sp.add_argument("--seed", type=int, default=20090)
    return p


def _client(server: Optional[str]):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _call(client, path: str, payload: dict) -> dict:
    r = client.post(path, json=payload)
    if r.status_code != 200:
        try:
            detail = r.json().get("detail", r.text)
        except Exception:
            detail = r.text
        if isinstance(detail, dict) and detail.get("error") == "parse":
            sys.stderr.write(f"parse error: {detail['message']} at position {detail['position']}\n")
        else:
            sys.stderr.write(f"error: {detail}\n")
        raise SystemExit(USAGE_ERROR)
    return r.json()


def _emit(args, command: str, config: dict, result: dict, text_lines, t0: float) -> None:
    if args.format == "structured":
        doc = {
            "command": command,
            "config": config,
            "result": result,
            "elapsed_seconds": round(time.monotonic() - t0, 3),
        }
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    t0 = time.monotonic()
    client = _client(args.server)
    cfg = {
        "universe": args.universe,
        "max_birthday": args.max_birthday,
        "max_width": args.max_width,
        "jobs": jobs,
    }
    cmd = args.command

    if cmd == "outcome":
        res = _call(client, "/outcome", {"expr": args.expr})
        _emit(args, cmd, cfg | {"expr": args.expr}, res, [res["outcome"]], t0)
        return 0

    if cmd == "tp":
        res = _call(client, "/tp", {"expr": args.expr})
        line = f"ltp={res['ltp']} ntp={res['ntp']} rtp={res['rtp']}"
        _emit(args, cmd, cfg | {"expr": args.expr}, res, [line], t0)
        return 0

    if cmd == "pfree":
        res = _call(
            client,
            "/pfree",
            {
                "expr": args.expr,
                "modulo_b": args.modulo_b,
                "max_birthday": args.max_birthday,
                "max_width": args.max_width,
            },
        )
        lines = [f"strictly_p_free={str(res['strictly_p_free']).lower()}"]
        if res["modulo_b_searched"]:
            w = res["modulo_b_witness"]
            lines.append(f"modulo_b={'unknown' if w is None else 'witness ' + w}")
        _emit(args, cmd, cfg | {"expr": args.expr}, res, lines, t0)
        return 0

    if cmd == "member":
        res = _call(client, "/member", {"expr": args.expr, "universe": args.universe})
        _emit(args, cmd, cfg | {"expr": args.expr}, res, [str(res["member"]).lower()], t0)
        return 0

    if cmd == "strong":
        res = _call(client, "/strong", {"expr": args.expr})
        line = (
            f"left_b_strong={str(res['left_b_strong']).lower()} "
            f"right_b_strong={str(res['right_b_strong']).lower()}"
        )
        _emit(args, cmd, cfg | {"expr": args.expr}, res, [line], t0)
        return 0

    if cmd == "cmp":
        res = _call(
            client,
            "/cmp",
            {
                "g": args.g,
                "h": args.h,
                "universe": args.universe,
                "max_birthday": args.max_birthday,
                "max_width": args.max_width if args.universe != "b" else 1,
            },
        )
        lines = [
            f"geq={str(res['geq']).lower()} leq={str(res['leq']).lower()} "
            f"equivalent={str(res['equivalent']).lower()} ({res['method']})"
        ]
        if res.get("distinguisher"):
            d = res["distinguisher"]
            lines.append(f"distinguisher: X={d['x']} outcomes ({d['o_gx']}, {d['o_hx']})")
        _emit(args, cmd, cfg | {"g": args.g, "h": args.h}, res, lines, t0)
        return 0 if res["geq"] else FAILURE

    if cmd == "invertible":
        res = _call(client, "/invertible", {"expr": args.expr})
        lines = [str(res["invertible"]).lower()]
        if res.get("inverse"):
            lines.append(f"inverse={res['inverse']}")
        _emit(args, cmd, cfg | {"expr": args.expr}, res, lines, t0)
        return 0

    if cmd == "enumerate":
        res = _call(
            client,
            "/enumerate",
            {
                "max_birthday": args.max_birthday,
                "max_width": args.max_width,
                "filters": args.filter,
                "allow_tombstones": args.allow_tombstones,
            },
        )
        lines = res["lines"] + [f"# {res['count']} forms"]
        _emit(args, cmd, cfg | {"filters": args.filter}, res, lines, t0)
        return 0

    if cmd == "verify":
        res = _call(
            client,
            "/verify",
            {
                "suites": [args.suite],
                "max_birthday": args.max_birthday,
                "max_width": args.max_width,
                "unary_cap": args.unary_cap,
                "pair_form_cap": args.pair_cap,
                "invert_cap": args.invert_cap,
                "seed": args.seed,
                "inject": args.inject,
                "jobs": jobs,
            },
        )
        lines = []
        for rep in res["reports"]:
            status = "PASS" if rep["passed"] else "FAIL"
            lines.append(
                f"{rep['suite']}: {status}  instances={rep['instances_checked']} "
                f"population={rep['population']['population_size']} "
                f"(catalog {rep['population']['catalog_size']}, "
                f"bday<={rep['population']['max_birthday']}, width<={rep['population']['max_width']})"
            )
            for clause, n in sorted(rep["clause_counts"].items()):
                lines.append(f"  clause {clause}: fired {n}")
            for f in rep["failures"]:
                lines.append(f"  FAIL {f['clause']}: {' , '.join(f['forms'])}  {json.dumps(f['detail'])}")
        lines.append("all suites passed" if res["passed"] else "FAILURES FOUND")
        _emit(args, cmd, cfg | {"suite": args.suite, "inject": args.inject}, res, lines, t0)
        return 0 if res["passed"] else FAILURE

    raise SystemExit(USAGE_ERROR)


if __name__ == "__main__":
    sys.exit(main())
