"""Thin command-line client for the report service.

By default the commands talk to an in-process instance of the service over
an ASGI transport, so no server needs to run; pass --url to target a live
deployment instead, or use `crgeom serve` to start one.

Exit codes: 0 all checks passed, 1 a numeric check failed, 2 bad input or a
domain error (degenerate quadruple, C-circle configuration, ...).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _fmt_c(pair) -> str:
    re, im = pair
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g} {sign} {abs(im):.12g}i"


def _render_invariants(rep: dict) -> str:
    lines = []
    if rep.get("label"):
        lines.append(f"quadruple: {rep['label']}")
    lines.append("cartan invariants")
    for key in ("123", "124", "134", "234"):
        lines.append(f"  A({key}) = {_fmt(rep['cartan'][key])}")
    lines.append("cross ratios")
    for key in ("x1", "x2", "x3"):
        lines.append(f"  {key} = {_fmt_c(rep['cross_ratios'][key])}")
    lines.append(f"identity residuals: {_fmt(rep['eqx_residuals'][0])}, {_fmt(rep['eqx_residuals'][1])}")
    lines.append(f"variety residual:   {_fmt(rep['crv_residual'])}")
    n = rep["normalized"]
    lines.append(f"normal form: a = {_fmt(n['a'])}, z = {_fmt_c(n['z'])}, t = {_fmt(n['t'])}")
    c = rep["cone_point"]
    lines.append(f"cone point:  z = {_fmt_c(c['z'])}, t = {_fmt(c['t'])}, r = {_fmt(c['r'])}")
    v = rep["variety_point"]
    lines.append(f"variety:     w1 = {_fmt_c(v['w1'])}, w2 = {_fmt_c(v['w2'])}, a = {_fmt(v['a'])}")
    pair = rep["complex_pair"]
    lines.append(f"complex pair: zeta = {_fmt_c(pair['zeta'])}, w = {_fmt_c(pair['w'])}")
    lines.append("checks")
    for name, ok in rep["checks"].items():
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {name}")
    lines.append(f"result: {'PASS' if rep['passed'] else 'FAIL'} (tol {_fmt(rep['tol'])})")
    return "\n".join(lines)


def _render_geometry(rep: dict) -> str:
    lines = [f"geometry verification  samples={rep['samples']} seed={rep['seed']} "
             f"fd_step={_fmt(rep['fd_step'])} tol={_fmt(rep['tol'])}"]
    for warning in rep["warnings"]:
        lines.append(f"warning: {warning}")
    section = None
    for row in rep["rows"]:
        if row["section"] != section:
            section = row["section"]
            lines.append(f"[{section}]")
        status = "pass" if row["passed"] else "FAIL"
        if row["expected"] is not None:
            lines.append(
                f"  [{status}] {row['name']}: expected {_fmt(row['expected'])}"
                f" exact {_fmt(row['exact'])} fd {_fmt(row['fd'])}"
                f" (residual {_fmt(row['residual'])}, tol {_fmt(row['tol'])})"
            )
        else:
            lines.append(
                f"  [{status}] {row['name']}: {_fmt(row['residual'])} vs {_fmt(row['tol'])}"
            )
    lines.append(f"result: {'PASS' if rep['passed'] else 'FAIL'}")
    return "\n".join(lines)


def _render_roundtrips(rep: dict) -> str:
    lines = [f"round trips  samples={rep['samples']} seed={rep['seed']} tol={_fmt(rep['tol'])}"]
    for warning in rep["warnings"]:
        lines.append(f"warning: {warning}")
    for row in rep["rows"]:
        status = "pass" if row["passed"] else "FAIL"
        lines.append(f"  [{status}] {row['name']}: max residual {_fmt(row['max_residual'])}")
    lines.append(f"result: {'PASS' if rep['passed'] else 'FAIL'}")
    return "\n".join(lines)


async def _post(url_base: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if url_base:
        async with httpx.AsyncClient(base_url=url_base, timeout=600.0) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
        resp = await client.post(path, json=payload)
        return resp.status_code, resp.json()


def _run(args, path: str, payload: dict, renderer) -> int:
    status, body = asyncio.run(_post(args.url, path, payload))
    if status != 200:
        if args.json:
            print(json.dumps(body, indent=2))
        else:
            name = body.get("error", "error") if isinstance(body, dict) else "error"
            detail = body.get("detail", body) if isinstance(body, dict) else body
            print(f"{name}: {detail}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(body, indent=2))
    else:
        print(renderer(body))
    return 0 if body.get("passed", False) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="crgeom",
        description="Boundary invariants of quadruples and Sasakian/Kaehler verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8, help="residual tolerance")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--samples", type=int, default=100, help="sample count")
        p.add_argument("--fd-step", type=float, default=1e-5, help="finite-difference step")
        p.add_argument("--json", action="store_true", help="emit the raw JSON report")
        p.add_argument("--url", default=None, help="base URL of a running service")

    p_inv = sub.add_parser("invariants", help="invariant report for a quadruple document")
    p_inv.add_argument("file", help="JSON document with a 'points' list of 4 entries")
    common(p_inv)

    p_geo = sub.add_parser("verify-geometry", help="curvature and identity verification sweep")
    common(p_geo)

    p_rt = sub.add_parser("roundtrips", help="bijection round-trip sweep")
    common(p_rt)

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    if args.command == "invariants":
        try:
            with open(args.file) as handle:
                document = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"DocumentError: {exc}", file=sys.stderr)
            return 2
        if not isinstance(document, dict):
            print("DocumentError: document must be a JSON object", file=sys.stderr)
            return 2
        document["tol"] = args.tol
        return _run(args, "/invariants", document, _render_invariants)

    if args.command == "verify-geometry":
        payload = {"samples": args.samples, "seed": args.seed,
                   "fd_step": args.fd_step, "tol": args.tol}
        return _run(args, "/verify-geometry", payload, _render_geometry)

    payload = {"samples": args.samples, "seed": args.seed, "tol": args.tol}
    return _run(args, "/roundtrips", payload, _render_roundtrips)


if __name__ == "__main__":
    sys.exit(main())
