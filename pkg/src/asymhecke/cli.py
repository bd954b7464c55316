"""
Command-line client for the computation service.

The CLI is a thin HTTP client: by default it mounts the FastAPI app over an
in-process ASGI transport (no socket, fully deterministic), and ``--server``
points it at a running instance instead.

Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 cutoff too small to certify anything, 4 stabilization failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import httpx

__all__ = ["main", "make_client"]

_STATUS_EXIT = {400: 2, 409: 3, 424: 4}


class _SyncASGITransport(httpx.BaseTransport):
    """Drive the ASGI app to completion per request, no socket involved."""

    def __init__(self, app: Any):
        self._inner = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        async def roundtrip() -> tuple[int, Any, bytes]:
            response = await self._inner.handle_async_request(request)
            body = await response.aread()
            return response.status_code, response.headers, body

        status, headers, body = asyncio.run(roundtrip())
        return httpx.Response(status, headers=headers, content=body)


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # In-process ASGI mount: real HTTP semantics, no socket, deterministic.
    from .service import app
    return httpx.Client(transport=_SyncASGITransport(app),
                        base_url="http://asymhecke.local")


def _call(client: httpx.Client, path: str, payload: dict[str, Any]) -> dict[str, Any]:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except Exception:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        sys.exit(_STATUS_EXIT.get(response.status_code, 2))
    return response.json()


def _emit(data: dict[str, Any], as_json: bool, text_renderer) -> None:
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        text_renderer(data)


def _render_expand(data: dict[str, Any]) -> None:
    print(f"{data['element']} in basis {data['basis']} "
          f"(cutoff {data['cutoff']}, certified lengths <= {data['exact_to']})")
    for term in data["terms"]:
        if term.get("value") is not None:
            print(f"  {term['w'] or '<e>':>14}  {term['value']}"
                  f"  (~{term['approx']:.6g})")
        else:
            print(f"  {term['w'] or '<e>':>14}  {_coeff_text(term['coeff'])}")
    if data.get("note"):
        print(f"note: {data['note']}")


def _coeff_text(coeff: dict[str, Any]) -> str:
    series = "dir" in coeff
    bits = []
    for key in sorted((k for k in coeff if k not in ("dir", "prec")),
                      key=lambda s: int(s), reverse=True):
        bits.append(f"{coeff[key]}*v^{key}")
    body = " + ".join(bits) if bits else "0"
    if series:
        body += f"  [{coeff['dir']} series, order {coeff['prec']}]"
    return body


def _render_act(data: dict[str, Any]) -> None:
    print(data["pretty"])
    if data.get("orbit"):
        orbit = ", ".join(f"{sym}: {_coeff_text(c)}"
                          for sym, c in data["orbit"].items())
        print(f"orbit view: {orbit}")
    if data.get("stabilized_at") is not None:
        print(f"stabilized at cutoff {data['stabilized_at']}")


def _render_verify(data: dict[str, Any]) -> None:
    for check in data["checks"]:
        mark = "PASS" if check["passed"] else "FAIL"
        detail = f"  ({check['detail']})" if check.get("detail") else ""
        print(f"[{mark}] {check['name']}{detail}")
    print(f"suite {data['suite']}: {'pass' if data['passed'] else 'FAIL'} "
          f"(cutoff {data['cutoff']}, precision {data['precision']})")


def _render_gamma(data: dict[str, Any]) -> None:
    print(f"nonzero gamma(x, y, z), lengths <= {data['max_length']}:")
    for e in data["entries"]:
        print(f"  gamma({e['x'] or 'e'}, {e['y'] or 'e'}, {e['z'] or 'e'}) = {e['gamma']}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=argparse.SUPPRESS,
                        help="URL of a running service (default: in-process)")
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="asymhecke",
        description="exact computations in the rank-one affine Hecke algebra "
                    "and its asymptotic companion",
        parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="expand t_w over a Hecke basis",
                              parents=[common])
    p_expand.add_argument("word")
    p_expand.add_argument("--basis", choices=("T", "C", "Cprime"), default="T")
    p_expand.add_argument("--L", type=int, default=16, dest="cutoff")
    p_expand.add_argument("--N", type=int, default=32, dest="precision")
    p_expand.add_argument("--q", type=int, default=None)

    p_act = sub.add_parser("act", help="convolve an element with a plane function",
                           parents=[common])
    group = p_act.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", help="asymptotic-basis word (may be empty)")
    group.add_argument("--T", help="standard-basis word")
    p_act.add_argument("--on", required=True, help="plane symbol, e.g. phibar(0)")
    p_act.add_argument("--L", type=int, default=20, dest="cutoff")
    p_act.add_argument("--N", type=int, default=2, dest="floor_depth",
                       help="certification depth in v-exponents")

    p_verify = sub.add_parser("verify", help="replay a family of identities",
                              parents=[common])
    p_verify.add_argument("suite", choices=("images", "expansion-signs",
                                            "plane", "gamma", "all"))
    p_verify.add_argument("--L", type=int, default=16, dest="cutoff")
    p_verify.add_argument("--N", type=int, default=32, dest="precision")

    p_gamma = sub.add_parser("gamma-table", help="print nonzero structure constants",
                             parents=[common])
    p_gamma.add_argument("--L", type=int, default=4, dest="max_length")

    p_sch = sub.add_parser("schwartz", help="numeric decay check at fixed q",
                           parents=[common])
    p_sch.add_argument("word")
    p_sch.add_argument("--q", type=int, default=3, dest="q0")
    p_sch.add_argument("--n-max", type=int, default=30)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "format", "text") == "json"
    with make_client(getattr(args, "server", None)) as client:
        if args.command == "expand":
            data = _call(client, "/expand", {
                "word": args.word, "basis": args.basis,
                "cutoff": args.cutoff, "precision": args.precision,
                "q": args.q})
            _emit(data, as_json, _render_expand)
        elif args.command == "act":
            payload: dict[str, Any] = {"on": args.on, "cutoff": args.cutoff,
                                       "floor": -abs(args.floor_depth)}
            if args.t is not None:
                payload["t"] = args.t
            else:
                payload["T"] = args.T
            data = _call(client, "/act", payload)
            _emit(data, as_json, _render_act)
        elif args.command == "verify":
            data = _call(client, "/verify", {
                "suite": args.suite, "cutoff": args.cutoff,
                "precision": args.precision})
            _emit(data, as_json, _render_verify)
            if not data["passed"]:
                return 1
        elif args.command == "gamma-table":
            data = _call(client, "/gamma-table", {"max_length": args.max_length})
            _emit(data, as_json, _render_gamma)
        elif args.command == "schwartz":
            data = _call(client, "/schwartz", {
                "word": args.word, "q0": args.q0, "n_max": args.n_max})
            _emit(data, as_json, lambda d: print(json.dumps(d, indent=2)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
