"""Thin command-line client for the sphatlas service.

Commands talk HTTP to a running server when --server is given; otherwise the
service app is mounted in-process, so every command also works offline.
Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

WORD_TRUNCATE = 24


def _client(server: str | None):
    import httpx

    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        # this environment's starlette warns about its httpx pin on import
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _fail(msg: str, code: int = 2) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _format_word(word, full: bool) -> str:
    text = " ".join(str(i) for i in word)
    if not full and len(word) > WORD_TRUNCATE:
        return " ".join(str(i) for i in word[:WORD_TRUNCATE]) + f" ... ({len(word)} letters)"
    return text


def cmd_atlas(args) -> int:
    with _client(args.server) as client:
        resp = client.get(
            f"/atlas/{args.group}", params={"expand_central": args.expand_central}
        )
        if resp.status_code != 200:
            return _fail(resp.json().get("detail", resp.text))
        records = resp.json()
    if args.format == "json":
        print(json.dumps(records, indent=2))
        return 0
    width = max((len(r["label"]) for r in records), default=5)
    print(f"{'label':<{width}}  {'kind':<10}  {'dim':>4}  z-word")
    for r in records:
        print(
            f"{r['label']:<{width}}  {r['kind']:<10}  {r['dim']:>4}  "
            f"{_format_word(r['z_word'], args.full)}"
        )
    return 0


def cmd_verify(args) -> int:
    if not args.all and not args.group:
        return _fail("select --group or --all")
    payload = {
        "groups": args.group or None,
        "all": args.all,
        "max_rank": args.max_rank,
        "seed": args.seed,
        "samples": args.samples,
        "jobs": args.jobs,
    }
    with _client(args.server) as client:
        resp = client.post("/verify", json=payload)
        if resp.status_code != 200:
            return _fail(resp.json().get("detail", resp.text))
        body = resp.json()
    for report in body["reports"]:
        for check in report["checks"]:
            if check["status"] in ("fail", "warning") or args.verbose:
                print(
                    f"[{check['status'].upper():7}] {report['group']} {report['label']}: "
                    f"{check['name']} lhs={check['lhs']} rhs={check['rhs']}"
                )
    print(
        f"verified {body['passed'] + body['failed']} reports: "
        f"{body['passed']} passed, {body['failed']} failed, {body['warnings']} warnings"
    )
    return 0 if body["ok"] else 1


def _load_element(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_bruhat(args) -> int:
    try:
        payload = _load_element(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read element file: {exc}")
    with _client(args.server) as client:
        resp = client.post("/bruhat", json=payload)
        if resp.status_code != 200:
            return _fail(resp.json().get("detail", resp.text))
        print(json.dumps(resp.json(), indent=2))
    return 0


def cmd_spherical(args) -> int:
    try:
        element = _load_element(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read element file: {exc}")
    payload = {"element": element, "seed": args.seed, "samples": args.samples}
    with _client(args.server) as client:
        resp = client.post("/spherical", json=payload)
        if resp.status_code != 200:
            return _fail(resp.json().get("detail", resp.text))
        print(json.dumps(resp.json(), indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("sphatlas.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sphatlas")
    parser.add_argument("--server", default=None, help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atlas", help="list the spherical class catalog of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--expand-central", action="store_true")
    p.add_argument("--full", action="store_true", help="do not truncate long words")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--group", action="append", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None,
                   help="also cross-check the randomized z estimate with this many samples")
    p.add_argument("--jobs", type=int, default=int(os.environ.get("SPHATLAS_JOBS", "1")))
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bruhat", help="Bruhat cell of a matrix from a JSON element file")
    p.add_argument("input")
    p.set_defaults(func=cmd_bruhat)

    p = sub.add_parser("spherical", help="sphericity test for a matrix from a JSON element file")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(func=cmd_spherical)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
