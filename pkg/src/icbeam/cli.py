"""Thin command-line client for the sweep service.

The CLI holds no simulation logic: it builds a request, sends it to the
FastAPI app (in-process by default, over HTTP with ``--server``) and
writes the returned CSV.  Exit code 0 on success, 1 with a diagnostic on
stderr otherwise.

The worker count comes from ``--parallel`` when given, else from the
``ICBEAM_PARALLEL`` environment variable, else 1.
"""

from __future__ import annotations

import argparse
import os
import sys

import httpx

PARALLEL_ENV_VAR = "ICBEAM_PARALLEL"


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    # no server given: drive the bundled ASGI app in-process through the
    # same HTTP surface (starlette's sync-over-ASGI client)
    import warnings

    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=".*starlette.testclient.*")
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(PARALLEL_ENV_VAR, "1")))
    except ValueError:
        return 1


def _request(client: httpx.Client, method: str, url: str, **kwargs):
    response = client.request(method, url, **kwargs)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise RuntimeError(f"{url} failed ({response.status_code}): {detail}")
    return response.json()


def _cmd_simulate(args) -> int:
    if (args.config is None) == (args.preset is None):
        return _fail("provide exactly one of --config or --preset")
    payload: dict = {"workers": args.parallel}
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.config is not None:
        try:
            with open(args.config, "r") as fh:
                payload["config_text"] = fh.read()
        except OSError as exc:
            return _fail(f"cannot read config: {exc}")
    else:
        payload["preset"] = args.preset
    try:
        with _client(args.server) as client:
            body = _request(client, "POST", "/sweeps/run", json=payload)
    except (RuntimeError, httpx.HTTPError) as exc:
        return _fail(str(exc))
    output = args.output or body.get("output_path")
    if output:
        try:
            with open(output, "w", newline="") as fh:
                fh.write(body["csv_text"])
        except OSError as exc:
            return _fail(f"cannot write output: {exc}")
        print(f"{body['row_count']} rows -> {output}", file=sys.stderr)
    else:
        sys.stdout.write(body["csv_text"])
    return 0


def _cmd_scenario_list(args) -> int:
    try:
        with _client(args.server) as client:
            body = _request(client, "GET", "/scenarios")
    except (RuntimeError, httpx.HTTPError) as exc:
        return _fail(str(exc))
    print("families:")
    for family in body["families"]:
        print(f"  {family}")
    print("presets:")
    for preset in body["presets"]:
        print(
            f"  {preset['name']}: family={preset['family']} "
            f"links={preset['n_links']} antennas={preset['n_tx_ant']}x{preset['n_rx_ant']} "
            f"snr={preset['snr_grid_db'][0]:g}..{preset['snr_grid_db'][-1]:g} dB "
            f"trials={preset['trials']}"
        )
    return 0


def _cmd_scenario_show(args) -> int:
    try:
        with _client(args.server) as client:
            body = _request(client, "GET", f"/scenarios/{args.name}")
    except (RuntimeError, httpx.HTTPError) as exc:
        return _fail(str(exc))
    sys.stdout.write(body["config_text"])
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icbeam",
        description="Monte-Carlo sweeps of coordinated beamforming on the MIMO interference channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a sweep and write its CSV")
    sim.add_argument("--config", help="path to a sweep config document")
    sim.add_argument("--preset", help="name of a bundled preset (see 'scenario list')")
    sim.add_argument("--output", help="CSV destination (default: config output_path, else stdout)")
    sim.add_argument("--seed", type=int, help="override the config base_seed")
    sim.add_argument(
        "--parallel",
        type=int,
        default=_default_workers(),
        help=f"worker processes (default: ${PARALLEL_ENV_VAR} or 1)",
    )
    sim.add_argument("--server", help="run against a remote service instead of in-process")
    sim.set_defaults(func=_cmd_simulate)

    scen = sub.add_parser("scenario", help="inspect scenario families and presets")
    scen_sub = scen.add_subparsers(dest="action", required=True)
    scen_list = scen_sub.add_parser("list", help="list families and presets")
    scen_list.add_argument("--server")
    scen_list.set_defaults(func=_cmd_scenario_list)
    scen_show = scen_sub.add_parser("show", help="print a preset as a config document")
    scen_show.add_argument("name")
    scen_show.add_argument("--server")
    scen_show.set_defaults(func=_cmd_scenario_show)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
