"""Thin CLI client for the compute service.

Every subcommand builds a request model, sends it through the service (an
in-process ASGI transport by default, or a remote server with --server), and
renders the JSON envelope as CSV or JSON.  No physics lives here; identical
configs therefore produce byte-identical output.

Exit codes: 0 success, 1 usage/config error, 2 physics-domain error
(supercritical coupling, at-pole energy), 3 I/O or transport failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

import httpx

_COLUMNS = {
    "spectrum": [
        "kappa", "beta_tilde", "sign_gamma", "n_r", "energy",
        "epsilon_tilde", "omega_sq", "residual",
        "oracle_energy", "oracle_abs_diff", "match_defect",
    ],
    "greens": ["r_pp", "r_p", "energy", "value"],
    "approx-error": [
        "r_over_a", "approximant", "inverse_r2", "abs_diff", "rel_error",
        "kappa", "beta_tilde", "n_r", "energy_closed",
        "energy_exact_centrifugal", "delta_e",
    ],
    "coulomb-limit": ["a", "kappa", "n_r", "energy", "energy_coulomb", "rel_deviation"],
    "selftest": ["check", "passed", "detail"],
}


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def render_csv(envelope: dict) -> str:
    command = envelope["command"]
    params = json.dumps(envelope["params"], sort_keys=True, separators=(",", ":"))
    rows = envelope["rows"]
    present: list[str] = []
    for col in _COLUMNS.get(command, []):
        if any(col in row for row in rows):
            present.append(col)
    if not present and rows:
        present = sorted(rows[0].keys())
    lines = [
        f"# schema_version={envelope['schema_version']}",
        f"# command={command}",
        f"# params={params}",
        ",".join(present),
    ]
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in present))
    return "\n".join(lines) + "\n"


def render_json(envelope: dict) -> str:
    return json.dumps(envelope, indent=2, sort_keys=True) + "\n"


def _open_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read config file: {exc}", 3))
    except json.JSONDecodeError as exc:
        raise SystemExit(_fail(f"config file is not valid JSON: {exc}", 1))
    if not isinstance(cfg, dict):
        raise SystemExit(_fail("config file must hold a JSON object", 1))
    return cfg


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _deep_update(base: dict, extra: dict) -> dict:
    out = dict(base)
    for key, val in extra.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_update(out[key], val)
        elif val is not None:
            out[key] = val
    return out


def _params_from_args(args) -> dict:
    params = {}
    for name in ("mu", "v0", "a", "q"):
        val = getattr(args, name, None)
        if val is not None:
            params[name] = val
    return params


def _channels_from_args(args) -> list[dict] | None:
    kappas = getattr(args, "kappa", None)
    if not kappas:
        return None
    out = []
    for k in kappas:
        ch = {"kappa": k, "beta_tilde": args.beta_tilde}
        if getattr(args, "sign_gamma", None) is not None:
            ch["sign_gamma"] = args.sign_gamma
        out.append(ch)
    return out


def _build_request(args) -> tuple[str, dict]:
    """(endpoint path, request body) for the chosen subcommand, merging the
    optional config file with flags (flags win)."""
    body = _load_config(args.config)
    cmd = args.command
    if cmd == "spectrum":
        overlay: dict = {}
        if _params_from_args(args):
            overlay["params"] = _params_from_args(args)
        channels = _channels_from_args(args)
        if channels:
            overlay["channels"] = channels
        if args.nr_max is not None:
            overlay["n_r_max"] = args.nr_max
        if args.certify:
            overlay["certify"] = True
        body = _deep_update(body, overlay)
        return "/v1/spectrum", body
    if cmd == "greens":
        overlay = {}
        if not args.coulomb and _params_from_args(args):
            overlay["params"] = _params_from_args(args)
        channels = _channels_from_args(args)
        if channels:
            overlay["channel"] = channels[0]
        if args.energy is not None:
            overlay["energy"] = args.energy
        if args.r_start is not None and args.r_stop is not None:
            overlay["r_grid"] = {
                "start": args.r_start, "stop": args.r_stop, "num": args.r_num,
            }
        if args.coulomb:
            overlay["coulomb"] = True
            overlay["ze2"] = args.ze2
            overlay["mu"] = args.mu
        body = _deep_update(body, overlay)
        return "/v1/greens", body
    if cmd == "approx-error":
        overlay = {}
        if _params_from_args(args):
            overlay["params"] = _params_from_args(args)
        if args.r_over_a_min is not None:
            overlay["r_over_a_min"] = args.r_over_a_min
        if args.r_over_a_max is not None:
            overlay["r_over_a_max"] = args.r_over_a_max
        if args.n_points is not None:
            overlay["n_points"] = args.n_points
        if args.levels:
            overlay["levels"] = True
        channels = _channels_from_args(args)
        if channels:
            overlay["channel"] = channels[0]
        if args.nr_max is not None:
            overlay["n_r_max"] = args.nr_max
        body = _deep_update(body, overlay)
        return "/v1/approx-error", body
    if cmd == "coulomb-limit":
        overlay = {}
        if args.mu is not None:
            overlay["mu"] = args.mu
        if args.ze2 is not None:
            overlay["ze2"] = args.ze2
        kappas = getattr(args, "kappa", None)
        if kappas:
            overlay["kappa"] = kappas[0]
        overlay["beta_tilde"] = args.beta_tilde
        if args.a_ladder:
            overlay["a_values"] = args.a_ladder
        if args.nr_max is not None:
            overlay["n_r_max"] = args.nr_max
        body = _deep_update(body, overlay)
        return "/v1/coulomb-limit", body
    if cmd == "selftest":
        return "/v1/selftest", body
    raise AssertionError(f"unhandled command {cmd}")


def _emit(text: str, out_path: str | None) -> int:
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            return _fail(f"cannot write output: {exc}", 3)
    else:
        sys.stdout.write(text)
    return 0


def _run_request(args) -> int:
    path, body = _build_request(args)
    try:
        with _open_client(args.server) as client:
            response = client.post(path, json=body)
    except httpx.HTTPError as exc:
        return _fail(f"transport failure: {exc}", 3)
    if response.status_code == 409:
        payload = response.json().get("error", {})
        msg = payload.get("message", "physics-domain error")
        if payload.get("nearest_pole") is not None:
            msg += f" (nearest pole at E = {_fmt(payload['nearest_pole'])})"
        return _fail(msg, 2)
    if response.status_code in (400, 422):
        return _fail(f"invalid request: {response.text}", 1)
    if response.status_code != 200:
        return _fail(f"server returned HTTP {response.status_code}: {response.text}", 3)
    envelope = response.json()
    text = render_csv(envelope) if args.format == "csv" else render_json(envelope)
    rc = _emit(text, args.out)
    if rc:
        return rc
    if args.command == "selftest":
        if not all(row["passed"] for row in envelope["rows"]):
            return 2
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--server", help="base URL of a running service (default: in-process)")
    sub.add_argument("--config", help="JSON config file; flags win on conflict")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", help="output path (default: stdout)")


def _add_potential(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--mu", type=float, help="particle mass")
    sub.add_argument("--v0", type=float, help="well depth")
    sub.add_argument("--a", type=float, help="potential range")
    sub.add_argument("--q", type=float, help="deformation parameter (>= 1)")


def _add_channel(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--kappa", type=int, action="append",
                     help="Dirac kappa; repeat for several channels")
    sub.add_argument("--beta-tilde", dest="beta_tilde", type=int, choices=(-1, 1),
                     default=1)
    sub.add_argument("--sign-gamma", dest="sign_gamma", type=int, choices=(-1, 1),
                     help="explicit sign of gamma (default: derived from kappa, beta~)")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this CLI reserves 2 for
    physics-domain failures, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dirac-hulthen",
        description="Bound-state spectra and Green's functions of the deformed "
                    "Hulthen potential (thin client of the compute service)",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="closed-form bound levels per channel")
    _add_common(sp)
    _add_potential(sp)
    _add_channel(sp)
    sp.add_argument("--nr-max", dest="nr_max", type=int)
    sp.add_argument("--certify", action="store_true",
                    help="append Numerov oracle columns and enforce 1e-6*mu agreement")

    gr = subs.add_parser("greens", help="radial Green's-function samples at fixed E")
    _add_common(gr)
    _add_potential(gr)
    _add_channel(gr)
    gr.add_argument("--energy", type=float)
    gr.add_argument("--r-start", dest="r_start", type=float)
    gr.add_argument("--r-stop", dest="r_stop", type=float)
    gr.add_argument("--r-num", dest="r_num", type=int, default=8)
    gr.add_argument("--coulomb", action="store_true", help="Coulomb-limit mode")
    gr.add_argument("--ze2", type=float, help="Ze^2 for --coulomb")

    ae = subs.add_parser("approx-error", help="centrifugal-approximation error tables")
    _add_common(ae)
    _add_potential(ae)
    _add_channel(ae)
    ae.add_argument("--r-over-a-min", dest="r_over_a_min", type=float)
    ae.add_argument("--r-over-a-max", dest="r_over_a_max", type=float)
    ae.add_argument("--n-points", dest="n_points", type=int)
    ae.add_argument("--levels", action="store_true",
                    help="per-level Delta E against the exact-centrifugal oracle")
    ae.add_argument("--nr-max", dest="nr_max", type=int)

    cl = subs.add_parser("coulomb-limit", help="a-ladder convergence to the Coulomb levels")
    _add_common(cl)
    cl.add_argument("--mu", type=float)
    cl.add_argument("--ze2", type=float)
    cl.add_argument("--kappa", type=int, action="append")
    cl.add_argument("--beta-tilde", dest="beta_tilde", type=int, choices=(-1, 1), default=1)
    cl.add_argument("--a-ladder", dest="a_ladder", type=float, nargs="+",
                    help="ranges a (in 1/mu units of length)")
    cl.add_argument("--nr-max", dest="nr_max", type=int)

    st = subs.add_parser("selftest", help="fast internal identity checks")
    _add_common(st)

    sv = subs.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8711)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if args.command == "serve":
        import uvicorn

        from .service.app import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        return _run_request(args)
    except SystemExit as exc:  # raised by config loading with an exit code
        code = exc.code
        return code if isinstance(code, int) else 1


if __name__ == "__main__":
    sys.exit(main())
