"""Command-line front end: generation, verification, rates, bounds, exact
identities, hash properties and simulation, with JSON output throughout.

Exit codes: 0 success, 1 property-check failure (with a witness in the JSON),
2 parameter/validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .designs import params_to_json, verify_bibd, verify_gdd
from .families import FAMILY_BUILDERS, build_family
from .hashprops import hashprops_report
from .mosaics import rates, verify_functional_form, verify_mosaic
from .security import (
    pa_report,
    prop41_check,
    prop42_check,
    wiretap_report,
)
from .serialize import content_hash, load_mosaic, save_mosaic
from .simkit import (
    SimConfig,
    channel_from_csv,
    constant_column_channel,
    identity_channel,
    independent_source,
    pa_roundtrip,
    random_channel,
    random_source,
    source_from_csv,
    symmetric_channel,
    wiretap_roundtrip,
)


class CliError(Exception):
    pass


def _emit(payload, out):
    text = json.dumps(payload, indent=2, default=_json_default)
    if out in (None, "-"):
        print(text)
    else:
        Path(out).write_text(text)


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    return str(obj)


def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in ("t", "l", "q", "k", "u") if getattr(args, k) is not None}


def _build(args):
    if getattr(args, "mosaic", None):
        return load_mosaic(args.mosaic)
    if not args.family:
        raise CliError("either --family with parameters or --mosaic is required")
    return build_family(args.family, **_family_params(args))


def _parse_channel(spec, v, rng):
    if spec is None:
        raise CliError("--channel is required for this command")
    if spec == "identity":
        return identity_channel(v)
    if spec == "constant":
        return constant_column_channel(v)
    if spec == "random":
        return random_channel(v, max(2, v), rng)
    if spec.startswith("symmetric"):
        eps = float(spec.split(":", 1)[1]) if ":" in spec else 0.1
        return symmetric_channel(v, eps)
    return channel_from_csv(spec)


def _parse_source(spec, v, rng):
    if spec is None:
        raise CliError("--source is required for this command")
    if spec == "random":
        return random_source(v, max(2, v), rng)
    if spec == "independent":
        return independent_source(v, max(2, v))
    return source_from_csv(spec)


def _parse_pa(spec, a):
    if spec in (None, "uniform"):
        return None
    if spec.startswith("point:"):
        idx = int(spec.split(":", 1)[1])
        p = np.zeros(a)
        p[idx] = 1.0
        return p
    vals = np.array([float(t) for t in spec.split(",")])
    if len(vals) != a or (vals < 0).any() or abs(vals.sum() - 1) > 1e-9:
        raise CliError(f"--pa must name a distribution on {a} colors")
    return vals


def _verify_members(M) -> dict:
    checks = {}
    if M.member_kind == "bibd":
        for alpha in range(M.a):
            res = verify_bibd(M.member(alpha), M.member_params.lam)
            if not res:
                return {"ok": False, "member": alpha, "reason": res.reason,
                        "witness": list(res.witness)}
        checks["members"] = f"all {M.a} verify as BIBDs"
    elif M.member_kind == "gdd":
        part = M.point_classes or M.member_params.partition
        for alpha in range(M.a):
            res = verify_gdd(M.member(alpha), part,
                             M.member_params.lambda1, M.member_params.lambda2)
            if not res:
                return {"ok": False, "member": alpha, "reason": res.reason,
                        "witness": list(res.witness)}
        checks["members"] = f"all {M.a} verify as GDDs"
    checks["ok"] = True
    return checks


def cmd_gen(args):
    M = _build(args)
    head = save_mosaic(M, args.out or "mosaic.json", members=args.members)
    print(json.dumps({"written": args.out or "mosaic.json", "header": head},
                     indent=2, default=_json_default))
    return 0


def cmd_verify(args):
    M = _build(args)
    result = {"params": _family_params(args), "v": M.v, "b": M.b, "a": M.a, "k": M.k}
    res = verify_mosaic(M)
    if not res:
        result.update({"ok": False, "stage": "mosaic", "reason": res.reason,
                       "witness": list(res.witness)})
        _emit(result, args.out)
        return 1
    members = _verify_members(M)
    result["member_check"] = members
    if not members.get("ok"):
        result["ok"] = False
        _emit(result, args.out)
        return 1
    if M._g is not None:
        ff = verify_functional_form(M)
        if not ff:
            result.update({"ok": False, "stage": "functional-form", "reason": ff.reason,
                           "witness": list(ff.witness)})
            _emit(result, args.out)
            return 1
        result["functional_form"] = "consistent"
    result["ok"] = True
    result["member_params"] = params_to_json(M.member_params) if M.member_params else None
    result["inputs_hash"] = content_hash(result)
    _emit(result, args.out)
    return 0


def cmd_rates(args):
    M = _build(args)
    rep = rates(M)
    payload = {
        "params": _family_params(args),
        "color_rate": rep.color_rate, "block_rate": rep.block_rate,
        "ratio": rep.ratio, "rho0": rep.rho0,
        "optimal": rep.optimal, "verdict": rep.verdict, "reason": rep.reason,
        "td_rate_floor": rep.td_rate_floor,
    }
    payload["inputs_hash"] = content_hash(payload)
    _emit(payload, args.out)
    return 0


def cmd_bounds(args):
    M = _build(args)
    rng = np.random.default_rng(args.seed)
    if args.scenario == "wiretap":
        channel = _parse_channel(args.channel, M.v, rng)
        rep = wiretap_report(M, channel, _parse_pa(args.pa, M.a), tol=args.tol)
    else:
        source = _parse_source(args.source, M.v, rng)
        rep = pa_report(M, source, tol=args.tol)
    payload = rep.to_json()
    payload["scenario"] = args.scenario
    payload["params"] = _family_params(args)
    payload["seed"] = args.seed
    payload["inputs_hash"] = content_hash(payload)
    _emit(payload, args.out)
    return 0 if rep.dominates else 1


def cmd_exact(args):
    M = _build(args)
    rng = np.random.default_rng(args.seed)
    member = M.member(0)
    params = M.member_params
    part = M.point_classes
    worst = 0.0
    for _ in range(args.trials):
        if args.check == "prop41":
            channel = (_parse_channel(args.channel, M.v, rng) if args.channel not in (None, "random")
                       else random_channel(M.v, int(rng.integers(2, M.v + 3)), rng))
            rep = prop41_check(member, params, channel, part)
        else:
            source = (_parse_source(args.source, M.v, rng) if args.source not in (None, "random")
                      else random_source(M.v, int(rng.integers(2, M.v + 3)), rng))
            rep = prop42_check(member, params, source, part)
        worst = max(worst, rep.discrepancy)
    ok = worst < args.tol
    payload = {
        "check": args.check, "params": _family_params(args),
        "trials": args.trials, "seed": args.seed, "tol": args.tol,
        "max_discrepancy": worst, "ok": ok,
    }
    payload["inputs_hash"] = content_hash(payload)
    _emit(payload, args.out)
    return 0 if ok else 1


def cmd_hashprops(args):
    M = _build(args)
    payload = hashprops_report(M)
    payload["params"] = _family_params(args)
    payload["inputs_hash"] = content_hash(payload)
    _emit(payload, args.out)
    return 0


def cmd_simulate(args):
    M = _build(args)
    rng = np.random.default_rng(args.seed)
    cfg = SimConfig(mosaic=M, trials=args.trials, seed=args.seed,
                    significance=args.significance)
    if args.scenario == "wiretap":
        cfg.channel = _parse_channel(args.channel, M.v, rng)
        cfg.p_a = _parse_pa(args.pa, M.a)
        res = wiretap_roundtrip(cfg)
    else:
        cfg.source = _parse_source(args.source, M.v, rng)
        res = pa_roundtrip(cfg)
    payload = res.to_json()
    payload["params"] = _family_params(args)
    payload["inputs_hash"] = content_hash(payload)
    _emit(payload, args.out)
    return 0 if res.passed else 1


def _add_family_flags(p):
    p.add_argument("--family", choices=sorted(FAMILY_BUILDERS))
    p.add_argument("--t", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--mosaic", help="mosaic JSON header written by gen")
    p.add_argument("--out", help="output path; '-' or omitted for stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="designmosaics",
                                 description="mosaics of combinatorial designs as security functions")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a mosaic and write its JSON header (+CSV members)")
    _add_family_flags(p)
    p.add_argument("--members", action="store_true", help="also write one CSV per color")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="re-check partition, member and inverse properties")
    _add_family_flags(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("rates", help="color/block rates and optimality verdict")
    _add_family_flags(p)
    p.set_defaults(fn=cmd_rates)

    p = sub.add_parser("bounds", help="exact metrics vs. theorem bounds")
    _add_family_flags(p)
    p.add_argument("--scenario", choices=("wiretap", "pa"), default="wiretap")
    p.add_argument("--channel")
    p.add_argument("--source")
    p.add_argument("--pa", help="uniform | point:IDX | comma-separated weights")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("exact", help="exact-identity checks on random channels/sources")
    _add_family_flags(p)
    p.add_argument("--check", choices=("prop41", "prop42"), required=True)
    p.add_argument("--channel", default="random")
    p.add_argument("--source", default="random")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("hashprops", help="collision spectrum and universality report")
    _add_family_flags(p)
    p.set_defaults(fn=cmd_hashprops)

    p = sub.add_parser("simulate", help="Monte Carlo roundtrips calibrated against exact laws")
    _add_family_flags(p)
    p.add_argument("--scenario", choices=("wiretap", "pa"), default="wiretap")
    p.add_argument("--channel")
    p.add_argument("--source")
    p.add_argument("--pa")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--significance", type=float, default=1e-3)
    p.set_defaults(fn=cmd_simulate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
