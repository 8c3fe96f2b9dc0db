"""Command line front end.

Subcommands: sweep (grid of optimized bounds to CSV), bound (all bounds at
one operating point), verify (exhaustive decodability check), optimize (cache
split search).  Exit status: 0 on success, 1 when verification or an
invariant gate fails, 2 on configuration errors.
"""

import argparse
import json
import sys

from .experiment import (
    ConfigError,
    baseline_ignorant,
    load_config_file,
    point_config,
    run_sweep,
    spec_from_config,
)
from .power import closed_form_upper, lower_bound, optimize_allocation
from .verifier import verify_all

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrcache",
        description="Coded caching with correlated content over a degraded "
        "Gaussian broadcast channel: bounds, verification and sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument(
            "--variant",
            choices=["corrected", "as-printed"],
            default=None,
            help="which min-power product to evaluate",
        )
        p.add_argument(
            "--max-demands",
            type=int,
            default=None,
            help="sample this many demand vectors instead of enumerating",
        )
        p.add_argument(
            "--json", action="store_true", help="machine readable output"
        )

    p_sweep = sub.add_parser("sweep", help="optimize and bound along a grid")
    common(p_sweep)
    p_sweep.add_argument(
        "--mode", choices=["fig1", "fig2", "memory"], required=True
    )
    p_sweep.add_argument("--out", help="CSV output path")
    p_sweep.add_argument("--grid-steps", type=int, default=None)

    for name, helptext in [
        ("bound", "compute bounds at the configured operating point"),
        ("verify", "exhaustively verify decodability"),
        ("optimize", "search for the best cache split"),
    ]:
        p = sub.add_parser(name, help=helptext)
        common(p)
    return parser


def _point_setup(args):
    doc = load_config_file(args.config)
    config = point_config(doc)
    optimizer = doc.get("optimizer", {})
    if not isinstance(optimizer, dict):
        raise ConfigError("optimizer section must be an object")
    method = str(optimizer.get("method", "local"))
    resolution = int(optimizer.get("resolution", 20))
    if method not in ("grid", "local"):
        raise ConfigError(f"unknown optimizer method {method!r}")
    variant = args.variant or str(doc.get("variant", "corrected"))
    if variant not in ("corrected", "as-printed"):
        raise ConfigError(f"unknown variant {variant!r}")
    max_demands = (
        args.max_demands if args.max_demands is not None else doc.get("max_demands")
    )
    return config, method, resolution, variant == "as-printed", max_demands


def _cmd_sweep(args) -> int:
    doc = load_config_file(args.config)
    spec = spec_from_config(
        doc,
        mode=args.mode,
        grid_steps=args.grid_steps,
        variant=args.variant,
        max_demands=args.max_demands,
    )
    result = run_sweep(spec, out_csv=args.out)
    if args.json:
        payload = {
            "mode": args.mode,
            "gates": result.gates,
            "rows": [
                {
                    "sweep_var": r.sweep_var,
                    "value": r.value,
                    "p_ub": r.p_ub,
                    "p_ub_closed": r.p_ub_closed,
                    "p_lb": r.p_lb,
                    "p_baseline": r.p_baseline,
                    "pi": list(r.pi),
                    "worst_demand": list(r.worst_demand),
                    "verified": r.verified,
                    "degenerate_sublibraries": list(r.degenerate),
                    "closed_form_gap": r.closed_form_gap,
                }
                for r in result.rows
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for r in result.rows:
            flag = " degenerate-coefficient" if r.degenerate else ""
            print(
                f"{r.sweep_var}={r.value:g}: p_ub={r.p_ub:.6g} "
                f"p_ub_closed={r.p_ub_closed:.6g} (gap {r.closed_form_gap:+.3g}) "
                f"p_lb={r.p_lb:.6g} baseline={r.p_baseline:.6g} "
                f"verified={'pass' if r.verified else 'fail'}{flag}"
            )
        for gate, okay in result.gates.items():
            print(f"gate {gate}: {'pass' if okay else 'fail'}")
        if args.out:
            print(f"wrote {args.out}")
    return result.exit_code


def _cmd_bound(args) -> int:
    config, method, resolution, as_printed, max_demands = _point_setup(args)
    alloc, ub = optimize_allocation(
        config,
        method=method,
        resolution=resolution,
        max_demands=max_demands,
        as_printed=as_printed,
    )
    closed = closed_form_upper(
        config, alloc, constructive=ub, max_demands=max_demands
    )
    payload = {
        "p_ub": ub.total,
        "p_ub_closed": closed.value,
        "closed_form_gap": closed.difference,
        "degenerate_sublibraries": list(closed.degenerate),
        "p_lb": lower_bound(config, as_printed=as_printed),
        "p_baseline": baseline_ignorant(config, as_printed=as_printed),
        "pi": list(alloc.pi),
        "worst_demand": list(ub.worst_demand.demands),
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"upper bound (constructive): {payload['p_ub']:.6g}")
        print(
            f"upper bound (closed form):  {payload['p_ub_closed']:.6g} "
            f"(gap {payload['closed_form_gap']:+.3g})"
        )
        if closed.degenerate:
            subs = ", ".join(str(i) for i in closed.degenerate)
            print(f"  degenerate-coefficient at sublibraries {subs}")
        print(f"lower bound:                {payload['p_lb']:.6g}")
        print(f"baseline (ignorant):        {payload['p_baseline']:.6g}")
        print(f"cache split: {[round(p, 6) for p in alloc.pi]}")
        wd = "-".join(str(d) for d in ub.worst_demand.demands)
        print(f"worst demand: {wd}")
    return 0


def _cmd_verify(args) -> int:
    config, method, resolution, as_printed, max_demands = _point_setup(args)
    alloc, _ub = optimize_allocation(
        config,
        method=method,
        resolution=resolution,
        max_demands=max_demands,
        as_printed=as_printed,
    )
    report = verify_all(config, alloc, max_demands=max_demands)
    if args.json:
        payload = {
            "checked": report.checked,
            "users": report.users,
            "failures": [f.describe() for f in report.failures],
            "ok": report.ok,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in report.format_lines():
            print(line)
    return 0 if report.ok else 1


def _cmd_optimize(args) -> int:
    config, method, resolution, as_printed, max_demands = _point_setup(args)
    alloc, report = optimize_allocation(
        config,
        method=method,
        resolution=resolution,
        max_demands=max_demands,
        as_printed=as_printed,
    )
    if args.json:
        payload = {
            "pi": list(alloc.pi),
            "p_ub": report.total,
            "worst_demand": list(report.worst_demand.demands),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"cache split: {[round(p, 6) for p in alloc.pi]}")
        print(f"peak power:  {report.total:.6g}")
        wd = "-".join(str(d) for d in report.worst_demand.demands)
        print(f"worst demand: {wd}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "sweep": _cmd_sweep,
        "bound": _cmd_bound,
        "verify": _cmd_verify,
        "optimize": _cmd_optimize,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
