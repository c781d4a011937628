"""Command-line front end.

Subcommands: premium | simulate | price-option | fx-check | dividend | verify.
Exit codes: 0 all checks pass, 1 a check failed, 2 usage or spec error.
Randomized commands print the seed used; an omitted seed defaults to a fixed
constant so published results reproduce.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path as FsPath

import numpy as np

from . import premium as prem
from .errors import GlevyError
from .options import (
    OptionSpec,
    bs_call_price,
    brownian_exact_call,
    gamma_exact_call,
    mc_call_price,
    poisson_exact_call,
)
from .exponents import Brownian, Gamma, Poisson
from .pricing import (
    GlmSpec,
    expected_asset_price,
    fx_value,
    gordon_valuation,
    inverse_fx_value,
    load_spec,
)
from .sampling import Rng, mc_expectation, simulate_path

DEFAULT_SEED = 20120229  # fixed so published runs reproduce


def _fmt(x: float) -> str:
    """17 significant digits: round-trips every binary64 value through text."""
    return format(float(x), ".17g")


def _parse_grid(text: str) -> np.ndarray:
    try:
        a, b, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise SystemExit(2)
    return np.arange(a, b + 0.5 * step, step)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def cmd_premium(args) -> int:
    spec = load_spec(args.spec)
    lams = _parse_grid(args.grid)
    sigs = _parse_grid(args.grid)
    rows = prem.premium_surface(spec.model, lams, sigs)
    _write_csv(args.out, ["lambda", "sigma", "R", "R_tilde"], rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_simulate(args) -> int:
    spec = load_spec(args.spec)
    print(f"seed={args.seed}")
    out = FsPath(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.paths):
        p = simulate_path(spec.model, args.horizon, args.steps, Rng(args.seed, i))
        _write_csv(out / f"path_{i:04d}.csv", ["t", "x"],
                   list(zip(p.times.tolist(), p.values.tolist())))
    # Martingale summary: MC mean of the compensated exponential at sig.
    sig, model = spec.sig, spec.model
    comp = model.psi(sig)

    def payoff(path):
        return math.exp(sig * path.values[-1] - args.horizon * comp)

    res = mc_expectation(payoff, model, args.horizon, 1, args.n, Rng(args.seed, 10_000))
    summary = {"estimate": res.estimate, "stderr": res.stderr, "n": res.n,
               "seed": args.seed}
    (out / "mc_summary.json").write_text(json.dumps(summary, indent=2))
    print(json.dumps(summary))
    return 0 if abs(res.estimate - 1.0) < 4.0 * res.stderr else 1


def cmd_price_option(args) -> int:
    spec = load_spec(args.spec)
    opt = OptionSpec(strike=args.strike, expiry=args.expiry)
    rows = []
    params = json.dumps(spec.model.params())
    if args.method == "mc":
        print(f"seed={args.seed}")
        res = mc_call_price(spec, opt, args.n, Rng(args.seed))
        rows.append((spec.model.family, params, args.strike, args.expiry,
                     res.estimate, res.stderr, "mc"))
    else:
        if isinstance(spec.model, Poisson):
            price = poisson_exact_call(spec, opt)
        elif isinstance(spec.model, Gamma):
            price = gamma_exact_call(spec, opt)
        elif isinstance(spec.model, Brownian):
            price = brownian_exact_call(spec, opt)
        else:
            print(f"no exact pricer for family {spec.model.family}", file=sys.stderr)
            return 2
        rows.append((spec.model.family, params, args.strike, args.expiry,
                     price, 0.0, "exact"))
    _write_csv(args.out, ["family", "params", "K", "T", "price", "stderr", "method"], rows)
    print(f"price={_fmt(rows[0][4])}")
    return 0


def cmd_fx_check(args) -> int:
    spec = load_spec(args.spec)
    r_tilde = prem.inverse_fx_premium(spec.model, spec.lam, spec.sig)
    verdict = {
        "R": spec.premium,
        "R_tilde": r_tilde,
        "sigma_exceeds_lambda": spec.sig > spec.lam,
        "siegel_ok": (r_tilde > 0) == (spec.sig > spec.lam),
    }
    if spec.f is not None:
        x, t = 0.7, 1.3
        product = float(fx_value(spec, x, t) * inverse_fx_value(spec, x, t))
        verdict["fx_product"] = product
        verdict["siegel_ok"] = verdict["siegel_ok"] and abs(product - 1.0) < 1e-10
    print(json.dumps(verdict))
    return 0 if verdict["siegel_ok"] else 1


def cmd_dividend(args) -> int:
    spec = load_spec(args.spec)
    s0_implied, delta = gordon_valuation(spec)
    print(json.dumps({"s0_implied": s0_implied, "delta": delta,
                      "d0_check": delta * s0_implied}))
    return 0


def cmd_verify(args) -> int:
    """Run the invariant suite for one spec; exit 0 iff everything passes."""
    spec = load_spec(args.spec)
    model, lam, sig = spec.model, spec.lam, spec.sig
    checks = {}
    checks["psi_zero"] = abs(model.psi(0.0)) == 0.0
    checks["premium_positive"] = spec.premium > 0.0
    g = prem.premium_gradient(model, lam, sig)
    checks["premium_increasing"] = g[0] > 0.0 and g[1] > 0.0
    checks["identity_residual"] = abs(prem.premium_identity_check(model, lam, sig)) < 1e-12
    r_tilde = prem.inverse_fx_premium(model, lam, sig)
    checks["siegel_sign"] = (r_tilde > 0.0) == (sig > lam) or (sig == lam and abs(r_tilde) < 1e-12)
    checks["curvature_recovery"] = (
        abs(prem.curvature_from_premium(model, sig) - model.psi_second(sig))
        <= 1e-3 * abs(model.psi_second(sig)))
    checks["expected_price"] = (
        abs(expected_asset_price(spec, 1.0) - spec.s0 * math.exp(spec.r + spec.premium))
        < 1e-12 * spec.s0)
    ok = all(checks.values())
    print(json.dumps({"spec": str(args.spec), "checks": checks, "pass": ok}))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glevy", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("premium", help="write the premium surface CSV")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--grid", default="0.1:0.5:0.1", help='"a:b:step"')
    p.set_defaults(fn=cmd_premium)

    p = sub.add_parser("simulate", help="simulate paths, write CSV + MC summary")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n", type=int, default=20_000)
    p.add_argument("--paths", type=int, default=3)
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=250)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("price-option", help="price a European call")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strike", type=float, required=True)
    p.add_argument("--expiry", type=float, default=1.0)
    p.add_argument("--method", choices=["mc", "exact"], default="mc")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n", type=int, default=100_000)
    p.set_defaults(fn=cmd_price_option)

    p = sub.add_parser("fx-check", help="Siegel sign rule and FX reciprocity")
    p.add_argument("--spec", required=True)
    p.set_defaults(fn=cmd_fx_check)

    p = sub.add_parser("dividend", help="Gordon-growth valuation")
    p.add_argument("--spec", required=True)
    p.set_defaults(fn=cmd_dividend)

    p = sub.add_parser("verify", help="run the invariant suite for a spec")
    p.add_argument("--spec", required=True)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (GlevyError, FileNotFoundError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
