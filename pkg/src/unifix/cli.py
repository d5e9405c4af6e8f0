"""Command-line front end: ``unifix check | solve | demo``.

Exit codes: 0 success, 1 the condition failed or the solve did not certify,
2 configuration or usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import scenarios
from .checker import Box, ContractionParams, scan, uniqueness_applicable
from .multifunction import BuiltinSpec, ConfigError, Multifunction, make_builtin
from .solver import (FIXED_POINT_FOUND, SolveOptions, report_json, solve, uniqueness_probe,
                     verify_geometric_decay, verify_tail_bound)
from .space import InputError, Point, PseudometricFamily, as_point

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ScenarioError(ConfigError):
    def __init__(self, msg: str, key: str | None = None):
        super().__init__(msg)
        self.key = key


@dataclass
class ScenarioConfig:
    family: PseudometricFamily
    map_spec: BuiltinSpec
    F: Multifunction
    params: ContractionParams
    x0: Point
    opts: SolveOptions
    region: Box
    budget: int
    seed: int
    k: Optional[List[float]] = None
    starts: Optional[List[Point]] = None

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        for key in ("space", "map", "params", "solve", "scan"):
            if key not in d:
                raise ScenarioError(f"missing section '{key}'", key)
        try:
            space = d["space"]
            dim = int(space["dimension"])
            family = PseudometricFamily.from_specs(dim, space["family"])
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError(f"space: {e}", "space") from None
        try:
            spec = BuiltinSpec.from_dict(d["map"], dim)
            F = make_builtin(spec)
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"map: {e}", "map") from None
        coeffs = d["params"].get("coefficients", [])
        if len(coeffs) != len(family):
            raise ScenarioError(
                f"params: {len(coeffs)} coefficient triple(s) for {len(family)} pseudometric(s)", "coefficients")
        try:
            params = ContractionParams(d["params"].get("r", 1), tuple(tuple(t) for t in coeffs))
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"params: {e}", "params") from None
        s = d["solve"]
        try:
            x0 = as_point(s["x0"], dim)
            opts = SolveOptions(float(s.get("tolerance", 1e-8)), int(s.get("max_iterations", 1000)),
                                None if s.get("divergence_guard") is None else float(s["divergence_guard"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError(f"solve: {e}", "solve") from None
        sc = d["scan"]
        try:
            region = Box(as_point(sc["lower"], dim), as_point(sc["upper"], dim))
            budget, seed = int(sc.get("budget", 10000)), int(sc.get("seed", 0))
            if budget < 1:
                raise InputError("budget must be >= 1")
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError(f"scan: {e}", "scan") from None
        k = d.get("verify", {}).get("k")
        if k is not None:
            k = [float(v) for v in (k if isinstance(k, list) else [k] * len(family))]
            if len(k) != len(family):
                raise ScenarioError("verify.k needs one rate per pseudometric", "k")
        starts = [as_point(p, dim) for p in d["starts"]] if "starts" in d else None
        return cls(family, spec, F, params, x0, opts, region, budget, seed, k, starts)

    def rates(self) -> List[float]:
        return self.k if self.k is not None else self.params.k()


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(d: dict, overrides: Sequence[Tuple[str, object]]) -> dict:
    for path, value in overrides:
        node = d
        *parents, leaf = path.split(".")
        for p in parents:
            node = node.setdefault(p, {})
            if not isinstance(node, dict):
                raise ScenarioError(f"override {path}: '{p}' is not a section", p)
        node[leaf] = value
    return d


def _split_overrides(extra: Sequence[str]) -> List[Tuple[str, object]]:
    out, it = [], iter(extra)
    for tok in it:
        m = re.fullmatch(r"--([A-Za-z_][\w.-]*\.[\w.-]+)(?:=(.*))?", tok)
        if not m:
            raise ScenarioError(f"unrecognized argument {tok!r}")
        val = m.group(2)
        if val is None:
            val = next(it, None)
            if val is None:
                raise ScenarioError(f"override {tok} needs a value")
        out.append((m.group(1), _parse_value(val)))
    return out


def _line_of(text: str, key: str | None) -> int:
    if key:
        for n, line in enumerate(text.splitlines(), 1):
            if f'"{key}"' in line:
                return n
    return 1


def load_config(args) -> ScenarioConfig:
    """Resolve --config/--scenario plus overrides into a validated config.

    Errors come back as ScenarioError with a ``source:line:`` prefix.
    """
    if args.config and args.scenario:
        raise ScenarioError("give either --config or --scenario, not both")
    if args.config:
        source = args.config
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise ScenarioError(f"{source}:0: cannot read config: {e.strerror}") from None
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"{source}:{e.lineno}: invalid JSON: {e.msg}") from None
    elif args.scenario:
        if args.scenario not in scenarios.SCENARIOS:
            raise ScenarioError(f"unknown scenario {args.scenario!r}; available: {', '.join(scenarios.SCENARIOS)}")
        source = f"<scenario {args.scenario}>"
        d = scenarios.get(args.scenario)
        text = json.dumps(d, indent=2)
    else:
        raise ScenarioError("one of --config or --scenario is required")
    if not isinstance(d, dict):
        raise ScenarioError(f"{source}:1: top level must be a JSON object")
    try:
        apply_overrides(d, args.overrides)
        if args.seed is not None:
            apply_overrides(d, [("scan.seed", args.seed)])
        if args.k is not None:
            apply_overrides(d, [("verify.k", [float(v) for v in args.k.split(",")])])
        return ScenarioConfig.from_dict(d)
    except ScenarioError as e:
        raise ScenarioError(f"{source}:{_line_of(text, e.key)}: {e}", e.key) from None
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{source}:1: {e}") from None


def _write(out: Path, name: str, content: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    p = out / name
    p.write_text(content, encoding="utf-8", newline="\n")
    return p


def cmd_check(cfg: ScenarioConfig, out: Path) -> int:
    report = scan(cfg.F, cfg.params, cfg.family, cfg.region, cfg.budget, cfg.seed)
    p = _write(out, "condition_report.json", report.to_json())
    state = "holds on sample" if report.holds_on_sample else f"{len(report.violations)} violation(s)"
    print(f"{cfg.F.descriptor}: {report.pairs_checked} pairs checked, {state}; report at {p}")
    return EXIT_OK if report.holds_on_sample else EXIT_FAIL


def run_solve(cfg: ScenarioConfig):
    trace, report = solve(cfg.F, cfg.family, cfg.x0, cfg.opts)
    k = cfg.rates()
    if len(trace) >= 2:
        decay = verify_geometric_decay(trace, k)
        tail = verify_tail_bound(trace, cfg.family, k)
    else:
        decay = tail = None
    ok = (report.status == FIXED_POINT_FOUND
          and (decay is None or decay.passed) and (tail is None or tail.passed))
    return trace, report, decay, tail, ok


def cmd_solve(cfg: ScenarioConfig, out: Path) -> int:
    trace, report, decay, tail, ok = run_solve(cfg)
    _write(out, "trace.csv", trace.to_csv())
    extra = {
        "map": cfg.F.descriptor,
        "k": cfg.rates(),
        "geometric_decay": decay.to_dict() if decay is not None else None,
        "tail_bound": tail.to_dict() if tail is not None else None,
        "certified": ok,
    }
    p = _write(out, "solve_report.json", report_json(report, extra))
    print(f"{cfg.F.descriptor}: {report.status} after {report.iterations_used} iteration(s), "
          f"x* = {list(report.final_point)}, residual = {max(report.final_residual):.3g}; report at {p}")
    if not ok:
        print(f"solve not certified: status={report.status}, decay={bool(decay) if decay is not None else 'n/a'}, "
              f"tail={bool(tail) if tail is not None else 'n/a'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _fmt_rate(v) -> str:
    return "-" if v is None else f"{v:.4f}"


def cmd_demo(name: str) -> int:
    if name not in scenarios.SCENARIOS:
        print(f"unknown demo {name!r}; available: {', '.join(scenarios.SCENARIOS)}", file=sys.stderr)
        return EXIT_CONFIG
    cfg = ScenarioConfig.from_dict(scenarios.get(name))
    cond = scan(cfg.F, cfg.params, cfg.family, cfg.region, cfg.budget, cfg.seed)
    cond_txt = "holds on sample" if cond.holds_on_sample else f"violated ({len(cond.violations)} hits)"
    print(f"demo {name}: {cfg.F.descriptor}, (a, b, c) = {list(cfg.params.coefficients)}, r = {cfg.params.r}")
    print(f"condition on [{cfg.region.lower}, {cfg.region.upper}]: {cond_txt}")
    starts = cfg.starts or [cfg.x0]
    print(f"{'x0':>12} {'status':>22} {'iters':>6} {'residual':>11} {'rate':>8} {'k':>6} {'decay':>6} {'tail':>6}")
    ok = True
    for x0 in starts:
        cfg.x0 = x0
        _, report, decay, tail, good = run_solve(cfg)
        ok &= good
        print(f"{str(list(x0)):>12} {report.status:>22} {report.iterations_used:>6} "
              f"{max(report.final_residual):>11.3e} {_fmt_rate(report.rate_estimates[0]):>8} "
              f"{cfg.rates()[0]:>6.3f} {str(bool(decay)):>6} {str(bool(tail)):>6}")
    if cfg.starts is not None:
        if uniqueness_applicable(cfg.params):
            probe = uniqueness_probe(cfg.F, cfg.family, cfg.params, cfg.starts, cfg.opts)
            print(f"limits {[list(p) for p in probe.limits]} agree within {probe.max_pair_distance:.3e} "
                  f"(threshold {probe.threshold:.3e}): {'pass' if probe.passed else 'FAIL'}")
            ok &= probe.passed
        else:
            print("uniqueness probe skipped: need a_i > c_i > 0")
            ok = False
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unifix", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("check", "solve"):
        sp = sub.add_parser(name, help=f"{name} a scenario (dotted overrides like --solve.tolerance=1e-10)")
        sp.add_argument("--config", help="scenario JSON file")
        sp.add_argument("--scenario", help=f"packaged scenario: {', '.join(scenarios.SCENARIOS)}")
        sp.add_argument("--out", default=".", help="output directory (default: .)")
        sp.add_argument("--seed", type=int, help="override scan.seed")
        sp.add_argument("--k", help="comma-separated verification rates (default b_i + c_i)")
    dp = sub.add_parser("demo", help="run a packaged scenario end to end")
    dp.add_argument("name")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args, extra = ap.parse_known_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    if args.command == "demo":
        if extra:
            print(f"unrecognized arguments: {' '.join(extra)}", file=sys.stderr)
            return EXIT_CONFIG
        return cmd_demo(args.name)
    try:
        args.overrides = _split_overrides(extra)
        cfg = load_config(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(args.out)
    if args.command == "check":
        return cmd_check(cfg, out)
    return cmd_solve(cfg, out)


if __name__ == "__main__":
    sys.exit(main())
