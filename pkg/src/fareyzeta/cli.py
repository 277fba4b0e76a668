"""Command-line front end: one subcommand per experiment family, CSV or JSON reports.

Exit status is 0 when every emitted check passes, 1 when one fails and 2 on
usage errors. Runtimes are written as 0 unless ``--timing`` is given, so a
repeated invocation produces byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import experiments, farey, funclib, moebinv, riemann, walk, zeta
from .experiments import INFORMATIONAL, ExperimentReport, SuiteConfig, make_report

CSV_FIELDS = ("name", "params", "computed", "predicted", "residual", "bound", "pass", "runtime_ms")

# Flag defaults; a config file may override any of these, explicit flags override both.
DEFAULTS = {
    "n": None,
    "sigma": None,
    "tol": 1e-8,
    "seed": 12345,
    "threads": 1,
    "format": "csv",
    "out": None,
    "sieve_limit": 1_000_000,
    "samples": 10_000,
    "t_cap": 5000.0,
    "timing": False,
}
_CONFIG_TYPES: dict[str, Callable[[str], object]] = {
    "n": int,
    "sigma": float,
    "tol": float,
    "seed": int,
    "threads": int,
    "format": str,
    "out": str,
    "sieve_limit": int,
    "samples": int,
    "t_cap": float,
    "timing": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
    "a": float,
    "b": float,
    "function": str,
    "names": str,
    "values": str,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    sieve_limit: int = 1_000_000
    tolerance: float = 1e-8
    seed: int = 12345
    parallelism: int = 1
    output_format: str = "csv"
    output_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.parallelism < 1:
            raise UsageError("--threads must be at least 1")
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.sieve_limit < 1:
            raise UsageError("--sieve-limit must be positive")
        if self.output_format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")


# ------------------------------------------------------------------ output


def format_real(x: float) -> str:
    """17 significant digits, '.' as decimal point regardless of locale."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def format_params(params) -> str:
    """Flatten a params map to "k=v;k=v" in insertion order."""
    parts = []
    for k, v in params.items():
        if isinstance(v, (float, np.floating, int, np.integer, bool, np.bool_)):
            v = format_real(v)
        parts.append(f"{k}={v}")
    return ";".join(parts)


def _row(r: ExperimentReport, timing: bool) -> dict[str, str]:
    return {
        "name": r.name + (f" [{r.flag}]" if r.flag else ""),
        "params": format_params(r.params),
        "computed": format_real(r.computed),
        "predicted": format_real(r.predicted),
        "residual": format_real(r.residual),
        "bound": format_real(r.bound),
        "pass": "true" if r.passed else "false",
        "runtime_ms": str(r.runtime_ms if timing else 0),
    }


def render_csv(reports: Sequence[ExperimentReport], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(_row(r, timing))
    return buf.getvalue()


def render_json(reports: Sequence[ExperimentReport], timing: bool = False) -> str:
    """A flat array: each object carries the CSV fields, reals as numbers (null when non-finite)."""

    def num(x):
        if x is None:
            return None
        x = float(x)
        return x if math.isfinite(x) else None

    rows = []
    for r in reports:
        rows.append(
            {
                "name": r.name + (f" [{r.flag}]" if r.flag else ""),
                "params": format_params(r.params),
                "computed": num(r.computed),
                "predicted": num(r.predicted),
                "residual": num(r.residual),
                "bound": num(r.bound),
                "pass": bool(r.passed),
                "runtime_ms": int(r.runtime_ms if timing else 0),
            }
        )
    return json.dumps(rows, indent=1, allow_nan=False) + "\n"


# --------------------------------------------------------------- functions


def _named_function(name: str) -> funclib.PeriodicFunction:
    if name == "cos":
        return funclib.make_cosine()
    if name == "g":
        return funclib.make_g(1.0)
    if name.startswith("g") and name[1:].isdigit():
        return funclib.make_gn(int(name[1:]))
    raise UsageError(f"unknown function {name!r}; use cos, g or g<n>")


def _need(args, key: str, what: str):
    v = getattr(args, key)
    if v is None:
        raise UsageError(f"{what} requires --{key.replace('_', '-')}")
    return v


# ------------------------------------------------------------- subcommands


def cmd_identities(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    n = args.n if args.n is not None else 300
    return experiments.identity_suite(cfg, farey_n=n, mertens_n=max(n, min(100_000, cfg.sieve_limit)))


def cmd_farey_sum(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    """Direct F_{n,σ}(f) against the convolution path."""
    n = _need(args, "n", "farey-sum")
    sigma = args.sigma if args.sigma is not None else 0.0
    f = _named_function(args.function)
    t0 = experiments._now()
    direct = farey.weighted_farey_sum(f, n, sigma)
    conv = farey.farey_sum_via_convolution(f, n, sigma, cfg.tables(n))
    bound = 1e-9 * max(1.0, abs(direct))
    params = {"function": f.name, "n": n, "sigma": sigma}
    return [make_report("farey_sum", params, direct, conv, bound=bound, started=t0)]


def cmd_quad_riemann(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    """S_{n,σ}(f) against (∫f_σ)·Σ_{ℓ≤n}ℓ^{1−2σ}; the residual is Θ_{n,σ}(f)."""
    n = _need(args, "n", "quad-riemann")
    sigma = args.sigma if args.sigma is not None else 0.75
    f = _named_function(args.function)
    if f.exact_weighted_integral is None:
        raise UsageError(f"{f.name} has no weighted integral")
    t0 = experiments._now()
    s = riemann.quadratic_riemann_sum(f, n, sigma)
    main = f.exact_weighted_integral(sigma) * riemann.power_sum_partial(n, sigma).exact
    params = {"function": f.name, "n": n, "sigma": sigma}
    return [make_report("quad_riemann", params, s, main, started=t0, flag=INFORMATIONAL)]


def cmd_zeta_local(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    sigma = args.sigma if args.sigma is not None else 0.75
    a = _need(args, "a", "zeta-local")
    b = args.b if args.b is not None else a + 1.0
    t0 = experiments._now()
    rep = zeta.local_zeta_integral(cfg.ev, a, b, sigma, cfg.tolerance)
    params = {"sigma": sigma, "a": a, "b": b, "quad_error": rep.error_estimate, "converged": rep.converged}
    if math.isnan(rep.prediction):
        return [make_report("local_integral", params, rep.value, rep.prediction, started=t0, flag=INFORMATIONAL)]
    r = make_report("local_integral", params, rep.value, rep.prediction, bound=0.1, started=t0)
    return [replace(r, passed=r.passed and rep.converged)]


def cmd_parseval(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    sigma = args.sigma if args.sigma is not None else 0.5
    t0 = experiments._now()
    if sigma == 0.5:
        half = zeta.parseval_half(cfg.ev, 2000.0, cfg.tolerance)
        params = {"Tmax": 2000.0, "tail": half.tail, "error_estimate": half.error_estimate}
        return [make_report("parseval_half", params, half.value, half.reference, bound=1e-2, started=t0)]
    if not 0.5 < sigma < 1:
        raise UsageError("parseval needs sigma = 0.5 or 0.5 < sigma < 1")
    pc = zeta.parseval_constant(sigma)
    out = [
        make_report(
            "parseval_two_routes",
            {"sigma": sigma, "fractional_error": pc.fractional_error},
            pc.fractional_integral,
            pc.closed_form,
            bound=1e-3,
            started=t0,
        )
    ]
    br = zeta.parseval_bracket(sigma)
    out.append(make_report("parseval_bracket_sign", {"sigma": sigma}, br, 0.0, passed=br < 0))
    return out


def cmd_lw_integral(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    n = _need(args, "n", "lw-integral")
    t0 = experiments._now()
    tmax = min(100.0 * n, cfg.ev.ceiling)
    if tmax < 50.0 * n:
        raise UsageError(f"n = {n} needs Tmax ≥ {50 * n}, beyond the evaluator ceiling {cfg.ev.ceiling:g}")
    rep = zeta.lw_cauchy_integral(cfg.ev, n, tmax, cfg.tolerance)
    params = {"n": n, "Tmax": tmax, "tail": rep.tail, "error_estimate": rep.error_estimate}
    return [make_report("lw_value", params, rep.value, rep.reference, started=t0, flag=INFORMATIONAL)]


def cmd_stepanov_scan(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    sigma = args.sigma if args.sigma is not None else 0.5
    n = args.n if args.n is not None else 2000
    t0 = experiments._now()
    scan = zeta.stepanov_scan(cfg.ev, sigma, n, min(cfg.tolerance, 1e-9))
    predicted = 0.5 * math.log(n) if sigma == 0.5 else zeta.zeta_real(2 * sigma) if sigma > 0.5 else math.nan
    params = {"sigma": sigma, "N": n, "min_window": float(scan.windows.min()), "converged": scan.converged}
    return [make_report("stepanov_sup", params, float(scan.running_sup[-1]), predicted, started=t0, flag=INFORMATIONAL)]


def cmd_cauchy_walk(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    n = args.n if args.n is not None else 8
    t0 = experiments._now()
    rep = walk.walk_moments(walk.WalkConfig(n, cfg.samples, cfg.seed, cfg.t_cap, cfg.ev))
    params = {
        "n": n,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "se": rep.increment_se,
        "clipped_fraction": rep.clipped_fraction,
        "second_moment": rep.second_moment,
    }
    out = [make_report("walk_increment", params, rep.increment_moment, 2.0 * math.log(n), bound=3.0 * rep.increment_se, started=t0)]
    out.append(make_report("walk_clipped", {"n": n}, rep.clipped_fraction, 0.0, bound=walk.UNRELIABLE_CLIP_FRACTION))
    return out


def _parse_values(text: str) -> dict[int, Fraction]:
    vals: dict[int, Fraction] = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in item:
            raise UsageError(f"bad --values entry {item!r}; expected index=value")
        k, v = item.split("=", 1)
        try:
            vals[int(k)] = Fraction(v.strip())
        except ValueError as exc:
            raise UsageError(f"bad --values entry {item!r}") from exc
    return vals


def cmd_mobius_invert(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    """Invert g and sum back; with no ``--values``, g is random with support in 1..n."""
    t0 = experiments._now()
    if args.values:
        vals = _parse_values(args.values)
        bound = args.n if args.n is not None else max(vals, default=1)
        g = moebinv.GridSequence({k: v for k, v in vals.items() if v != 0}, bound)
    else:
        n = args.n if args.n is not None else 100
        rng = np.random.default_rng(cfg.seed)
        size = int(rng.integers(1, min(n, 12) + 1))
        idx = rng.choice(np.arange(1, n + 1), size=size, replace=False)
        vals = {int(i): Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for i in idx}
        g = moebinv.GridSequence({k: v for k, v in vals.items() if v != 0}, n)
    cond = moebinv.check_inversion_condition(g)
    f = moebinv.mobius_invert(g)
    back = moebinv.multiple_sum(f)
    mismatches = sum(1 for m in range(1, g.support_bound + 1) if back[m] != g[m])
    inverse = " ".join(f"{k}:{v}" for k, v in sorted(f.values.items()))
    params = {"support_bound": g.support_bound, "condition": cond, "inverse": inverse}
    return [make_report("mobius_roundtrip", params, mismatches, 0, bound=0.0, started=t0)]


def cmd_suite(args, cfg: SuiteConfig) -> list[ExperimentReport]:
    names = [s.strip() for s in args.names.split(",") if s.strip()] if args.names else list(experiments.DEFAULT_SUITE)
    unknown = [s for s in names if s not in experiments.EXPERIMENTS]
    if unknown:
        raise UsageError(f"unknown experiments: {', '.join(unknown)}; known: {', '.join(experiments.EXPERIMENTS)}")
    return experiments.run_suite(names, cfg)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "identities": (cmd_identities, "exact-identity suite; --n caps the Farey checks"),
    "farey-sum": (cmd_farey_sum, "weighted Farey sum, direct against convolution"),
    "quad-riemann": (cmd_quad_riemann, "quadratic Riemann sum against its main term"),
    "zeta-local": (cmd_zeta_local, "∫_a^b |ζ(σ+it)|² dt against the quadratic-sum prediction"),
    "parseval": (cmd_parseval, "Parseval constants at σ = 1/2 or 1/2 < σ < 1"),
    "lw-integral": (cmd_lw_integral, "Cauchy-weighted mean square of ζ on the critical line"),
    "stepanov-scan": (cmd_stepanov_scan, "unit-window integrals of |ζ|² up to n"),
    "cauchy-walk": (cmd_cauchy_walk, "Monte Carlo moments of ζ along a Cauchy walk"),
    "mobius-invert": (cmd_mobius_invert, "Möbius inversion roundtrip on a finitely supported sequence"),
    "suite": (cmd_suite, "named experiments (default: all)"),
}


# ------------------------------------------------------------------ parser


def _common(p: argparse.ArgumentParser) -> None:
    # defaults are None so that config-file values can be told apart from flags
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--config", default=None, help="file of key=value lines; flags take precedence")
    p.add_argument("--sieve-limit", dest="sieve_limit", type=int, default=None)
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo samples (cauchy-walk, suite)")
    p.add_argument("--t-cap", dest="t_cap", type=float, default=None, help="walk clipping height")
    p.add_argument("--timing", action="store_const", const=True, default=None, help="record wall-clock runtimes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fareyzeta", description="Farey-sum and zeta mean-value checks.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _common(p)
        if name in ("farey-sum", "quad-riemann"):
            p.add_argument("--function", default=None, help="cos, g or g<n> (default cos / g)")
        if name == "zeta-local":
            p.add_argument("--a", type=float, default=None)
            p.add_argument("--b", type=float, default=None)
        if name == "mobius-invert":
            p.add_argument("--values", default=None, help='comma list "index=value", e.g. "1=1,2=1/2"')
        if name == "suite":
            p.add_argument("--names", default=None, help="comma-separated experiment names")
    return parser


def read_config_file(path: str) -> dict[str, object]:
    """key=value lines; '#' starts a comment; keys use flag spelling (dashes or underscores)."""
    out: dict[str, object] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _CONFIG_TYPES[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}") from exc
    return out


def resolve_args(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the config file, then from DEFAULTS."""
    file_values = read_config_file(args.config) if args.config else {}
    for key, value in file_values.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    defaults = dict(DEFAULTS, function="g" if args.command == "quad-riemann" else "cos")
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    for key in ("a", "b", "values", "names"):
        if not hasattr(args, key):
            setattr(args, key, None)
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage to stderr
        return int(exc.code) if isinstance(exc.code, int) else 2
    try:
        args = resolve_args(args)
        cli_cfg = CliConfig(
            sieve_limit=args.sieve_limit,
            tolerance=args.tol,
            seed=args.seed,
            parallelism=args.threads,
            output_format=args.format,
            output_path=Path(args.out) if args.out else None,
        )
        if args.samples < 2:
            raise UsageError("--samples must be at least 2")
        suite_cfg = SuiteConfig(
            sieve_limit=cli_cfg.sieve_limit,
            tolerance=cli_cfg.tolerance,
            seed=cli_cfg.seed,
            threads=cli_cfg.parallelism,
            samples=args.samples,
            t_cap=args.t_cap,
        )
        reports = COMMANDS[args.command][0](args, suite_cfg)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"fareyzeta {args.command}: error: {exc}", file=sys.stderr)
        return 2

    render = render_json if cli_cfg.output_format == "json" else render_csv
    text = render(reports, timing=bool(args.timing))
    if cli_cfg.output_path is not None:
        cli_cfg.output_path.write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    failed = [r.name for r in reports if not r.passed]
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
