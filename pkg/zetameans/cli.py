"""
cli.py — Command line for zetameans

  python -m zetameans eval      --sigma 0.5 --t 30 [--x 2] [--alpha 0.3] [--function hurwitz|modified|kernel]
  python -m zetameans oracle    --sigma 0.5 --t 200 --x 1 [--quantity Ix|Jx|large_interval]
  python -m zetameans estimate  --estimator cor3 --t 800 --x 2
  python -m zetameans sweep     --estimator cor3 --t 200 400 800 --x 1 2 4 --out cor3.csv
  python -m zetameans density   --t 628.3185307179587 --eta 0.25
  python -m zetameans hyperbola --n 100 1000 10000 --sigma 0.5
  python -m zetameans verify    --suite identities
  python -m zetameans serve     [--host 0.0.0.0] [--port 8000]

Every numeric flag may also come from --config FILE (flat key = value,
same names as the flags). Precedence: flag > config file > environment.

Exit status: 0 success, 1 numeric failure, 2 usage error.
"""

import argparse
import json
import logging
import math
import re
import sys
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from . import __version__, config
from .errors import ZetaMeansError
from .harness import SUITES, fit_error_exponents, run_sweep, verify, verify_exit_code, write_rows
from .lattice import count_A_estimate, count_frac_below, enumerate_A, saffari_density
from .main import estimate_endpoint, eval_endpoint, hyperbola_endpoint, oracle_endpoint
from .schemas import (
    Estimator,
    EstimateRequest,
    EvalRequest,
    HyperbolaRequest,
    OracleRequest,
    OutputFormat,
    PolicyModel,
    SweepSpec,
    XRule,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ============================================================
# ARGUMENTS
# ============================================================

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value file mirroring the flags")
    parser.add_argument("--sigma", type=float, nargs="+")
    parser.add_argument("--t", type=float, nargs="+")
    parser.add_argument("--x", type=float, nargs="+")
    parser.add_argument("--eta", type=float)
    parser.add_argument("--n-order", type=int)
    parser.add_argument("--m-order", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--precision-bits", type=int)
    parser.add_argument("--correction-factor", type=float)
    parser.add_argument("--envelope", type=float)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetameans", description="Mean squares of modified Hurwitz zeta functions")
    parser.add_argument("--version", action="version", version=f"zetameans {__version__}")
    parser.add_argument("--log-level", default=config.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="ζ(s,α), ζ_x(s,α) or K(s)")
    _add_common(p)
    p.add_argument("--function", choices=["hurwitz", "modified", "kernel"], default="hurwitz")
    p.add_argument("--alpha", type=float, default=1.0)

    p = sub.add_parser("oracle", help="I_x, J_x or the large-interval mean")
    _add_common(p)
    p.add_argument("--quantity", choices=["Ix", "Jx", "large_interval"], default="Ix")
    p.add_argument("--v-sigma", type=float)
    p.add_argument("--v-t", type=float)

    p = sub.add_parser("estimate", help="one estimator against its oracle")
    _add_common(p)
    p.add_argument("--estimator", choices=[e.value for e in Estimator], required=True)

    p = sub.add_parser("sweep", help="estimator-vs-oracle table")
    _add_common(p)
    p.add_argument("--estimator", choices=[e.value for e in Estimator])
    p.add_argument("--x-rule", choices=[r.value for r in XRule])
    p.add_argument("--fit", action="store_true", help="log the fitted error exponents")

    p = sub.add_parser("density", help="exceptional set A(t, η) against its density estimate")
    _add_common(p)
    p.add_argument("--members", action="store_true")

    p = sub.add_parser("hyperbola", help="hyperbola double sums and their deviation")
    _add_common(p)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--naive", action="store_true")

    p = sub.add_parser("verify", help="acceptance suites")
    _add_common(p)
    p.add_argument("--suite", choices=list(SUITES), default="all")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


# ============================================================
# SETTINGS (flag > config file > environment)
# ============================================================

def _split_list(text: str) -> List[str]:
    return [part for part in re.split(r"[,\s]+", text.strip()) if part]


class Settings:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file: Dict[str, str] = config.load_config_file(getattr(args, "config", None))

    def get(self, name: str, cast: Callable[[str], Any], default: Any) -> Any:
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name in self.file:
            try:
                return cast(self.file[name])
            except ValueError:
                raise UsageError(f"config key {name!r} has an invalid value {self.file[name]!r}")
        return default

    def get_list(self, name: str, cast: Callable[[str], Any], default: Optional[list] = None) -> Optional[list]:
        value = getattr(self.args, name, None)
        if value is not None:
            return list(value)
        if name in self.file:
            try:
                return [cast(part) for part in _split_list(self.file[name])]
            except ValueError:
                raise UsageError(f"config key {name!r} has an invalid list {self.file[name]!r}")
        return default

    def first(self, name: str, default: Any = None) -> Any:
        values = self.get_list(name, float)
        if not values:
            if default is None:
                raise UsageError(f"--{name.replace('_', '-')} is required")
            return default
        return values[0]

    def policy_model(self) -> PolicyModel:
        return PolicyModel(
            precision_bits=self.get("precision_bits", int, config.PRECISION_BITS),
            tol=self.get("tol", float, config.TOL),
        )

    @property
    def eta(self) -> float:
        return self.get("eta", float, config.ETA)

    @property
    def workers(self) -> int:
        return self.get("workers", int, config.WORKERS)

    @property
    def fmt(self) -> OutputFormat:
        value = self.get("format", str, OutputFormat.CSV.value)
        try:
            return OutputFormat(value)
        except ValueError:
            raise UsageError(f"unknown format {value!r}")


def _emit(payload: Any, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ============================================================
# COMMANDS
# ============================================================

def cmd_eval(args, settings: Settings) -> int:
    req = EvalRequest(
        function=args.function,
        sigma=settings.first("sigma"),
        t=settings.first("t"),
        alpha=args.alpha,
        x=int(settings.first("x", 0)),
        policy=settings.policy_model(),
    )
    _emit(eval_endpoint(req).model_dump(), settings.get("out", str, None))
    return EXIT_OK


def cmd_oracle(args, settings: Settings) -> int:
    req = OracleRequest(
        quantity=args.quantity,
        sigma=settings.first("sigma", 0.5),
        t=settings.first("t"),
        x=int(settings.first("x", 1)),
        v_sigma=args.v_sigma,
        v_t=args.v_t,
        policy=settings.policy_model(),
    )
    _emit(oracle_endpoint(req).model_dump(), settings.get("out", str, None))
    return EXIT_OK


def cmd_estimate(args, settings: Settings) -> int:
    req = EstimateRequest(
        estimator=args.estimator,
        sigma=settings.first("sigma", 0.5),
        t=settings.first("t"),
        x=int(settings.first("x", 1)),
        eta=settings.eta,
        n_order=settings.get("n_order", int, config.N_ORDER),
        m_order=settings.get("m_order", int, config.M_ORDER),
        correction_factor=settings.get("correction_factor", float, config.CORRECTION_FACTOR),
        policy=settings.policy_model(),
    )
    _emit(estimate_endpoint(req).model_dump(mode="json"), settings.get("out", str, None))
    return EXIT_OK


def sweep_spec(args, settings: Settings) -> SweepSpec:
    estimator = settings.get("estimator", str, None)
    if estimator is None:
        raise UsageError("--estimator is required")
    return SweepSpec(
        estimator=estimator,
        sigma=settings.get_list("sigma", float, [0.5]),
        t_grid=settings.get_list("t", float, []),
        x_rule=settings.get("x_rule", str, XRule.FIXED.value),
        x_values=settings.get_list("x", float, []),
        eta=settings.eta,
        n_order=settings.get("n_order", int, config.N_ORDER),
        m_order=settings.get("m_order", int, config.M_ORDER),
        correction_factor=settings.get("correction_factor", float, config.CORRECTION_FACTOR),
        policy=settings.policy_model(),
        workers=settings.workers,
        out_path=settings.get("out", str, None),
        format=settings.fmt,
    )


def cmd_sweep(args, settings: Settings) -> int:
    spec = sweep_spec(args, settings)
    rows = run_sweep(spec)
    write_rows(rows, spec.out_path, spec.format)
    if args.fit:
        fit = fit_error_exponents(rows, spec.policy.tol)
        logger.info(f"📈 exponents: {json.dumps(fit.to_dict())}")
    return EXIT_OK


def cmd_density(args, settings: Settings) -> int:
    eta = settings.eta
    rows = []
    for t in settings.get_list("t", float, []):
        found = enumerate_A(t, eta)
        row = {
            "t": t,
            "eta": eta,
            "count": len(found),
            "estimate": count_A_estimate(t, eta),
        }
        n = t / (2 * math.pi)
        if abs(n - round(n)) <= 1e-9 * n:
            n = round(n)
            row["frac_below"] = count_frac_below(n, eta) / n
            row["saffari_density"] = saffari_density(eta)
        if args.members:
            row["members"] = found.members
        rows.append(row)
    if not rows:
        raise UsageError("--t is required")
    _emit(rows, settings.get("out", str, None))
    return EXIT_OK


def cmd_hyperbola(args, settings: Settings) -> int:
    req = HyperbolaRequest(n_values=args.n, sigma=settings.first("sigma", 0.5), check_naive=args.naive)
    _emit(hyperbola_endpoint(req).model_dump(), settings.get("out", str, None))
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    report = verify(
        args.suite,
        policy=settings.policy_model().to_policy(),
        envelope=settings.get("envelope", float, config.ENVELOPE),
        workers=settings.workers,
    )
    _emit(report.to_dict(), settings.get("out", str, None))
    return verify_exit_code(report)


def cmd_serve(args, settings: Settings) -> int:
    import uvicorn

    uvicorn.run("zetameans.main:app", host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "oracle": cmd_oracle,
    "estimate": cmd_estimate,
    "sweep": cmd_sweep,
    "density": cmd_density,
    "hyperbola": cmd_hyperbola,
    "verify": cmd_verify,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format=config.LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )

    try:
        settings = Settings(args)
        return COMMANDS[args.command](args, settings)
    except (UsageError, ValidationError) as e:
        parser.print_usage(sys.stderr)
        print(f"zetameans: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ZetaMeansError as e:
        logger.error(f"❌ {type(e).__name__}: {e.message}")
        print(f"zetameans: {type(e).__name__}: {e.message}", file=sys.stderr)
        return EXIT_FAILURE
