"""Command-line front end. Every subcommand prints one JSON object.

Inputs given to ``--weight``, ``--matrix``, ``--stepop``, ``--measure`` and
``--function`` are inline JSON when they start with ``{`` or ``[``, and file
paths otherwise.

Exit codes: 0 success or passing report, 1 failing report, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any

from .choquet import WeightedPNorm, choquet_trace, triangle_ratio
from .errors import NLTraceError, UndefinedRatioError
from .fuzzy import MonotoneMeasure, choquet_integral, function_from_json, is_comonotone, sugeno_integral
from .report import Report, _jsonable
from .spectral import hermitian_eigenvalues, matrix_from_json, singular_values
from .stepops import (
    add,
    choquet_spectral,
    choquet_stieltjes,
    lorentz_norm,
    max_type_value,
    min_witness,
    partition_approx,
    stepop_from_json,
    sugeno_trace_step,
)
from .sugeno import SugenoTrace, sugeno_metric, sugeno_trace
from .weights import doubling_sup, is_concave, weight_from_json

SEED_ENV = "NLTRACE_SEED"


class CliError(Exception):
    """Bad invocation detected after argument parsing."""


def _load(text: str | None, what: str) -> Any:
    if text is None:
        raise CliError(f"--{what} is required")
    s = text.strip()
    if not s.startswith(("{", "[")):
        path = Path(text)
        if not path.is_file():
            raise CliError(f"--{what}: no such file {text!r}")
        s = path.read_text()
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        raise CliError(f"--{what}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _dims(text: str | None) -> list[int] | None:
    """``"1-8"`` or ``"2,4,8"``."""
    if text is None:
        return None
    out: set[int] = set()
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-")
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise CliError(f"--dims: cannot parse {text!r}") from None
    if not out or min(out) < 1:
        raise CliError("--dims must list positive sizes")
    return sorted(out)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env, 0)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _matrices(args, count: int):
    mats = args.matrix or []
    if len(mats) != count:
        raise CliError(f"expected {count} --matrix argument(s), got {len(mats)}")
    return [matrix_from_json(_load(m, "matrix")) for m in mats]


def _discrete_weight(args):
    return weight_from_json(_load(args.weight, "weight"), model="discrete")


def _continuous_weight(args):
    return weight_from_json(_load(args.weight, "weight"), model="continuous")


# ---------------------------------------------------------------------------
# handlers: each returns a dict (plain result) or a Report
# ---------------------------------------------------------------------------

def _cmd_eig(args):
    (a,) = _matrices(args, 1)
    return {"eigenvalues": hermitian_eigenvalues(a).tolist()}


def _cmd_sv(args):
    (a,) = _matrices(args, 1)
    return {"singular_values": singular_values(a).tolist()}


def _cmd_choquet(args):
    (a,) = _matrices(args, 1)
    return {"value": choquet_trace(singular_values(a), _discrete_weight(args))}


def _cmd_pnorm(args):
    (a,) = _matrices(args, 1)
    return {"value": WeightedPNorm(_discrete_weight(args), args.p)(a)}


def _cmd_ratio(args):
    a, b = _matrices(args, 2)
    return {"ratio": triangle_ratio(a, b, WeightedPNorm(_discrete_weight(args), args.p))}


def _cmd_sugeno(args):
    (a,) = _matrices(args, 1)
    return {"value": sugeno_trace(a, SugenoTrace(_discrete_weight(args)))}


def _cmd_metric(args):
    a, b = _matrices(args, 2)
    st = SugenoTrace(_discrete_weight(args))
    return {"value": sugeno_metric(a, b, st, allow_nonconcave=args.allow_nonconcave)}


def _stepop(args):
    ops = [stepop_from_json(_load(s, "stepop")) for s in (args.stepop or [])]
    if not ops:
        raise CliError("--stepop is required")
    total = ops[0]
    for op in ops[1:]:
        total = add(total, op)
    return total


_STEPOP_OPS = {
    "choquet": lambda a, w, args: choquet_spectral(a, w),
    "stieltjes": lambda a, w, args: choquet_stieltjes(a, w),
    "sugeno": lambda a, w, args: sugeno_trace_step(a, w),
    "approx": lambda a, w, args: partition_approx(a, w, args.M),
    "lorentz": lambda a, w, args: lorentz_norm(a, w),
    "maxtype": lambda a, w, args: max_type_value(a, w),
}


def _cmd_stepop(args):
    a = _stepop(args)
    w = _continuous_weight(args)
    if args.op == "witness":
        q_mass, rep = min_witness(a, w, args.eps)
        rep.details["q_mass"] = q_mass
        return rep
    return {"value": _STEPOP_OPS[args.op](a, w, args)}


def _functions(args, count: int):
    fs = args.function or []
    if len(fs) != count:
        raise CliError(f"expected {count} --function argument(s), got {len(fs)}")
    return [function_from_json(_load(f, "function")) for f in fs]


def _cmd_integrate(args):
    mu = MonotoneMeasure.from_json(_load(args.measure, "measure"))
    (f,) = _functions(args, 1)
    fn = choquet_integral if args.kind == "choquet" else sugeno_integral
    return {"value": fn(f, mu)}


def _cmd_comonotone(args):
    f, g = _functions(args, 2)
    return {"comonotone": is_comonotone(f, g)}


def _cmd_weight(args):
    w = weight_from_json(_load(args.weight, "weight"))
    try:
        dbl = doubling_sup(w)
    except UndefinedRatioError:
        dbl = None
    return {"concave": is_concave(w), "doubling_sup": dbl}


def _cmd_falsify(args):
    from .harness.falsify import falsify_triangle

    dims = _dims(args.dims) or list(range(1, 9))
    trials = 1000 if args.trials is None else args.trials
    return falsify_triangle(_discrete_weight(args), args.p, dims, trials, _seed(args),
                            workers=args.workers, bound=args.bound)


def _cmd_suite(args):
    from .harness.suites import run_suite, suite_ids

    if args.suite_id not in suite_ids():
        raise CliError(f"unknown suite {args.suite_id!r}; known: {', '.join(suite_ids())}")
    return run_suite(args.suite_id, trials=args.trials, seed=_seed(args),
                     workers=args.workers, dims=_dims(args.dims))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weight", help="weight JSON or path")
    common.add_argument("--matrix", action="append", help="matrix JSON or path (repeatable)")
    common.add_argument("--stepop", action="append", help="step operator JSON or path; repeats are summed")
    common.add_argument("--measure", help="monotone measure JSON or path")
    common.add_argument("--function", action="append", help='function JSON {"f": [...]} (repeatable)')
    common.add_argument("--p", type=float, default=1.0, help="exponent p > 0 (default 1)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help=f"master seed (default ${SEED_ENV} or 0)")
    common.add_argument("--trials", type=_positive_int, default=None)
    common.add_argument("--dims", help='matrix sizes, e.g. "1-8" or "2,4,8"')
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="nltrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, helptext in (
        ("eig", _cmd_eig, "eigenvalues of a Hermitian matrix"),
        ("sv", _cmd_sv, "singular values"),
        ("choquet", _cmd_choquet, "Choquet-type trace of |a|"),
        ("pnorm", _cmd_pnorm, "weighted p-(quasi-)norm"),
        ("ratio", _cmd_ratio, "triangle ratio of two matrices"),
        ("sugeno", _cmd_sugeno, "Sugeno-type trace of a psd matrix"),
        ("comonotone", _cmd_comonotone, "comonotonicity of two functions"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.set_defaults(handler=handler)

    sp = sub.add_parser("metric", parents=[common], help="Sugeno distance of two matrices")
    sp.add_argument("--allow-nonconcave", action="store_true")
    sp.set_defaults(handler=_cmd_metric)

    sp = sub.add_parser("stepop", parents=[common], help="step-operator traces")
    sp.add_argument("op", choices=sorted(_STEPOP_OPS) + ["witness"])
    sp.add_argument("--M", type=int, default=1024, help="partition size for approx")
    sp.add_argument("--eps", type=float, default=1e-3, help="slack for witness")
    sp.set_defaults(handler=_cmd_stepop)

    sp = sub.add_parser("integrate", parents=[common], help="fuzzy integrals")
    sp.add_argument("kind", choices=["choquet", "sugeno"])
    sp.set_defaults(handler=_cmd_integrate)

    sp = sub.add_parser("weight", parents=[common], help="weight analysis")
    sp.add_argument("action", choices=["check"])
    sp.set_defaults(handler=_cmd_weight)

    sp = sub.add_parser("falsify", parents=[common], help="triangle-inequality counterexample search")
    sp.add_argument("--bound", type=float, default=1.0, help="ratio counted as a violation above this")
    sp.set_defaults(handler=_cmd_falsify)

    sp = sub.add_parser("suite", parents=[common], help="run a named property suite")
    sp.add_argument("suite_id")
    sp.set_defaults(handler=_cmd_suite)
    return parser


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except (CliError, NLTraceError, ValueError, KeyError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"nltrace: error: {msg}", file=sys.stderr)
        return 2
    if isinstance(result, Report):
        _emit(result.to_dict(), args.out)
        return result.exit_code
    _emit({k: _jsonable(v) for k, v in result.items()}, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
