"""Batch command-line front end.

Subcommands: sample (draw a family to CSV), eval (tabulate an analytic
function over a grid), verify (identity checks), limit (convergence
experiments), list (registries). Exit codes: 0 pass, 1 statistical fail,
2 usage or domain error, 3 I/O failure, 4 unsupported regime.

All output is deterministic for fixed flags: the seed defaults to the
HTM_SEED environment variable and then to the package default, numbers are
printed with 10 significant digits, files are UTF-8 with LF line endings,
and no timestamps are emitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import MISSING, fields as dc_fields
from pathlib import Path

from . import identities, limits, special
from .distributions import (
    _RECORD_TYPES,
    FAMILIES,
    METHODS,
    DistSpec,
    sample,
)
from .errors import AccuracyError, DomainError, UnsupportedRegimeError
from .streams import DEFAULT_SEED, RandomStream

_PARAM_FLAGS = ("alpha", "nu", "delta", "r", "mu", "lam", "gamma", "p", "theta")

# CLI flag name -> identity registry parameter letter.
_IDENTITY_FLAGS = {
    "alpha": "a",
    "delta": "d",
    "nu": "v",
    "b": "b",
    "gamma": "g",
    "r": "r",
    "mu": "m",
}

_DIST_CONSTRAINTS = {
    "normal": "no parameters",
    "laplace": "no parameters",
    "exponential": "no parameters",
    "weibull": "gamma > 0",
    "gamma": "r > 0, lambda > 0",
    "gen-gamma": "r > 0, alpha != 0, lambda > 0",
    "exp-power": "nu > 0",
    "neg-binom": "nu > 0, p in (0, 1)",
    "stable": "alpha in (0, 2]; theta one-sided needs alpha <= 1",
    "stable-ratio": "delta in (0, 1)",
    "z-mix": "r in (0, 1], mu > 0",
    "mittag-leffler": "delta in (0, 1]",
    "gen-mittag-leffler": "delta in (0, 1], nu > 0",
    "linnik": "alpha in (0, 2]",
    "gen-linnik": "alpha in (0, 2], nu > 0",
}

# eval function name -> (callable, parameter flags consumed before x).
_EVAL_FNS = {
    "gamma": (special.gamma_fn, ()),
    "mittag-leffler": (special.mittag_leffler, ("delta",)),
    "ml-density": (special.ml_density, ("delta",)),
    "ml-cdf": (special.ml_cdf, ("delta",)),
    "stable-ratio-density": (special.stable_ratio_density, ("delta",)),
    "gg-density": (special.gg_density, ("r", "alpha", "lam")),
    "gleser-density": (special.gleser_mixing_density, ("r", "mu")),
    "snedecor-fisher-density": (special.snedecor_fisher_density, ("r",)),
    "genlinnik-cf": (special.genlinnik_cf, ("alpha", "nu")),
    "genml-lst": (special.genml_lst, ("delta", "nu")),
    "genlinnik-cdf": (special.cdf_by_inversion, ("alpha", "nu")),
    "genlinnik-pdf": (special.pdf_by_inversion, ("alpha", "nu")),
}


def _fmt(x: float) -> str:
    return f"{float(x):.10g}"


def _dehyphen(text: str) -> str:
    return text.replace("-", "_")


def _default_seed() -> int:
    env = os.environ.get("HTM_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise DomainError(f"HTM_SEED must be an integer, got {env!r}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _parse_grid(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be lo:hi:step, got {spec!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"grid values must be numbers, got {spec!r}") from exc
    if step <= 0:
        raise DomainError("grid step must be positive")
    if hi < lo:
        raise DomainError("grid needs lo <= hi")
    count = int((hi - lo) / step + 1e-9) + 1
    return [lo + step * i for i in range(count)]


def _parse_number_list(text: str, kind: str):
    try:
        if kind == "int":
            return tuple(int(v) for v in text.split(","))
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad grid list {text!r}") from exc


def _collect_family_params(args) -> dict:
    family = _dehyphen(args.dist)
    if family not in FAMILIES:
        raise DomainError(f"unknown family {args.dist!r}")
    record_type = _RECORD_TYPES[family]
    given = {
        name: getattr(args, name)
        for name in _PARAM_FLAGS
        if getattr(args, name) is not None
    }
    if "theta" in given:
        given["theta"] = _dehyphen(given["theta"])
    if record_type is None:
        if given:
            raise DomainError(
                f"family {args.dist!r} takes no parameters, got "
                + ", ".join(sorted(given))
            )
        return {}
    allowed = {f.name for f in dc_fields(record_type)}
    extra = sorted(set(given) - allowed)
    if extra:
        raise DomainError(
            f"family {args.dist!r} does not take: " + ", ".join(extra)
        )
    required = {
        f.name
        for f in dc_fields(record_type)
        if f.default is MISSING and f.default_factory is MISSING
    }
    missing = sorted(required - set(given))
    if missing:
        raise DomainError(
            f"family {args.dist!r} needs: " + ", ".join(missing)
        )
    return given


def _cmd_sample(args) -> int:
    params = _collect_family_params(args)
    method = _dehyphen(args.method) if args.method else None
    spec = DistSpec(_dehyphen(args.dist), params or None, method)
    if args.n < 1:
        raise DomainError("n must be a positive integer")
    seed = args.seed if args.seed is not None else _default_seed()
    batch = sample(spec, args.n, RandomStream(seed))
    lines = ["index,value"]
    lines.extend(f"{i},{_fmt(v)}" for i, v in enumerate(batch.values))
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.out is not None:
        meta = {
            "command": "sample",
            "dist": spec.family,
            "params": {k: params[k] for k in sorted(params)},
            "method": spec.resolved_method(),
            "n": int(args.n),
            "seed": int(seed),
            "substream": 0,
        }
        Path(args.out + ".json").write_text(
            json.dumps(meta, indent=2) + "\n", encoding="utf-8", newline="\n"
        )
    return 0


def _cmd_eval(args) -> int:
    fn, needed = _EVAL_FNS[args.fn]
    fn_args = []
    for name in needed:
        value = getattr(args, name)
        if value is None:
            flag = "--lambda" if name == "lam" else f"--{name}"
            raise DomainError(f"eval --fn {args.fn} requires {flag}")
        fn_args.append(value)
    xs = _parse_grid(args.grid)
    lines = ["x,value"]
    for x in xs:
        lines.append(f"{_fmt(x)},{_fmt(fn(*fn_args, x))}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _identity_params(case, args) -> dict:
    params = {}
    for flag, letter in _IDENTITY_FLAGS.items():
        value = getattr(args, flag)
        if value is None:
            continue
        if letter not in case.param_names:
            raise DomainError(
                f"identity {case.id} does not take --{flag}; "
                f"its parameters are {', '.join(case.param_names)}"
            )
        params[letter] = value
    missing = [p for p in case.param_names if p not in params]
    if missing:
        back = {v: k for k, v in _IDENTITY_FLAGS.items()}
        raise DomainError(
            f"identity {case.id} needs " + ", ".join(f"--{back[m]}" for m in missing)
        )
    return params


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.identity == "all":
        rows = []
        all_pass = True
        for case in identities.registry():
            reports = identities.run_grid(case, seed=seed, q=args.q)
            worst = max(
                (m.value / m.threshold for r in reports for m in r.metrics),
                default=0.0,
            )
            ok = all(r.verdict for r in reports)
            all_pass = all_pass and ok
            rows.append((case.id, worst, ok))
        if args.format == "json":
            payload = [
                {"identity": cid, "worst_margin": worst, "pass": ok}
                for cid, worst, ok in rows
            ]
            text = json.dumps(payload, indent=2) + "\n"
        else:
            lines = ["identity,worst_margin,pass"]
            lines.extend(
                f"{cid},{_fmt(worst)},{'true' if ok else 'false'}"
                for cid, worst, ok in rows
            )
            text = "\n".join(lines) + "\n"
        _write_text(args.out, text)
        return 0 if all_pass else 1
    case = identities.get_case(args.identity)
    params = _identity_params(case, args)
    if not case.in_domain(params):
        raise DomainError(
            f"parameters outside the domain of {case.id}: {case.domain_text}"
        )
    report = identities.verify(case, params, n=args.n, seed=seed, q=args.q)
    if args.format == "csv":
        lines = ["metric,value,threshold,pass"]
        lines.extend(
            f"{m.name},{_fmt(m.value)},{_fmt(m.threshold)},"
            f"{'true' if m.passed else 'false'}"
            for m in report.metrics
        )
        text = "\n".join(lines) + "\n"
    else:
        text = report.to_json() + "\n"
    _write_text(args.out, text)
    return 0 if report.verdict else 1


def _cmd_limit(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    theorem = args.theorem
    if theorem == "lemma14":
        if args.p_grid is None:
            raise DomainError("lemma14 needs --p-grid")
        if args.nu is None:
            raise DomainError("lemma14 needs --nu")
        report = limits.run_lemma14(
            args.nu,
            _parse_number_list(args.p_grid, "float"),
            args.reps,
            seed,
            threshold=args.threshold,
        )
    else:
        if args.n_grid is None:
            raise DomainError(f"{theorem} needs --n-grid")
        if args.alpha is None or args.nu is None:
            raise DomainError(f"{theorem} needs --alpha and --nu")
        n_grid = _parse_number_list(args.n_grid, "int")
        if theorem == "thm6":
            if args.control is not None:
                raise DomainError("control runs exist only for thm7 and thm8")
            report = limits.run_thm6(
                args.alpha, args.nu, n_grid, args.reps, seed,
                threshold=args.threshold,
            )
        elif theorem == "thm7":
            report = limits.run_thm7(
                args.alpha, args.nu, n_grid, args.reps, seed,
                summand=_dehyphen(args.summand),
                threshold=args.threshold,
                control=args.control,
            )
        else:
            report = limits.run_thm8(
                args.alpha, args.nu, n_grid, args.reps, seed,
                statistic=_dehyphen(args.statistic),
                threshold=args.threshold,
                control=args.control,
            )
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = "\n".join(report.csv_lines()) + "\n"
    _write_text(args.out, text)
    return 0 if report.verdict else 1


def _cmd_list(args) -> int:
    sections = []
    show_all = not (args.identities or args.dists or args.theorems)
    if args.dists or show_all:
        lines = ["distributions:"]
        for family in FAMILIES:
            name = family.replace("_", "-")
            entry = f"  {name}: {_DIST_CONSTRAINTS[name]}"
            if family in METHODS:
                methods = ", ".join(m.replace("_", "-") for m in METHODS[family])
                entry += f" [methods: {methods}]"
            lines.append(entry)
        sections.append("\n".join(lines))
    if args.identities or show_all:
        lines = ["identities:"]
        lines.extend(f"  {c.id}  {c.anchor}" for c in identities.registry())
        sections.append("\n".join(lines))
    if args.theorems or show_all:
        lines = ["theorems:"]
        lines.extend(f"  {t}" for t in limits.THEOREMS)
        sections.append("\n".join(lines))
    _write_text(args.out, "\n\n".join(sections) + "\n")
    return 0


def _add_param_flags(parser: argparse.ArgumentParser, *, theta: bool) -> None:
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--nu", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--r", type=float)
    parser.add_argument("--mu", type=float)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--p", type=float)
    if theta:
        parser.add_argument("--theta", choices=["symmetric", "one-sided"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htmix",
        description="Heavy-tailed mixture laws: sampling, analytics, checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="draw one family to CSV")
    p_sample.add_argument(
        "--dist", required=True,
        choices=[f.replace("_", "-") for f in FAMILIES],
    )
    _add_param_flags(p_sample, theta=True)
    p_sample.add_argument("--method")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--seed", type=int)
    p_sample.add_argument("--out")
    p_sample.set_defaults(run=_cmd_sample)

    p_eval = sub.add_parser("eval", help="tabulate an analytic function")
    p_eval.add_argument("--fn", required=True, choices=sorted(_EVAL_FNS))
    _add_param_flags(p_eval, theta=False)
    p_eval.add_argument("--grid", required=True, help="lo:hi:step")
    p_eval.add_argument("--out")
    p_eval.set_defaults(run=_cmd_eval)

    p_verify = sub.add_parser("verify", help="check a distributional identity")
    p_verify.add_argument("--identity", required=True)
    for flag in _IDENTITY_FLAGS:
        p_verify.add_argument(f"--{flag}", type=float)
    p_verify.add_argument("--n", type=int, default=200_000)
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--q", type=float, default=0.01)
    p_verify.add_argument("--format", choices=["csv", "json"], default="json")
    p_verify.add_argument("--out")
    p_verify.set_defaults(run=_cmd_verify)

    p_limit = sub.add_parser("limit", help="run a convergence experiment")
    p_limit.add_argument("--theorem", required=True, choices=list(limits.THEOREMS))
    p_limit.add_argument("--alpha", type=float)
    p_limit.add_argument("--nu", type=float)
    p_limit.add_argument("--n-grid", dest="n_grid", help="comma-separated ints")
    p_limit.add_argument("--p-grid", dest="p_grid", help="comma-separated probs")
    p_limit.add_argument("--reps", type=int, default=100_000)
    p_limit.add_argument("--seed", type=int)
    p_limit.add_argument(
        "--summand", choices=["rademacher", "uniform"], default="rademacher"
    )
    p_limit.add_argument("--statistic", choices=["sample-mean"], default="sample-mean")
    p_limit.add_argument("--control", choices=["fixed-index"])
    p_limit.add_argument("--threshold", type=float)
    p_limit.add_argument("--format", choices=["csv", "json"], default="csv")
    p_limit.add_argument("--out")
    p_limit.set_defaults(run=_cmd_limit)

    p_list = sub.add_parser("list", help="print registries")
    p_list.add_argument("--identities", action="store_true")
    p_list.add_argument("--dists", action="store_true")
    p_list.add_argument("--theorems", action="store_true")
    p_list.add_argument("--out")
    p_list.set_defaults(run=_cmd_list)

    return parser


def _merge_dash_values(argv: list[str]) -> list[str]:
    # argparse reads "--grid -5:5:0.1" as a missing value followed by an
    # unknown option; merge into "--grid=-5:5:0.1" form.
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok == "--grid" and nxt is not None and nxt.startswith("-"):
            out.append(f"{tok}={nxt}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_dash_values(list(argv)))
    try:
        return args.run(args)
    except (UnsupportedRegimeError, AccuracyError) as exc:
        print(f"htmix: unsupported regime: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"htmix: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"htmix: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
