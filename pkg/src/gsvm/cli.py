"""Command-line front end.

Every command prints a JSON report ``{command, status, result, diagnostics}``
to stdout (or ``--output``). Exit status: 0 success, 1 domain error
(infeasible data, singular input, failed reproduction), 2 usage error
(bad flags or a malformed CSV file).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .core import Hyperplane, classify, decision_value, margin_report
from .datasets import EXAMPLE_FAMILIES, FIXTURE_IDS, FamilySpec, fixture, gen_family
from .exceptions import DatasetFormatError, GsvmError
from .generalized import (
    GsvmModel,
    control_apply,
    gsvm_objective_min,
    gsvm_row_solution,
    gsvm_train,
)
from .operators import (
    affine_operator,
    check_lipschitz,
    check_monotone,
    check_strongly_monotone,
    class_hierarchy_check,
    norm_gradient_operator,
)
from .reproduction import EXAMPLE_IDS, reproduce_all, reproduce_example
from .serialization import (
    dump_report,
    format_dataset_csv,
    parse_dataset_csv,
    parse_feature_csv,
)
from .svm import svm_oracle, svm_train
from .vi import (
    OperatorHandle,
    SolverConfig,
    complementarity,
    fixed_point_solve,
    vi_residual,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

# options whose value may legitimately start with "-", e.g. --c -4,-4
_VALUE_FLAGS = ("--a", "--b", "--c", "--w", "--start", "--alphas", "--betas", "--k")


class UsageError(Exception):
    pass


def _vector(text: str, flag: str) -> np.ndarray:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated numbers, got {text!r}") from None
    if not values or not all(np.isfinite(values)):
        raise UsageError(f"{flag} expects finite comma-separated numbers, got {text!r}")
    return np.array(values)


def _positive(value: float | None, flag: str) -> None:
    if value is not None and not value > 0:
        raise UsageError(f"{flag} must be positive, got {value}")


def _require(args, name: str, flag: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{args.command} requires {flag}")
    return value


def _load_dataset(args):
    return parse_dataset_csv(_require(args, "input", "--input"))


# commands ------------------------------------------------------------------


def cmd_train_svm(args) -> dict:
    ds = _load_dataset(args)
    solver = svm_oracle if args.solver == "enumeration" else svm_train
    sol = solver(ds, tol=args.tol)
    report = margin_report(sol.hyperplane, ds)
    return {
        "model": "svm",
        "w": sol.w,
        "b": sol.b,
        "norm": sol.norm_w,
        "objective": sol.objective,
        "support_indices": list(sol.support_indices),
        "dual_coef": sol.dual_coef,
        "margins": {
            "functional": report.functional,
            "geometric": report.geometric,
            "min_functional": report.min_functional,
            "min_geometric": report.min_geometric,
        },
    }


def cmd_train_gsvm(args) -> dict:
    ds = _load_dataset(args)
    model = gsvm_train(ds, tol=args.tol, active=args.active)
    result = {
        "model": "gsvm",
        "W": model.W,
        "B": model.B,
        "g_min": gsvm_objective_min(model),
        "rows_equal": model.rows_equal(),
        "rank_deficient": model.rank_deficient,
        "residual": model.residual,
        "row_solution": None,
    }
    if model.rows_equal(args.tol):
        h = gsvm_row_solution(model, tol=args.tol)
        result["row_solution"] = {"w": h.w, "b": h.b, "norm": h.norm}
    return result


def _model_from_args(args):
    if args.model is not None:
        try:
            with open(args.model, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read model report {args.model}: {exc}") from None
        payload = doc.get("result", doc)
        if "W" in payload:
            return GsvmModel(payload["W"], payload["B"])
        if "w" in payload:
            return Hyperplane(payload["w"], payload["b"])
        raise UsageError(f"{args.model} holds neither an svm nor a gsvm model")
    if args.w is None or args.b is None:
        raise UsageError("classify needs --model or both --w and --b")
    return Hyperplane(_vector(args.w, "--w"), float(_vector(args.b, "--b")[0]))


def cmd_classify(args) -> dict:
    model = _model_from_args(args)
    path = _require(args, "input", "--input")
    if args.unlabeled:
        X, y = parse_feature_csv(path), None
    else:
        ds = parse_dataset_csv(path)
        X, y = ds.X, ds.y
    if isinstance(model, GsvmModel):
        values = [control_apply(model, x) for x in X]
        # the mean component equals every component when rows are equal
        scores = [float(np.mean(v)) for v in values]
        preds = [1 if s >= 0 else -1 for s in scores]
        result = {"control_values": values}
    else:
        scores = [decision_value(model, x) for x in X]
        preds = [classify(model, x) for x in X]
        result = {}
    result.update({"decision_values": scores, "predictions": preds})
    if y is not None:
        result["accuracy"] = float(np.mean(np.array(preds) == y))
    return result


def _operator_from_args(args, dim: int | None) -> OperatorHandle:
    if args.op == "affine":
        if args.a is None or args.c is None:
            raise UsageError("--op affine needs --a and --c")
        a = _vector(args.a, "--a")
        if a.size != 1:
            raise UsageError("--a takes a single scalar")
        op = affine_operator(float(a[0]), _vector(args.c, "--c"))
    else:
        op = norm_gradient_operator(dim)
    lipschitz = args.lipschitz if args.lipschitz is not None else op.lipschitz
    alpha = args.alpha if args.alpha is not None else op.strong_monotone
    if (lipschitz, alpha) != (op.lipschitz, op.strong_monotone):
        try:
            op = OperatorHandle(op.fn, lipschitz=lipschitz, strong_monotone=alpha,
                                dim=op.dim if op.dim is not None else dim, name=op.name)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return op


def cmd_solve_vi(args) -> dict:
    start = _vector(_require(args, "start", "--start"), "--start")
    op = _operator_from_args(args, start.shape[0])
    if op.dim is not None and op.dim != start.shape[0]:
        raise UsageError(f"--start has length {start.shape[0]}, operator needs {op.dim}")
    cfg = SolverConfig(start=start, rho=args.rho, tol=args.tol, max_iter=args.max_iter)
    rep = fixed_point_solve(op, cfg, best_effort=args.best_effort)
    w_min, g_min, gap = complementarity(op, rep.solution)
    return {
        "operator": op.name,
        "solution": rep.solution,
        "iterations": rep.iterations,
        "converged": rep.converged,
        "rho": rep.rho,
        "theta": rep.theta,
        "lipschitz": op.lipschitz,
        "alpha": op.strong_monotone,
        "vi_residual": vi_residual(op, rep.solution, rep.rho),
        "complementarity": {"min_w": w_min, "min_op": g_min, "gap": gap},
        "max_contraction_ratio": rep.max_ratio,
        "within_certificate": rep.within_certificate,
        "residual_history": rep.residual_history,
        "contraction_ratios": rep.contraction_ratios,
    }


def cmd_check_op(args) -> dict:
    dim = args.dim
    if args.op == "affine" and args.c is not None:
        dim = _vector(args.c, "--c").shape[0]
    if dim is None:
        raise UsageError("--op norm-gradient needs --dim")
    op = _operator_from_args(args, dim)
    kw = {"pairs": args.samples, "seed": args.seed, "dim": dim}
    reports = {
        "monotone": check_monotone(op, **kw),
        "strictly_monotone": check_monotone(op, strict=True, **kw),
    }
    if op.lipschitz is not None:
        reports["lipschitz"] = check_lipschitz(op, op.lipschitz, **kw)
    result = {"operator": op.name, "dim": dim, "reports": reports}
    if op.strong_monotone is not None:
        reports["strongly_monotone"] = check_strongly_monotone(
            op, op.strong_monotone, **kw)
        result["hierarchy_consistent"] = class_hierarchy_check(
            op, op.strong_monotone, **kw)
    return result


def cmd_reproduce(args) -> tuple[dict, bool]:
    if args.all or args.example in (None, "all"):
        result = reproduce_all()
        return result, result["all_match"]
    result = reproduce_example(args.example)
    return result, result["matches_paper"]


def cmd_gen(args) -> dict:
    if args.example is not None:
        if args.example in EXAMPLE_FAMILIES:
            case = gen_family(EXAMPLE_FAMILIES[args.example])
        elif args.example in FIXTURE_IDS:
            case = fixture(args.example)
        else:
            raise UsageError(f"unknown example {args.example!r}")
    else:
        family = _require(args, "family", "--family or --example")
        n = _require(args, "n", "--n")
        spec = FamilySpec(
            family=family,
            n=n,
            alphas=_vector(_require(args, "alphas", "--alphas"), "--alphas"),
            k=float(_vector(_require(args, "k", "--k"), "--k")[0]),
            m=args.m,
            betas=_vector(args.betas, "--betas") if args.betas is not None else None,
        )
        case = gen_family(spec)
    if args.csv is not None:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_dataset_csv(case.dataset))
    return {
        "X": case.dataset.X,
        "y": case.dataset.y,
        "expected_w": case.expected_w,
        "expected_b": case.expected_b,
        "expected_norm": case.expected_norm,
        "support": list(case.support),
        "margin_feasible": case.margin_feasible,
        "notes": case.notes,
        "csv": args.csv,
    }


# plumbing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsvm", description="Hard-margin and generalized SVM toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="CSV dataset")
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--tol", type=float, default=1e-9)
        return p

    p = common(sub.add_parser("train-svm", help="hard-margin linear SVM"))
    p.add_argument("--solver", choices=("active-set", "enumeration"), default="active-set")

    p = common(sub.add_parser("train-gsvm", help="generalized SVM (matrix W, vector B)"))
    p.add_argument("--active", choices=("all", "svm"), default="all",
                   help="margin-equality points: every point, or the SVM support set")

    p = common(sub.add_parser("classify", help="label points with a trained model"))
    p.add_argument("--model", help="JSON report from train-svm or train-gsvm")
    p.add_argument("--w")
    p.add_argument("--b")
    p.add_argument("--unlabeled", action="store_true",
                   help="input has feature columns only")

    def operator_flags(p):
        p.add_argument("--op", choices=("affine", "norm-gradient"), default="affine")
        p.add_argument("--a", help="scalar slope of w -> a*w + c")
        p.add_argument("--c", help="offset vector, comma separated")
        p.add_argument("--lipschitz", type=float)
        p.add_argument("--alpha", type=float, help="strong monotonicity modulus")

    p = sub.add_parser("solve-vi", help="projected fixed-point solve over the orthant")
    p.add_argument("--output")
    operator_flags(p)
    p.add_argument("--start", help="starting vector, comma separated")
    p.add_argument("--rho", type=float)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10**6)
    p.add_argument("--best-effort", action="store_true",
                   help="iterate even when rho is outside the certified window")

    p = sub.add_parser("check-op", help="sampled operator-class certification")
    p.add_argument("--output")
    operator_flags(p)
    p.add_argument("--dim", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("reproduce", help="re-derive the worked examples")
    p.add_argument("--output")
    p.add_argument("--example", choices=EXAMPLE_IDS + ("all",))
    p.add_argument("--all", action="store_true")

    p = sub.add_parser("gen", help="emit a fixture or family dataset")
    p.add_argument("--output")
    p.add_argument("--example", choices=FIXTURE_IDS + tuple(EXAMPLE_FAMILIES))
    p.add_argument("--family", choices=("A", "B", "C"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--alphas")
    p.add_argument("--betas")
    p.add_argument("--k")
    p.add_argument("--csv", help="also write the dataset as CSV")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _diagnostic(message: str) -> None:
    use_color = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    prefix = "\033[31merror:\033[0m" if use_color else "error:"
    print(f"gsvm {prefix} {message}", file=sys.stderr)


def _validate_numeric(args) -> None:
    for name in ("tol", "rho", "lipschitz", "alpha"):
        _positive(getattr(args, name, None), f"--{name}")
    for name in ("max_iter", "samples", "n", "m", "dim"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be at least 1")


_COMMANDS = {
    "train-svm": cmd_train_svm,
    "train-gsvm": cmd_train_gsvm,
    "classify": cmd_classify,
    "solve-vi": cmd_solve_vi,
    "check-op": cmd_check_op,
    "gen": cmd_gen,
}


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(
        _join_negative_values(list(sys.argv[1:] if argv is None else argv)))


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    """Run a parsed command and return (exit code, report)."""
    report = {"command": args.command, "status": "ok", "result": None, "diagnostics": []}
    code = EXIT_OK
    try:
        _validate_numeric(args)
        if args.command == "reproduce":
            result, matched = cmd_reproduce(args)
            report["paper_match"] = matched
            if not matched:
                report["status"] = "mismatch"
                report["diagnostics"].append(
                    "at least one example differs from its golden values")
                code = EXIT_DOMAIN
        else:
            result = _COMMANDS[args.command](args)
        report["result"] = result
    except (UsageError, DatasetFormatError) as exc:
        code = EXIT_USAGE
        report.update(status="error", error={
            "code": getattr(exc, "code", "usage"), "message": str(exc),
            "line": getattr(exc, "line", None)})
        report["diagnostics"].append(str(exc))
    except GsvmError as exc:
        code = EXIT_DOMAIN
        error = {"code": exc.code, "message": str(exc)}
        for attr in ("certificate", "residual", "theta"):
            if hasattr(exc, attr):
                error[attr] = getattr(exc, attr)
        report.update(status="error", error=error)
        report["diagnostics"].append(str(exc))
    except (KeyError, ValueError) as exc:
        code = EXIT_USAGE
        report.update(status="error", error={"code": "usage", "message": str(exc)})
        report["diagnostics"].append(str(exc))
    return code, report


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    return execute(parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    code, report = execute(args)
    if code != EXIT_OK:
        for line in report["diagnostics"]:
            _diagnostic(line)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            dump_report(report, fh)
    else:
        dump_report(report, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
