"""Command line interface.

Usage::

    gaussmarkov build spec.json > cov.json
    gaussmarkov check cov.json --tol 1e-8
    gaussmarkov condition spec.json --target 2 --given 0,1
    gaussmarkov geometry gram.json
    gaussmarkov entropy spec.json
    gaussmarkov maxent spec.json --trials 20 --seed 1
    gaussmarkov sample --spec spec.json --count 1000 --seed 7 > draws.tsv
    gaussmarkov estimate draws.tsv

Reports go to stdout as JSON (``--out`` redirects to a file), notes go to
stderr. Indices are zero-based. Input files may be ``-`` for stdin.

Exit status: 0 on success or pass, 1 when a diagnostic fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import conditioning, diagnostics, entropy, entropy_opt, fileio, geometry, sampler
from .linalg_core import NotPositiveDefinite
from .markov_model import GaussianModel, build_model

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Emit:
    def __init__(self, out: str | None):
        self.out = out

    def text(self, s: str) -> None:
        if self.out is None or self.out == "-":
            sys.stdout.write(s)
        else:
            Path(self.out).write_text(s)

    def json(self, obj) -> None:
        self.text(fileio.dumps(obj) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(), path
    except OSError as exc:
        raise fileio.InputError(f"{path}: cannot read ({exc.strerror})") from None


def _read_json(path: str):
    text, source = _read_text(path)
    try:
        return json.loads(text), source
    except json.JSONDecodeError as exc:
        raise fileio.InputError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None


def _read_model(path: str) -> tuple[GaussianModel, str]:
    """Spec file -> closed-form Markov model; matrix file -> generic model."""
    obj, source = _read_json(path)
    if isinstance(obj, dict) and "sigma" in obj:
        return build_model(fileio.parse_spec(obj, source)), "spec"
    c = fileio.parse_matrix(obj, source)
    try:
        return GaussianModel.from_covariance(c), "matrix"
    except NotPositiveDefinite as exc:
        raise fileio.InputError(f"{source}: covariance is not positive definite ({exc})") from None


def _index_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty index list")
    return out


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (np.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return k


def _seed(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative: {text!r}")
    return k


# -- subcommands ---------------------------------------------------------------

def cmd_build(args, emit: _Emit) -> int:
    obj, source = _read_json(args.spec)
    spec = fileio.parse_spec(obj, source)
    model = build_model(spec)
    report = fileio.matrix_to_dict(model.covariance)
    report.update(precision=model.precision.tolist(), logdet=model.logdet, spec=spec.to_dict())
    emit.json(report)
    return EXIT_OK


def cmd_check(args, emit: _Emit) -> int:
    obj, source = _read_json(args.matrix)
    c = fileio.parse_matrix(obj, source)
    tol = diagnostics.DEFAULT_TOL if args.tol is None else args.tol
    try:
        report = diagnostics.diagnose(c, tol)
    except NotPositiveDefinite as exc:
        raise fileio.InputError(f"{source}: covariance is not positive definite ({exc})") from None
    emit.json(report.to_dict())
    _note("matrix criteria: " + ("all pass" if report.all_pass else "not all pass")
          + " (these test the covariance matrix; the Markov property follows only for Gaussian data)")
    return EXIT_OK if report.all_pass else EXIT_FAIL


def cmd_condition(args, emit: _Emit) -> int:
    model, _ = _read_model(args.model)
    try:
        law = conditioning.condition(model, args.target, args.given)
    except (IndexError, ValueError) as exc:
        raise fileio.InputError(str(exc)) from None
    emit.json({
        "target": list(law.target),
        "given": list(law.given),
        "mean_map": law.mean_map.tolist(),
        "conditional_covariance": law.conditional_covariance.tolist(),
    })
    return EXIT_OK


def cmd_geometry(args, emit: _Emit) -> int:
    obj, source = _read_json(args.gram)
    g = fileio.parse_matrix(obj, source)
    try:
        basis = geometry.basis_from_gram(g)
    except (ValueError, NotPositiveDefinite) as exc:
        raise fileio.InputError(f"{source}: {exc}") from None
    tol = 1e-7 if args.tol is None else args.tol
    gaps = geometry.markov_basis_gaps(basis)
    ok, verdicts = geometry.is_markov_basis(basis, tol)
    n = basis.n
    emit.json({
        "is_markov": ok,
        "tolerance": tol,
        "criteria": dict(zip(geometry.MARKOV_CRITERIA, verdicts)),
        "gaps": gaps,
        "projection_parallelism": [geometry.projection_parallelism_gap(basis, k) for k in range(1, n)],
        "symmetric_parallelism": [geometry.symmetric_parallelism_gap(basis, k) for k in range(1, n)],
        "split_orthogonality": [geometry.split_orthogonality_gap(basis, k) for k in range(1, n - 1)],
    })
    return EXIT_OK if ok else EXIT_FAIL


def cmd_entropy(args, emit: _Emit) -> int:
    model, kind = _read_model(args.input)
    if kind == "spec":
        report = entropy.markov_entropy(model.spec)
    else:
        report = entropy.gaussian_entropy(model)
    emit.json(dict(report.to_dict(), source=kind))
    return EXIT_OK


def cmd_maxent(args, emit: _Emit) -> int:
    obj, source = _read_json(args.spec)
    spec = fileio.parse_spec(obj, source)
    seed = 0 if args.seed is None else args.seed
    problem = entropy_opt.CompletionProblem(spec)
    if problem.size:
        start = entropy_opt.random_feasible_values(problem, np.random.default_rng(seed))
    else:
        start = None
    result = entropy_opt.maximize(problem, start=start)
    verdict = entropy_opt.verify_max_entropy(spec, trials=args.trials, seed=seed)
    emit.json({"result": result.to_dict(), "verdict": verdict.to_dict()})
    if verdict.vacuous:
        _note("no free entries: the band is the whole matrix")
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_sample(args, emit: _Emit) -> int:
    obj, source = _read_json(args.spec)
    spec = fileio.parse_spec(obj, source)
    seed = 0 if args.seed is None else args.seed
    batch = sampler.sample_chain(spec, args.count, seed)
    emit.text(fileio.format_samples(batch.values))
    return EXIT_OK


def cmd_estimate(args, emit: _Emit) -> int:
    text, source = _read_text(args.samples)
    X = fileio.parse_samples(text, source)
    report = fileio.matrix_to_dict(sampler.empirical_covariance(X))
    report["count"] = int(X.shape[0])
    emit.json(report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="decision tolerance (check: 1e-8, geometry: 1e-7)")
    common.add_argument("--seed", type=_seed, default=None, help="random seed (default 0)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="gaussmarkov",
        description="Markov Gaussian chains: closed forms, diagnostics, max-entropy completion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="covariance/precision from a spec file")
    p.add_argument("spec")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", parents=[common], help="Markov diagnostics of a covariance matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("condition", parents=[common], help="conditional law of a sub-vector")
    p.add_argument("model", help="spec or covariance matrix file")
    p.add_argument("--target", type=_index_list, required=True)
    p.add_argument("--given", type=_index_list, required=True)
    p.set_defaults(func=cmd_condition)

    p = sub.add_parser("geometry", parents=[common], help="Markov criteria for a unit-diagonal Gram matrix")
    p.add_argument("gram")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("entropy", parents=[common], help="differential entropy of a spec or matrix")
    p.add_argument("input")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("maxent", parents=[common], help="log-det maximization over completions")
    p.add_argument("spec")
    p.add_argument("--trials", type=_positive_int, default=20)
    p.set_defaults(func=cmd_maxent)

    p = sub.add_parser("sample", parents=[common], help="draw from the Markov chain of a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("estimate", parents=[common], help="empirical covariance of a sample file")
    p.add_argument("samples")
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help at 0
        return int(exc.code or 0)
    try:
        return args.func(args, _Emit(args.out))
    except fileio.InputError as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
