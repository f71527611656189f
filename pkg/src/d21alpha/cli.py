"""Command-line interface: axiom checks, Verma dumps, H^1 points and scans.

Data goes to stdout (or --output), diagnostics to stderr.  Exit codes:
0 success, 1 invalid parameters, 2 mathematical/internal inconsistency.
Output is byte-stable for a fixed configuration regardless of --jobs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import linalg
from .algebra import build_algebra
from .cohomology import (
    ConsistencyError, GradedLayout, PSI_REGIMES, compute_point,
    full_derivation_dims, h1, psi, psi_lambda, zero_weight_inner_space,
)
from .enveloping import VermaModule, verify_module_axioms
from .field import is_prime

MAX_P = 31
MAX_P_FULL = 7

# customary 2p-offset aliases for the nonzero locus of the superdimension table
LAMBDA_ALIASES = (
    ((2, -2, -2), "(2p+2,2p-2,2p-2)"),
    ((2, -2, 0), "(2p+2,2p-2,2p)"),
    ((2, 0, -2), "(2p+2,2p,2p-2)"),
    ((3, -3, -3), "(2p+3,2p-3,2p-3)"),
)


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_triple(text: str, p: int, label: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliError(f"{label} must be three comma-separated residues")
    try:
        vals = tuple(int(v) % p for v in parts)
    except ValueError as exc:
        raise CliError(f"{label}: {exc}") from None
    return vals


def _validate_p(p: int, method: str = "graded") -> None:
    if not is_prime(p) or p <= 3 or p > MAX_P:
        raise CliError(f"p must be a prime with 3 < p <= {MAX_P}, got {p}")
    if method in ("full", "both") and p > MAX_P_FULL:
        raise CliError(f"the full (ungraded) method is capped at p <= {MAX_P_FULL}")


def _alphas(text: str, p: int) -> list[int]:
    if text == "all":
        return [a for a in range(1, p - 1)]
    try:
        a = int(text) % p
    except ValueError:
        raise CliError(f"alpha must be an integer or 'all', got {text!r}") from None
    if a in (0, p - 1):
        raise CliError(f"alpha must avoid 0 and -1 mod p, got {a}")
    return [a]


def _single_alpha(text: str, p: int) -> int:
    alphas = _alphas(text, p)
    if len(alphas) != 1:
        raise CliError("this command needs a single alpha; use scan for sweeps")
    return alphas[0]


def _lambdas(spec_text: str, p: int) -> list[tuple[int, int, int]]:
    if spec_text == "all":
        return [
            (l1, l2, l3)
            for l1 in range(p)
            for l2 in range(p)
            for l3 in range(p)
        ]
    return [_parse_triple(spec_text, p, "lambda")]


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("H1_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    _validate_p(args.p)
    alpha = _single_alpha(args.alpha, args.p)
    algebra = build_algebra(args.p, alpha)
    if args.dump_brackets:
        with open(args.dump_brackets, "w", encoding="utf-8") as fh:
            json.dump(algebra.bracket_table_json(), fh, indent=1)
        print(f"bracket tensor written to {args.dump_brackets}", file=sys.stderr)
    violations = algebra.check_axioms()
    for v in violations:
        print(f"algebra axiom violation [{v.kind}] at {v.generators}: {v.detail}",
              file=sys.stderr)
    module_violations: list[str] = []
    if not args.algebra_only:
        lam = _parse_triple(args.lam, args.p, "lambda")
        chi = _parse_triple(args.chi_f, args.p, "chi-f")
        module_violations = verify_module_axioms(args.p, alpha, lam, chi)
        for v in module_violations:
            print(f"module axiom violation: {v}", file=sys.stderr)
    total = len(violations) + len(module_violations)
    print(f"check p={args.p} alpha={args.alpha}: "
          f"{'ok' if total == 0 else f'{total} violations'}", file=sys.stderr)
    return 0 if total == 0 else 2


def cmd_verma(args) -> int:
    _validate_p(args.p)
    lam = _parse_triple(args.lam, args.p, "lambda")
    chi = _parse_triple(args.chi_f, args.p, "chi-f")
    module = VermaModule(build_algebra(args.p, _single_alpha(args.alpha, args.p)), lam, chi)
    decomposition = module.weight_decomposition()
    weights = []
    for beta in sorted(decomposition):
        basis = []
        for n in sorted(decomposition[beta]):
            code = n & 15
            m = n >> 4
            basis.append(
                [m // (args.p**2), (m // args.p) % args.p, m % args.p,
                 (code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1]
            )
        weights.append({"beta": list(beta), "dim": len(basis), "basis": basis})
    payload = {"lambda": list(lam), "weights": weights}
    _emit(json.dumps(payload, separators=(",", ":")) + "\n", args.output)
    return 0


SCAN_HEADER = "p,alpha,lambda1,lambda2,lambda3,chif1,chif2,chif3,h1_even,h1_odd"


def _scan_row(p, alpha, lam, chi, even, odd) -> str:
    return (f"{p},{alpha},{lam[0]},{lam[1]},{lam[2]},"
            f"{chi[0]},{chi[1]},{chi[2]},{even},{odd}")


def cmd_h1(args) -> int:
    _validate_p(args.p, args.method)
    lam = _parse_triple(args.lam, args.p, "lambda")
    chi = _parse_triple(args.chi_f, args.p, "chi-f")
    alpha = _single_alpha(args.alpha, args.p)
    module = VermaModule(build_algebra(args.p, alpha), lam, chi)
    result = h1(module)
    payload = result.to_json_dict()
    if args.method in ("full", "both"):
        oracle = {}
        for parity, label in ((0, "even"), (1, "odd")):
            der, ider = full_derivation_dims(module, parity)
            der0, ider0 = result.graded_dims[parity]
            oracle[label] = {"der": der, "ider": ider, "der0": der0, "ider0": ider0}
            graded_dim = result.dim_even if parity == 0 else result.dim_odd
            if der - ider != graded_dim or der != der0 + ider - ider0:
                print(
                    f"oracle mismatch ({label}): der={der} ider={ider} "
                    f"graded={graded_dim} der0={der0} ider0={ider0}",
                    file=sys.stderr,
                )
                return 2
        payload["oracle"] = oracle
    if args.format == "csv":
        text = SCAN_HEADER + "\n" + _scan_row(
            args.p, alpha, lam, chi, result.dim_even, result.dim_odd
        ) + "\n"
    else:
        text = json.dumps(payload, separators=(",", ":")) + "\n"
    _emit(text, args.output)
    return 0


def _point_task(task):
    p, alpha, lam, chi = task
    s = compute_point(p, alpha, lam, chi)
    return (s.dim_even, s.dim_odd)


def cmd_scan(args) -> int:
    _validate_p(args.p)
    p = args.p
    chi = _parse_triple(args.chi_f, p, "chi-f")
    alphas = _alphas(args.alpha, p)
    lambdas = _lambdas(args.lam, p)
    tasks = [(p, a, lam, chi) for a in alphas for lam in lambdas]
    jobs = _jobs(args)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            dims = list(pool.map(_point_task, tasks, chunksize=8))
    else:
        dims = [_point_task(t) for t in tasks]
    nonzero = [
        (a, lam, even, odd)
        for (tp, a, lam, tchi), (even, odd) in zip(tasks, dims)
        if even or odd
    ]
    if args.format == "json":
        rows = [
            {
                "p": tp, "alpha": a, "lambda": list(lam), "chi_f": list(tchi),
                "h1": {"even": even, "odd": odd},
            }
            for (tp, a, lam, tchi), (even, odd) in zip(tasks, dims)
        ]
        text = json.dumps(
            {"rows": rows, "nonzero_rows": len(nonzero)}, separators=(",", ":")
        ) + "\n"
        _emit(text, args.output)
        return 0
    lines = [SCAN_HEADER]
    for (tp, a, lam, tchi), (even, odd) in zip(tasks, dims):
        lines.append(_scan_row(tp, a, lam, tchi, even, odd))
    lines.append(f"# nonzero rows: {len(nonzero)} of {len(tasks)}")
    for a, lam, even, odd in nonzero:
        alias = next(
            (
                text
                for pattern, text in LAMBDA_ALIASES
                if lam == tuple(v % p for v in pattern)
            ),
            "(no standard alias)",
        )
        lines.append(f"# alpha={a} lambda=({lam[0]},{lam[1]},{lam[2]}) "
                     f"sdim=({even},{odd}) {alias}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_verify_psi(args) -> int:
    _validate_p(args.p)
    which = args.which
    p = args.p
    lam = psi_lambda(which, p)
    if args.lam is not None:
        requested = _parse_triple(args.lam, p, "lambda")
        if requested != lam:
            raise CliError(
                f"psi{which} is defined at lambda={lam} mod {p}, got {requested}"
            )
    alpha = _single_alpha(args.alpha, p)
    module = VermaModule(build_algebra(p, alpha), lam, (0, 0, 0))
    result = h1(module)
    _, parity, names = PSI_REGIMES[which]
    layout = GradedLayout(module, parity)
    inner = zero_weight_inner_space(module, parity)
    span_vectors = list(inner.basis)
    for rep in result.representatives:
        if rep.parity == parity:
            span_vectors.append(layout.encode(rep.images))
    span = linalg.Subspace.from_vectors(span_vectors, layout.ncols, module.p)
    directions = []
    reduced_classes = []
    notes: tuple[str, ...] = ()
    ok = True
    for k, name in enumerate(names):
        params = [0] * len(names)
        params[k] = 1
        built = psi(which, params, module)
        notes = built.notes
        encoded = layout.encode(built.map.images)
        outer = bool(inner.reduce(encoded).any())
        in_span = span.contains(encoded)
        reduced_classes.append(inner.reduce(encoded))
        directions.append(
            {
                "param": name,
                "completion": built.completion,
                "derivation": True,
                "outer": outer,
                "in_h1_span": in_span,
            }
        )
        ok = ok and outer and in_span
    class_rank = linalg.rank(np.array(reduced_classes, dtype=np.int64), module.p)
    payload = {
        "psi": which,
        "p": p,
        "alpha": alpha,
        "lambda": list(lam),
        "chi_f": [0, 0, 0],
        "parity": "even" if parity == 0 else "odd",
        "parameters": list(names),
        "directions": directions,
        "notes": list(notes),
        "h1": {"even": result.dim_even, "odd": result.dim_odd},
        "outer_class_rank": class_rank,
    }
    if which == 1:
        h1_parity_dim = result.dim_even if parity == 0 else result.dim_odd
        payload["finding"] = (
            f"the displayed psi1 family carries {len(names)} parameters whose "
            f"classes span {class_rank} of the {h1_parity_dim} even outer "
            f"classes; one further class (the f1-direction inner limit) is "
            f"needed to exhaust H^1"
        )
    _emit(json.dumps(payload, separators=(",", ":")) + "\n", args.output)
    return 0 if ok else 2


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="d21alpha", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, lam_default=None):
        sp.add_argument("--p", type=int, required=True, help="prime modulus > 3")
        sp.add_argument("--alpha", default="1",
                        help="algebra parameter; residue or 'all' (scan only)")
        if lam_default is not None:
            sp.add_argument("--lambda", dest="lam", default=lam_default,
                            help="highest weight, e.g. 2,3,3 (or 'all' for scan)")
        sp.add_argument("--chi-f", dest="chi_f", default="0,0,0",
                        help="character values chi(f1),chi(f2),chi(f3)")
        sp.add_argument("--output", default=None, help="write data here, not stdout")

    sp = sub.add_parser("check", help="algebra and module axiom sweep")
    common(sp, lam_default="1,1,1")
    sp.add_argument("--algebra-only", action="store_true",
                    help="skip the module-axiom stage")
    sp.add_argument("--dump-brackets", default=None,
                    help="write the bracket tensor as JSON to this path")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verma", help="dump the weight decomposition as JSON")
    common(sp, lam_default="0,0,0")
    sp.set_defaults(func=cmd_verma)

    sp = sub.add_parser("h1", help="H^1 superdimension at one parameter point")
    common(sp, lam_default="0,0,0")
    sp.add_argument("--method", choices=("graded", "full", "both"),
                    default="graded",
                    help="graded solver, ungraded oracle, or cross-checked both")
    sp.set_defaults(func=cmd_h1)

    sp = sub.add_parser("scan", help="sweep lambda/alpha and emit CSV")
    common(sp, lam_default="all")
    sp.add_argument("--jobs", type=int, default=None,
                    help="worker processes (default: H1_JOBS or cpu count)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify-psi", help="verify one outer family psi_1..psi_4")
    sp.add_argument("--which", type=int, required=True, choices=(1, 2, 3, 4))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--lambda", dest="lam", default=None,
                    help="optional; must match the family's residues")
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_verify_psi)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
