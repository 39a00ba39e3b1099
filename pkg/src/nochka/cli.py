"""Command-line interface.

Exit codes: 0 success, 1 a mathematical condition fails, 2 invalid input.
Setting NOCHKA_SEED overrides any --seed flag.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import oracle
from .arrangement import Arrangement, check_subgeneral, closed_flats, embed_restrict_generator, excess, validate
from .diagram import build_diagram, compute_weights, toda_check, verify_certificate
from .errors import InsufficientHyperplanesError, SubgeneralPositionError
from .fileio import CertificateFile, FormatError, dump_arrangement, fmt, load_arrangement, load_weights
from .svg import render_svg

OK, FAIL, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load(path) -> Arrangement:
    try:
        arr = load_arrangement(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except FormatError as exc:
        raise InputError(str(exc)) from None
    problems = validate(arr)
    if problems:
        raise InputError(
            "; ".join(
                f"{path}: {reason}" if i is None else f"{path}: hyperplanes[{i}] (H_{i + 1}): {reason}"
                for i, reason in problems
            )
        )
    return arr


def _seed(args) -> int:
    env = os.environ.get("NOCHKA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"NOCHKA_SEED must be an integer, got {env!r}") from None
    return args.seed


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _describe_violations(arr: Arrangement, bad) -> None:
    for f in bad:
        print(
            f"violation: flat {f.label()} alpha={f.alpha} codim={f.codim} "
            f"exceeds codim + n - k = {f.codim + arr.n - arr.k} by {excess(arr, f)}"
        )


def cmd_check(args) -> int:
    arr = _load(args.path)
    bad = check_subgeneral(arr)
    if bad:
        _describe_violations(arr, bad)
        return FAIL
    print(
        f"ok: alpha <= codim + n - k on all {len(closed_flats(arr))} flats "
        f"(k={arr.k}, n={arr.n}, q={arr.q})"
    )
    return OK


def cmd_weights(args) -> int:
    arr = _load(args.path)
    try:
        d = build_diagram(arr)
    except InsufficientHyperplanesError as exc:
        _err(str(exc))
        return FAIL
    except SubgeneralPositionError as exc:
        _describe_violations(arr, exc.violations)
        return FAIL
    cert = compute_weights(arr, d)
    text = CertificateFile.from_certificate(arr, cert).dumps()
    if args.out or not args.pretty:
        _write(text, args.out)
    if args.pretty:
        print("weights:  " + " ".join(fmt(w) for w in cert.omegas))
        print(f"tau:      {fmt(cert.tau)}")
        print(f"sigma:    {fmt(cert.sigma)}")
        print("hull:     " + " -> ".join(f"({x},{y})" for x, y in cert.hull))
        print("slopes:   " + " ".join(fmt(s) for s in d.slopes))
        print("chain:    " + " ⊇ ".join("{" + ",".join(str(i + 1) for i in r) + "}" for r in cert.representatives) + " ⊇ ∅")
        for v in cert.report.verdicts:
            print(f"{'pass' if v.passed else 'FAIL'}  {v.name:<17} slack {fmt(v.slack):<8} {v.witness}")
    return OK if cert.passed else FAIL


def cmd_verify(args) -> int:
    arr = _load(args.path)
    seed = _seed(args)
    if args.oracle_trials < 0:
        raise InputError("--oracle-trials must be nonnegative")
    try:
        if args.weights:
            try:
                omegas = load_weights(args.weights)
            except OSError as exc:
                raise InputError(f"{args.weights}: {exc.strerror}") from None
            except FormatError as exc:
                raise InputError(str(exc)) from None
            if len(omegas) != arr.q:
                raise InputError(f"{args.weights}: {len(omegas)} weights for {arr.q} hyperplanes")
        bad = check_subgeneral(arr)
        if bad:
            _describe_violations(arr, bad)
            return FAIL
        if not args.weights:
            omegas = compute_weights(arr).omegas
        report = verify_certificate(arr, omegas)
    except InsufficientHyperplanesError as exc:
        _err(str(exc))
        return FAIL

    status = OK
    print(f"tau = {fmt(report.tau)}, sigma = {fmt(report.sigma)}")
    for v in report.verdicts:
        print(f"{'pass' if v.passed else 'FAIL'}  {v.name:<17} slack {fmt(v.slack):<8} {v.witness}")
        if not v.passed:
            status = FAIL
    if report.tight_flats:
        print("tight flats: " + " ".join(f.label() for f in report.tight_flats))
    t = toda_check(build_diagram(arr))
    print(f"{'pass' if t.passed else 'FAIL'}  toda_derivation    slack {fmt(t.toda_slack)} at P_s={t.last_vertex}")
    if not t.passed:
        status = FAIL
    if args.oracle_trials:
        for r in oracle.run_oracles(arr, omegas, trials=args.oracle_trials, seed=seed):
            print(f"{'pass' if r.passed else 'FAIL'}  oracle:{r.name:<21} {r.instances} checks, {len(r.failures)} failures")
            for witness, expected, actual in r.failures[:5]:
                print(f"      at {witness}: expected {expected}, got {actual}")
            if not r.passed:
                status = FAIL
    return status


def cmd_generate(args) -> int:
    seed = _seed(args)
    n, k, q = args.n, args.k, args.q
    if not (1 <= k <= n):
        raise InputError(f"need 1 <= k <= n, got k={k}, n={n}")
    if q <= 2 * n - k + 1:
        raise InputError(f"need q > 2n-k+1 = {2 * n - k + 1}, got q={q}")
    if args.coincidences < 0:
        raise InputError("--coincidences must be nonnegative")
    arr = embed_restrict_generator(n, k, q, seed=seed, coincidence_budget=args.coincidences)
    _write(dump_arrangement(arr), args.out)
    return OK


def cmd_diagram(args) -> int:
    arr = _load(args.path)
    try:
        d = build_diagram(arr)
    except InsufficientHyperplanesError as exc:
        _err(str(exc))
        return FAIL
    except SubgeneralPositionError as exc:
        _describe_violations(arr, exc.violations)
        return FAIL
    _write(render_svg(d), args.out)
    return OK


def cmd_lattice(args) -> int:
    arr = _load(args.path)
    for f in closed_flats(arr):
        forms = "[" + ", ".join("[" + ", ".join(fmt(v) for v in row) + "]" for row in f.ann.rows) + "]"
        print(f"{f.label():<24} codim={f.codim} alpha={f.alpha} forms={forms}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nochka", description="Nochka weights for hyperplanes in subgeneral position.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="test alpha(L) <= codim L + n - k on every flat")
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("weights", help="compute the weights and write a certificate")
    s.add_argument("path")
    s.add_argument("--out", help="certificate file (default: stdout)")
    s.add_argument("--pretty", action="store_true", help="print a readable summary")
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("verify", help="check weights against every condition")
    s.add_argument("path")
    s.add_argument("--weights", help="certificate whose weights are checked (default: recompute)")
    s.add_argument("--oracle-trials", type=int, default=100, help="random oracle samples; 0 skips oracles")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("generate", help="random arrangement in n-subgeneral position")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coincidences", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("diagram", help="render the Nochka diagram as SVG")
    s.add_argument("path")
    s.add_argument("--out")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("lattice", help="list every flat")
    s.add_argument("path")
    s.set_defaults(func=cmd_lattice)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
