"""Command-line entry point: ``knapqsec <subcommand> ...``.

Exit codes: 0 success/secure, 1 negative result, 2 input error,
3 indeterminate (greatest-prime-factor bound undecided).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import core, param_security, quantum_sim
from .chor_rivest import (
    ChorRivestPrivateKey,
    ChorRivestPublicKey,
    decrypt,
    encrypt,
    keygen,
)
from .errors import FieldError, KnapqsecError
from .ntheory import DEFAULT_RHO_BUDGET

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3

DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def _load_instance(path: str) -> core.KnapsackInstance:
    return core.instance_from_json(_read_json(path))


def _decimal(text: str, what: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise InputError(f"{what} must be a non-negative decimal integer, got {text!r}")
    return int(text)


def _value_arg(value: Optional[str], path: Optional[str], what: str) -> int:
    if path is not None:
        try:
            value = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if value is None:
        raise InputError(f"no {what} given")
    return _decimal(value, what)


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    rendered = json.dumps(payload, indent=2) if args.format == "json" else text
    print(rendered)
    if getattr(args, "output", None):
        Path(args.output).write_text(json.dumps(payload, indent=2) + "\n")


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return value


def _positive_int(text: str) -> int:
    value = _nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected an integer >= 1")
    return value


def _seed(text: str) -> int:
    value = _nonneg_int(text)
    if value >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


# -- subcommands ------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    solver = core.brute_force_solutions if args.method == "brute" else core.meet_in_the_middle_solutions
    sols = solver(inst)
    payload = {
        "method": args.method, "n": inst.n, "r": inst.r, "s": inst.s,
        "k": len(sols), "solutions": [str(m) for m in sols],
    }
    lines = [str(m) for m in sols] + [f"k={len(sols)}" if sols else "no solutions"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if sols else EXIT_NEGATIVE


def cmd_qsim(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    payload: dict[str, Any] = {"seed": args.seed, "instance": inst.to_json()}
    lines = [f"# seed={args.seed}", f"instance n={inst.n} r={inst.r} s={inst.s}"]
    if args.exact:
        dist = quantum_sim.exact_distribution(inst)
        p = quantum_sim.success_probability_exact(inst)
        report = quantum_sim.paper_bound_report(inst)
        payload.update({
            "mode": "exact",
            "distribution": dist.to_json(),
            "P_success": quantum_sim.fraction_str(p),
            "P_success_float": float(p),
            "bound_report": report.to_json(),
        })
        lines.append(f"P_success = {quantum_sim.fraction_str(p)} ({float(p):.6g})")
        for row in dist.to_json():
            lines.append(f"A={row['A']:<6} N0={row['N0']:<8} N1={row['N1']:<8} p1={row['p1']}")
        if report.p1_claim_violations:
            lines.append(f"P1 > 1/2 fails for A in {report.p1_claim_violations}")
    else:
        est = quantum_sim.estimate_success_probability(inst, args.trials, args.seed, args.z)
        payload.update({"mode": "monte-carlo", "estimate": est.to_json()})
        lo, hi = est.interval
        lines.append(
            f"success {est.successes}/{est.trials} = {est.frequency:.6g}  "
            f"[{lo:.6g}, {hi:.6g}] at z={est.z}"
        )
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cr_keygen(args: argparse.Namespace) -> int:
    pub, priv = keygen(args.p, args.h, args.seed, budget=args.budget)
    Path(args.public).write_text(json.dumps(pub.to_json()) + "\n")
    Path(args.private).write_text(json.dumps(priv.to_json()) + "\n")
    payload = {"seed": args.seed, "p": args.p, "h": args.h,
               "public": args.public, "private": args.private}
    _emit(args, payload, f"# seed={args.seed}\nwrote {args.public} and {args.private}")
    return EXIT_OK


def cmd_cr_encrypt(args: argparse.Namespace) -> int:
    pub = ChorRivestPublicKey.from_json(_read_json(args.public))
    m = _value_arg(args.message, args.message_file, "message")
    print(encrypt(pub, m))
    return EXIT_OK


def cmd_cr_decrypt(args: argparse.Namespace) -> int:
    pub = ChorRivestPublicKey.from_json(_read_json(args.public))
    priv = ChorRivestPrivateKey.from_json(_read_json(args.private))
    c = _value_arg(args.ciphertext, args.ciphertext_file, "ciphertext")
    print(decrypt(priv, pub, c))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    if args.chor_rivest:
        p, h = args.chor_rivest
        report = param_security.chor_rivest_quantum_audit(p, h, budget=args.budget)
        payload = report.to_json()
        fc = ", ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in payload["fc"].items())
        lines = [
            f"Chor-Rivest p={p} h={h}",
            f"FC: {fc}",
            f"greatest prime factor bound 10^13: {report.gpf.status}",
            f"quantum ratio 4^p/(p^h-1) = {payload['quantum_ratio_decimal']}"
            f" vs threshold 2^p ({payload['threshold_rule']})",
            f"quantum secure: {report.quantum_secure}",
        ]
        if report.break_probability_bound is not None:
            lines.append(f"break probability >= {payload['break_probability_display']}")
        lines.append(f"verdict: {report.verdict}")
        verdict = report.verdict
    else:
        n, r = args.zr
        result = param_security.knapsack_zr_audit(n, r)
        payload = result.to_json()
        lines = [f"knapsack over Z_r n={n} r={r}: ratio 4^n/r = {payload['ratio_decimal']}",
                 f"{payload['threshold_rule']}", f"verdict: {payload['verdict']}"]
        verdict = payload["verdict"]
    _emit(args, payload, "\n".join(lines))
    return {"secure": EXIT_OK, "insecure": EXIT_NEGATIVE}.get(verdict, EXIT_UNKNOWN)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("-o", "--output", help="also write the JSON report to this file")

    parser = argparse.ArgumentParser(
        prog="knapqsec",
        description="Knapsack-over-Z_r quantum algorithm simulator, Chor-Rivest toolkit and parameter audits.",
        epilog=f"Enumeration guards can be raised with {core.GUARD_ENV}=<n> (at your own risk).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="list all 0/1 solutions of an instance")
    p.add_argument("instance", help='JSON file {"r":..,"s":..,"b":[..]} or - for stdin')
    p.add_argument("--method", choices=("brute", "mitm"), default="mitm")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("qsim", parents=[common], help="simulate the quantum algorithm")
    p.add_argument("instance")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--z", type=float, default=3.0, help="interval width in standard deviations")
    p.add_argument("--exact", action="store_true", help="exact distribution instead of sampling")
    p.set_defaults(func=cmd_qsim)

    p = sub.add_parser("cr-keygen", parents=[common], help="generate a Chor-Rivest key pair")
    p.add_argument("p", type=_nonneg_int)
    p.add_argument("h", type=_nonneg_int)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--public", default="public.json")
    p.add_argument("--private", default="private.json")
    p.add_argument("--budget", type=_nonneg_int, default=DEFAULT_RHO_BUDGET)
    p.set_defaults(func=cmd_cr_keygen)

    p = sub.add_parser("cr-encrypt", help="encrypt a decimal message")
    p.add_argument("--public", required=True)
    p.add_argument("message", nargs="?")
    p.add_argument("--message-file")
    p.set_defaults(func=cmd_cr_encrypt)

    p = sub.add_parser("cr-decrypt", help="decrypt a decimal ciphertext")
    p.add_argument("--public", required=True)
    p.add_argument("--private", required=True)
    p.add_argument("ciphertext", nargs="?")
    p.add_argument("--ciphertext-file")
    p.set_defaults(func=cmd_cr_decrypt)

    p = sub.add_parser("audit", parents=[common], help="parameter security audit")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--chor-rivest", nargs=2, type=_nonneg_int, metavar=("P", "H"))
    group.add_argument("--zr", nargs=2, type=_nonneg_int, metavar=("N", "R"))
    p.add_argument("--budget", type=_nonneg_int, default=DEFAULT_RHO_BUDGET,
                   help="Pollard rho iteration budget for the prime-factor bound")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(sys, "set_int_max_str_digits"):
        # exact ratios such as 4^p / (p^h - 1) can run to thousands of digits
        sys.set_int_max_str_digits(0)
    try:
        return args.func(args)
    except FieldError as exc:
        where = f" (field {exc.field!r})" if exc.field else ""
        print(f"{exc.name}{where}: {exc}", file=sys.stderr)
    except KnapqsecError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
