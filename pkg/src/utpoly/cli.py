"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad polynomial, target outside the
image, ...), 2 usage error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from . import __version__
from .degree import (
    DEFAULT_COST_LIMIT,
    commutator_degree,
    is_identity_bruteforce,
    substitution_count,
    witness_evaluation,
)
from .errors import DomainError, InternalVerificationFailure, UtpolyError
from .freealg import MultilinearPoly, format_poly, scalar_to_str
from .parsing import parse
from .solver import certify_image, solve_preimage
from .triangular import UTMatrix, evaluate, matrix_from_json, matrix_to_json, scale, unit

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    poly_text: str | None = None
    poly_file: str | None = None
    target: str | None = None
    n: int | None = None
    seed: int = 0
    max_retries: int = 5
    samples: int = 20
    output: str = "json"
    force: bool = False


def _read_poly(config: CliConfig, stdin: TextIO) -> MultilinearPoly:
    if (config.poly_text is None) == (config.poly_file is None):
        raise UsageError("give exactly one polynomial source: an argument or --file")
    if config.poly_file is not None:
        try:
            text = Path(config.poly_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read polynomial file: {exc}") from None
    elif config.poly_text == "-":
        text = stdin.read()
    else:
        text = config.poly_text
    return parse(text)


def _read_target(config: CliConfig) -> UTMatrix:
    if config.target is None:
        raise UsageError("preimage needs --target (inline matrix JSON or a path to one)")
    raw = config.target.strip()
    if not raw.startswith("{"):
        try:
            raw = Path(raw).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read target file: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"target is not valid JSON: {exc}") from None
    try:
        return matrix_from_json(data)
    except DomainError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad target matrix: {exc}") from None


def _need_n(config: CliConfig) -> int:
    if config.n is None:
        raise UsageError(f"{config.command} needs --n")
    if config.n < 1:
        raise UsageError("--n must be positive")
    return config.n


def _matrix_text(a: UTMatrix) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(f"{v}*E({i},{j})" for (i, j), v in sorted(a.entries.items()))


def _cmd_parse(config, poly):
    data = {"polynomial": format_poly(poly), "arity": poly.arity, "terms": len(poly)}
    return data, format_poly(poly)


def _cmd_degree(config, poly):
    report = commutator_degree(poly)
    data = report.to_json()
    w = report.witness
    text = (
        f"commutator-degree: {report.degree}\n"
        f"witness: k={w.k} T={[list(b) for b in w.T]} t={list(w.t)}\n"
        f"beta: {data['beta']}\n"
        f"profiles checked: {report.profiles_checked}"
    )
    return data, text


def _cmd_identity(config, poly):
    n = _need_n(config)
    result = is_identity_bruteforce(poly, n, force=config.force, limit=DEFAULT_COST_LIMIT)
    cost = substitution_count(poly.arity, n) if poly else 0
    data = {"n": n, "identity": result, "substitutions": cost}
    verdict = "is" if result else "is not"
    return data, f"f {verdict} a polynomial identity of UT_{n}"


def _cmd_witness(config, poly):
    report = commutator_degree(poly)
    r = report.degree
    if r == 0:
        raise _DegreeZeroWitness(
            f"f has commutator-degree 0 (coefficient sum {scalar_to_str(report.witness_beta)}); "
            "a witness evaluation needs degree >= 1"
        )
    mats = witness_evaluation(report.witness)
    value = evaluate(poly, mats)
    expected = scale(report.witness_beta, unit(r + 1, 1, r + 1))
    data = {
        "degree": r,
        "witness": report.witness.to_json(),
        "beta": scalar_to_str(report.witness_beta),
        "n": r + 1,
        "matrices": [matrix_to_json(c) for c in mats],
        "value": matrix_to_json(value),
        "expected": matrix_to_json(expected),
        "matches": value == expected,
    }
    if value != expected:
        raise InternalVerificationFailure("witness evaluation does not equal beta * E_(1,r+1)")
    lines = [f"commutator-degree {r}; on UT_{r + 1}:"]
    lines += [f"  x{q} -> {_matrix_text(c)}" for q, c in enumerate(mats, start=1)]
    lines.append(f"f = {_matrix_text(value)}  (beta * E(1,{r + 1}))")
    return data, "\n".join(lines)


class _DegreeZeroWitness(DomainError):
    pass


def _cmd_preimage(config, poly):
    target = _read_target(config)
    n = config.n if config.n is not None else target.n
    cert = solve_preimage(poly, target, n, seed=config.seed, max_retries=config.max_retries)
    data = cert.to_json()
    lines = [f"commutator-degree {cert.degree}; verified f(c) = target (seed {cert.seed}, retries {cert.retries})"]
    lines += [f"  c{q} = {_matrix_text(c)}" for q, c in enumerate(cert.matrices, start=1)]
    return data, "\n".join(lines)


def _cmd_certify(config, poly):
    n = _need_n(config)
    if config.samples < 1:
        raise UsageError("--samples must be positive")
    report = certify_image(poly, n, samples=config.samples, seed=config.seed, max_retries=config.max_retries)
    data = report.to_json()
    text = (
        f"commutator-degree {report.degree}; image on UT_{n} is {report.image}\n"
        f"containment: {report.evaluations_checked} evaluations, "
        f"{'ok' if report.containment_passed else 'FAILED'}\n"
        f"surjectivity: {report.solved} targets solved "
        f"({report.unit_targets} units, {report.random_targets} random), "
        f"{'ok' if report.surjectivity_passed else 'FAILED'}\n"
        f"{'PASS' if report.passed else 'FAIL'}"
    )
    if not report.passed:
        raise _CertificationFailed(data, text)
    return data, text


class _CertificationFailed(InternalVerificationFailure):
    def __init__(self, data, text):
        super().__init__("image certification failed")
        self.data = data
        self.text = text


COMMANDS = {
    "parse": _cmd_parse,
    "degree": _cmd_degree,
    "identity": _cmd_identity,
    "witness": _cmd_witness,
    "preimage": _cmd_preimage,
    "certify": _cmd_certify,
}


def _emit(config: CliConfig, data, text, stdout: TextIO) -> None:
    if config.output == "json":
        stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        stdout.write(text + "\n")


def run(config: CliConfig, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        poly = _read_poly(config, stdin)
        data, text = COMMANDS[config.command](config, poly)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except _CertificationFailed as exc:
        _emit(config, exc.data, exc.text, stdout)
        stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except InternalVerificationFailure as exc:
        stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except UtpolyError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    _emit(config, data, text, stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utpoly",
        description="Commutator-degree and images of multilinear polynomials on upper triangular matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("poly", nargs="?", help="polynomial text, or '-' to read stdin")
    common.add_argument("--file", dest="poly_file", help="read the polynomial from a file")
    common.add_argument("--format", dest="output", choices=("json", "text"), default="json")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("parse", parents=[common], help="print the canonical expanded form")
    sub.add_parser("degree", parents=[common], help="commutator-degree with a witness profile")
    p = sub.add_parser("identity", parents=[common], help="brute-force test of f in Id(UT_n)")
    p.add_argument("--n", type=int)
    p.add_argument("--force", action="store_true", help=f"allow more than {DEFAULT_COST_LIMIT:.0e} substitutions")
    sub.add_parser("witness", parents=[common], help="matrix-unit evaluation showing f is not an identity of UT_{r+1}")
    p = sub.add_parser("preimage", parents=[common], help="solve f(c) = target exactly")
    p.add_argument("--n", type=int)
    p.add_argument("--target", help="matrix JSON inline, or a path to a JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=5)
    p = sub.add_parser("certify", parents=[common], help="check that the image of f on UT_n is J^r")
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-retries", type=int, default=5)
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        poly_text=args.poly,
        poly_file=args.poly_file,
        target=getattr(args, "target", None),
        n=getattr(args, "n", None),
        seed=getattr(args, "seed", 0),
        max_retries=getattr(args, "max_retries", 5),
        samples=getattr(args, "samples", 20),
        output=args.output,
        force=getattr(args, "force", False),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
