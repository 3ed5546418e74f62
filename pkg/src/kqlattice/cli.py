"""Command-line front end.

Exit codes: 0 success, 1 no coprime factorization, 2 invalid factorization
(or usage error), 3 bad input file, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize
from .arith import CoprimeFactorization, coprime_factorizations
from .errors import DomainError, InvalidFactorization
from .figures import render_ascii, render_svg
from .lattice import Direction, bijection_table
from .measurement import kq_transform, lattice_wavefunction, sample_measurements
from .phasespace import PhasePlane, Rep
from .verify import check_plane, planes_up_to

EXIT_OK = 0
EXIT_NO_FACTORIZATION = 1
EXIT_INVALID_FACTORIZATION = 2
EXIT_BAD_INPUT = 3
EXIT_VERIFY_FAILED = 4


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_factors(text: str) -> tuple[int, int]:
    try:
        M1, M2 = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M1,M2 but got {text!r}") from None
    return M1, M2


def _dimension(text: str) -> int:
    M = int(text)
    if M < 2:
        raise argparse.ArgumentTypeError(f"M must be >= 2, got {M}")
    return M


def resolve_plane(M, factors, allow_trivial=False) -> PhasePlane:
    if factors is not None:
        M1, M2 = factors
        if M is None:
            M = M1 * M2
        try:
            return PhasePlane(CoprimeFactorization(M, M1, M2, allow_trivial))
        except InvalidFactorization as exc:
            raise CLIError(
                f"invalid factorization: {exc}. The construction requires M = M1*M2 "
                f"with M1 and M2 relatively prime.",
                EXIT_INVALID_FACTORIZATION,
            ) from None
    if M is None:
        raise CLIError("give M (positional or -M) or --factors M1,M2", EXIT_INVALID_FACTORIZATION)
    options = coprime_factorizations(M, allow_trivial)
    if not options:
        raise CLIError(f"M = {M} has no nontrivial coprime factorization", EXIT_NO_FACTORIZATION)
    return PhasePlane(options[0])


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_state(path, factors, strict: bool, allow_trivial: bool = False):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        M = serialize.read_state_header(doc)
    except (OSError, json.JSONDecodeError, DomainError, TypeError, ValueError) as exc:
        raise CLIError(f"cannot read state file {path}: {exc}", EXIT_BAD_INPUT) from None
    plane = resolve_plane(M, factors, allow_trivial)
    try:
        psi = serialize.state_from_json(doc, plane)
    except DomainError as exc:
        raise CLIError(f"malformed state file {path}: {exc}", EXIT_BAD_INPUT) from None
    if psi.norm == 0:
        raise CLIError("state file holds the zero vector", EXIT_BAD_INPUT)
    if not psi.is_normalized(1e-10):
        if strict:
            raise CLIError(f"state is not normalized (norm {psi.norm:.12g})", EXIT_BAD_INPUT)
        print(f"warning: state norm is {psi.norm:.12g}; normalizing", file=sys.stderr)
        psi = psi.normalized()
    return psi


def cmd_factor(args) -> int:
    options = coprime_factorizations(args.M, args.allow_trivial)
    for f in options:
        print(f"{f.M1} {f.M2}")
    if not options:
        print(f"M = {args.M} is a prime power: no coprime factorization", file=sys.stderr)
        return EXIT_NO_FACTORIZATION
    return EXIT_OK


def cmd_table(args) -> int:
    plane = resolve_plane(args.M, args.factors, args.allow_trivial)
    rows = bijection_table(plane, Direction(args.direction))
    _emit(serialize.table_to_csv(rows), args.output)
    return EXIT_OK


def cmd_figure(args) -> int:
    plane = resolve_plane(args.M, args.factors, args.allow_trivial)
    render = render_svg if args.format == "svg" else render_ascii
    _emit(render(plane, Rep.parse(args.rep)), args.output)
    return EXIT_OK


def cmd_transform(args) -> int:
    psi = _load_state(args.state, args.factors, args.strict)
    C = kq_transform(psi, Rep.parse(args.rep))
    _emit(serialize.dumps(serialize.kqfunction_to_json(C)), args.output)
    return EXIT_OK


def cmd_measure(args) -> int:
    psi = _load_state(args.state, args.factors, args.strict)
    dist = lattice_wavefunction(kq_transform(psi, Rep.parse(args.rep)))
    samples = sample_measurements(dist, args.count, args.seed) if args.count else []
    if args.format == "json":
        doc = serialize.distribution_to_json(dist)
        doc["samples"] = [[s.coord, s.mom] for s in samples]
        doc["seed"] = args.seed
        _emit(serialize.dumps(doc), args.output)
        return EXIT_OK
    text = serialize.distribution_to_csv(dist)
    if samples:
        if args.samples_out:
            Path(args.samples_out).write_text(serialize.samples_to_csv(samples), encoding="utf-8")
        else:
            text += "\n" + serialize.samples_to_csv(samples)
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all_up_to is not None:
        planes = planes_up_to(args.all_up_to)
    else:
        planes = [resolve_plane(args.M, args.factors)]
    failed = 0
    for plane in planes:
        results = check_plane(plane, n_states=args.states, seed=args.seed)
        bad = [r for r in results if not r.passed]
        failed += bool(bad)
        print(f"M={plane.M} (M1={plane.M1}, M2={plane.M2}): {'PASS' if not bad else 'FAIL'}")
        for r in results:
            status = "ok  " if r.passed else "FAIL"
            print(f"  {status} {r.name:<30s} max dev {r.max_deviation:.3e}  (tol {r.tolerance:g})")
    print(f"{len(planes) - failed}/{len(planes)} planes passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kqlattice",
        description="kq representations and von Neumann lattice measurement on a finite phase plane",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def plane_args(p, positional=True):
        if positional:
            p.add_argument("M_pos", nargs="?", type=_dimension, metavar="M", help="plane dimension")
        p.add_argument("-M", dest="M_flag", type=_dimension, help="plane dimension")
        p.add_argument("--factors", type=_parse_factors, metavar="M1,M2", help="coprime split of M")
        p.add_argument("--allow-trivial", action="store_true", help="permit M1 = 1 or M2 = 1")

    p = sub.add_parser("factor", help="list coprime factorizations M = M1*M2")
    p.add_argument("M", type=_dimension)
    p.add_argument("--allow-trivial", action="store_true")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("table", help="cell-point to lattice-site bijection as CSV")
    plane_args(p)
    p.add_argument("--direction", choices=[d.value for d in Direction], default="b2a")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("figure", help="lattice diagram with cell eigenvalue points")
    plane_args(p)
    p.add_argument("--rep", choices=["a", "b"], default="a")
    p.add_argument("--format", choices=["svg", "ascii"], default="svg")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_figure)

    for name, func, help_ in (
        ("transform", cmd_transform, "kq transform of a state file (JSON out)"),
        ("measure", cmd_measure, "lattice distribution and sampled measurements"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("state", help="JSON state file")
        p.add_argument("--factors", type=_parse_factors, metavar="M1,M2")
        p.add_argument("--rep", choices=["a", "b"], default="a")
        p.add_argument("--strict", action="store_true", help="reject unnormalized states")
        p.add_argument("-o", "--output")
        if name == "measure":
            p.add_argument("--count", type=int, default=0)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--format", choices=["csv", "json"], default="csv")
            p.add_argument("--samples-out")
        else:
            p.add_argument("--format", choices=["json"], default="json")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run the invariant suite")
    plane_args(p)
    p.add_argument("--all-up-to", type=int, metavar="N")
    p.add_argument("--states", type=int, default=100, help="random states per plane")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "M_flag"):
        if args.M_pos is not None and args.M_flag is not None and args.M_pos != args.M_flag:
            parser.error("conflicting values for M")
        args.M = args.M_flag if args.M_flag is not None else args.M_pos
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
